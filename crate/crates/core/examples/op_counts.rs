// Multiply tallies of the radix-2 FFT against the dense transform, and the
// per-level increment `count(2^m) - 2 count(2^(m-1))`.
//
// `cargo run --example op_counts`

use qfourier::fft::fft_radix2;
use qfourier::{ComplexVector, Result};

pub fn run_example() -> Result<()> {
    println!("{:>3} {:>10} {:>12} {:>10}", "m", "radix2", "dense", "increment");
    let mut previous = 0;
    for m in 1..=12 {
        let n = 1usize << m;
        let (_, counts) = fft_radix2(m, &ComplexVector::basis(n, 0))?;
        let c = counts.complex_multiplies;
        let increment = c as i64 - 2 * previous as i64;
        println!("{m:>3} {c:>10} {:>12} {:>10}", n * n, increment);
        previous = c;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
