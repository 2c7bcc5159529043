// Simon's problem: find the mask `xi` with `f(x) = f(x ^ xi)`.
//
// `cargo run --example simon`

use qfourier::hsp::{find_period, simon_function, SampleMode};
use qfourier::qsim::bitstring;
use qfourier::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1998);
    for n in [3, 5, 8] {
        let mask = rng.gen_range(1..1usize << n);
        let f = simon_function(n, mask, &mut rng)?;
        let r = find_period(&f, 60, SampleMode::Exact, &mut rng)?;
        let labels: Vec<String> = r.labels_seen.iter().map(|&l| bitstring(l, n)).collect();
        println!("n = {n}, mask {}", bitstring(mask, n));
        println!("  labels: {}", labels.join(" "));
        println!("  recovered {:?} in {} samples", r.subgroup.members().iter().map(|&x| bitstring(x, n)).collect::<Vec<_>>(), r.samples_used);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
