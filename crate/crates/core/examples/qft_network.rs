// Compile the QFT on Z_(2^m), print it, and check it against the dense matrix.
//
// `cargo run --example qft_network`

use qfourier::qft::{compile_qft, gate_count, ReorderMode};
use qfourier::{dense_fourier_matrix, AbelianGroup, Result};

pub fn run_example() -> Result<()> {
    let gl = compile_qft(3, ReorderMode::Relabel)?;
    print!("{}", gl.to_text());

    for m in 1..=6 {
        let f = dense_fourier_matrix(&AbelianGroup::cyclic(1 << m)?)?;
        let mut worst: f64 = 0.0;
        for mode in [ReorderMode::Relabel, ReorderMode::Swaps] {
            for (x, col) in compile_qft(m, mode)?.unitary_columns()?.iter().enumerate() {
                for (k, a) in col.iter().enumerate() {
                    worst = worst.max((a - f.get(k, x)).norm());
                }
            }
        }
        let counts = gate_count(m, ReorderMode::Swaps);
        println!(
            "m = {m}: {} H, {} CPHASE, {} SWAP; max error vs dense {worst:.1e}",
            counts.hadamards, counts.cphases, counts.swaps
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
