// Two gates, one entangled pair, and a seeded measurement.
//
// `cargo run --example bell_state`

use qfourier::qsim::{bitstring, Gate, Program};
use qfourier::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<()> {
    let program = Program::new(2, vec![Gate::h(0), Gate::cnot(0, 1)?])?;
    let state = program.run()?;
    for (i, a) in state.amplitudes().iter().enumerate() {
        println!("|{}> {:.4}", bitstring(i, 2), a);
    }
    let q0 = state.measure_qubit_distribution(0)?;
    println!("qubit 0: {:?}", q0.probabilities());

    let mut rng = ChaCha8Rng::seed_from_u64(1998);
    for (outcome, count) in state.sample(10_000, &mut rng) {
        println!("{}: {count}", bitstring(outcome, 2));
    }

    println!("{}", serde_json::to_string(&program.to_json()).expect("serialisable"));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
