// Recover the hidden period of a function on Z15 and a subgroup of Z4xZ4.
//
// `cargo run --example period_finding`

use qfourier::hsp::{find_period, function_with_stabilizer, stabilizer_bruteforce, FunctionTable, SampleMode};
use qfourier::{AbelianGroup, Result, Subgroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let z15 = AbelianGroup::cyclic(15)?;
    let f = FunctionTable::new(&z15, (0..15).map(|g| (g * g) % 5 + 10 * (g % 5)).collect())?;
    let r = find_period(&f, 200, SampleMode::Exact, &mut rng)?;
    println!(
        "Z15: K = {:?} after {} samples (labels {:?}), converged {}",
        r.subgroup.members(),
        r.samples_used,
        r.labels_seen,
        r.converged
    );

    let g: AbelianGroup = "Z4xZ4".parse()?;
    let k = Subgroup::generated_by_indices(&g, &[6]);
    let f = function_with_stabilizer(&k, &mut rng);
    for mode in [SampleMode::Exact, SampleMode::Simulate] {
        let r = find_period(&f, 200, mode, &mut rng)?;
        println!(
            "{g} ({mode:?}): recovered {:?}, brute force {:?}",
            r.subgroup.members(),
            stabilizer_bruteforce(&f).members()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
