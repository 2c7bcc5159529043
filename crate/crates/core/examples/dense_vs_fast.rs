// The same transform four ways, with operation tallies.
//
// `cargo run --example dense_vs_fast`

use qfourier::fft::{fft_radix2, fft_tower, transform, Method, SubgroupTower};
use qfourier::{apply_dense, AbelianGroup, Complex64, ComplexVector, Result};

fn ramp(n: usize) -> ComplexVector {
    (0..n).map(|i| Complex64::new(i as f64, (i % 3) as f64)).collect()
}

pub fn run_example() -> Result<()> {
    let g = AbelianGroup::cyclic(64)?;
    let f = ramp(64);
    let reference = apply_dense(&g, &f)?;

    let (r2, counts) = fft_radix2(6, &f)?;
    println!("Z64 radix2: error {:.1e}, {} multiplies", r2.max_abs_diff(&reference), counts.complex_multiplies);

    let tower = SubgroupTower::auto(&g);
    let (tw, counts) = fft_tower(&tower, &f)?;
    println!(
        "Z64 tower {:?}: error {:.1e}, {} multiplies (bound {})",
        tower.indices(),
        tw.max_abs_diff(&reference),
        counts.complex_multiplies,
        counts.predicted_bound
    );

    let g: AbelianGroup = "Z6xZ5".parse()?;
    let f = ramp(g.order());
    for method in [Method::Dense, Method::Tower] {
        let (_, counts) = transform(&g, method, &f)?;
        println!("{g} {method}: {} multiplies, {} adds", counts.complex_multiplies, counts.complex_adds);
    }

    let cube = AbelianGroup::boolean_cube(5)?;
    let f = ramp(32);
    let (w, counts) = transform(&cube, Method::Walsh, &f)?;
    println!(
        "{cube} walsh: error {:.1e}, {} adds",
        w.max_abs_diff(&apply_dense(&cube, &f)?),
        counts.complex_adds
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
