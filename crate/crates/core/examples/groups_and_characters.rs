// Groups, characters, subgroups and cosets.
//
// `cargo run --example groups_and_characters`

use qfourier::{AbelianGroup, CosetDecomposition, GroupElement, Result, Subgroup};

pub fn run_example() -> Result<()> {
    let g: AbelianGroup = "Z2xZ4".parse()?;
    println!("G = {g}, |G| = {}, exponent {}", g.order(), g.exponent());

    let a = GroupElement::new(vec![1, 3]);
    let b = GroupElement::new(vec![1, 2]);
    println!("{:?} + {:?} = {:?}", a.coords(), b.coords(), g.add(&a, &b)?.coords());

    // chi_a(b) = exp(2 pi i (1*1/2 + 3*2/4)) = 1
    println!("chi_a(b) = {:.3}", g.character(&a, &b)?);

    let h = Subgroup::generated(&g, &[GroupElement::new(vec![0, 2])])?;
    let cosets = CosetDecomposition::new(&g, &h)?;
    println!("H = {:?}, {} cosets with representatives {:?}", h.members(), cosets.num_cosets(), cosets.representatives);

    println!("character table of Z4 (phases in quarter turns):");
    let z4 = AbelianGroup::cyclic(4)?;
    for l in 0..4 {
        let row: Vec<u64> = (0..4).map(|x| z4.character_phase(l, x)).collect();
        println!("  chi_{l}: {row:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
