//! Builds a few complexes from generator specs and prints their basic
//! invariants.

use cellform::generators;
use cellform::homology;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for spec in [
        "cycle:6",
        "petersen",
        "cube",
        "torus_grid:3x5",
        "genus2",
        "cylinder2",
    ] {
        let c = generators::generate(spec)?;
        println!(
            "{spec:>14}: counts {:?}, chi {}, betti {:?}, quasiconvex {}, closed surface {}",
            c.counts(),
            c.euler_characteristic(),
            homology::betti_numbers(&c),
            c.is_quasiconvex(),
            c.is_closed_surface(),
        );
    }

    // The two-square cylinder shares two edges between its faces.
    let cyl = generators::two_square_cylinder();
    if let Some(v) = cyl.quasiconvexity_violation() {
        println!(
            "cylinder2: {} and {} share {} but their closures meet in {} cells",
            v.first,
            v.second,
            v.shared,
            v.intersection.len()
        );
    }
    Ok(())
}
