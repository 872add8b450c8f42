//! Ricci curvature of a random 1-form on the cube, through the definition
//! and through the closed form, and the neighbor sets behind them.

use cellform::curvature::CurvatureContext;
use cellform::generators;
use cellform::random::{self, seeded};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cube = generators::cube();
    let ctx = CurvatureContext::new(&cube)?;
    let omega = random::one_form(&cube, &mut seeded(9));
    let def = ctx.ricci_definition_all(&omega);
    let closed = ctx.ricci_closed_form_all(&omega);
    for (k, v) in cube.vectors().iter().enumerate().take(6) {
        let n = ctx.neighbors(k);
        println!(
            "{v}: 0-nbrs {} 2-nbrs {} definition {:+.6} closed form {:+.6}",
            n.zero_count(),
            n.two_count(),
            def[k],
            closed[k]
        );
    }
    println!(
        "max gap over {} vectors: {:.6}",
        def.len(),
        ctx.max_discrepancy(&omega)
    );
    Ok(())
}
