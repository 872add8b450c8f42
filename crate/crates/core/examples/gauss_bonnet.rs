//! Per-cell Gauss curvature and the Gauss-Bonnet totals, plus unit-form
//! traces that recover `g_v` from Ricci curvature.

use cellform::curvature::{self, CurvatureContext};
use cellform::generators;
use cellform::random::seeded;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for c in [
        generators::petersen(),
        generators::icosahedron(),
        generators::genus2(),
    ] {
        let r = curvature::gauss_bonnet(&c)?;
        println!(
            "{:?}: sum g_v {} + sum g_f {} = {} (chi {})",
            r.class, r.total_g_vertices, r.total_g_faces, r.expected_total, r.chi
        );
    }

    let prism = generators::prism(6)?;
    print!("{}", curvature::gauss_bonnet(&prism)?.to_csv());

    let ctx = CurvatureContext::new(&prism)?;
    let mut rng = seeded(4);
    for v in prism.cells_of_dim(0).take(3) {
        let omega = curvature::random_unit_form(&prism, v, &mut rng)?;
        let trace = curvature::unit_form_trace_check(&ctx, &omega, v)?;
        println!(
            "{v}: trace {trace:+.12} g {}",
            curvature::gauss_curvature_vertex(&prism, v)?
        );
    }
    Ok(())
}
