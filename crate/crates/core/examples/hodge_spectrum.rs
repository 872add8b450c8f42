//! Harmonic dimensions of the Hodge Laplacian against Betti numbers, with
//! and without random weights.

use cellform::forms::FormComplex;
use cellform::random::{self, seeded};
use cellform::{generators, homology};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = seeded(11);
    for spec in ["complete:4", "octahedron", "torus_grid:4x4", "genus2"] {
        let plain = generators::generate(spec)?;
        let weighted = random::reweighted(&plain, &mut rng);
        for (label, c) in [("unit", &plain), ("random", &weighted)] {
            let forms = FormComplex::new(c);
            let mut line = format!("{spec:>14} {label:>6}:");
            for d in 0..=forms.top() {
                let s = forms.spectrum(d, 1e-8)?;
                line += &format!(
                    " deg {d} harmonic {} betti {} gap {:.4}",
                    s.harmonic_dimension()?,
                    homology::betti_oracle(c, d),
                    s.min_nonzero().unwrap_or(f64::NAN),
                );
            }
            println!("{line}");
        }
    }
    Ok(())
}
