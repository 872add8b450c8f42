//! Splits a random closed 1-form on the torus into a harmonic part and an
//! exact part `d f`.

use cellform::forms::{Form, FormComplex};
use cellform::generators;
use cellform::random::{self, seeded};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let torus = generators::torus_grid(5, 5)?;
    let forms = FormComplex::new(&torus);
    let mut rng = seeded(3);

    // harmonic + exact, so the input is closed
    let spectrum = forms.spectrum(1, 1e-8)?;
    let h = forms.from_orthonormal(1, spectrum.eigenvectors.column(0).into_owned());
    let f = Form::new(
        forms.basis(0),
        random::values(forms.basis(0).len(), &mut rng).into(),
    )?;
    let df = forms.apply_d(&f)?;
    let u = Form::new(forms.basis(1), h.coefficients() + df.coefficients())?;

    let split = forms.hodge_decompose(&u, 1e-8)?;
    let potential = split.potential.expect("degree 1 has a potential");
    let rebuilt = forms.apply_d(&potential)?.coefficients() + split.harmonic.coefficients();
    println!("|u| = {:.6}", forms.norm(&u));
    println!(
        "|harmonic| = {:.6} (planted {:.6})",
        forms.norm(&split.harmonic),
        forms.norm(&h)
    );
    println!(
        "|u - (h + d f)| = {:.3e}",
        (rebuilt - u.coefficients()).amax()
    );
    println!(
        "|d* h| = {:.3e}",
        forms.apply_dstar(&split.harmonic)?.coefficients().amax()
    );
    Ok(())
}
