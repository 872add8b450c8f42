use nalgebra::DMatrix;

use super::neighbors::{self, NeighborSets};
use super::CurvatureError;
use crate::calculus::OneForm;
use crate::complex::{CellComplex, IncidenceVector};
use crate::forms::FormComplex;

/// How to read the factor printed as `w_ρ/τ` on the downward 2-neighbor
/// terms of `|∇ω|²` and `Δ♭|ω|²`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DownFactor {
    /// `w_ρ/w_τ`, consistent with the `w_σ/w_μ` factor of the upward terms.
    #[default]
    Repaired,
    /// `w_ρ` alone. Agrees with [`DownFactor::Repaired`] at unit weights only.
    AsPrinted,
}

/// The four neighbor sums making up `|∇ω|²` or `Δ♭|ω|²` at one vector.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NeighborTerms {
    pub two_up: f64,
    pub two_down: f64,
    pub zero_up: f64,
    pub zero_down: f64,
}

impl NeighborTerms {
    pub fn two(&self) -> f64 {
        self.two_up + self.two_down
    }

    pub fn zero(&self) -> f64 {
        self.zero_up + self.zero_down
    }

    pub fn total(&self) -> f64 {
        self.two() + self.zero()
    }
}

/// Neighbor sets of every vector plus the 1-form Laplacian of a
/// quasiconvex complex.
pub struct CurvatureContext<'a> {
    complex: &'a CellComplex,
    forms: FormComplex<'a>,
    neighbors: Vec<NeighborSets>,
    /// `Δ_1` in the orthonormal basis.
    laplacian: DMatrix<f64>,
}

impl<'a> CurvatureContext<'a> {
    pub fn new(complex: &'a CellComplex) -> Result<Self, CurvatureError> {
        if let Some(violation) = complex.quasiconvexity_violation() {
            return Err(CurvatureError::NotQuasiconvex(violation));
        }
        if complex.dim() == 0 {
            return Err(CurvatureError::NoVectors);
        }
        let forms = FormComplex::new(complex);
        let laplacian = forms.laplacian(1)?.matrix;
        let neighbors = (0..complex.vectors().len())
            .map(|k| neighbors::enumerate(complex, k))
            .collect();
        Ok(Self {
            complex,
            forms,
            neighbors,
            laplacian,
        })
    }

    pub fn complex(&self) -> &'a CellComplex {
        self.complex
    }

    pub fn neighbors(&self, base: usize) -> &NeighborSets {
        &self.neighbors[base]
    }

    pub fn neighbors_of(&self, base: IncidenceVector) -> Option<&NeighborSets> {
        self.complex
            .vector_index(base.tau, base.sigma)
            .map(|k| &self.neighbors[k])
    }

    fn w(&self, cell: crate::complex::CellId) -> f64 {
        self.complex.weight(cell)
    }

    fn vector(&self, k: usize) -> IncidenceVector {
        self.complex.vectors()[k]
    }

    fn terms(
        &self,
        omega: &OneForm,
        base: usize,
        factor: DownFactor,
        two: impl Fn(f64, f64) -> f64,
        zero: impl Fn(f64, f64) -> f64,
    ) -> NeighborTerms {
        let n = &self.neighbors[base];
        let IncidenceVector { tau, sigma, .. } = self.vector(base);
        let a = omega.get(base);
        let mut t = NeighborTerms::default();
        for nb in &n.two_up {
            t.two_up += self.w(sigma) / self.w(nb.witness) * two(a, omega.get(nb.vector));
        }
        for nb in &n.two_down {
            let weight = match factor {
                DownFactor::Repaired => self.w(nb.witness) / self.w(tau),
                DownFactor::AsPrinted => self.w(nb.witness),
            };
            t.two_down += weight * two(a, omega.get(nb.vector));
        }
        for &k in &n.zero_up {
            let other = self.vector(k).tau;
            t.zero_up +=
                self.w(sigma).powi(2) / (self.w(tau) * self.w(other)) * zero(a, omega.get(k));
        }
        for &k in &n.zero_down {
            let other = self.vector(k).sigma;
            t.zero_down +=
                self.w(sigma) * self.w(other) / self.w(tau).powi(2) * zero(a, omega.get(k));
        }
        t
    }

    /// The four sums of `|∇ω|²(τ>σ)`: squared differences on 2-neighbors,
    /// squared sums on 0-neighbors.
    pub fn covariant_sq_terms(
        &self,
        omega: &OneForm,
        base: usize,
        factor: DownFactor,
    ) -> NeighborTerms {
        self.terms(
            omega,
            base,
            factor,
            |a, b| (a - b).powi(2),
            |a, b| (a + b).powi(2),
        )
    }

    /// `|∇ω|²(τ>σ)`.
    pub fn covariant_sq(&self, omega: &OneForm, base: usize) -> f64 {
        self.covariant_sq_terms(omega, base, DownFactor::Repaired)
            .total()
    }

    /// The four sums of `Δ♭|ω|²(τ>σ)`: differences of squares on
    /// 2-neighbors, sums of squares on 0-neighbors.
    pub fn flat_laplacian_terms(
        &self,
        omega: &OneForm,
        base: usize,
        factor: DownFactor,
    ) -> NeighborTerms {
        self.terms(
            omega,
            base,
            factor,
            |a, b| a * a - b * b,
            |a, b| a * a + b * b,
        )
    }

    /// `Δ♭|ω|²(τ>σ)`.
    pub fn flat_laplacian(&self, omega: &OneForm, base: usize) -> f64 {
        self.flat_laplacian_terms(omega, base, DownFactor::Repaired)
            .total()
    }

    /// `Δω` for a 1-form.
    pub fn laplacian(&self, omega: &OneForm) -> OneForm {
        let basis = self.forms.basis(1);
        let y = self
            .forms
            .orthonormal_coordinates(&omega.to_form(self.complex, basis));
        let out = self.forms.from_orthonormal(1, &self.laplacian * y);
        OneForm::from_form(self.complex, basis, &out)
    }

    /// `(w_σ/w_τ)(Δω)^τ_σ ω^τ_σ` for every vector; the values sum to the
    /// global inner product `⟨Δω, ω⟩`.
    pub fn pointwise_energies(&self, omega: &OneForm) -> Vec<f64> {
        let lap = self.laplacian(omega);
        self.complex
            .vectors()
            .iter()
            .enumerate()
            .map(|(k, v)| self.w(v.sigma) / self.w(v.tau) * lap.get(k) * omega.get(k))
            .collect()
    }

    pub fn pointwise_energy(&self, omega: &OneForm, base: usize) -> f64 {
        self.pointwise_energies(omega)[base]
    }

    /// The neighbor expansion of `⟨Δω,ω⟩(τ>σ)`; equal to
    /// [`CurvatureContext::pointwise_energy`] at constant weights.
    pub fn energy_expansion(&self, omega: &OneForm, base: usize) -> f64 {
        let n = &self.neighbors[base];
        let IncidenceVector { tau, sigma, .. } = self.vector(base);
        let a = omega.get(base);
        let ws = self.w(sigma);
        let wt = self.w(tau);
        let mut e = (n.two_count() as f64 + 2.0) * (ws / wt).powi(2) * a * a;
        for nb in &n.two_up {
            let mu = nb.witness;
            let other = self.vector(nb.partner).tau;
            e -= ws / self.w(mu) * a * omega.get(nb.vector);
            e += (ws * ws / (wt * self.w(other)) - ws / self.w(mu)) * a * omega.get(nb.partner);
        }
        for nb in &n.two_down {
            let rho = nb.witness;
            let other = self.vector(nb.partner).sigma;
            e -= self.w(rho) / wt * a * omega.get(nb.vector);
            e += (ws * self.w(other) / (wt * wt) - self.w(rho) / wt) * a * omega.get(nb.partner);
        }
        for &k in &n.zero_up {
            e += ws * ws / (wt * self.w(self.vector(k).tau)) * a * omega.get(k);
        }
        for &k in &n.zero_down {
            e += ws * self.w(self.vector(k).sigma) / (wt * wt) * a * omega.get(k);
        }
        e
    }

    /// `Ric(ω)(τ>σ) = ⟨Δω,ω⟩ − ½|∇ω|² + ½Δ♭|ω|²` at every vector.
    pub fn ricci_definition_all(&self, omega: &OneForm) -> Vec<f64> {
        self.pointwise_energies(omega)
            .into_iter()
            .enumerate()
            .map(|(k, energy)| {
                energy - 0.5 * self.covariant_sq(omega, k) + 0.5 * self.flat_laplacian(omega, k)
            })
            .collect()
    }

    pub fn ricci_definition(&self, omega: &OneForm, base: usize) -> f64 {
        self.ricci_definition_all(omega)[base]
    }

    /// `(2 − #0)(w_σ/w_τ)²(ω^τ_σ)²` plus the weighted 2-neighbor cross terms;
    /// at constant weights the cross terms vanish.
    pub fn ricci_closed_form(&self, omega: &OneForm, base: usize) -> f64 {
        let n = &self.neighbors[base];
        let IncidenceVector { tau, sigma, .. } = self.vector(base);
        let a = omega.get(base);
        let ws = self.w(sigma);
        let wt = self.w(tau);
        let mut r = (2.0 - n.zero_count() as f64) * (ws / wt).powi(2) * a * a;
        for nb in &n.two_up {
            let other = self.vector(nb.partner).tau;
            r += (ws * ws / (wt * self.w(other)) - ws / self.w(nb.witness))
                * a
                * omega.get(nb.partner);
        }
        for nb in &n.two_down {
            let other = self.vector(nb.partner).sigma;
            r += (ws * self.w(other) / (wt * wt) - self.w(nb.witness) / wt)
                * a
                * omega.get(nb.partner);
        }
        r
    }

    pub fn ricci_closed_form_all(&self, omega: &OneForm) -> Vec<f64> {
        (0..self.neighbors.len())
            .map(|k| self.ricci_closed_form(omega, k))
            .collect()
    }

    /// `max_k |Ric_def − Ric_closed|` over all vectors.
    pub fn max_discrepancy(&self, omega: &OneForm) -> f64 {
        self.ricci_definition_all(omega)
            .into_iter()
            .zip(self.ricci_closed_form_all(omega))
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}
