//! Combinatorial differential forms and the weighted Hodge Laplacian.
//!
//! A `d`-form is a local linear map on chains lowering dimension by `d`. The
//! elementary forms `e^τ_σ` (sending `τ` to `σ`, `σ` a codimension-`d` cell
//! of the closure of `τ`, every other cell to zero) form a basis; a [`Form`]
//! stores its coefficients in that basis, in the order of [`FormBasis`].
//!
//! With the cell inner product `⟨σ,σ⟩ = w_σ` and the L² form inner product
//! `⟨u,v⟩ = Σ_σ (1/w_σ)⟨u(σ), v(σ)⟩`, the basis is orthogonal with
//! `‖e^τ_σ‖² = w_σ/w_τ`. Operators are assembled in the rescaled orthonormal
//! basis `ê^τ_σ = sqrt(w_τ/w_σ)·e^τ_σ`, where `d*` is a transpose and `Δ` is
//! symmetric.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use thiserror::Error;

use crate::complex::{CellComplex, CellId, Chain};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum FormError {
    #[error("form degree {degree} is out of range {min}..={max}")]
    DimensionOutOfRange {
        degree: usize,
        min: usize,
        max: usize,
    },
    #[error("symmetric eigensolver did not converge in degree {degree}")]
    EigensolverFailure { degree: usize },
    #[error(
        "eigenvalue {eigenvalue:e} in degree {degree} lies within a factor 10 of the kernel threshold {threshold:e}"
    )]
    ToleranceAmbiguous {
        degree: usize,
        eigenvalue: f64,
        threshold: f64,
    },
    #[error("form is not closed: |du| = {residual:e} exceeds 1e-10 |u| = {bound:e}")]
    NotClosed { residual: f64, bound: f64 },
    #[error("({tau}, {sigma}) is not a basis pair of degree {degree}")]
    NotLocal {
        tau: CellId,
        sigma: CellId,
        degree: usize,
    },
    #[error("expected a form of degree {expected} with {len} coefficients")]
    ShapeMismatch { expected: usize, len: usize },
}

/// The elementary forms `e^τ_σ` of one degree, sorted by
/// `(dim τ, index τ, index σ)`.
#[derive(Clone, Debug)]
pub struct FormBasis {
    degree: usize,
    elements: Vec<(CellId, CellId)>,
    lookup: HashMap<(CellId, CellId), usize>,
}

impl FormBasis {
    /// Empty when `degree` exceeds the top dimension.
    pub fn new(complex: &CellComplex, degree: usize) -> Self {
        let mut elements = Vec::new();
        for tau in complex.cells().filter(|c| c.dim >= degree) {
            let closure = complex.closure_of(tau);
            elements.extend(
                closure
                    .into_iter()
                    .filter(|s| s.dim + degree == tau.dim)
                    .map(|s| (tau, s)),
            );
        }
        let lookup = elements.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        Self {
            degree,
            elements,
            lookup,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[(CellId, CellId)] {
        &self.elements
    }

    pub fn index_of(&self, tau: CellId, sigma: CellId) -> Option<usize> {
        self.lookup.get(&(tau, sigma)).copied()
    }
}

/// A `d`-form: coefficients on the elementary forms `e^τ_σ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    degree: usize,
    coefficients: DVector<f64>,
}

impl Form {
    pub fn zeros(basis: &FormBasis) -> Self {
        Self {
            degree: basis.degree,
            coefficients: DVector::zeros(basis.len()),
        }
    }

    pub fn new(basis: &FormBasis, coefficients: DVector<f64>) -> Result<Self, FormError> {
        if coefficients.len() != basis.len() {
            return Err(FormError::ShapeMismatch {
                expected: basis.degree,
                len: coefficients.len(),
            });
        }
        Ok(Self {
            degree: basis.degree,
            coefficients,
        })
    }

    /// Builds a form from `(τ, σ) → coefficient` entries; a pair that is not
    /// local in this degree is rejected.
    pub fn from_entries(
        basis: &FormBasis,
        entries: impl IntoIterator<Item = ((CellId, CellId), f64)>,
    ) -> Result<Self, FormError> {
        let mut form = Self::zeros(basis);
        for ((tau, sigma), value) in entries {
            let k = basis.index_of(tau, sigma).ok_or(FormError::NotLocal {
                tau,
                sigma,
                degree: basis.degree,
            })?;
            form.coefficients[k] += value;
        }
        Ok(form)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &DVector<f64> {
        &self.coefficients
    }

    pub fn coefficient(&self, basis: &FormBasis, tau: CellId, sigma: CellId) -> f64 {
        basis
            .index_of(tau, sigma)
            .map_or(0.0, |k| self.coefficients[k])
    }

    /// Evaluates the form as a linear map on chains.
    pub fn apply(&self, basis: &FormBasis, chain: &Chain) -> Chain {
        let mut out = Chain::new();
        for (k, &(tau, sigma)) in basis.elements.iter().enumerate() {
            let c = chain.get(tau);
            if c != 0.0 && self.coefficients[k] != 0.0 {
                out.add(sigma, self.coefficients[k] * c);
            }
        }
        out
    }
}

/// A dense operator between form spaces, in the orthonormal basis `ê`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    pub domain_degree: usize,
    pub codomain_degree: usize,
    pub matrix: DMatrix<f64>,
}

/// Full eigendecomposition of one Laplacian block.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub degree: usize,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `eigenvalues`.
    pub eigenvectors: DMatrix<f64>,
    pub zero_tolerance: f64,
}

impl Spectrum {
    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Eigenvalues with `|λ|` at most this are counted as zero.
    pub fn threshold(&self) -> f64 {
        self.zero_tolerance * self.max_eigenvalue().max(1.0)
    }

    /// Number of zero eigenvalues; fails when some eigenvalue sits within a
    /// factor 10 of the threshold.
    pub fn harmonic_dimension(&self) -> Result<usize, FormError> {
        let t = self.threshold();
        if let Some(&eigenvalue) = self
            .eigenvalues
            .iter()
            .find(|&&l| l.abs() >= t / 10.0 && l.abs() <= t * 10.0)
        {
            return Err(FormError::ToleranceAmbiguous {
                degree: self.degree,
                eigenvalue,
                threshold: t,
            });
        }
        Ok(self.eigenvalues.iter().filter(|l| l.abs() <= t).count())
    }

    pub fn min_nonzero(&self) -> Option<f64> {
        let t = self.threshold();
        self.eigenvalues.iter().copied().find(|l| l.abs() > t)
    }
}

/// Result of splitting a closed form into harmonic and exact parts.
#[derive(Clone, Debug)]
pub struct HodgeDecomposition {
    pub harmonic: Form,
    /// `u'` with `u = harmonic + d u'`; `None` in degree 0.
    pub potential: Option<Form>,
}

/// Bases and differentials of the whole form complex `Ω^0 → … → Ω^n`.
#[derive(Clone, Debug)]
pub struct FormComplex<'a> {
    complex: &'a CellComplex,
    bases: Vec<FormBasis>,
    /// `‖e^τ_σ‖ = sqrt(w_σ/w_τ)` per degree.
    norms: Vec<DVector<f64>>,
    /// Integer-valued `d : Ω^d → Ω^{d+1}` in the elementary basis, `d < n`.
    raw_d: Vec<DMatrix<f64>>,
}

impl<'a> FormComplex<'a> {
    pub fn new(complex: &'a CellComplex) -> Self {
        let n = complex.dim();
        let bases: Vec<FormBasis> = (0..=n).map(|d| FormBasis::new(complex, d)).collect();
        let norms = bases
            .iter()
            .map(|b| {
                DVector::from_iterator(
                    b.len(),
                    b.elements
                        .iter()
                        .map(|&(t, s)| (complex.weight(s) / complex.weight(t)).sqrt()),
                )
            })
            .collect();
        let raw_d = (0..n)
            .map(|d| assemble_d(complex, &bases[d], &bases[d + 1]))
            .collect();
        Self {
            complex,
            bases,
            norms,
            raw_d,
        }
    }

    pub fn complex(&self) -> &'a CellComplex {
        self.complex
    }

    pub fn top(&self) -> usize {
        self.complex.dim()
    }

    /// Panics if `d` exceeds the top dimension.
    pub fn basis(&self, d: usize) -> &FormBasis {
        &self.bases[d]
    }

    fn check(&self, degree: usize, min: usize, max: usize) -> Result<(), FormError> {
        if degree < min || degree > max {
            Err(FormError::DimensionOutOfRange { degree, min, max })
        } else {
            Ok(())
        }
    }

    /// `d : Ω^d → Ω^{d+1}` in the elementary basis; entries are integers.
    pub fn d_elementary(&self, d: usize) -> Result<&DMatrix<f64>, FormError> {
        self.check(d, 0, self.top().saturating_sub(1))?;
        self.raw_d.get(d).ok_or(FormError::DimensionOutOfRange {
            degree: d,
            min: 0,
            max: 0,
        })
    }

    fn to_orthonormal(&self, d: usize, m: &DMatrix<f64>, from: usize) -> DMatrix<f64> {
        // M̂ = N_to · M · N_from⁻¹
        let mut out = m.clone();
        for (r, &nr) in self.norms[d].iter().enumerate() {
            for (c, &nc) in self.norms[from].iter().enumerate() {
                out[(r, c)] *= nr / nc;
            }
        }
        out
    }

    /// The differential `dω = ∂∘ω − (−1)^d ω∘∂`, orthonormal basis.
    pub fn d_op(&self, d: usize) -> Result<OperatorMatrix, FormError> {
        let raw = self.d_elementary(d)?;
        Ok(OperatorMatrix {
            domain_degree: d,
            codomain_degree: d + 1,
            matrix: self.to_orthonormal(d + 1, raw, d),
        })
    }

    /// The adjoint `d* : Ω^d → Ω^{d−1}` as the transpose of `d_op(d−1)`.
    pub fn dstar_op(&self, d: usize) -> Result<OperatorMatrix, FormError> {
        self.check(d, 1, self.top())?;
        Ok(OperatorMatrix {
            domain_degree: d,
            codomain_degree: d - 1,
            matrix: self.d_op(d - 1)?.matrix.transpose(),
        })
    }

    /// The adjoint built from `d* = p∘(∂*∘ω − (−1)^{d−1} ω∘∂*)`, elementary
    /// basis.
    ///
    /// `∂*ρ = Σ_{σ>ρ} [σ:ρ](w_ρ/w_σ)σ` is the cell-level adjoint of `∂` and
    /// `p` drops every non-local term, which is the orthogonal projection
    /// since the elementary forms are mutually orthogonal.
    pub fn dstar_projected_elementary(&self, d: usize) -> Result<DMatrix<f64>, FormError> {
        self.check(d, 1, self.top())?;
        let c = self.complex;
        let source = &self.bases[d];
        let target = &self.bases[d - 1];
        let mut m = DMatrix::zeros(target.len(), source.len());
        let sign = if (d - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
        for (j, &(tau, sigma)) in source.elements.iter().enumerate() {
            // ∂*∘e^τ_σ : τ ↦ Σ_{α>σ} [α:σ](w_σ/w_α) α, kept where α ≤ τ
            for inc in c.cofaces(sigma) {
                let alpha = CellId::new(sigma.dim + 1, inc.cell);
                if let Some(i) = target.index_of(tau, alpha) {
                    m[(i, j)] += f64::from(inc.sign) * c.weight(sigma) / c.weight(alpha);
                }
            }
            // e^τ_σ∘∂* : ρ ↦ [τ:ρ](w_ρ/w_τ) σ for faces ρ of τ, kept where σ ≤ ρ
            for inc in c.faces(tau) {
                let rho = CellId::new(tau.dim - 1, inc.cell);
                if let Some(i) = target.index_of(rho, sigma) {
                    m[(i, j)] -= sign * f64::from(inc.sign) * c.weight(rho) / c.weight(tau);
                }
            }
        }
        Ok(m)
    }

    /// [`FormComplex::dstar_projected_elementary`] in the orthonormal basis.
    pub fn dstar_projected(&self, d: usize) -> Result<OperatorMatrix, FormError> {
        let raw = self.dstar_projected_elementary(d)?;
        Ok(OperatorMatrix {
            domain_degree: d,
            codomain_degree: d - 1,
            matrix: self.to_orthonormal(d - 1, &raw, d),
        })
    }

    /// `Δ = dd* + d*d` on `Ω^d`, orthonormal basis.
    pub fn laplacian(&self, d: usize) -> Result<OperatorMatrix, FormError> {
        self.check(d, 0, self.top())?;
        let size = self.bases[d].len();
        let mut m = DMatrix::zeros(size, size);
        if d >= 1 {
            let down = self.d_op(d - 1)?.matrix;
            m += &down * down.transpose();
        }
        if d < self.top() {
            let up = self.d_op(d)?.matrix;
            m += up.transpose() * &up;
        }
        // remove round-off asymmetry from the two products
        let sym = (&m + m.transpose()) * 0.5;
        Ok(OperatorMatrix {
            domain_degree: d,
            codomain_degree: d,
            matrix: sym,
        })
    }

    /// `Δ` assembled in the elementary basis from `d` and the projected
    /// adjoint, without any rescaling.
    pub fn laplacian_elementary(&self, d: usize) -> Result<DMatrix<f64>, FormError> {
        self.check(d, 0, self.top())?;
        let size = self.bases[d].len();
        let mut m = DMatrix::zeros(size, size);
        if d >= 1 {
            m += self.d_elementary(d - 1)? * self.dstar_projected_elementary(d)?;
        }
        if d < self.top() {
            m += self.dstar_projected_elementary(d + 1)? * self.d_elementary(d)?;
        }
        Ok(m)
    }

    /// Conjugates an elementary-basis operator on `Ω^d` into the orthonormal
    /// basis.
    pub fn conjugate_to_orthonormal(&self, d: usize, m: &DMatrix<f64>) -> DMatrix<f64> {
        self.to_orthonormal(d, m, d)
    }

    pub fn spectrum(&self, d: usize, zero_tolerance: f64) -> Result<Spectrum, FormError> {
        let lap = self.laplacian(d)?.matrix;
        let n = lap.nrows();
        let eigen = SymmetricEigen::try_new(lap, f64::EPSILON, 100_000)
            .ok_or(FormError::EigensolverFailure { degree: d })?;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eigen.eigenvalues[a].total_cmp(&eigen.eigenvalues[b]));
        let eigenvalues = order.iter().map(|&k| eigen.eigenvalues[k]).collect();
        let eigenvectors = DMatrix::from_fn(n, n, |r, c| eigen.eigenvectors[(r, order[c])]);
        Ok(Spectrum {
            degree: d,
            eigenvalues,
            eigenvectors,
            zero_tolerance,
        })
    }

    pub fn harmonic_dimension(&self, d: usize, zero_tolerance: f64) -> Result<usize, FormError> {
        self.spectrum(d, zero_tolerance)?.harmonic_dimension()
    }

    fn check_form(&self, u: &Form) -> Result<(), FormError> {
        self.check(u.degree, 0, self.top())?;
        if u.coefficients.len() != self.bases[u.degree].len() {
            return Err(FormError::ShapeMismatch {
                expected: u.degree,
                len: u.coefficients.len(),
            });
        }
        Ok(())
    }

    /// Coordinates of `u` in the orthonormal basis.
    pub fn orthonormal_coordinates(&self, u: &Form) -> DVector<f64> {
        u.coefficients.component_mul(&self.norms[u.degree])
    }

    pub fn from_orthonormal(&self, d: usize, y: DVector<f64>) -> Form {
        Form {
            degree: d,
            coefficients: y.component_div(&self.norms[d]),
        }
    }

    /// The L² inner product of two forms of the same degree.
    pub fn inner(&self, u: &Form, v: &Form) -> f64 {
        assert_eq!(
            u.degree, v.degree,
            "inner product of forms of different degree"
        );
        self.bases[u.degree]
            .elements
            .iter()
            .enumerate()
            .map(|(k, &(t, s))| {
                u.coefficients[k] * v.coefficients[k] * self.complex.weight(s)
                    / self.complex.weight(t)
            })
            .sum()
    }

    pub fn norm(&self, u: &Form) -> f64 {
        self.inner(u, u).sqrt()
    }

    pub fn apply_d(&self, u: &Form) -> Result<Form, FormError> {
        self.check_form(u)?;
        let raw = self.d_elementary(u.degree)?;
        Ok(Form {
            degree: u.degree + 1,
            coefficients: raw * &u.coefficients,
        })
    }

    pub fn apply_dstar(&self, u: &Form) -> Result<Form, FormError> {
        self.check_form(u)?;
        let raw = self.dstar_projected_elementary(u.degree)?;
        Ok(Form {
            degree: u.degree - 1,
            coefficients: raw * &u.coefficients,
        })
    }

    pub fn apply_laplacian(&self, u: &Form) -> Result<Form, FormError> {
        self.check_form(u)?;
        let lap = self.laplacian(u.degree)?.matrix;
        Ok(self.from_orthonormal(u.degree, lap * self.orthonormal_coordinates(u)))
    }

    /// Splits a closed form as `u = u₀ + d u'` with `Δu₀ = 0`, using the
    /// eigendecomposition of `Δ`: `u' = Σ_{λ_i>0} d*u_i/λ_i`.
    pub fn hodge_decompose(
        &self,
        u: &Form,
        zero_tolerance: f64,
    ) -> Result<HodgeDecomposition, FormError> {
        self.check_form(u)?;
        let d = u.degree;
        let y = self.orthonormal_coordinates(u);
        let norm = y.norm();
        if d < self.top() {
            let residual = (self.d_op(d)?.matrix * &y).norm();
            if residual > 1e-10 * norm {
                return Err(FormError::NotClosed {
                    residual,
                    bound: 1e-10 * norm,
                });
            }
        }
        let spectrum = self.spectrum(d, zero_tolerance)?;
        let t = spectrum.threshold();
        let mut harmonic = DVector::zeros(y.len());
        let mut exact_part = DVector::zeros(y.len());
        let mut potential_coords = (d >= 1).then(|| DVector::zeros(self.bases[d - 1].len()));
        let dstar = if d >= 1 {
            Some(self.dstar_op(d)?.matrix)
        } else {
            None
        };
        for (k, &lambda) in spectrum.eigenvalues.iter().enumerate() {
            let v = spectrum.eigenvectors.column(k);
            let component = v * v.dot(&y);
            if lambda.abs() <= t {
                harmonic += &component;
            } else if let (Some(p), Some(ds)) = (potential_coords.as_mut(), dstar.as_ref()) {
                *p += ds * &component / lambda;
            } else {
                exact_part += &component;
            }
        }
        // in degree 0 a closed form has no component outside Ker Δ
        let _ = exact_part;
        Ok(HodgeDecomposition {
            harmonic: self.from_orthonormal(d, harmonic),
            potential: potential_coords.map(|p| self.from_orthonormal(d - 1, p)),
        })
    }
}

/// `d e^τ_σ = Σ_{ρ<σ} [σ:ρ] e^τ_ρ − (−1)^d Σ_{κ>τ} [κ:τ] e^κ_σ`.
fn assemble_d(complex: &CellComplex, source: &FormBasis, target: &FormBasis) -> DMatrix<f64> {
    let d = source.degree;
    let sign = if d.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut m = DMatrix::zeros(target.len(), source.len());
    for (j, &(tau, sigma)) in source.elements.iter().enumerate() {
        if sigma.dim > 0 {
            for inc in complex.faces(sigma) {
                let rho = CellId::new(sigma.dim - 1, inc.cell);
                let i = target
                    .index_of(tau, rho)
                    .expect("faces of closure cells stay local");
                m[(i, j)] += f64::from(inc.sign);
            }
        }
        for inc in complex.cofaces(tau) {
            let kappa = CellId::new(tau.dim + 1, inc.cell);
            let i = target
                .index_of(kappa, sigma)
                .expect("closure grows with cofaces");
            m[(i, j)] -= sign * f64::from(inc.sign);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::homology::betti_oracle;
    use crate::random::{self, seeded};

    fn single_edge() -> CellComplex {
        // u = d0:0, v = d0:1, ∂e = v − u
        generators::path(2).unwrap()
    }

    fn max_abs(m: &DMatrix<f64>) -> f64 {
        m.iter().fold(0.0, |a, &x| a.max(x.abs()))
    }

    #[test]
    fn basis_sizes() {
        let e = single_edge();
        let b0 = FormBasis::new(&e, 0);
        assert_eq!(b0.len(), 3);
        assert!(b0.elements().iter().all(|(t, s)| t == s));
        let b1 = FormBasis::new(&e, 1);
        let e0 = CellId::new(1, 0);
        assert_eq!(
            b1.elements(),
            &[(e0, CellId::new(0, 0)), (e0, CellId::new(0, 1))]
        );
        // one triangle: 3 face-edge pairs and 6 edge-vertex pairs
        let tri = generators::polygon_surface(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(FormBasis::new(&tri, 1).len(), 9);
        assert_eq!(FormBasis::new(&tri, 2).len(), 3);
    }

    #[test]
    fn d_of_function_on_single_edge() {
        let e = single_edge();
        let forms = FormComplex::new(&e);
        // f_u = 2, f_v = 5, f_e = 11
        let f = Form::new(forms.basis(0), DVector::from_vec(vec![2.0, 5.0, 11.0])).unwrap();
        let df = forms.apply_d(&f).unwrap();
        let e0 = CellId::new(1, 0);
        let u = CellId::new(0, 0);
        let v = CellId::new(0, 1);
        // ω^e_σ carries the incidence sign: raw coefficient = [e:σ]·(f_e − f_σ)
        assert_eq!(df.coefficient(forms.basis(1), e0, u), -(11.0 - 2.0));
        assert_eq!(df.coefficient(forms.basis(1), e0, v), 11.0 - 5.0);
    }

    #[test]
    fn constant_function_is_closed() {
        let cube = generators::cube();
        let forms = FormComplex::new(&cube);
        let f = Form::new(
            forms.basis(0),
            DVector::from_element(forms.basis(0).len(), 3.5),
        )
        .unwrap();
        assert!(forms
            .apply_d(&f)
            .unwrap()
            .coefficients()
            .iter()
            .all(|&x| x == 0.0));
    }

    #[test]
    fn d_squared_vanishes_exactly() {
        for c in [
            generators::cube(),
            generators::genus2(),
            generators::complete(4).unwrap(),
        ] {
            let forms = FormComplex::new(&c);
            for d in 0..c.dim().saturating_sub(1) {
                let prod = forms.d_elementary(d + 1).unwrap() * forms.d_elementary(d).unwrap();
                assert_eq!(max_abs(&prod), 0.0);
            }
        }
    }

    #[test]
    fn d_matches_chain_definition() {
        // dω(c) = ∂(ω(c)) − (−1)^d ω(∂c), evaluated on every cell
        let oct = generators::octahedron();
        let forms = FormComplex::new(&oct);
        let mut rng = seeded(4);
        for d in 0..2 {
            let basis = forms.basis(d);
            let u = Form::new(
                basis,
                DVector::from_vec(random::values(basis.len(), &mut rng)),
            )
            .unwrap();
            let du = forms.apply_d(&u).unwrap();
            let sign = if d.is_multiple_of(2) { 1.0 } else { -1.0 };
            for cell in oct.cells() {
                let chain = Chain::cell(cell);
                let left = oct.boundary(&u.apply(basis, &chain));
                let right = u.apply(basis, &oct.boundary(&chain));
                let got = du.apply(forms.basis(d + 1), &chain);
                for c in oct.cells() {
                    let expected = left.get(c) - sign * right.get(c);
                    assert!((got.get(c) - expected).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn dstar_on_single_edge() {
        let e = single_edge();
        let forms = FormComplex::new(&e);
        let e0 = CellId::new(1, 0);
        let u = CellId::new(0, 0);
        let v = CellId::new(0, 1);
        // ω^e_v = 2, ω^e_u = 3; raw coefficient = sign·ω
        let omega = Form::from_entries(forms.basis(1), [((e0, v), 2.0), ((e0, u), -3.0)]).unwrap();
        let f = forms.apply_dstar(&omega).unwrap();
        let b0 = forms.basis(0);
        assert!((f.coefficient(b0, v, v) + 2.0).abs() < 1e-15);
        assert!((f.coefficient(b0, u, u) + 3.0).abs() < 1e-15);
        assert!((f.coefficient(b0, e0, e0) - 5.0).abs() < 1e-15);
    }

    #[test]
    fn projected_adjoint_matches_transpose() {
        let mut rng = seeded(8);
        for c in [
            generators::cycle(3).unwrap(),
            generators::cube(),
            generators::octahedron(),
        ] {
            for weighted in [c.clone(), random::reweighted(&c, &mut rng)] {
                let forms = FormComplex::new(&weighted);
                for d in 1..=weighted.dim() {
                    let a = forms.dstar_op(d).unwrap().matrix;
                    let b = forms.dstar_projected(d).unwrap().matrix;
                    assert!(max_abs(&(a - b)) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn adjointness_with_random_weights() {
        let mut rng = seeded(21);
        let oct = random::reweighted(&generators::octahedron(), &mut rng);
        let forms = FormComplex::new(&oct);
        for _ in 0..100 {
            for d in 1..=2 {
                let u = Form::new(
                    forms.basis(d),
                    DVector::from_vec(random::values(forms.basis(d).len(), &mut rng)),
                )
                .unwrap();
                let v = Form::new(
                    forms.basis(d - 1),
                    DVector::from_vec(random::values(forms.basis(d - 1).len(), &mut rng)),
                )
                .unwrap();
                let lhs = forms.inner(&forms.apply_dstar(&u).unwrap(), &v);
                let rhs = forms.inner(&u, &forms.apply_d(&v).unwrap());
                assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0));
            }
        }
    }

    #[test]
    fn laplacian_basics() {
        let point = CellComplex::from_boundaries(1, vec![], None).unwrap();
        let forms = FormComplex::new(&point);
        let lap = forms.laplacian(0).unwrap().matrix;
        assert_eq!(lap.shape(), (1, 1));
        assert_eq!(lap[(0, 0)], 0.0);

        let path = generators::path(4).unwrap();
        let forms = FormComplex::new(&path);
        let ones = DVector::from_element(forms.basis(0).len(), 1.0);
        assert!((forms.laplacian(0).unwrap().matrix * ones).norm() < 1e-14);

        let c5 = generators::cycle(5).unwrap();
        let forms = FormComplex::new(&c5);
        assert!(forms.laplacian(1).unwrap().matrix.trace() > 0.0);
    }

    #[test]
    fn laplacian_symmetric_and_consistent() {
        let mut rng = seeded(2);
        let t = random::reweighted(&generators::torus_grid(3, 4).unwrap(), &mut rng);
        let forms = FormComplex::new(&t);
        for d in 0..=2 {
            let lap = forms.laplacian(d).unwrap().matrix;
            let raw = forms.laplacian_elementary(d).unwrap();
            assert!(max_abs(&(&lap - forms.conjugate_to_orthonormal(d, &raw))) < 1e-12);
            let spectrum = forms.spectrum(d, 1e-8).unwrap();
            assert!(spectrum.eigenvalues.iter().all(|&l| l >= -1e-10));
        }
        assert!(matches!(
            forms.laplacian(3),
            Err(FormError::DimensionOutOfRange { .. })
        ));
        assert!(matches!(
            forms.dstar_op(0),
            Err(FormError::DimensionOutOfRange { .. })
        ));
        assert!(matches!(
            forms.d_op(2),
            Err(FormError::DimensionOutOfRange { .. })
        ));
    }

    #[test]
    fn harmonic_dimensions_match_betti_numbers() {
        let cases = [
            (generators::tetrahedron(), vec![1, 0, 1]),
            (generators::torus_grid(4, 4).unwrap(), vec![1, 2, 1]),
            (generators::cycle(5).unwrap(), vec![1, 1]),
        ];
        for (c, expected) in cases {
            let forms = FormComplex::new(&c);
            for (d, &b) in expected.iter().enumerate() {
                assert_eq!(betti_oracle(&c, d), b);
                assert_eq!(forms.harmonic_dimension(d, 1e-8).unwrap(), b);
            }
        }
    }

    #[test]
    fn kernel_count_invariant_under_weight_scaling() {
        let c5 = generators::cycle(5).unwrap();
        let scaled = c5.with_weights(vec![vec![7.0; 5], vec![7.0; 5]]).unwrap();
        for d in 0..=1 {
            let a = FormComplex::new(&c5).harmonic_dimension(d, 1e-8).unwrap();
            let b = FormComplex::new(&scaled)
                .harmonic_dimension(d, 1e-8)
                .unwrap();
            assert_eq!(a, b);
        }
        let spectrum = FormComplex::new(&c5).spectrum(0, 1e-8).unwrap();
        assert_eq!(spectrum.harmonic_dimension().unwrap(), 1);
    }

    #[test]
    fn ambiguous_tolerance_is_reported() {
        let c5 = generators::cycle(5).unwrap();
        let forms = FormComplex::new(&c5);
        let spectrum = forms.spectrum(1, 1e-8).unwrap();
        let smallest_positive = spectrum.min_nonzero().unwrap();
        let max = spectrum.max_eigenvalue();
        let ambiguous = Spectrum {
            zero_tolerance: smallest_positive / max.max(1.0) / 2.0,
            ..spectrum
        };
        assert!(matches!(
            ambiguous.harmonic_dimension(),
            Err(FormError::ToleranceAmbiguous { .. })
        ));
    }

    #[test]
    fn harmonic_eigenvectors_are_closed_and_coclosed() {
        let t = generators::torus_grid(4, 4).unwrap();
        let forms = FormComplex::new(&t);
        let spectrum = forms.spectrum(1, 1e-8).unwrap();
        let dim = spectrum.harmonic_dimension().unwrap();
        let d = forms.d_op(1).unwrap().matrix;
        let ds = forms.dstar_op(1).unwrap().matrix;
        for k in 0..dim {
            let v = spectrum.eigenvectors.column(k);
            assert!((&d * v).norm() <= 1e-8 * v.norm());
            assert!((&ds * v).norm() <= 1e-8 * v.norm());
        }
    }

    #[test]
    fn hodge_decomposition() {
        let c5 = generators::cycle(5).unwrap();
        let forms = FormComplex::new(&c5);
        let mut rng = seeded(6);
        let b1 = forms.basis(1);
        let u = Form::new(b1, DVector::from_vec(random::values(b1.len(), &mut rng))).unwrap();
        let split = forms.hodge_decompose(&u, 1e-8).unwrap();
        assert!(forms.norm(&split.harmonic) > 0.0);
        let potential = split.potential.unwrap();
        let rebuilt =
            split.harmonic.coefficients() + forms.apply_d(&potential).unwrap().coefficients();
        let residual = Form::new(b1, u.coefficients() - rebuilt).unwrap();
        assert!(forms.norm(&residual) <= 1e-9 * forms.norm(&u));
        let lap_h = forms.apply_laplacian(&split.harmonic).unwrap();
        assert!(forms.norm(&lap_h) <= 1e-9 * forms.norm(&u));

        // exact forms have no harmonic part
        let b0 = forms.basis(0);
        let v = Form::new(b0, DVector::from_vec(random::values(b0.len(), &mut rng))).unwrap();
        let dv = forms.apply_d(&v).unwrap();
        let split = forms.hodge_decompose(&dv, 1e-8).unwrap();
        assert!(forms.norm(&split.harmonic) <= 1e-10 * forms.norm(&dv));

        // harmonic forms decompose trivially
        let spectrum = forms.spectrum(1, 1e-8).unwrap();
        let h = forms.from_orthonormal(1, spectrum.eigenvectors.column(0).into_owned());
        let split = forms.hodge_decompose(&h, 1e-8).unwrap();
        assert!(
            forms.norm(&Form::new(b1, split.harmonic.coefficients() - h.coefficients()).unwrap())
                < 1e-12
        );
        assert!(forms.norm(&split.potential.unwrap()) < 1e-12);
    }

    #[test]
    fn hodge_rejects_non_closed_forms() {
        let cube = generators::cube();
        let forms = FormComplex::new(&cube);
        let mut rng = seeded(1);
        let b1 = forms.basis(1);
        let u = Form::new(b1, DVector::from_vec(random::values(b1.len(), &mut rng))).unwrap();
        assert!(matches!(
            forms.hodge_decompose(&u, 1e-8),
            Err(FormError::NotClosed { .. })
        ));
    }

    #[test]
    fn non_local_entries_are_rejected() {
        let cube = generators::cube();
        let basis = FormBasis::new(&cube, 1);
        let err = Form::from_entries(&basis, [((CellId::new(2, 0), CellId::new(0, 7)), 1.0)])
            .unwrap_err();
        assert!(matches!(err, FormError::NotLocal { .. }));
    }
}
