//! Functions, 1-forms and combinatorial vector fields.
//!
//! A function assigns a real number to every cell (all dimensions). 1-forms
//! and vector fields both carry one coefficient per incidence vector
//! `(τ>σ)`, stored in the order of [`CellComplex::vectors`]. A 1-form
//! coefficient `ω^τ_σ` is sign-free: the form sends `τ` to
//! `Σ_σ ω^τ_σ [τ:σ] σ`, so the elementary-basis coefficient is `[τ:σ]·ω^τ_σ`.
//!
//! Signs follow the combinatorial definitions, not the smooth ones: `div`
//! carries a minus sign on the coface sum, and Green's theorem reads
//! `∫⟨grad f, X⟩ = ∫ f div X` without a sign flip.

use std::collections::BTreeMap;

use nalgebra::DVector;
use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::complex::{CellComplex, CellId};
use crate::forms::{Form, FormBasis, FormComplex};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CalculusError {
    #[error("no value supplied for cell {0}")]
    MissingValue(CellId),
    #[error("value supplied for unknown cell {0}")]
    UnknownCell(CellId),
    #[error("{what}: expected {expected} values, got {got}")]
    ShapeMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("({tau}, {sigma}) is not an incidence vector")]
    NotAVector { tau: CellId, sigma: CellId },
}

/// A real value on every cell, `f(σ) = f_σ σ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CellFunction {
    values: Vec<Vec<f64>>,
}

impl CellFunction {
    pub fn from_layers(
        complex: &CellComplex,
        values: Vec<Vec<f64>>,
    ) -> Result<Self, CalculusError> {
        let counts = complex.counts();
        if values.len() != counts.len() {
            return Err(CalculusError::ShapeMismatch {
                what: "dimensions",
                expected: counts.len(),
                got: values.len(),
            });
        }
        for (layer, &n) in values.iter().zip(&counts) {
            if layer.len() != n {
                return Err(CalculusError::ShapeMismatch {
                    what: "cells",
                    expected: n,
                    got: layer.len(),
                });
            }
        }
        Ok(Self { values })
    }

    /// Every cell must be present; absent values are an error, not zero.
    pub fn from_map(
        complex: &CellComplex,
        map: &BTreeMap<CellId, f64>,
    ) -> Result<Self, CalculusError> {
        if let Some(&unknown) = map.keys().find(|c| !complex.contains(**c)) {
            return Err(CalculusError::UnknownCell(unknown));
        }
        let mut values: Vec<Vec<f64>> =
            complex.counts().into_iter().map(|n| vec![0.0; n]).collect();
        for cell in complex.cells() {
            values[cell.dim][cell.index] =
                *map.get(&cell).ok_or(CalculusError::MissingValue(cell))?;
        }
        Ok(Self { values })
    }

    pub fn from_fn(complex: &CellComplex, mut f: impl FnMut(CellId) -> f64) -> Self {
        Self {
            values: complex
                .counts()
                .into_iter()
                .enumerate()
                .map(|(d, n)| (0..n).map(|i| f(CellId::new(d, i))).collect())
                .collect(),
        }
    }

    pub fn constant(complex: &CellComplex, value: f64) -> Self {
        Self::from_fn(complex, |_| value)
    }

    pub fn zeros(complex: &CellComplex) -> Self {
        Self::constant(complex, 0.0)
    }

    /// Panics if `cell` is not in the complex.
    pub fn at(&self, cell: CellId) -> f64 {
        self.values[cell.dim][cell.index]
    }

    pub fn layers(&self) -> &[Vec<f64>] {
        &self.values
    }

    /// `(cell, value)` in cell order.
    pub fn iter(&self) -> impl Iterator<Item = (CellId, f64)> + '_ {
        self.values.iter().enumerate().flat_map(|(d, layer)| {
            layer
                .iter()
                .enumerate()
                .map(move |(i, &v)| (CellId::new(d, i), v))
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.iter().fold(0.0, |m, (_, v)| m.max(v.abs()))
    }

    /// The function as a 0-form, `e^σ_σ ↦ f_σ`.
    pub fn to_form(&self, basis: &FormBasis) -> Form {
        let mut x = DVector::zeros(basis.len());
        for (cell, v) in self.iter() {
            x[basis
                .index_of(cell, cell)
                .expect("degree-0 basis holds every cell")] = v;
        }
        Form::new(basis, x).expect("sized from basis")
    }

    pub fn from_form(complex: &CellComplex, basis: &FormBasis, form: &Form) -> Self {
        Self::from_fn(complex, |c| form.coefficient(basis, c, c))
    }
}

macro_rules! vector_valued {
    ($name:ident, $what:literal) => {
        impl $name {
            pub fn new(
                complex: &CellComplex,
                coefficients: Vec<f64>,
            ) -> Result<Self, CalculusError> {
                let expected = complex.vectors().len();
                if coefficients.len() != expected {
                    return Err(CalculusError::ShapeMismatch {
                        what: $what,
                        expected,
                        got: coefficients.len(),
                    });
                }
                Ok(Self { coefficients })
            }

            pub fn zeros(complex: &CellComplex) -> Self {
                Self {
                    coefficients: vec![0.0; complex.vectors().len()],
                }
            }

            /// Builds from `(τ, σ) → value`; omitted vectors are zero.
            pub fn from_entries(
                complex: &CellComplex,
                entries: impl IntoIterator<Item = ((CellId, CellId), f64)>,
            ) -> Result<Self, CalculusError> {
                let mut out = Self::zeros(complex);
                for ((tau, sigma), v) in entries {
                    let k = complex
                        .vector_index(tau, sigma)
                        .ok_or(CalculusError::NotAVector { tau, sigma })?;
                    out.coefficients[k] = v;
                }
                Ok(out)
            }

            /// Coefficients in the order of [`CellComplex::vectors`].
            pub fn coefficients(&self) -> &[f64] {
                &self.coefficients
            }

            pub fn coefficients_mut(&mut self) -> &mut [f64] {
                &mut self.coefficients
            }

            /// Coefficient at the vector with index `k`.
            pub fn get(&self, k: usize) -> f64 {
                self.coefficients[k]
            }

            /// Coefficient at `(τ>σ)`, `None` when that is not a vector.
            pub fn at(&self, complex: &CellComplex, tau: CellId, sigma: CellId) -> Option<f64> {
                complex
                    .vector_index(tau, sigma)
                    .map(|k| self.coefficients[k])
            }

            pub fn max_abs(&self) -> f64 {
                self.coefficients.iter().fold(0.0, |m, v| m.max(v.abs()))
            }
        }
    };
}

/// A 1-form, one coefficient `ω^τ_σ` per incidence vector.
#[derive(Clone, Debug, PartialEq)]
pub struct OneForm {
    coefficients: Vec<f64>,
}

vector_valued!(OneForm, "1-form coefficients");

impl OneForm {
    /// The degree-1 [`Form`], with elementary coefficient `[τ:σ]·ω^τ_σ`.
    pub fn to_form(&self, complex: &CellComplex, basis: &FormBasis) -> Form {
        let mut x = DVector::zeros(basis.len());
        for (v, &c) in complex.vectors().iter().zip(&self.coefficients) {
            x[basis
                .index_of(v.tau, v.sigma)
                .expect("vectors are degree-1 pairs")] = f64::from(v.sign) * c;
        }
        Form::new(basis, x).expect("sized from basis")
    }

    pub fn from_form(complex: &CellComplex, basis: &FormBasis, form: &Form) -> Self {
        Self {
            coefficients: complex
                .vectors()
                .iter()
                .map(|v| f64::from(v.sign) * form.coefficient(basis, v.tau, v.sigma))
                .collect(),
        }
    }
}

/// A combinatorial vector field `X(σ) = Σ_{τ>σ} X^τ_σ [τ:σ] τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CombVectorField {
    coefficients: Vec<f64>,
}

vector_valued!(CombVectorField, "vector field coefficients");

/// `df`, with `ω^τ_σ = f_τ − f_σ`.
pub fn derivative_of_function(complex: &CellComplex, f: &CellFunction) -> OneForm {
    OneForm {
        coefficients: complex
            .vectors()
            .iter()
            .map(|v| f.at(v.tau) - f.at(v.sigma))
            .collect(),
    }
}

/// True iff `df = 0` exactly.
pub fn is_locally_constant(complex: &CellComplex, f: &CellFunction) -> bool {
    derivative_of_function(complex, f)
        .coefficients
        .iter()
        .all(|&c| c == 0.0)
}

/// Connected-component label of every cell, by union-find over face
/// incidences. Labels are global cell indices of a representative.
pub fn component_labels(complex: &CellComplex) -> Vec<usize> {
    let mut uf = UnionFind::<usize>::new(complex.len());
    for v in complex.vectors() {
        uf.union(complex.global_index(v.tau), complex.global_index(v.sigma));
    }
    uf.into_labeling()
}

/// True iff `f` takes a single value on each connected component.
pub fn is_constant_on_components(complex: &CellComplex, f: &CellFunction) -> bool {
    let labels = component_labels(complex);
    let mut seen: BTreeMap<usize, f64> = BTreeMap::new();
    f.iter()
        .all(|(cell, v)| *seen.entry(labels[complex.global_index(cell)]).or_insert(v) == v)
}

/// `dω` as a 2-form.
///
/// The elementary coefficient on `e^μ_σ` is `Σ_τ [μ:τ][τ:σ](ω^μ_τ + ω^τ_σ)`
/// over the cells `μ > τ > σ`; in a regular complex there are two such `τ`
/// with opposite sign products, so this is `±(ω^μ_τ + ω^τ_σ − ω^μ_{τ'} − ω^{τ'}_σ)`.
pub fn one_form_d(complex: &CellComplex, omega: &OneForm) -> Form {
    let basis = FormBasis::new(complex, 2);
    let mut x = DVector::zeros(basis.len());
    for (k, &(mu, sigma)) in basis.elements().iter().enumerate() {
        for inc in complex.faces(mu) {
            let tau = CellId::new(mu.dim - 1, inc.cell);
            if let (Some(upper), Some(lower)) = (
                complex.vector_index(mu, tau),
                complex.vector_index(tau, sigma),
            ) {
                let sign = f64::from(inc.sign) * f64::from(complex.vectors()[lower].sign);
                x[k] += sign * (omega.coefficients[upper] + omega.coefficients[lower]);
            }
        }
    }
    Form::new(&basis, x).expect("sized from basis")
}

/// `dω = 0`, up to `1e-12 · max(1, max|ω|)` to absorb round-off.
pub fn is_closed(complex: &CellComplex, omega: &OneForm) -> bool {
    let tol = 1e-12 * omega.max_abs().max(1.0);
    one_form_d(complex, omega)
        .coefficients()
        .iter()
        .all(|c| c.abs() <= tol)
}

/// Every quadruple `μ > τ, τ' > σ` with `τ ≠ τ'` satisfies
/// `ω^μ_τ + ω^τ_σ = ω^μ_{τ'} + ω^{τ'}_σ`, to the same tolerance as
/// [`is_closed`].
pub fn satisfies_quadruple_identity(complex: &CellComplex, omega: &OneForm) -> bool {
    let tol = 1e-12 * omega.max_abs().max(1.0);
    let vectors = complex.vectors();
    for mu in complex.cells().filter(|c| c.dim >= 2) {
        let mut paths: BTreeMap<CellId, Vec<f64>> = BTreeMap::new();
        for &upper in complex.vectors_below(mu) {
            let tau = vectors[upper].sigma;
            for &lower in complex.vectors_below(tau) {
                paths
                    .entry(vectors[lower].sigma)
                    .or_default()
                    .push(omega.coefficients[upper] + omega.coefficients[lower]);
            }
        }
        for sums in paths.values() {
            let (lo, hi) = sums
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &s| {
                    (a.min(s), b.max(s))
                });
            if hi - lo > tol {
                return false;
            }
        }
    }
    true
}

/// `d*ω(σ) = −Σ_{τ>σ} (w_σ/w_τ) ω^τ_σ + Σ_{ρ<σ} (w_ρ/w_σ) ω^σ_ρ`.
pub fn one_form_dstar(complex: &CellComplex, omega: &OneForm) -> CellFunction {
    let mut out = CellFunction::zeros(complex);
    for (v, &c) in complex.vectors().iter().zip(&omega.coefficients) {
        let ratio = complex.weight(v.sigma) / complex.weight(v.tau);
        out.values[v.sigma.dim][v.sigma.index] -= ratio * c;
        out.values[v.tau.dim][v.tau.index] += ratio * c;
    }
    out
}

/// `ω(X)(σ) = Σ_{τ>σ} ω^τ_σ X^τ_σ`.
pub fn pairing(complex: &CellComplex, omega: &OneForm, x: &CombVectorField) -> CellFunction {
    let mut out = CellFunction::zeros(complex);
    for (k, v) in complex.vectors().iter().enumerate() {
        out.values[v.sigma.dim][v.sigma.index] += omega.coefficients[k] * x.coefficients[k];
    }
    out
}

/// `grad(f)^τ_σ = (w_σ/w_τ)(f_τ − f_σ)`.
pub fn grad(complex: &CellComplex, f: &CellFunction) -> CombVectorField {
    CombVectorField {
        coefficients: complex
            .vectors()
            .iter()
            .map(|v| {
                complex.weight(v.sigma) / complex.weight(v.tau) * (f.at(v.tau) - f.at(v.sigma))
            })
            .collect(),
    }
}

/// `div(X)(σ) = −Σ_{τ>σ} X^τ_σ + Σ_{ρ<σ} X^σ_ρ`.
pub fn div(complex: &CellComplex, x: &CombVectorField) -> CellFunction {
    let mut out = CellFunction::zeros(complex);
    for (v, &c) in complex.vectors().iter().zip(&x.coefficients) {
        out.values[v.sigma.dim][v.sigma.index] -= c;
        out.values[v.tau.dim][v.tau.index] += c;
    }
    out
}

/// `⟨X,Y⟩(σ) = Σ_{τ>σ} (w_τ/w_σ) X^τ_σ Y^τ_σ`.
pub fn vf_inner_product(
    complex: &CellComplex,
    x: &CombVectorField,
    y: &CombVectorField,
) -> CellFunction {
    let mut out = CellFunction::zeros(complex);
    for (k, v) in complex.vectors().iter().enumerate() {
        out.values[v.sigma.dim][v.sigma.index] +=
            complex.weight(v.tau) / complex.weight(v.sigma) * x.coefficients[k] * y.coefficients[k];
    }
    out
}

/// `∫_M f = Σ_σ f(σ)` over cells of every dimension.
pub fn integrate(f: &CellFunction) -> f64 {
    f.iter().map(|(_, v)| v).sum()
}

/// Both sides of Green's theorem with the magnitude of their terms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreenCheck {
    /// `∫⟨grad f, X⟩`
    pub lhs: f64,
    /// `∫ f div X`
    pub rhs: f64,
    /// `max(1, Σ|terms|)` over both sides; residuals are judged relative to it.
    pub scale: f64,
}

impl GreenCheck {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

pub fn green_check(complex: &CellComplex, f: &CellFunction, x: &CombVectorField) -> GreenCheck {
    let left = vf_inner_product(complex, &grad(complex, f), x);
    let divx = div(complex, x);
    let right = CellFunction::from_fn(complex, |c| f.at(c) * divx.at(c));
    let magnitude: f64 = left.iter().chain(right.iter()).map(|(_, v)| v.abs()).sum();
    GreenCheck {
        lhs: integrate(&left),
        rhs: integrate(&right),
        scale: magnitude.max(1.0),
    }
}

/// `|∫⟨grad f, X⟩ − ∫ f div X|`.
pub fn green_residual(complex: &CellComplex, f: &CellFunction, x: &CombVectorField) -> f64 {
    green_check(complex, f, x).residual()
}

/// `Δf = d*df`; at unit weights this is `div(grad f)`.
pub fn laplacian_of_function(complex: &CellComplex, f: &CellFunction) -> CellFunction {
    one_form_dstar(complex, &derivative_of_function(complex, f))
}

/// `d*df` through the operator matrices of [`FormComplex`], for cross-checks.
pub fn laplacian_of_function_via_operators(
    forms: &FormComplex<'_>,
    f: &CellFunction,
) -> CellFunction {
    let complex = forms.complex();
    let basis = forms.basis(0);
    let lap = forms
        .apply_laplacian(&f.to_form(basis))
        .expect("degree 0 is in range");
    CellFunction::from_form(complex, basis, &lap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::random::{self, seeded};

    const V: CellId = CellId::new(0, 1);
    const U: CellId = CellId::new(0, 0);
    const E: CellId = CellId::new(1, 0);

    fn edge() -> CellComplex {
        generators::path(2).unwrap()
    }

    fn edge_function(v: f64, u: f64, e: f64) -> CellFunction {
        CellFunction::from_layers(&edge(), vec![vec![u, v], vec![e]]).unwrap()
    }

    #[test]
    fn function_construction() {
        let c = edge();
        let mut map = BTreeMap::new();
        map.insert(U, 1.0);
        map.insert(V, 2.0);
        assert_eq!(
            CellFunction::from_map(&c, &map),
            Err(CalculusError::MissingValue(E))
        );
        map.insert(E, 3.0);
        assert_eq!(
            CellFunction::from_map(&c, &map).unwrap(),
            edge_function(2.0, 1.0, 3.0)
        );
        map.insert(CellId::new(2, 0), 0.0);
        assert!(matches!(
            CellFunction::from_map(&c, &map),
            Err(CalculusError::UnknownCell(_))
        ));
        assert!(CellFunction::from_layers(&c, vec![vec![1.0]]).is_err());
        assert!(OneForm::new(&c, vec![1.0]).is_err());
    }

    #[test]
    fn derivative_on_single_edge() {
        let c = edge();
        let df = derivative_of_function(&c, &edge_function(2.0, 5.0, 11.0));
        assert_eq!(df.at(&c, E, V), Some(9.0));
        assert_eq!(df.at(&c, E, U), Some(6.0));
        assert!(is_locally_constant(&c, &CellFunction::constant(&c, 4.0)));
    }

    #[test]
    fn derivative_matches_operator() {
        let mut rng = seeded(3);
        let cube = random::reweighted(&generators::cube(), &mut rng);
        let forms = FormComplex::new(&cube);
        for _ in 0..20 {
            let f = random::function(&cube, &mut rng);
            let via_op = forms.apply_d(&f.to_form(forms.basis(0))).unwrap();
            let via_op = OneForm::from_form(&cube, forms.basis(1), &via_op);
            let direct = derivative_of_function(&cube, &f);
            for (a, b) in via_op.coefficients().iter().zip(direct.coefficients()) {
                assert!((a - b).abs() <= 1e-13);
            }
        }
    }

    #[test]
    fn local_constancy() {
        let c = edge();
        assert!(!is_locally_constant(&c, &edge_function(1.0, 0.0, 0.0)));
        let two = CellComplex::from_boundaries(2, vec![], None).unwrap();
        let f = CellFunction::from_layers(&two, vec![vec![1.0, -3.0]]).unwrap();
        assert!(is_locally_constant(&two, &f));
        assert!(is_constant_on_components(&two, &f));

        // two disjoint triangles, constant per component
        let g = generators::graph(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let f = CellFunction::from_fn(&g, |cell| {
            let vertex = if cell.dim == 0 {
                cell.index
            } else {
                g.faces(cell)[0].cell
            };
            if vertex < 3 {
                1.0
            } else {
                2.0
            }
        });
        assert!(is_locally_constant(&g, &f));
        assert!(is_constant_on_components(&g, &f));
        let h = CellFunction::from_fn(&g, |cell| if cell == CellId::new(0, 0) { 5.0 } else { 1.0 });
        assert!(!is_locally_constant(&g, &h));
        assert!(!is_constant_on_components(&g, &h));
    }

    #[test]
    fn closedness() {
        let mut rng = seeded(5);
        let oct = generators::octahedron();
        for _ in 0..20 {
            let f = random::function(&oct, &mut rng);
            let df = derivative_of_function(&oct, &f);
            assert!(is_closed(&oct, &df));
            assert!(satisfies_quadruple_identity(&oct, &df));
            let omega = random::one_form(&oct, &mut rng);
            assert!(!is_closed(&oct, &omega));
            assert!(!satisfies_quadruple_identity(&oct, &omega));
        }

        // a triangle whose edge-vertex values break one quadruple
        let tri = generators::polygon_surface(3, &[vec![0, 1, 2]]).unwrap();
        let e01 = CellId::new(1, 0);
        let omega = OneForm::from_entries(&tri, [((e01, CellId::new(0, 0)), 1.0)]).unwrap();
        assert!(!is_closed(&tri, &omega));
        assert!(!satisfies_quadruple_identity(&tri, &omega));

        // graphs have no quadruples
        let k4 = generators::complete(4).unwrap();
        let omega = random::one_form(&k4, &mut rng);
        assert!(is_closed(&k4, &omega));
        assert!(satisfies_quadruple_identity(&k4, &omega));
    }

    #[test]
    fn one_form_d_matches_operator() {
        let mut rng = seeded(9);
        let t = generators::torus_grid(3, 3).unwrap();
        let forms = FormComplex::new(&t);
        let omega = random::one_form(&t, &mut rng);
        let via_op = forms.apply_d(&omega.to_form(&t, forms.basis(1))).unwrap();
        let direct = one_form_d(&t, &omega);
        assert!((via_op.coefficients() - direct.coefficients()).amax() < 1e-14);
    }

    #[test]
    fn dstar_on_single_edge() {
        let c = edge();
        let omega = OneForm::from_entries(&c, [((E, V), 2.0), ((E, U), 3.0)]).unwrap();
        let g = one_form_dstar(&c, &omega);
        assert_eq!((g.at(V), g.at(U), g.at(E)), (-2.0, -3.0, 5.0));
        assert_eq!(
            one_form_dstar(&c, &OneForm::zeros(&c)),
            CellFunction::zeros(&c)
        );
    }

    #[test]
    fn dstar_of_df_on_triangle_graph() {
        let mut rng = seeded(10);
        let c3 = generators::cycle(3).unwrap();
        let f = random::function(&c3, &mut rng);
        let g = one_form_dstar(&c3, &derivative_of_function(&c3, &f));
        for v in c3.cells_of_dim(0) {
            let expected: f64 = -c3
                .cofaces(v)
                .iter()
                .map(|inc| f.at(CellId::new(1, inc.cell)) - f.at(v))
                .sum::<f64>();
            assert!((g.at(v) - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn dstar_matches_operator_with_weights() {
        let mut rng = seeded(11);
        for base in [
            generators::octahedron(),
            generators::torus_grid(3, 4).unwrap(),
        ] {
            let c = random::reweighted(&base, &mut rng);
            let forms = FormComplex::new(&c);
            for _ in 0..10 {
                let omega = random::one_form(&c, &mut rng);
                let via_op = forms
                    .apply_dstar(&omega.to_form(&c, forms.basis(1)))
                    .unwrap();
                let via_op = CellFunction::from_form(&c, forms.basis(0), &via_op);
                let direct = one_form_dstar(&c, &omega);
                for ((_, a), (_, b)) in via_op.iter().zip(direct.iter()) {
                    assert!((a - b).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn pairing_grad_and_inner_product() {
        let c = edge();
        let omega = OneForm::from_entries(&c, [((E, V), 2.0), ((E, U), 3.0)]).unwrap();
        let x = CombVectorField::from_entries(&c, [((E, V), 5.0), ((E, U), 7.0)]).unwrap();
        let p = pairing(&c, &omega, &x);
        assert_eq!((p.at(V), p.at(U), p.at(E)), (10.0, 21.0, 0.0));
        assert_eq!(
            integrate(&pairing(&c, &omega, &CombVectorField::zeros(&c))),
            0.0
        );
        let inner = vf_inner_product(&c, &x, &x);
        assert_eq!(inner.at(V), 25.0);

        let g = grad(&c, &edge_function(1.0, 0.0, 3.0));
        assert_eq!(g.at(&c, E, V), Some(2.0));
        let weighted = c.with_weights(vec![vec![1.0, 2.0], vec![4.0]]).unwrap();
        let g = grad(&weighted, &edge_function(1.0, 0.0, 7.0));
        assert_eq!(g.at(&weighted, E, V), Some(3.0));
        assert!(grad(&c, &CellFunction::constant(&c, 2.0))
            .coefficients()
            .iter()
            .all(|&v| v == 0.0));
    }

    #[test]
    fn df_of_x_is_inner_product_with_grad() {
        let mut rng = seeded(12);
        let cube = random::reweighted(&generators::cube(), &mut rng);
        for _ in 0..20 {
            let f = random::function(&cube, &mut rng);
            let x = random::vector_field(&cube, &mut rng);
            let df = derivative_of_function(&cube, &f);
            let lhs = pairing(&cube, &df, &x);
            let rhs = vf_inner_product(&cube, &x, &grad(&cube, &f));
            for ((cell, a), (_, b)) in lhs.iter().zip(rhs.iter()) {
                assert!((a - b).abs() <= 1e-13);
                let expected: f64 = cube
                    .vectors_above(cell)
                    .iter()
                    .map(|&k| x.get(k) * (f.at(cube.vectors()[k].tau) - f.at(cell)))
                    .sum();
                assert!((a - expected).abs() <= 1e-13);
            }
            assert!(vf_inner_product(&cube, &x, &x)
                .iter()
                .all(|(_, v)| v >= 0.0));
        }
    }

    #[test]
    fn divergence() {
        let c = edge();
        let x = CombVectorField::from_entries(&c, [((E, V), 2.0), ((E, U), 3.0)]).unwrap();
        let d = div(&c, &x);
        assert_eq!((d.at(V), d.at(U), d.at(E)), (-2.0, -3.0, 5.0));
        let mut rng = seeded(13);
        let oct = generators::octahedron();
        for _ in 0..100 {
            let x = random::vector_field(&oct, &mut rng);
            assert!(integrate(&div(&oct, &x)).abs() <= 1e-12);
        }
    }

    #[test]
    fn integrals() {
        let k4 = generators::complete(4).unwrap();
        assert_eq!(integrate(&CellFunction::constant(&k4, 1.0)), 10.0);
        let cube = generators::cube();
        assert_eq!(integrate(&CellFunction::constant(&cube, 1.0)), 26.0);
        let indicator =
            CellFunction::from_fn(&cube, |c| if c == CellId::new(2, 3) { 1.0 } else { 0.0 });
        assert_eq!(integrate(&indicator), 1.0);
    }

    #[test]
    fn green_theorem() {
        let mut rng = seeded(14);
        let torus = random::reweighted(&generators::torus_grid(4, 3).unwrap(), &mut rng);
        for _ in 0..50 {
            let f = random::function(&torus, &mut rng);
            let x = random::vector_field(&torus, &mut rng);
            let check = green_check(&torus, &f, &x);
            assert!(check.residual() <= 1e-12 * check.scale);
            assert_eq!(
                green_residual(&torus, &f, &CombVectorField::zeros(&torus)),
                0.0
            );
            let one = CellFunction::constant(&torus, 1.0);
            assert!(green_residual(&torus, &one, &x) <= 1e-12);
        }
    }

    #[test]
    fn function_laplacian() {
        let c = edge();
        let lap = laplacian_of_function(&c, &edge_function(0.0, 0.0, 1.0));
        assert_eq!((lap.at(V), lap.at(U), lap.at(E)), (-1.0, -1.0, 2.0));
        assert_eq!(integrate(&lap), 0.0);
        assert_eq!(
            laplacian_of_function(&c, &CellFunction::constant(&c, 3.0)),
            CellFunction::zeros(&c)
        );

        let mut rng = seeded(15);
        let ico = generators::icosahedron();
        let forms = FormComplex::new(&ico);
        for _ in 0..100 {
            let f = random::function(&ico, &mut rng);
            let lap = laplacian_of_function(&ico, &f);
            assert!(integrate(&lap).abs() <= 1e-12);
            let dg = div(&ico, &grad(&ico, &f));
            for ((cell, a), (_, b)) in lap.iter().zip(dg.iter()) {
                assert!((a - b).abs() <= 1e-13);
                // the unweighted expansion of Δf
                let up: f64 = ico
                    .vectors_above(cell)
                    .iter()
                    .map(|&k| f.at(ico.vectors()[k].tau) - f.at(cell))
                    .sum();
                let down: f64 = ico
                    .vectors_below(cell)
                    .iter()
                    .map(|&k| f.at(cell) - f.at(ico.vectors()[k].sigma))
                    .sum();
                assert!((a - (-up + down)).abs() <= 1e-13);
            }
        }
        let f = random::function(&ico, &mut rng);
        let via_op = laplacian_of_function_via_operators(&forms, &f);
        let direct = laplacian_of_function(&ico, &f);
        for ((_, a), (_, b)) in via_op.iter().zip(direct.iter()) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn weighted_function_laplacian_integrates_to_zero() {
        let mut rng = seeded(16);
        let ico = random::reweighted(&generators::icosahedron(), &mut rng);
        let forms = FormComplex::new(&ico);
        for _ in 0..20 {
            let f = random::function(&ico, &mut rng);
            let lap = laplacian_of_function(&ico, &f);
            assert!(integrate(&lap).abs() <= 1e-12);
            let via_op = laplacian_of_function_via_operators(&forms, &f);
            for ((_, a), (_, b)) in via_op.iter().zip(lap.iter()) {
                assert!((a - b).abs() <= 1e-11);
            }
        }
    }

    #[test]
    fn orientation_flips_leave_identities_unchanged() {
        let mut rng = seeded(17);
        let cube = random::reweighted(&generators::cube(), &mut rng);
        let f = random::function(&cube, &mut rng);
        let x = random::vector_field(&cube, &mut rng);
        let df = derivative_of_function(&cube, &f);
        for cell in [CellId::new(1, 4), CellId::new(2, 2), CellId::new(1, 0)] {
            let flipped = cube.with_flipped_orientation(cell).unwrap();
            let g = CellFunction::from_layers(&flipped, f.layers().to_vec()).unwrap();
            let y = CombVectorField::new(&flipped, x.coefficients().to_vec()).unwrap();
            assert!(
                (green_residual(&cube, &f, &x) - green_residual(&flipped, &g, &y)).abs() < 1e-12
            );
            let a = integrate(&laplacian_of_function(&cube, &f));
            let b = integrate(&laplacian_of_function(&flipped, &g));
            assert!((a - b).abs() < 1e-12);
            let dg = OneForm::new(&flipped, df.coefficients().to_vec()).unwrap();
            assert!(is_closed(&flipped, &dg));
            let omega = random::one_form(&cube, &mut rng);
            let omega_flipped = OneForm::new(&flipped, omega.coefficients().to_vec()).unwrap();
            assert_eq!(
                is_closed(&cube, &omega),
                is_closed(&flipped, &omega_flipped)
            );
        }
    }
}
