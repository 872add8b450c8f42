//! Ricci curvature on incidence vectors and the Gauss–Bonnet theorems.
//!
//! The Ricci curvature of a 1-form at a vector `(τ>σ)` is defined through
//! the Bochner–Weitzenböck formula,
//! `Ric(ω) = ⟨Δω,ω⟩ − ½|∇ω|² + ½Δ♭|ω|²`, where `|∇ω|²` and `Δ♭|ω|²` are sums
//! over the 0- and 2-neighbors of the vector. A closed form in terms of the
//! neighbor counts is also provided; see [`CurvatureContext`] for both.
//!
//! The Gauss curvatures `g_v`, `g_f` and the scalar curvatures `S` depend
//! only on degrees, and the Gauss–Bonnet totals are checked in integers.

mod gauss_bonnet;
mod neighbors;
mod ricci;

use thiserror::Error;

use crate::complex::{CellId, QuasiconvexViolation};
use crate::forms::FormError;

pub use gauss_bonnet::{
    classify, gauss_bonnet, gauss_curvature_face, gauss_curvature_vertex, local_norm_sq,
    local_vectors, random_unit_form, scalar_curvature_face, scalar_curvature_vertex,
    unit_form_trace_check, unit_form_trace_definition, CellCurvature, ComplexClass,
    CurvatureReport, RicciComparison, RicciEntry,
};
pub use neighbors::{enumerate as neighbors, NeighborSets, TwoNeighbor};
pub use ricci::{CurvatureContext, DownFactor, NeighborTerms};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CurvatureError {
    #[error(
        "complex is not quasiconvex: closures of {} and {} meet in {} cells beyond the closure of {}",
        .0.first, .0.second, .0.intersection.len(), .0.shared
    )]
    NotQuasiconvex(QuasiconvexViolation),
    #[error(
        "curvature is defined for graphs and closed surfaces, got a complex of dimension {dim}"
    )]
    UnsupportedComplexClass { dim: usize },
    #[error("2-complex is not a closed surface")]
    NotClosedSurface,
    #[error("Gauss curvature requires constant weights")]
    NonConstantWeights,
    #[error("form is not unit at the cell: local squared norm {norm_sq:e}")]
    NormalizationViolated { norm_sq: f64 },
    #[error("{cell} is not a cell of dimension {expected} in this complex")]
    WrongCell { cell: CellId, expected: usize },
    #[error("complex has no incidence vectors")]
    NoVectors,
    #[error(transparent)]
    Form(#[from] FormError),
}
