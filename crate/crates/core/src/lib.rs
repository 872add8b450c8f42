//! Combinatorial differential forms on weighted regular cell complexes.
//!
//! Differential forms are local linear maps on the cellular chains, so a
//! `d`-form sends each cell to a combination of its codimension-`d` faces.
//! A positive weight per cell defines an L² inner product, the adjoint `d*`
//! and the Hodge Laplacian `Δ = dd* + d*d`, whose kernel recovers the Betti
//! numbers. On top of that sit a first-order calculus of functions and
//! vector fields, a Ricci curvature on incidence vectors defined through the
//! Bochner–Weitzenböck formula, and exact Gauss–Bonnet checks on graphs and
//! closed surfaces.
//!
//! ```
//! use cellform::{forms::FormComplex, generators};
//!
//! let torus = generators::torus_grid(4, 4).unwrap();
//! let forms = FormComplex::new(&torus);
//! let dims: Vec<usize> = (0..=2).map(|d| forms.harmonic_dimension(d, 1e-8).unwrap()).collect();
//! assert_eq!(dims, [1, 2, 1]);
//! ```

pub mod calculus;
pub mod cli;
pub mod complex;
pub mod curvature;
pub mod forms;
pub mod generators;
pub mod homology;
pub mod io;
pub mod random;

pub use complex::{CellComplex, CellId, Chain, ComplexBuilder, ComplexError, IncidenceVector};
