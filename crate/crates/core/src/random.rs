//! Seeded random inputs for property checks.
//!
//! All randomness goes through ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded
//! with `seed_from_u64`, drawing values in cell order, so a seed fixes every
//! generated fixture.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::{CellFunction, CombVectorField, OneForm};
use crate::complex::CellComplex;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent weights drawn uniformly from `[lo, hi]`, one per cell.
pub fn weights<R: Rng>(complex: &CellComplex, lo: f64, hi: f64, rng: &mut R) -> Vec<Vec<f64>> {
    complex
        .counts()
        .into_iter()
        .map(|n| (0..n).map(|_| rng.random_range(lo..=hi)).collect())
        .collect()
}

/// Values uniform in `[-1, 1]`.
pub fn values<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect()
}

pub fn function<R: Rng>(complex: &CellComplex, rng: &mut R) -> CellFunction {
    let values: Vec<Vec<f64>> = complex
        .counts()
        .into_iter()
        .map(|n| values(n, rng))
        .collect();
    CellFunction::from_layers(complex, values).expect("shape matches complex")
}

pub fn one_form<R: Rng>(complex: &CellComplex, rng: &mut R) -> OneForm {
    OneForm::new(complex, values(complex.vectors().len(), rng)).expect("shape matches complex")
}

pub fn vector_field<R: Rng>(complex: &CellComplex, rng: &mut R) -> CombVectorField {
    CombVectorField::new(complex, values(complex.vectors().len(), rng))
        .expect("shape matches complex")
}

/// A complex with the same cells and random weights in `[0.1, 10]`.
pub fn reweighted<R: Rng>(complex: &CellComplex, rng: &mut R) -> CellComplex {
    complex
        .with_weights(weights(complex, 0.1, 10.0, rng))
        .expect("random weights are positive")
}
