//! Betti numbers from exact ranks of the integer boundary matrices.
//!
//! This is the combinatorial side of the Hodge check: it never touches
//! floating point, so it can referee the numerical kernel dimensions.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::CellComplex;

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn exact_rank(matrix: &DMatrix<i64>) -> usize {
    let (rows, cols) = matrix.shape();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| (0..cols).map(|c| BigInt::from(matrix[(r, c)])).collect())
        .collect();
    let mut rank = 0;
    let mut previous = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &a[r][c] * &a[rank][col] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &previous;
            }
            a[r][col] = BigInt::zero();
        }
        previous = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// `b_p = #p-cells - rank ∂_p - rank ∂_{p+1}`.
pub fn betti_oracle(complex: &CellComplex, p: usize) -> usize {
    let rank = |q: usize| {
        if q == 0 || q > complex.dim() {
            0
        } else {
            exact_rank(&complex.boundary_matrix(q).expect("dimension in range"))
        }
    };
    complex.count(p) - rank(p) - rank(p + 1)
}

pub fn betti_numbers(complex: &CellComplex) -> Vec<usize> {
    (0..=complex.dim())
        .map(|p| betti_oracle(complex, p))
        .collect()
}
