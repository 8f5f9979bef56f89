//! Exact linear algebra: big-integer matrices, Hermite and Smith forms,
//! integer kernels, and elimination over any [`Field`].

mod dense;
mod integer;
mod intmat;
mod sparse;

pub use dense::{coordinates, dot, kernel, left_kernel, rank, rref, span_contains, span_eq, transpose, Echelon};
pub use integer::{
    affine_solve, determinant, elementary_divisors, for_each_combination, hermite_normal_form, integer_kernel,
    unimodularity_check, Hermite, Solvability,
};
pub use intmat::IntMatrix;
pub use sparse::{axpy_neg, SparseEchelon, SparseVec};

use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
}

/// The matrix reduced into `k`, row by row.
pub fn to_field<K: Field>(k: &K, m: &IntMatrix) -> Vec<Vec<K::Elem>> {
    m.rows().map(|r| r.iter().map(|x| k.from_bigint(x)).collect()).collect()
}

pub fn rank_over<K: Field>(k: &K, m: &IntMatrix) -> usize {
    rank(k, &to_field(k, m), m.ncols())
}

/// Right kernel of `m` over `k`, echelonised.
pub fn kernel_over<K: Field>(k: &K, m: &IntMatrix) -> Vec<Vec<K::Elem>> {
    kernel(k, &to_field(k, m), m.ncols())
}
