//! Exact scalars, dense linear algebra and LP feasibility.
//!
//! Everything here is generic over [`Scalar`]; the rest of the crate
//! instantiates it with [`crate::Rational`].

mod lp;
mod matrix;
mod scalar;

pub use lp::{find_feasible_point, separation_witness, strict_separation_feasible};
pub use matrix::{Matrix, Solve};
pub use scalar::{format_rational, int, parse_rational, rat, Scalar};

use crate::error::{Error, Result};

pub fn determinant<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    m.determinant()
}

pub fn solve_linear<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Result<Solve<T>> {
    a.solve(b)
}

/// Determinant of the submatrix on rows and columns `idx` (0-based).
pub fn principal_minor<T: Scalar>(m: &Matrix<T>, idx: &[usize]) -> Result<T> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if idx.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    m.submatrix(idx, idx)?.determinant()
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn scale<T: Scalar>(a: &[T], factor: &T) -> Vec<T> {
    a.iter().map(|x| x.clone() * factor.clone()).collect()
}

pub fn is_nonnegative<T: Scalar>(a: &[T]) -> bool {
    a.iter().all(|x| !x.is_negative())
}
