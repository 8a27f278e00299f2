//! Lin-Bellman systems: `x_i = max(L_i x + q_i, R_i x)` for `i` in `S`,
//! `x_i = min(L_i x + q_i, R_i x)` otherwise.

mod reductions;

use std::collections::BTreeSet;

pub use reductions::{reduce_glcp_to_lb, reduce_lb_to_plcp, reduce_plcp_to_lb};

use crate::error::{check_limit, Error, Result};
use crate::exact::{Matrix, Scalar, Solve};
use crate::lcp::{collect_branches, Enumeration};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinBellmanSystem<T> {
    pub l: Matrix<T>,
    pub r: Matrix<T>,
    pub q: Vec<T>,
    /// Rows taking the max, 0-based.
    pub s: BTreeSet<usize>,
}

impl<T: Scalar> LinBellmanSystem<T> {
    pub fn new(l: Matrix<T>, r: Matrix<T>, q: Vec<T>, s: BTreeSet<usize>) -> Result<Self> {
        let n = q.len();
        for (name, m) in [("L", &l), ("R", &r)] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "{name} is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if let Some(&i) = s.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: i, size: n });
        }
        Ok(LinBellmanSystem { l, r, q, s })
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    /// The two arguments `(L_i x + q_i, R_i x)` of row `i`.
    pub fn arguments(&self, i: usize, x: &[T]) -> (T, T) {
        let first = crate::exact::dot(self.l.row(i), x) + self.q[i].clone();
        let second = crate::exact::dot(self.r.row(i), x);
        (first, second)
    }

    /// Right-hand side of row `i` evaluated at `x`.
    pub fn evaluate(&self, i: usize, x: &[T]) -> T {
        let (a, b) = self.arguments(i, x);
        let take_a = if self.s.contains(&i) { a >= b } else { a <= b };
        if take_a {
            a
        } else {
            b
        }
    }
}

pub fn verify_lb_solution<T: Scalar>(sys: &LinBellmanSystem<T>, x: &[T]) -> Result<bool> {
    if x.len() != sys.n() {
        return Err(Error::DimensionMismatch(format!(
            "x has length {}, system has {} rows",
            x.len(),
            sys.n()
        )));
    }
    Ok((0..sys.n()).all(|i| sys.evaluate(i, x) == x[i]))
}

/// Enumerates which argument is active in each row.
pub fn solve_lb_bruteforce<T: Scalar>(
    sys: &LinBellmanSystem<T>,
    limit: u128,
) -> Result<Enumeration<Vec<T>>> {
    let n = sys.n();
    check_limit("active-side patterns", 1u128 << n.min(127), limit)?;
    collect_branches(1u128 << n, |mask| {
        let mut a = Matrix::zeros(n, n);
        let mut b = vec![T::zero(); n];
        for i in 0..n {
            let second = mask >> i & 1 == 1;
            let src = if second { &sys.r } else { &sys.l };
            for j in 0..n {
                a[(i, j)] = src[(i, j)].clone();
            }
            a[(i, i)] = a[(i, i)].clone() - T::one();
            if !second {
                b[i] = -sys.q[i].clone();
            }
        }
        let Solve::Unique(x) = a.solve(&b)? else {
            return Ok(Some(None));
        };
        Ok(verify_lb_solution(sys, &x)?.then_some(Some(x)))
    })
}

/// Necessary condition for the unique-solution promise.
pub fn check_r_minus_i_invertible<T: Scalar>(sys: &LinBellmanSystem<T>) -> Result<bool> {
    let n = sys.n();
    Ok(!sys.r.sub(&Matrix::identity(n))?.determinant()?.is_zero())
}

/// Brute-force uniqueness check on the given right-hand sides.
pub fn has_unique_solutions_for<T: Scalar>(
    sys: &LinBellmanSystem<T>,
    qs: &[Vec<T>],
    limit: u128,
) -> Result<bool> {
    for q in qs {
        let probe = LinBellmanSystem::new(sys.l.clone(), sys.r.clone(), q.clone(), sys.s.clone())?;
        if solve_lb_bruteforce(&probe, limit)?.solutions.len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Negates row `i` for every `i` not in `s`.
pub fn hat_matrix<T: Scalar>(a: &Matrix<T>, s: &BTreeSet<usize>) -> Result<Matrix<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let mut out = a.clone();
    for i in (0..a.rows()).filter(|i| !s.contains(i)) {
        for v in out.row_mut(i) {
            *v = -v.clone();
        }
    }
    Ok(out)
}
