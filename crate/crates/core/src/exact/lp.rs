//! Phase-one simplex over exact scalars, used only to decide feasibility.

use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};

/// Finds some `x` (free variables) with `a * x <= b` row-wise, or `None` when
/// the system is infeasible.
///
/// Runs phase one of the tableau simplex method with Bland's rule, so it
/// terminates on degenerate systems.
pub fn find_feasible_point<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Result<Option<Vec<T>>> {
    let m = a.rows();
    let k = a.cols();
    if b.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "{m} constraints but {} bounds",
            b.len()
        )));
    }
    if m == 0 {
        return Ok(Some(vec![T::zero(); k]));
    }

    // Columns: x+ (k), x- (k), slack (m), artificial (one per negative-rhs row), rhs.
    let artificial_rows: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let art_base = 2 * k + m;
    let width = art_base + artificial_rows.len();
    let rhs_col = width;
    let mut tab = Matrix::<T>::zeros(m, width + 1);
    let mut basis = vec![0usize; m];
    for i in 0..m {
        let flip = b[i].is_negative();
        let sign = if flip { -T::one() } else { T::one() };
        for j in 0..k {
            tab[(i, j)] = sign.clone() * a[(i, j)].clone();
            tab[(i, k + j)] = -(sign.clone() * a[(i, j)].clone());
        }
        tab[(i, 2 * k + i)] = sign.clone();
        tab[(i, rhs_col)] = sign * b[i].clone();
        basis[i] = 2 * k + i;
    }
    for (a_idx, &i) in artificial_rows.iter().enumerate() {
        tab[(i, art_base + a_idx)] = T::one();
        basis[i] = art_base + a_idx;
    }

    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost = vec![T::zero(); width + 1];
    for &i in &artificial_rows {
        for (j, c) in cost.iter_mut().enumerate() {
            if j < art_base || j == rhs_col {
                *c = c.clone() - tab[(i, j)].clone();
            }
        }
    }

    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, T)> = None;
        for i in 0..m {
            let coef = &tab[(i, enter)];
            if !coef.is_positive() {
                continue;
            }
            let ratio = tab[(i, rhs_col)].clone() / coef.clone();
            let better = match &leave {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so some row always qualifies.
        let (row, _) = leave.expect("phase-one simplex cannot be unbounded");
        pivot(&mut tab, &mut cost, row, enter);
        basis[row] = enter;
    }

    let infeasible = basis.iter().enumerate().any(|(i, &var)| {
        var >= art_base && !tab[(i, rhs_col)].is_zero()
    });
    if infeasible {
        return Ok(None);
    }
    let mut x = vec![T::zero(); k];
    for (i, &var) in basis.iter().enumerate() {
        let value = tab[(i, rhs_col)].clone();
        if var < k {
            x[var] = x[var].clone() + value;
        } else if var < 2 * k {
            x[var - k] = x[var - k].clone() - value;
        }
    }
    Ok(Some(x))
}

fn pivot<T: Scalar>(tab: &mut Matrix<T>, cost: &mut [T], row: usize, col: usize) {
    let width = tab.cols();
    let p = tab[(row, col)].clone();
    for j in 0..width {
        let v = tab[(row, j)].clone() / p.clone();
        tab[(row, j)] = v;
    }
    for i in 0..tab.rows() {
        if i == row || tab[(i, col)].is_zero() {
            continue;
        }
        let f = tab[(i, col)].clone();
        for j in 0..width {
            let v = tab[(i, j)].clone() - f.clone() * tab[(row, j)].clone();
            tab[(i, j)] = v;
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for (j, c) in cost.iter_mut().enumerate() {
            *c = c.clone() - f.clone() * tab[(row, j)].clone();
        }
    }
}

/// Returns `(a, b)` with `a·p <= b - 1` on `a_pts` and `a·p >= b + 1` on `b_pts`.
pub fn separation_witness<T: Scalar>(
    a_pts: &[Vec<T>],
    b_pts: &[Vec<T>],
    dim: usize,
) -> Result<Option<(Vec<T>, T)>> {
    if a_pts.is_empty() || b_pts.is_empty() {
        return Err(Error::Invalid("separation needs two nonempty point lists".into()));
    }
    if let Some(p) = a_pts.iter().chain(b_pts).find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch(format!(
            "point of dimension {} in a {dim}-dimensional separation query",
            p.len()
        )));
    }
    // Variables (a_1..a_dim, b).
    let mut rows = Vec::with_capacity(a_pts.len() + b_pts.len());
    let mut rhs = Vec::with_capacity(rows.capacity());
    for p in a_pts {
        let mut r = p.clone();
        r.push(-T::one());
        rows.push(r);
        rhs.push(-T::one());
    }
    for p in b_pts {
        let mut r: Vec<T> = p.iter().map(|v| -v.clone()).collect();
        r.push(T::one());
        rows.push(r);
        rhs.push(-T::one());
    }
    let system = Matrix::from_rows(rows)?;
    Ok(find_feasible_point(&system, &rhs)?.map(|mut x| {
        let b = x.pop().expect("offset variable");
        (x, b)
    }))
}

/// Whether some hyperplane strictly separates the two point lists.
pub fn strict_separation_feasible<T: Scalar>(
    a_pts: &[Vec<T>],
    b_pts: &[Vec<T>],
    dim: usize,
) -> Result<bool> {
    Ok(separation_witness(a_pts, b_pts, dim)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{dot, int, rat};
    use crate::Rational;
    use proptest::prelude::*;

    fn pts(list: &[&[i64]]) -> Vec<Vec<Rational>> {
        list.iter().map(|p| p.iter().map(|&v| int(v)).collect()).collect()
    }

    fn check_witness(a: &[Vec<Rational>], b: &[Vec<Rational>], w: &(Vec<Rational>, Rational)) {
        for p in a {
            assert!(dot(&w.0, p) <= w.1.clone() - int(1));
        }
        for p in b {
            assert!(dot(&w.0, p) >= w.1.clone() + int(1));
        }
    }

    #[test]
    fn separation_examples() {
        assert!(strict_separation_feasible(&pts(&[&[0]]), &pts(&[&[3]]), 1).unwrap());
        assert!(!strict_separation_feasible(&pts(&[&[0], &[2]]), &pts(&[&[1]]), 1).unwrap());
        let a = pts(&[&[0, 0], &[2, 1]]);
        let b = pts(&[&[3, 0], &[1, 3]]);
        let w = separation_witness(&a, &b, 2).unwrap().expect("separable");
        check_witness(&a, &b, &w);
        // A hand-found witness for the same configuration.
        check_witness(&a, &b, &(vec![int(6), int(4)], int(17)));
    }

    #[test]
    fn overlapping_hulls_are_not_separable() {
        // Crossing diagonals of a square.
        let a = pts(&[&[0, 0], &[2, 2]]);
        let b = pts(&[&[0, 2], &[2, 0]]);
        assert!(!strict_separation_feasible(&a, &b, 2).unwrap());
        // Shared vertex.
        let a = pts(&[&[0, 0], &[1, 0]]);
        let b = pts(&[&[1, 0], &[2, 5]]);
        assert!(!strict_separation_feasible(&a, &b, 2).unwrap());
        // Point inside a triangle, in 3-space.
        let a = pts(&[&[0, 0, 0], &[4, 0, 0], &[0, 4, 0]]);
        let b = pts(&[&[1, 1, 0]]);
        assert!(!strict_separation_feasible(&a, &b, 3).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        assert!(strict_separation_feasible(&pts(&[&[0, 1]]), &pts(&[&[3]]), 1).is_err());
    }

    #[test]
    fn degenerate_feasibility() {
        // x <= 0, -x <= 0 (equality) plus redundant copies.
        let a = Matrix::from_rows(vec![vec![int(1)], vec![int(-1)], vec![int(1)], vec![int(-1)]])
            .unwrap();
        let x = find_feasible_point(&a, &[int(0), int(0), int(0), int(0)]).unwrap().unwrap();
        assert_eq!(x, vec![int(0)]);
        let x = find_feasible_point(&a, &[rat(-1, 2), int(1), int(0), int(0)]).unwrap();
        assert_eq!(x, None);
    }

    fn point2() -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec((-8i64..=8).prop_map(int), 2)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn separation_is_symmetric(
            a in prop::collection::vec(point2(), 1..4),
            b in prop::collection::vec(point2(), 1..4),
        ) {
            let ab = strict_separation_feasible(&a, &b, 2).unwrap();
            let ba = strict_separation_feasible(&b, &a, 2).unwrap();
            prop_assert_eq!(ab, ba);
            if let Some(w) = separation_witness(&a, &b, 2).unwrap() {
                check_witness(&a, &b, &w);
            }
            // A shared point always blocks separation.
            let mut b2 = b.clone();
            b2.push(a[0].clone());
            prop_assert!(!strict_separation_feasible(&a, &b2, 2).unwrap());
        }
    }
}
