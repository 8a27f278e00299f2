//! Colorful point families, hyperplanes, alpha-cuts and colorful tangents.

mod duality;
mod separation;
mod tangent;

use std::cmp::Ordering;

pub use duality::{
    dualize_hyperplane, dualize_point, height_at, normalize_family, AffineMap, DualForm,
};
pub use separation::{is_strongly_well_separated, is_well_separated, sets_well_separated};
pub use tangent::{reduce_lb_to_tangent2p, reduce_tangent_to_lb};

use crate::error::{check_limit, Error, Result};
use crate::exact::{dot, Matrix, Scalar};
use crate::lcp::{collect_branches, Enumeration};

pub type Point<T> = Vec<T>;

/// `{x : normal·x = offset}` with positive side `normal·x >= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane<T> {
    pub normal: Vec<T>,
    pub offset: T,
}

impl<T: Scalar> Hyperplane<T> {
    pub fn new(normal: Vec<T>, offset: T) -> Result<Self> {
        if normal.iter().all(|v| v.is_zero()) {
            return Err(Error::Invalid("hyperplane normal is zero".into()));
        }
        Ok(Hyperplane { normal, offset })
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `normal·p - offset`.
    pub fn evaluate(&self, p: &[T]) -> T {
        dot(&self.normal, p) - self.offset.clone()
    }

    pub fn side(&self, p: &[T]) -> Ordering {
        self.evaluate(p).partial_cmp(&T::zero()).expect("exact scalars are ordered")
    }

    pub fn contains(&self, p: &[T]) -> bool {
        self.evaluate(p).is_zero()
    }

    /// In the closed positive halfspace.
    pub fn is_positive(&self, p: &[T]) -> bool {
        !self.evaluate(p).is_negative()
    }

    pub fn flipped(&self) -> Self {
        Hyperplane {
            normal: self.normal.iter().map(|v| -v.clone()).collect(),
            offset: -self.offset.clone(),
        }
    }

    /// Positive rescaling so the first nonzero normal entry is `±1`.
    pub fn canonical(&self) -> Self {
        let lead = self
            .normal
            .iter()
            .find(|v| !v.is_zero())
            .map(|v| v.abs())
            .unwrap_or_else(T::one);
        Hyperplane {
            normal: self.normal.iter().map(|v| v.clone() / lead.clone()).collect(),
            offset: self.offset.clone() / lead,
        }
    }

    /// Same point set and same positive side.
    pub fn same_oriented(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    /// Same point set, either orientation.
    pub fn same_set(&self, other: &Self) -> bool {
        self.same_oriented(other) || self.same_oriented(&other.flipped())
    }
}

/// `d` nonempty point lists in `d`-space; the first point of each list is its base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSetFamily<T> {
    pub sets: Vec<Vec<Point<T>>>,
}

impl<T: Scalar> PointSetFamily<T> {
    pub fn new(sets: Vec<Vec<Point<T>>>) -> Result<Self> {
        let d = sets.len();
        if d == 0 {
            return Err(Error::Invalid("a family needs at least one color".into()));
        }
        for (i, set) in sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::Invalid(format!("color {} has no points", i + 1)));
            }
            if let Some(p) = set.iter().find(|p| p.len() != d) {
                return Err(Error::DimensionMismatch(format!(
                    "point of dimension {} in a family of {d} colors",
                    p.len()
                )));
            }
        }
        Ok(PointSetFamily { sets })
    }

    pub fn dim(&self) -> usize {
        self.sets.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    pub fn base_points(&self) -> Vec<Point<T>> {
        self.sets.iter().map(|s| s[0].clone()).collect()
    }

    pub fn map_points(&self, mut f: impl FnMut(&Point<T>) -> Point<T>) -> Self {
        PointSetFamily {
            sets: self.sets.iter().map(|s| s.iter().map(&mut f).collect()).collect(),
        }
    }
}

/// A tangent query: family plus one target count per color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentInstance<T> {
    pub family: PointSetFamily<T>,
    pub alpha: Vec<usize>,
}

impl<T: Scalar> TangentInstance<T> {
    pub fn new(family: PointSetFamily<T>, alpha: Vec<usize>) -> Result<Self> {
        check_alpha(&family, &alpha)?;
        Ok(TangentInstance { family, alpha })
    }
}

/// One colorful choice whose hyperplane is an alpha-cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentCut<T> {
    /// 0-based index into each color.
    pub choice: Vec<usize>,
    pub hyperplane: Hyperplane<T>,
}

pub fn check_alpha<T: Scalar>(fam: &PointSetFamily<T>, alpha: &[usize]) -> Result<()> {
    if alpha.len() != fam.dim() {
        return Err(Error::DimensionMismatch(format!(
            "alpha has {} entries for {} colors",
            alpha.len(),
            fam.dim()
        )));
    }
    for (i, (&a, set)) in alpha.iter().zip(&fam.sets).enumerate() {
        if a == 0 || a > set.len() {
            return Err(Error::Invalid(format!(
                "alpha_{} = {a} outside 1..={}",
                i + 1,
                set.len()
            )));
        }
    }
    Ok(())
}

/// Normal `c` with `det[p_2 - p_1, ..., p_d - p_1, x - p_1] = c·(x - p_1)`.
fn orientation_cofactors<T: Scalar>(points: &[Point<T>]) -> Result<Vec<T>> {
    let d = points.len();
    let rows: Vec<Vec<T>> = points[1..]
        .iter()
        .map(|p| crate::exact::sub(p, &points[0]))
        .collect();
    let top = Matrix::from_rows(rows)?;
    let all_rows: Vec<usize> = (0..d - 1).collect();
    (0..d)
        .map(|j| {
            let cols: Vec<usize> = (0..d).filter(|&c| c != j).collect();
            let minor = top.submatrix(&all_rows, &cols)?.determinant()?;
            Ok(if (d - 1 + j) % 2 == 0 { minor } else { -minor })
        })
        .collect()
}

/// Oriented hyperplane through `points` (one per color, `d` of them in `d`-space).
pub fn hyperplane_through<T: Scalar>(points: &[Point<T>]) -> Result<Hyperplane<T>> {
    let d = points.len();
    if d == 0 || points.iter().any(|p| p.len() != d) {
        return Err(Error::DimensionMismatch(format!(
            "need d points in d-space, got {d}"
        )));
    }
    if d == 1 {
        return Hyperplane::new(vec![T::one()], points[0][0].clone());
    }
    let c = orientation_cofactors(points)?;
    if c.iter().all(|v| v.is_zero()) {
        return Err(Error::Degenerate("colorful points are affinely dependent".into()));
    }
    let offset = -dot(&c, &points[0]);
    Hyperplane::new(c.into_iter().map(|v| -v).collect(), offset)
}

pub fn colorful_hyperplane<T: Scalar>(
    fam: &PointSetFamily<T>,
    choice: &[usize],
) -> Result<Hyperplane<T>> {
    if choice.len() != fam.dim() {
        return Err(Error::DimensionMismatch(format!(
            "choice of length {} for {} colors",
            choice.len(),
            fam.dim()
        )));
    }
    let mut pts = Vec::with_capacity(choice.len());
    for (set, &c) in fam.sets.iter().zip(choice) {
        pts.push(
            set.get(c)
                .ok_or(Error::IndexOutOfRange { index: c, size: set.len() })?
                .clone(),
        );
    }
    hyperplane_through(&pts)
}

pub fn is_alpha_cut<T: Scalar>(
    fam: &PointSetFamily<T>,
    alpha: &[usize],
    h: &Hyperplane<T>,
) -> Result<bool> {
    check_alpha(fam, alpha)?;
    if h.dim() != fam.dim() {
        return Err(Error::DimensionMismatch(format!(
            "hyperplane in {}-space, family in {}-space",
            h.dim(),
            fam.dim()
        )));
    }
    Ok(fam.sets.iter().zip(alpha).all(|(set, &a)| {
        let (mut on, mut above) = (0, 0);
        for p in set {
            match h.side(p) {
                Ordering::Equal => on += 1,
                Ordering::Greater => above += 1,
                Ordering::Less => {}
            }
        }
        on > 0 && above < a && a <= above + on
    }))
}

/// All alpha-cuts among colorful hyperplanes, deduplicated by oriented hyperplane.
pub fn solve_tangent_bruteforce<T: Scalar>(
    fam: &PointSetFamily<T>,
    alpha: &[usize],
    limit: u128,
) -> Result<Enumeration<TangentCut<T>>> {
    check_alpha(fam, alpha)?;
    let sizes = fam.sizes();
    let count = sizes
        .iter()
        .fold(1u128, |acc, &s| acc.saturating_mul(s as u128));
    check_limit("colorful choices", count, limit)?;
    let mut e = collect_branches(count, |k| {
        let mut rest = k;
        let choice: Vec<usize> = sizes
            .iter()
            .map(|&s| {
                let c = (rest % s as u128) as usize;
                rest /= s as u128;
                c
            })
            .collect();
        let h = match colorful_hyperplane(fam, &choice) {
            Ok(h) => h.canonical(),
            Err(Error::Degenerate(_)) => return Ok(Some(None)),
            Err(e) => return Err(e),
        };
        Ok(is_alpha_cut(fam, alpha, &h)?.then_some(Some(TangentCut { choice, hyperplane: h })))
    })?;
    let mut seen: Vec<Hyperplane<T>> = Vec::new();
    e.solutions.retain(|cut| {
        if seen.contains(&cut.hyperplane) {
            false
        } else {
            seen.push(cut.hyperplane.clone());
            true
        }
    });
    Ok(e)
}
