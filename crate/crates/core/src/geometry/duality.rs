use super::{hyperplane_through, Hyperplane, Point, PointSetFamily};
use crate::error::{Error, Result};
use crate::exact::{dot, sub, Matrix, Scalar};

/// `p -> {2 p_1 x_1 + ... + 2 p_{d-1} x_{d-1} - x_d = p_d}`.
pub fn dualize_point<T: Scalar>(p: &[T]) -> Hyperplane<T> {
    let d = p.len();
    let two = T::from_int(2);
    let mut normal: Vec<T> = p[..d - 1].iter().map(|v| two.clone() * v.clone()).collect();
    normal.push(-T::one());
    Hyperplane {
        normal,
        offset: p[d - 1].clone(),
    }
}

pub fn dualize_hyperplane<T: Scalar>(h: &Hyperplane<T>) -> Result<Point<T>> {
    let d = h.dim();
    let ad = h.normal[d - 1].clone();
    if ad.is_zero() {
        return Err(Error::Vertical("x_d coefficient is zero".into()));
    }
    let two_ad = T::from_int(2) * ad.clone();
    let mut p: Vec<T> = h.normal[..d - 1].iter().map(|a| -a.clone() / two_ad.clone()).collect();
    p.push(-h.offset.clone() / ad);
    Ok(p)
}

/// Affine form `coeffs·x + constant`; for a dual point `p` it is
/// `x_d - (2 p'·x' - p_d)`, positive exactly when `x` lies strictly above `p*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualForm<T> {
    pub coeffs: Vec<T>,
    pub constant: T,
}

impl<T: Scalar> DualForm<T> {
    pub fn of_point(p: &[T]) -> Self {
        let d = p.len();
        let two = T::from_int(2);
        let mut coeffs: Vec<T> = p[..d - 1].iter().map(|v| -(two.clone() * v.clone())).collect();
        coeffs.push(T::one());
        DualForm {
            coeffs,
            constant: p[d - 1].clone(),
        }
    }

    pub fn evaluate(&self, x: &[T]) -> T {
        dot(&self.coeffs, x) + self.constant.clone()
    }

    /// The point whose form is a positive multiple of this one.
    pub fn to_point(&self) -> Result<Point<T>> {
        let d = self.coeffs.len();
        let lead = self.coeffs[d - 1].clone();
        if !lead.is_positive() {
            return Err(Error::Vertical(
                "form does not increase with x_d".into(),
            ));
        }
        let two_lead = T::from_int(2) * lead.clone();
        let mut p: Vec<T> = self.coeffs[..d - 1]
            .iter()
            .map(|a| -a.clone() / two_lead.clone())
            .collect();
        p.push(self.constant.clone() / lead);
        Ok(p)
    }
}

/// Height of a non-vertical hyperplane over `x'`.
pub fn height_at<T: Scalar>(h: &Hyperplane<T>, x_prime: &[T]) -> Result<T> {
    let d = h.dim();
    let ad = h.normal[d - 1].clone();
    if ad.is_zero() {
        return Err(Error::Vertical("x_d coefficient is zero".into()));
    }
    Ok((h.offset.clone() - dot(&h.normal[..d - 1], x_prime)) / ad)
}

/// `y = A x + c`, stored with `A^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap<T> {
    pub linear: Matrix<T>,
    pub shift: Vec<T>,
    inverse: Matrix<T>,
}

impl<T: Scalar> AffineMap<T> {
    pub fn new(linear: Matrix<T>, shift: Vec<T>) -> Result<Self> {
        let inverse = linear
            .inverse()?
            .ok_or_else(|| Error::Degenerate("affine map is singular".into()))?;
        if shift.len() != linear.rows() {
            return Err(Error::DimensionMismatch("shift length".into()));
        }
        Ok(AffineMap { linear, shift, inverse })
    }

    pub fn identity(d: usize) -> Self {
        AffineMap {
            linear: Matrix::identity(d),
            shift: vec![T::zero(); d],
            inverse: Matrix::identity(d),
        }
    }

    pub fn inverse_linear(&self) -> &Matrix<T> {
        &self.inverse
    }

    pub fn apply(&self, x: &[T]) -> Result<Point<T>> {
        Ok(crate::exact::add(&self.linear.mul_vec(x)?, &self.shift))
    }

    pub fn apply_inverse(&self, y: &[T]) -> Result<Point<T>> {
        self.inverse.mul_vec(&sub(y, &self.shift))
    }

    pub fn hyperplane_to_image(&self, h: &Hyperplane<T>) -> Result<Hyperplane<T>> {
        let normal = self.inverse.transpose().mul_vec(&h.normal)?;
        let offset = h.offset.clone() + dot(&normal, &self.shift);
        Hyperplane::new(normal, offset)
    }

    pub fn hyperplane_to_source(&self, h: &Hyperplane<T>) -> Result<Hyperplane<T>> {
        let normal = self.linear.transpose().mul_vec(&h.normal)?;
        let offset = h.offset.clone() - dot(&h.normal, &self.shift);
        Hyperplane::new(normal, offset)
    }
}

/// Maps the base hyperplane to `x_d = 0` with its positive side pointing up.
pub fn normalize_family<T: Scalar>(
    fam: &PointSetFamily<T>,
) -> Result<(PointSetFamily<T>, AffineMap<T>)> {
    let d = fam.dim();
    let base = hyperplane_through(&fam.base_points())?;
    let m = (0..d)
        .rev()
        .find(|&k| !base.normal[k].is_zero())
        .expect("hyperplane normal is nonzero");
    let scale = base.normal[m].abs();
    let norm2 = dot(&base.normal, &base.normal);
    // e_k projected onto the base directions, so the base normal maps to the vertical.
    let mut rows: Vec<Vec<T>> = (0..d)
        .filter(|&k| k != m)
        .map(|k| {
            let f = base.normal[k].clone() / norm2.clone();
            (0..d)
                .map(|j| {
                    let unit = if j == k { T::one() } else { T::zero() };
                    unit - f.clone() * base.normal[j].clone()
                })
                .collect()
        })
        .collect();
    rows.push(base.normal.iter().map(|v| v.clone() / scale.clone()).collect());
    let mut shift = vec![T::zero(); d];
    shift[d - 1] = -base.offset.clone() / scale;
    let map = AffineMap::new(Matrix::from_rows(rows)?, shift)?;
    let mut err = None;
    let image = fam.map_points(|p| {
        map.apply(p).unwrap_or_else(|e| {
            err = Some(e);
            p.clone()
        })
    });
    match err {
        Some(e) => Err(e),
        None => Ok((image, map)),
    }
}
