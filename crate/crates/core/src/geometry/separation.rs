use super::{Point, PointSetFamily};
use crate::error::{check_limit, Result};
use crate::exact::{dot, strict_separation_feasible, sub, Matrix, Scalar};

/// Every split of the colors into two nonempty groups is strictly separable.
pub fn sets_well_separated<T: Scalar>(sets: &[Vec<Point<T>>], dim: usize, limit: u128) -> Result<bool> {
    let k = sets.len();
    if k <= 1 {
        return Ok(true);
    }
    check_limit("color splits", 1u128 << (k - 1).min(127), limit)?;
    // Splits containing color 0 cover each unordered pair once.
    for mask in (1u64..(1 << k) - 1).filter(|m| m & 1 == 1) {
        let (mut inside, mut outside) = (Vec::new(), Vec::new());
        for (i, set) in sets.iter().enumerate() {
            let target = if mask >> i & 1 == 1 { &mut inside } else { &mut outside };
            target.extend(set.iter().cloned());
        }
        if !strict_separation_feasible(&inside, &outside, dim)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_well_separated<T: Scalar>(fam: &PointSetFamily<T>) -> Result<bool> {
    sets_well_separated(&fam.sets, fam.dim(), crate::DEFAULT_LIMIT)
}

/// Well-separation after orthogonal projection onto the affine hull of the base points.
pub fn is_strongly_well_separated<T: Scalar>(fam: &PointSetFamily<T>) -> Result<bool> {
    let d = fam.dim();
    if d == 1 {
        return Ok(true);
    }
    let base = fam.base_points();
    let origin = &base[0];
    let basis: Vec<Vec<T>> = base[1..].iter().map(|b| sub(b, origin)).collect();
    let gram = Matrix::from_fn(d - 1, d - 1, |i, j| dot(&basis[i], &basis[j]));
    let Some(gram_inv) = gram.inverse()? else {
        return Ok(false);
    };
    let project = |p: &Point<T>| -> Result<Point<T>> {
        let rel = sub(p, origin);
        let rhs: Vec<T> = basis.iter().map(|u| dot(u, &rel)).collect();
        gram_inv.mul_vec(&rhs)
    };
    let projected = fam
        .sets
        .iter()
        .map(|s| s.iter().map(project).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    sets_well_separated(&projected, d - 1, crate::DEFAULT_LIMIT)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::geometry::tests::{family, rectangle};
    use crate::geometry::hyperplane_through;
    use crate::Rational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn well_separated_examples() {
        assert!(is_well_separated(&family(&[&[&[0, 0]], &[&[3, 0]]])).unwrap());
        assert!(!is_well_separated(&family(&[&[&[0, 0], &[2, 0]], &[&[1, 0]]])).unwrap());
        let crossed = family(&[&[&[0, 0], &[2, 1]], &[&[3, 0], &[1, 3]]]);
        assert!(is_well_separated(&crossed).unwrap());
        assert!(!is_strongly_well_separated(&crossed).unwrap());
    }

    #[test]
    fn strongly_well_separated_examples() {
        assert!(is_strongly_well_separated(&rectangle()).unwrap());
        let coincident = family(&[&[&[1, 1], &[0, 5]], &[&[1, 1], &[9, 9]]]);
        assert!(!is_strongly_well_separated(&coincident).unwrap());
        assert!(is_strongly_well_separated(&family(&[&[&[4], &[-2]]])).unwrap());
    }

    #[test]
    fn three_colors_in_three_space() {
        let fam = family(&[
            &[&[8, 0, 0], &[8, 1, 0], &[9, 0, 2]],
            &[&[0, 8, 0], &[1, 8, -1]],
            &[&[0, 0, 8], &[0, 1, 9]],
        ]);
        assert!(is_well_separated(&fam).unwrap());
        assert!(is_strongly_well_separated(&fam).unwrap());
    }

    #[test]
    fn orthogonal_shifts_preserve_strong_separation() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let base = family(&[
            &[&[8, 0, 0], &[8, 1, 0], &[9, 0, 1]],
            &[&[0, 8, 0], &[1, 8, 1]],
            &[&[0, 0, 8], &[0, 1, 8], &[1, 0, 9]],
        ]);
        assert!(is_strongly_well_separated(&base).unwrap());
        let h = hyperplane_through(&base.base_points()).unwrap();
        for _ in 0..20 {
            let mut fam = base.clone();
            for set in fam.sets.iter_mut() {
                for q in set.iter_mut().skip(1) {
                    let t = int(rng.gen_range(-20..=20));
                    for (c, n) in q.iter_mut().zip(&h.normal) {
                        *c = c.clone() + t.clone() * n.clone();
                    }
                }
            }
            assert!(is_strongly_well_separated(&fam).unwrap());
        }
    }

    #[test]
    fn base_only_family() {
        let fam: PointSetFamily<Rational> = family(&[&[&[0, 0]], &[&[5, 1]]]);
        assert!(is_strongly_well_separated(&fam).unwrap());
    }
}
