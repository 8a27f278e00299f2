use std::collections::BTreeSet;

use super::duality::{dualize_hyperplane, dualize_point, normalize_family, DualForm};
use super::{check_alpha, hyperplane_through, Hyperplane, PointSetFamily, TangentInstance};
use crate::error::{Error, Result};
use crate::exact::{find_feasible_point, Matrix, Scalar};
use crate::linbellman::{reduce_lb_to_plcp, reduce_plcp_to_lb, LinBellmanSystem};
use crate::reduction::Reduction;

/// Block layout of the helper chains: one variable per color if `|P_i| <= 2`,
/// otherwise `|P_i| - 1`; the first variable of block `i` is the dual coordinate `x_i`.
fn chain_offsets(sizes: &[usize]) -> (Vec<usize>, Vec<usize>, usize) {
    let widths: Vec<usize> = sizes.iter().map(|&k| k.saturating_sub(1).max(1)).collect();
    let mut offsets = Vec::with_capacity(widths.len());
    let mut total = 0;
    for w in &widths {
        offsets.push(total);
        total += w;
    }
    (offsets, widths, total)
}

pub fn reduce_tangent_to_lb<T: Scalar>(
    fam: &PointSetFamily<T>,
    alpha: &[usize],
) -> Result<Reduction<LinBellmanSystem<T>, Hyperplane<T>, Vec<T>>> {
    check_alpha(fam, alpha)?;
    let sizes = fam.sizes();
    if let Some(i) = (0..sizes.len()).find(|&i| alpha[i] != 1 && alpha[i] != sizes[i]) {
        return Err(Error::Invalid(format!(
            "alpha_{} = {} is neither 1 nor |P_{}| = {}",
            i + 1,
            alpha[i],
            i + 1,
            sizes[i]
        )));
    }
    let d = fam.dim();
    let (image, map) = normalize_family(fam)?;
    let (offsets, widths, total) = chain_offsets(&sizes);

    let mut l = Matrix::zeros(total, total);
    let mut r = Matrix::zeros(total, total);
    let mut q = vec![T::zero(); total];
    let mut s = BTreeSet::new();
    let place = |m: &mut Matrix<T>, row: usize, form: &DualForm<T>, own: usize| {
        for (c, coef) in form.coeffs.iter().enumerate() {
            m[(row, offsets[c])] = m[(row, offsets[c])].clone() + coef.clone();
        }
        m[(row, own)] = m[(row, own)].clone() + T::one();
    };
    for i in 0..d {
        let forms: Vec<DualForm<T>> = image.sets[i].iter().map(|p| DualForm::of_point(p)).collect();
        let (off, k) = (offsets[i], sizes[i]);
        for j in 0..widths[i] {
            let row = off + j;
            let (first, second) = match k {
                1 => (&forms[0], Some(&forms[0])),
                _ if j + 2 < k => (&forms[k - 1 - j], None),
                _ => (&forms[1], Some(&forms[0])),
            };
            place(&mut l, row, first, off);
            q[row] = first.constant.clone();
            match second {
                Some(form) => place(&mut r, row, form, off),
                None => r[(row, row + 1)] = T::one(),
            }
            if alpha[i] == 1 {
                s.insert(row);
            }
        }
    }
    let target = LinBellmanSystem::new(l, r, q, s)?;

    let pull_map = map.clone();
    let pull_offsets = offsets.clone();
    let push_target = target.clone();
    Ok(Reduction::new(
        target,
        move |y: &Vec<T>| {
            let x: Vec<T> = pull_offsets.iter().map(|&o| y[o].clone()).collect();
            let up = dualize_point(&x).flipped();
            Ok(pull_map.hyperplane_to_source(&up)?.canonical())
        },
        move |h: &Hyperplane<T>| {
            let x = dualize_hyperplane(&map.hyperplane_to_image(h)?)?;
            let mut y = vec![T::zero(); total];
            for (i, xi) in x.into_iter().enumerate() {
                y[offsets[i]] = xi;
            }
            for i in 0..d {
                for j in (1..widths[i]).rev() {
                    y[offsets[i] + j] = push_target.evaluate(offsets[i] + j, &y);
                }
            }
            Ok(y)
        },
    ))
}

/// `t >= 1` with `M t >= 1`, so every row form gains a positive last coefficient.
fn positive_frame<T: Scalar>(m: &Matrix<T>) -> Result<Option<Vec<T>>> {
    let n = m.rows();
    let ones = vec![T::one(); n];
    if m.mul_vec(&ones)?.iter().all(|v| *v >= T::one()) {
        return Ok(Some(ones));
    }
    let mut rows = Vec::with_capacity(2 * n);
    for i in 0..n {
        rows.push((0..n).map(|j| if i == j { -T::one() } else { T::zero() }).collect());
    }
    for i in 0..n {
        rows.push(m.row(i).iter().map(|v| -v.clone()).collect());
    }
    find_feasible_point(&Matrix::from_rows(rows)?, &vec![-T::one(); 2 * n])
}

fn frame_matrix<T: Scalar>(t: &[T], reflect: bool) -> Matrix<T> {
    let d = t.len();
    Matrix::from_fn(d, d, |i, k| {
        if k == d - 1 {
            t[i].clone()
        } else if i == k {
            if reflect && k == 0 {
                -T::one()
            } else {
                T::one()
            }
        } else {
            T::zero()
        }
    })
}

/// Compose `f(z)` (coefficients, constant) with `z = T y`.
fn pull_form<T: Scalar>(coeffs: &[T], constant: T, frame: &Matrix<T>) -> Result<DualForm<T>> {
    Ok(DualForm {
        coeffs: frame.transpose().mul_vec(coeffs)?,
        constant,
    })
}

fn build_family<T: Scalar>(m: &Matrix<T>, q: &[T], frame: &Matrix<T>) -> Result<PointSetFamily<T>> {
    let d = q.len();
    let mut sets = Vec::with_capacity(d);
    for i in 0..d {
        let unit: Vec<T> = (0..d).map(|k| if k == i { T::one() } else { T::zero() }).collect();
        let base = pull_form(&unit, T::zero(), frame)?.to_point()?;
        let other = pull_form(m.row(i), q[i].clone(), frame)?.to_point()?;
        sets.push(vec![base, other]);
    }
    PointSetFamily::new(sets)
}

/// Two points per color, `alpha = (2, ..., 2)`.
///
/// The system is first brought to `S = {}` through the LCP; the row forms
/// are then written in a frame `x = T y` in which each has a positive
/// `y_d` coefficient, and dualized.
pub fn reduce_lb_to_tangent2p<T: Scalar>(
    sys: &LinBellmanSystem<T>,
) -> Result<Reduction<TangentInstance<T>, Vec<T>, Hyperplane<T>>> {
    let to_lcp = reduce_lb_to_plcp(sys)?;
    let lcp = to_lcp.target.clone();
    let chain = to_lcp.then(reduce_plcp_to_lb(&lcp));
    let d = sys.n();
    if d == 0 {
        return Err(Error::Invalid("empty system".into()));
    }
    let t = positive_frame(&lcp.m)?.ok_or_else(|| {
        Error::PromiseViolation("no t > 0 with M t > 0, so M is not a P-matrix".into())
    })?;
    let mut frame = frame_matrix(&t, false);
    let mut family = build_family(&lcp.m, &lcp.q, &frame)?;
    if d >= 2 {
        let base = hyperplane_through(&family.base_points())?;
        if base.normal[d - 1].is_negative() {
            frame = frame_matrix(&t, true);
            family = build_family(&lcp.m, &lcp.q, &frame)?;
        }
    }
    let inverse = frame
        .inverse()?
        .expect("frame has determinant t_d >= 1");
    let target = TangentInstance::new(family, vec![2; d])?;
    let pull_chain = chain.clone();
    Ok(Reduction::new(
        target,
        move |h: &Hyperplane<T>| {
            let y = dualize_hyperplane(h)?;
            pull_chain.pull_back(&frame.mul_vec(&y)?)
        },
        move |x: &Vec<T>| {
            let y = inverse.mul_vec(&chain.push_forward(x)?)?;
            Ok(dualize_point(&y).flipped().canonical())
        },
    ))
}
