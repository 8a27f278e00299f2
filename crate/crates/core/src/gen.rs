//! Seeded random instance generators.
//!
//! Every generator re-checks the promise it is supposed to satisfy, so the
//! output is valid by construction and by test.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{int, rat, Matrix};
use crate::geometry::{hyperplane_through, is_strongly_well_separated, PointSetFamily};
use crate::lcp::{is_block_p_matrix, is_p_matrix, GlcpInstance, LcpInstance};
use crate::linbellman::{hat_matrix, LinBellmanSystem};
use crate::Rational;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut Rng64, range: i64, den: i64) -> Rational {
    rat(rng.gen_range(-range..=range), rng.gen_range(1..=den))
}

pub fn random_vector(rng: &mut Rng64, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng, 9, 4)).collect()
}

/// Positive definite (`B^T B + I` plus a skew part) or strictly row diagonally dominant.
pub fn random_p_matrix(rng: &mut Rng64, n: usize) -> Matrix<Rational> {
    loop {
        let m = if rng.gen_bool(0.5) {
            let b = Matrix::from_fn(n, n, |_, _| int(rng.gen_range(-2..=2)));
            let c = Matrix::from_fn(n, n, |_, _| int(rng.gen_range(-2..=2)));
            let skew = c.sub(&c.transpose()).expect("square");
            b.transpose()
                .mul(&b)
                .and_then(|g| g.add(&Matrix::identity(n)))
                .and_then(|g| g.add(&skew))
                .expect("square")
        } else {
            let mut a = Matrix::from_fn(n, n, |_, _| small_rational(rng, 4, 3));
            for i in 0..n {
                let off: Rational = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| a[(i, j)].abs())
                    .sum();
                a[(i, i)] = off + rat(rng.gen_range(1..=6), rng.gen_range(1..=2));
            }
            a
        };
        if n > 12 || is_p_matrix(&m).unwrap_or(false) {
            return m;
        }
    }
}

pub fn random_p_lcp(rng: &mut Rng64, n: usize) -> LcpInstance<Rational> {
    let m = random_p_matrix(rng, n);
    let q = random_vector(rng, n);
    LcpInstance::new(m, q).expect("consistent shapes")
}

/// Rows of block `i` are diagonally dominant in column `i`, so every
/// representative submatrix is too.
pub fn random_block_p_glcp(rng: &mut Rng64, n: usize, max_block: usize) -> GlcpInstance<Rational> {
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=max_block.max(1))).collect();
    let total: usize = sizes.iter().sum();
    let mut a = Matrix::zeros(total, n);
    let mut row = 0;
    for (i, &b) in sizes.iter().enumerate() {
        for _ in 0..b {
            let mut off = int(0);
            for j in (0..n).filter(|&j| j != i) {
                let v = small_rational(rng, 3, 2);
                off += v.abs();
                a[(row, j)] = v;
            }
            a[(row, i)] = off + int(rng.gen_range(1..=4));
            row += 1;
        }
    }
    let q = random_vector(rng, total);
    let inst = GlcpInstance::new(sizes, a, q).expect("consistent shapes");
    debug_assert!(is_block_p_matrix(&inst, crate::DEFAULT_LIMIT).unwrap_or(true));
    inst
}

/// A system whose LCP image is a P-matrix instance, with random `S` and `R`.
pub fn random_p_lin_bellman(rng: &mut Rng64, n: usize) -> LinBellmanSystem<Rational> {
    let lcp = random_p_lcp(rng, n);
    let s: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    let i_hat = hat_matrix(&Matrix::identity(n), &s).expect("square");
    loop {
        let r = Matrix::from_fn(n, n, |_, _| small_rational(rng, 3, 2));
        let r_hat = hat_matrix(&r, &s).expect("square");
        let a = i_hat.sub(&r_hat).expect("square");
        if a.determinant().expect("square").is_zero() {
            continue;
        }
        // M = (I^ - L^)(I^ - R^)^{-1}  =>  L^ = I^ - M (I^ - R^)
        let l_hat = i_hat.sub(&lcp.m.mul(&a).expect("square")).expect("square");
        let l = hat_matrix(&l_hat, &s).expect("square");
        let q: Vec<Rational> = i_hat
            .mul_vec(&lcp.q)
            .expect("square")
            .into_iter()
            .map(|v| -v)
            .collect();
        return LinBellmanSystem::new(l, r, q, s).expect("consistent shapes");
    }
}

/// Clusters near `8d e_i`, with non-base points pushed along the base normal.
pub fn random_sws_family(rng: &mut Rng64, d: usize, max_size: usize) -> PointSetFamily<Rational> {
    random_sws_family_sized(rng, d, 1, max_size)
}

/// Color sizes drawn from `min_size..=max_size`.
pub fn random_sws_family_sized(
    rng: &mut Rng64,
    d: usize,
    min_size: usize,
    max_size: usize,
) -> PointSetFamily<Rational> {
    let max_size = max_size.max(min_size).max(1);
    let min_size = min_size.max(1);
    sws_family(rng, d, |rng, _| rng.gen_range(min_size..=max_size))
}

/// Exactly `sizes[i]` points in color `i`.
pub fn random_sws_family_with_sizes(rng: &mut Rng64, sizes: &[usize]) -> PointSetFamily<Rational> {
    sws_family(rng, sizes.len(), |_, i| sizes[i].max(1))
}

fn sws_family(
    rng: &mut Rng64,
    d: usize,
    mut size: impl FnMut(&mut Rng64, usize) -> usize,
) -> PointSetFamily<Rational> {
    let spread = 8 * d as i64;
    loop {
        let sets: Vec<Vec<Vec<Rational>>> = (0..d)
            .map(|i| {
                let k = size(rng, i);
                (0..k)
                    .map(|_| {
                        (0..d)
                            .map(|c| {
                                let centre = if c == i { int(spread) } else { int(0) };
                                centre + small_rational(rng, 6, 6)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let Ok(mut fam) = PointSetFamily::new(sets) else {
            continue;
        };
        if d >= 2 {
            let Ok(base) = hyperplane_through(&fam.base_points()) else {
                continue;
            };
            for set in fam.sets.iter_mut() {
                for p in set.iter_mut().skip(1) {
                    let t = small_rational(rng, 4, 4);
                    for (c, n) in p.iter_mut().zip(&base.normal) {
                        *c = c.clone() + t.clone() * n.clone();
                    }
                }
            }
        }
        if is_strongly_well_separated(&fam).unwrap_or(false) {
            return fam;
        }
    }
}

/// Every `alpha` with `alpha_i` in `{1, |P_i|}`.
pub fn admissible_alphas(fam: &PointSetFamily<Rational>) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for k in fam.sizes() {
        let options: Vec<usize> = if k == 1 { vec![1] } else { vec![1, k] };
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&o| {
                    let mut v = prefix.clone();
                    v.push(o);
                    v
                })
            })
            .collect();
    }
    out
}
