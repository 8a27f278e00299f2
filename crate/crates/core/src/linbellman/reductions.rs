use std::collections::BTreeSet;

use super::{check_r_minus_i_invertible, hat_matrix, LinBellmanSystem};
use crate::error::{Error, Result};
use crate::exact::{self, Matrix, Scalar};
use crate::lcp::{GlcpInstance, GlcpSolution, LcpInstance, LcpSolution};
use crate::reduction::Reduction;

/// `(M + I, 2I, q, {})`; solutions are shared verbatim as `z = x`.
pub fn reduce_plcp_to_lb<T: Scalar>(
    inst: &LcpInstance<T>,
) -> Reduction<LinBellmanSystem<T>, LcpSolution<T>, Vec<T>> {
    let n = inst.n();
    let id = Matrix::identity(n);
    let target = LinBellmanSystem {
        l: inst.m.add(&id).expect("square"),
        r: id.scale(&T::from_int(2)),
        q: inst.q.clone(),
        s: BTreeSet::new(),
    };
    let (m, q) = (inst.m.clone(), inst.q.clone());
    Reduction::new(
        target,
        move |x: &Vec<T>| {
            Ok(LcpSolution {
                w: exact::add(&m.mul_vec(x)?, &q),
                z: x.clone(),
            })
        },
        |sol: &LcpSolution<T>| Ok(sol.z.clone()),
    )
}

pub fn reduce_lb_to_plcp<T: Scalar>(
    sys: &LinBellmanSystem<T>,
) -> Result<Reduction<LcpInstance<T>, Vec<T>, LcpSolution<T>>> {
    if !check_r_minus_i_invertible(sys)? {
        return Err(Error::PromiseViolation("R - I is singular".into()));
    }
    let n = sys.n();
    let i_hat = hat_matrix(&Matrix::identity(n), &sys.s)?;
    let a = i_hat.sub(&hat_matrix(&sys.r, &sys.s)?)?;
    let b = i_hat.sub(&hat_matrix(&sys.l, &sys.s)?)?;
    let a_inv = a
        .inverse()?
        .ok_or_else(|| Error::PromiseViolation("R - I is singular".into()))?;
    let target = LcpInstance {
        m: b.mul(&a_inv)?,
        q: i_hat.mul_vec(&sys.q)?.into_iter().map(|v| -v).collect(),
    };
    let i_hat_q = i_hat.mul_vec(&sys.q)?;
    Ok(Reduction::new(
        target,
        move |sol: &LcpSolution<T>| a_inv.mul_vec(&sol.z),
        move |x: &Vec<T>| {
            Ok(LcpSolution {
                w: exact::sub(&b.mul_vec(x)?, &i_hat_q),
                z: a.mul_vec(x)?,
            })
        },
    ))
}

/// One `min` chain per block, helpers ordered block-major with `x_i^1` first.
pub fn reduce_glcp_to_lb<T: Scalar>(
    inst: &GlcpInstance<T>,
) -> Reduction<LinBellmanSystem<T>, GlcpSolution<T>, Vec<T>> {
    let n = inst.n();
    let total = inst.total_rows();
    let offsets: Vec<usize> = (0..n).map(|i| inst.row_index(i, 0)).collect();
    let mut l = Matrix::zeros(total, total);
    let mut r = Matrix::zeros(total, total);
    for i in 0..n {
        let b = inst.block_sizes[i];
        for j in 0..b {
            let row = offsets[i] + j;
            for (c, &off) in offsets.iter().enumerate() {
                l[(row, off)] = inst.m[(row, c)].clone();
            }
            l[(row, offsets[i])] = l[(row, offsets[i])].clone() + T::one();
            if j + 1 < b {
                r[(row, row + 1)] = T::one();
            } else {
                r[(row, offsets[i])] = T::from_int(2);
            }
        }
    }
    let target = LinBellmanSystem {
        l,
        r,
        q: inst.q.clone(),
        s: BTreeSet::new(),
    };
    let pull_inst = inst.clone();
    let pull_offsets = offsets.clone();
    let push_inst = inst.clone();
    Reduction::new(
        target,
        move |x: &Vec<T>| {
            let z: Vec<T> = pull_offsets.iter().map(|&o| x[o].clone()).collect();
            let w = exact::add(&pull_inst.m.mul_vec(&z)?, &pull_inst.q);
            Ok(GlcpSolution { w, z })
        },
        move |sol: &GlcpSolution<T>| {
            let mut x = vec![T::zero(); total];
            for i in 0..n {
                let b = push_inst.block_sizes[i];
                let z = sol.z[i].clone();
                let mut next = z.clone() + z.clone();
                for j in (0..b).rev() {
                    let first = sol.w[offsets[i] + j].clone() + z.clone();
                    next = if first <= next { first } else { next };
                    x[offsets[i] + j] = next.clone();
                }
            }
            Ok(x)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::lcp::{
        is_block_p_matrix, is_p_matrix, solve_glcp_bruteforce, solve_lcp_bruteforce,
        verify_glcp_solution, verify_lcp_solution,
    };
    use crate::linbellman::{solve_lb_bruteforce, verify_lb_solution};
    use crate::{Rational, DEFAULT_LIMIT};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .unwrap()
    }

    /// Strictly row diagonally dominant with positive diagonal.
    fn random_p_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rational> {
        let mut a = Matrix::from_fn(n, n, |_, _| rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
        for i in 0..n {
            let off: Rational = (0..n)
                .filter(|&j| j != i)
                .map(|j| num_traits::Signed::abs(&a[(i, j)]))
                .sum();
            a[(i, i)] = off + rat(rng.gen_range(1..=6), rng.gen_range(1..=2));
        }
        a
    }

    fn random_q(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
        (0..n).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect()
    }

    fn random_block_p(rng: &mut ChaCha8Rng, n: usize) -> GlcpInstance<Rational> {
        let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let total: usize = sizes.iter().sum();
        let mut a = Matrix::zeros(total, n);
        let mut row = 0;
        for (i, &b) in sizes.iter().enumerate() {
            for _ in 0..b {
                let mut off = int(0);
                for j in (0..n).filter(|&j| j != i) {
                    let v = rat(rng.gen_range(-3..=3), rng.gen_range(1..=2));
                    off += num_traits::Signed::abs(&v);
                    a[(row, j)] = v;
                }
                a[(row, i)] = off + int(rng.gen_range(1..=4));
                row += 1;
            }
        }
        let q = random_q(rng, total);
        GlcpInstance::new(sizes, a, q).unwrap()
    }

    #[test]
    fn plcp_to_lb_example() {
        let inst = LcpInstance::new(m(&[&[1]]), vec![int(-1)]).unwrap();
        let red = reduce_plcp_to_lb(&inst);
        assert_eq!(red.target.l, m(&[&[2]]));
        assert_eq!(red.target.r, m(&[&[2]]));
        assert_eq!(red.target.q, vec![int(-1)]);
        assert!(red.target.s.is_empty());
        let sol = red.pull_back(&vec![int(1)]).unwrap();
        assert_eq!(sol, LcpSolution { w: vec![int(0)], z: vec![int(1)] });
        assert!(verify_lcp_solution(&inst, &sol).unwrap());

        let id = LcpInstance::new(Matrix::identity(2), vec![int(3), int(-7)]).unwrap();
        let red = reduce_plcp_to_lb(&id);
        assert_eq!(red.target.l, m(&[&[2, 0], &[0, 2]]));
        assert_eq!(red.target.r, m(&[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn lb_to_plcp_examples() {
        let sys = LinBellmanSystem::new(m(&[&[2]]), m(&[&[2]]), vec![int(-1)], BTreeSet::new())
            .unwrap();
        let red = reduce_lb_to_plcp(&sys).unwrap();
        assert_eq!(red.target.m, m(&[&[1]]));
        assert_eq!(red.target.q, vec![int(-1)]);

        let sys = LinBellmanSystem::new(m(&[&[0]]), m(&[&[0]]), vec![int(5)], BTreeSet::from([0]))
            .unwrap();
        let red = reduce_lb_to_plcp(&sys).unwrap();
        assert_eq!(red.target.m, Matrix::identity(1));
        assert_eq!(red.target.q, vec![int(-5)]);
        let x = red
            .pull_back(&LcpSolution { w: vec![int(0)], z: vec![int(5)] })
            .unwrap();
        assert_eq!(x, vec![int(5)]);

        let bad = LinBellmanSystem::new(m(&[&[2]]), m(&[&[1]]), vec![int(0)], BTreeSet::new())
            .unwrap();
        assert!(matches!(reduce_lb_to_plcp(&bad), Err(Error::PromiseViolation(_))));
    }

    #[test]
    fn glcp_to_lb_example() {
        let inst = GlcpInstance::new(vec![2], m(&[&[2], &[1]]), vec![int(-2), int(-1)]).unwrap();
        let red = reduce_glcp_to_lb(&inst);
        // x1 = min(3 x1 - 2, x2), x2 = min(2 x1 - 1, 2 x1)
        assert_eq!(red.target.l, m(&[&[3, 0], &[2, 0]]));
        assert_eq!(red.target.r, m(&[&[0, 1], &[2, 0]]));
        assert_eq!(red.target.q, vec![int(-2), int(-1)]);
        let e = solve_lb_bruteforce(&red.target, DEFAULT_LIMIT).unwrap();
        assert_eq!(e.solutions, vec![vec![int(1), int(1)]]);
        let sol = red.pull_back(&e.solutions[0]).unwrap();
        assert_eq!(sol, GlcpSolution { w: vec![int(0), int(0)], z: vec![int(1)] });
        assert_eq!(red.push_forward(&sol).unwrap(), vec![int(1), int(1)]);
    }

    #[test]
    fn unit_blocks_match_plcp_reduction() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=4 {
            let inst = LcpInstance::new(random_p_matrix(&mut rng, n), random_q(&mut rng, n)).unwrap();
            let g: GlcpInstance<Rational> = inst.clone().into();
            assert_eq!(reduce_glcp_to_lb(&g).target, reduce_plcp_to_lb(&inst).target);
        }
    }

    #[test]
    fn plcp_round_trip_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for n in 1..=5 {
            let inst = LcpInstance::new(random_p_matrix(&mut rng, n), random_q(&mut rng, n)).unwrap();
            let back = reduce_lb_to_plcp(&reduce_plcp_to_lb(&inst).target).unwrap();
            assert_eq!(back.target, inst);
        }
    }

    #[test]
    fn plcp_solutions_correspond() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for seed in 0..100 {
            let n = 1 + seed % 6;
            let inst = LcpInstance::new(random_p_matrix(&mut rng, n), random_q(&mut rng, n)).unwrap();
            assert!(is_p_matrix(&inst.m).unwrap());
            let red = reduce_plcp_to_lb(&inst);
            assert!(check_r_minus_i_invertible(&red.target).unwrap());
            let lb = solve_lb_bruteforce(&red.target, DEFAULT_LIMIT).unwrap();
            let lcp = solve_lcp_bruteforce(&inst, DEFAULT_LIMIT).unwrap();
            let x = lb.unique().expect("unique LB solution");
            assert_eq!(&red.pull_back(x).unwrap(), lcp.unique().expect("unique LCP solution"));
            assert_eq!(&red.push_forward(lcp.unique().unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn glcp_solutions_correspond() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for seed in 0..60 {
            let n = 1 + seed % 3;
            let inst = random_block_p(&mut rng, n);
            assert!(is_block_p_matrix(&inst, DEFAULT_LIMIT).unwrap());
            let red = reduce_glcp_to_lb(&inst);
            assert!(check_r_minus_i_invertible(&red.target).unwrap());
            let lb = solve_lb_bruteforce(&red.target, DEFAULT_LIMIT).unwrap();
            let glcp = solve_glcp_bruteforce(&inst, DEFAULT_LIMIT).unwrap();
            let x = lb.unique().expect("unique LB solution");
            let sol = red.pull_back(x).unwrap();
            assert!(verify_glcp_solution(&inst, &sol).unwrap());
            assert_eq!(&sol, glcp.unique().expect("unique GLCP solution"));
            assert_eq!(&red.push_forward(&sol).unwrap(), x);
        }
    }

    fn random_lb(rng: &mut ChaCha8Rng, n: usize) -> LinBellmanSystem<Rational> {
        let small = |rng: &mut ChaCha8Rng| rat(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        let l = Matrix::from_fn(n, n, |_, _| small(rng));
        let r = Matrix::from_fn(n, n, |_, _| small(rng));
        let q = random_q(rng, n);
        let s = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        LinBellmanSystem::new(l, r, q, s).unwrap()
    }

    #[test]
    fn lb_round_trip_normalizes_and_preserves_solutions() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut checked = 0;
        while checked < 40 {
            let n = rng.gen_range(1..=4);
            let sys = random_lb(&mut rng, n);
            let Ok(to_lcp) = reduce_lb_to_plcp(&sys) else {
                continue;
            };
            let back = reduce_plcp_to_lb(&to_lcp.target);
            assert!(back.target.s.is_empty());
            let original = solve_lb_bruteforce(&sys, DEFAULT_LIMIT).unwrap();
            let normalized = solve_lb_bruteforce(&back.target, DEFAULT_LIMIT).unwrap();
            if original.singular_branches + normalized.singular_branches > 0 {
                continue;
            }
            let mut mapped: Vec<Vec<Rational>> = normalized
                .solutions
                .iter()
                .map(|y| to_lcp.pull_back(&back.pull_back(y).unwrap()).unwrap())
                .collect();
            let mut expected = original.solutions.clone();
            mapped.sort();
            expected.sort();
            assert_eq!(mapped, expected);
            for x in &mapped {
                assert!(verify_lb_solution(&sys, x).unwrap());
            }
            checked += 1;
        }
    }
}
