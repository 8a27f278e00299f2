//! Linear complementarity problems and their vertical-block generalization.
//!
//! Instances, promise checkers (P-matrix, block P-matrix), exact solution
//! verifiers and brute-force solvers that enumerate complementary bases. The
//! brute-force solvers are ground truth for every reduction in the crate.

use rayon::prelude::*;

use crate::error::{check_limit, Error, Result};
use crate::exact::{self, is_nonnegative, Matrix, Scalar, Solve};

/// `w = M z + q`, `w, z >= 0`, `w^T z = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcpInstance<T> {
    pub m: Matrix<T>,
    pub q: Vec<T>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LcpSolution<T> {
    pub w: Vec<T>,
    pub z: Vec<T>,
}

/// Vertical block instance: block `i` has `block_sizes[i]` rows sharing `z_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlcpInstance<T> {
    pub block_sizes: Vec<usize>,
    pub m: Matrix<T>,
    pub q: Vec<T>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GlcpSolution<T> {
    pub w: Vec<T>,
    pub z: Vec<T>,
}

/// Result of an exhaustive enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration<S> {
    /// Distinct solutions, in order of the branch that first produced them.
    pub solutions: Vec<S>,
    pub branches: u128,
    /// Branches skipped because their linear system was singular.
    pub singular_branches: usize,
}

impl<S> Enumeration<S> {
    pub fn unique(&self) -> Option<&S> {
        match self.solutions.as_slice() {
            [only] => Some(only),
            _ => None,
        }
    }
}

pub(crate) fn collect_branches<S: PartialEq + Send>(
    branches: u128,
    eval: impl Fn(u128) -> Result<Option<Option<S>>> + Sync + Send,
) -> Result<Enumeration<S>> {
    // Inner `None` marks a singular branch, outer `None` an infeasible one.
    let results: Vec<Option<Option<S>>> = (0..branches as u64)
        .into_par_iter()
        .map(|b| eval(b as u128))
        .collect::<Result<_>>()?;
    let mut solutions = Vec::new();
    let mut singular_branches = 0;
    for r in results {
        match r {
            Some(Some(s)) => {
                if !solutions.contains(&s) {
                    solutions.push(s);
                }
            }
            Some(None) => singular_branches += 1,
            None => {}
        }
    }
    Ok(Enumeration {
        solutions,
        branches,
        singular_branches,
    })
}

impl<T: Scalar> LcpInstance<T> {
    pub fn new(m: Matrix<T>, q: Vec<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if q.len() != m.rows() {
            return Err(Error::DimensionMismatch(format!(
                "q has length {}, M is {}x{}",
                q.len(),
                m.rows(),
                m.cols()
            )));
        }
        Ok(LcpInstance { m, q })
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    /// Solves the complementary basis where `z_i` is basic iff `basis[i]`.
    ///
    /// Returns `(w, z)` without checking signs, or `None` if the basis matrix
    /// `M[B, B]` is singular.
    pub fn basis_solution(&self, basis: &[bool]) -> Result<Option<LcpSolution<T>>> {
        let n = self.n();
        if basis.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "basis of length {} for n = {n}",
                basis.len()
            )));
        }
        let idx: Vec<usize> = (0..n).filter(|&i| basis[i]).collect();
        let mut z = vec![T::zero(); n];
        if !idx.is_empty() {
            let sub = self.m.submatrix(&idx, &idx)?;
            let rhs: Vec<T> = idx.iter().map(|&i| -self.q[i].clone()).collect();
            match sub.solve(&rhs)? {
                Solve::Unique(zb) => {
                    for (&i, v) in idx.iter().zip(zb) {
                        z[i] = v;
                    }
                }
                Solve::Singular => return Ok(None),
            }
        }
        let w = exact::add(&self.m.mul_vec(&z)?, &self.q);
        // Basic w_i for i in B is zero by construction.
        Ok(Some(LcpSolution { w, z }))
    }
}

pub fn verify_lcp_solution<T: Scalar>(inst: &LcpInstance<T>, sol: &LcpSolution<T>) -> Result<bool> {
    let n = inst.n();
    if sol.w.len() != n || sol.z.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "solution lengths ({}, {}) for n = {n}",
            sol.w.len(),
            sol.z.len()
        )));
    }
    let mzq = exact::add(&inst.m.mul_vec(&sol.z)?, &inst.q);
    Ok(mzq == sol.w
        && is_nonnegative(&sol.w)
        && is_nonnegative(&sol.z)
        && exact::dot(&sol.w, &sol.z).is_zero())
}

/// True iff all `2^n - 1` principal minors are positive.
pub fn is_p_matrix<T: Scalar>(m: &Matrix<T>) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    check_limit("principal minors", 1u128 << n.min(127), crate::DEFAULT_LIMIT)?;
    let subsets = 1u64 << n;
    let violated = (1..subsets).into_par_iter().any(|mask| {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        match m.submatrix(&idx, &idx).and_then(|s| s.determinant()) {
            Ok(d) => !d.is_positive(),
            Err(_) => true,
        }
    });
    Ok(!violated)
}

/// All solutions, found by enumerating the `2^n` complementary bases.
pub fn solve_lcp_bruteforce<T: Scalar>(
    inst: &LcpInstance<T>,
    limit: u128,
) -> Result<Enumeration<LcpSolution<T>>> {
    let n = inst.n();
    check_limit("complementary bases", 1u128 << n.min(127), limit)?;
    collect_branches(1u128 << n, |mask| {
        let basis: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        Ok(match inst.basis_solution(&basis)? {
            None => Some(None),
            Some(sol) if is_nonnegative(&sol.w) && is_nonnegative(&sol.z) => Some(Some(sol)),
            Some(_) => None,
        })
    })
}

impl<T: Scalar> GlcpInstance<T> {
    pub fn new(block_sizes: Vec<usize>, m: Matrix<T>, q: Vec<T>) -> Result<Self> {
        if block_sizes.iter().any(|&b| b == 0) {
            return Err(Error::Invalid("block sizes must be at least 1".into()));
        }
        let total: usize = block_sizes.iter().sum();
        if m.rows() != total || m.cols() != block_sizes.len() || q.len() != total {
            return Err(Error::DimensionMismatch(format!(
                "blocks {:?} need a {total}x{} matrix and q of length {total}, got {}x{} and {}",
                block_sizes,
                block_sizes.len(),
                m.rows(),
                m.cols(),
                q.len()
            )));
        }
        Ok(GlcpInstance { block_sizes, m, q })
    }

    /// Number of blocks (= number of `z` variables).
    pub fn n(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn total_rows(&self) -> usize {
        self.q.len()
    }

    /// Row index of row `j` (0-based) of block `i`.
    pub fn row_index(&self, i: usize, j: usize) -> usize {
        self.block_sizes[..i].iter().sum::<usize>() + j
    }

    pub fn as_lcp(&self) -> Option<LcpInstance<T>> {
        self.block_sizes
            .iter()
            .all(|&b| b == 1)
            .then(|| LcpInstance {
                m: self.m.clone(),
                q: self.q.clone(),
            })
    }
}

impl<T: Scalar> From<LcpInstance<T>> for GlcpInstance<T> {
    fn from(inst: LcpInstance<T>) -> Self {
        GlcpInstance {
            block_sizes: vec![1; inst.n()],
            m: inst.m,
            q: inst.q,
        }
    }
}

/// The `n x n` matrix taking row `choice[i]` (0-based) of block `i`.
pub fn representative_submatrix<T: Scalar>(
    inst: &GlcpInstance<T>,
    choice: &[usize],
) -> Result<Matrix<T>> {
    if choice.len() != inst.n() {
        return Err(Error::DimensionMismatch(format!(
            "choice of length {} for {} blocks",
            choice.len(),
            inst.n()
        )));
    }
    let mut rows = Vec::with_capacity(choice.len());
    for (i, &c) in choice.iter().enumerate() {
        if c >= inst.block_sizes[i] {
            return Err(Error::IndexOutOfRange {
                index: c,
                size: inst.block_sizes[i],
            });
        }
        rows.push(inst.row_index(i, c));
    }
    let cols: Vec<usize> = (0..inst.n()).collect();
    inst.m.submatrix(&rows, &cols)
}

fn mixed_radix(mut index: u128, radices: &[usize]) -> Vec<usize> {
    radices
        .iter()
        .map(|&r| {
            let d = (index % r as u128) as usize;
            index /= r as u128;
            d
        })
        .collect()
}

fn product(radices: impl IntoIterator<Item = usize>) -> u128 {
    radices
        .into_iter()
        .fold(1u128, |acc, r| acc.saturating_mul(r as u128))
}

/// True iff every representative submatrix is a P-matrix.
pub fn is_block_p_matrix<T: Scalar>(inst: &GlcpInstance<T>, limit: u128) -> Result<bool> {
    let count = product(inst.block_sizes.iter().copied());
    check_limit("representative submatrices", count, limit)?;
    for k in 0..count {
        let choice = mixed_radix(k, &inst.block_sizes);
        if !is_p_matrix(&representative_submatrix(inst, &choice)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn verify_glcp_solution<T: Scalar>(inst: &GlcpInstance<T>, sol: &GlcpSolution<T>) -> Result<bool> {
    if sol.w.len() != inst.total_rows() || sol.z.len() != inst.n() {
        return Err(Error::DimensionMismatch(format!(
            "solution lengths ({}, {}) for N = {}, n = {}",
            sol.w.len(),
            sol.z.len(),
            inst.total_rows(),
            inst.n()
        )));
    }
    let mzq = exact::add(&inst.m.mul_vec(&sol.z)?, &inst.q);
    if mzq != sol.w || !is_nonnegative(&sol.w) || !is_nonnegative(&sol.z) {
        return Ok(false);
    }
    let complementary = (0..inst.n()).all(|i| {
        sol.z[i].is_zero()
            || (0..inst.block_sizes[i]).any(|j| sol.w[inst.row_index(i, j)].is_zero())
    });
    Ok(complementary)
}

/// Enumerates per block the choice `z_i = 0` or `w_i^j = 0` for some `j`.
pub fn solve_glcp_bruteforce<T: Scalar>(
    inst: &GlcpInstance<T>,
    limit: u128,
) -> Result<Enumeration<GlcpSolution<T>>> {
    let radices: Vec<usize> = inst.block_sizes.iter().map(|b| b + 1).collect();
    let count = product(radices.iter().copied());
    check_limit("GLCP complementarity patterns", count, limit)?;
    let n = inst.n();
    collect_branches(count, |k| {
        let choice = mixed_radix(k, &radices);
        let a = Matrix::from_fn(n, n, |i, c| match choice[i] {
            0 => {
                if i == c {
                    T::one()
                } else {
                    T::zero()
                }
            }
            j => inst.m[(inst.row_index(i, j - 1), c)].clone(),
        });
        let b: Vec<T> = (0..n)
            .map(|i| match choice[i] {
                0 => T::zero(),
                j => -inst.q[inst.row_index(i, j - 1)].clone(),
            })
            .collect();
        let Solve::Unique(z) = a.solve(&b)? else {
            return Ok(Some(None));
        };
        let w = exact::add(&inst.m.mul_vec(&z)?, &inst.q);
        Ok((is_nonnegative(&w) && is_nonnegative(&z)).then_some(Some(GlcpSolution { w, z })))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::Rational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .unwrap()
    }

    fn vec_i(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn lcp(m: &[&[i64]], q: &[i64]) -> LcpInstance<Rational> {
        LcpInstance::new(mat(m), vec_i(q)).unwrap()
    }

    #[test]
    fn verify_examples() {
        let inst = lcp(&[&[1]], &[2]);
        let ok = LcpSolution { w: vec_i(&[2]), z: vec_i(&[0]) };
        assert!(verify_lcp_solution(&inst, &ok).unwrap());
        let inst = lcp(&[&[1]], &[-1]);
        let ok = LcpSolution { w: vec_i(&[0]), z: vec_i(&[1]) };
        assert!(verify_lcp_solution(&inst, &ok).unwrap());
        let bad = LcpSolution { w: vec_i(&[0]), z: vec_i(&[2]) };
        assert!(!verify_lcp_solution(&inst, &bad).unwrap());
        let short = LcpSolution { w: vec![], z: vec_i(&[2]) };
        assert!(verify_lcp_solution(&inst, &short).is_err());
    }

    #[test]
    fn p_matrix_examples() {
        assert!(is_p_matrix(&Matrix::<Rational>::identity(3)).unwrap());
        assert!(!is_p_matrix(&mat(&[&[0, 1], &[-1, 0]])).unwrap());
        assert!(is_p_matrix(&mat(&[&[2, 1], &[1, 2]])).unwrap());
        // Positive diagonal, negative determinant.
        assert!(!is_p_matrix(&mat(&[&[1, 2], &[2, 1]])).unwrap());
        assert!(is_p_matrix(&Matrix::<Rational>::zeros(2, 3)).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        let e = solve_lcp_bruteforce(&lcp(&[&[1]], &[2]), crate::DEFAULT_LIMIT).unwrap();
        assert_eq!(e.solutions, vec![LcpSolution { w: vec_i(&[2]), z: vec_i(&[0]) }]);
        let e = solve_lcp_bruteforce(&lcp(&[&[1]], &[-1]), crate::DEFAULT_LIMIT).unwrap();
        assert_eq!(e.solutions, vec![LcpSolution { w: vec_i(&[0]), z: vec_i(&[1]) }]);
        let e = solve_lcp_bruteforce(&lcp(&[&[2, 1], &[1, 2]], &[-1, -1]), crate::DEFAULT_LIMIT)
            .unwrap();
        assert_eq!(
            e.solutions,
            vec![LcpSolution { w: vec_i(&[0, 0]), z: vec![rat(1, 3), rat(1, 3)] }]
        );
        assert_eq!(e.branches, 4);
    }

    #[test]
    fn degenerate_ties_are_deduplicated() {
        // q = 0: the zero solution is produced by every basis.
        let e = solve_lcp_bruteforce(&lcp(&[&[2, 1], &[1, 2]], &[0, 0]), crate::DEFAULT_LIMIT)
            .unwrap();
        assert_eq!(e.solutions.len(), 1);
        assert_eq!(e.solutions[0].z, vec_i(&[0, 0]));
    }

    #[test]
    fn singular_bases_are_counted() {
        let e = solve_lcp_bruteforce(&lcp(&[&[0, 1], &[1, 0]], &[1, 1]), crate::DEFAULT_LIMIT)
            .unwrap();
        assert_eq!(e.singular_branches, 2);
        assert_eq!(e.solutions.len(), 1);
    }

    #[test]
    fn limit_is_enforced() {
        let inst = LcpInstance::new(Matrix::<Rational>::identity(5), vec![int(1); 5]).unwrap();
        assert!(matches!(
            solve_lcp_bruteforce(&inst, 16),
            Err(Error::LimitExceeded { .. })
        ));
    }

    fn single_block(rows: &[i64], q: &[i64]) -> GlcpInstance<Rational> {
        let m = Matrix::new(rows.len(), 1, vec_i(rows)).unwrap();
        GlcpInstance::new(vec![rows.len()], m, vec_i(q)).unwrap()
    }

    #[test]
    fn glcp_examples() {
        let g = single_block(&[2, 1], &[-2, -1]);
        assert_eq!(representative_submatrix(&g, &[0]).unwrap(), mat(&[&[2]]));
        assert_eq!(representative_submatrix(&g, &[1]).unwrap(), mat(&[&[1]]));
        assert!(representative_submatrix(&g, &[2]).is_err());
        assert!(is_block_p_matrix(&g, crate::DEFAULT_LIMIT).unwrap());
        assert!(!is_block_p_matrix(&single_block(&[2, -1], &[0, 0]), crate::DEFAULT_LIMIT).unwrap());

        let sol = GlcpSolution { w: vec_i(&[0, 0]), z: vec_i(&[1]) };
        assert!(verify_glcp_solution(&g, &sol).unwrap());
        let bad = GlcpSolution { w: vec_i(&[-2, -1]), z: vec_i(&[0]) };
        assert!(!verify_glcp_solution(&g, &bad).unwrap());

        let e = solve_glcp_bruteforce(&g, crate::DEFAULT_LIMIT).unwrap();
        assert_eq!(e.solutions, vec![sol]);
        assert_eq!(e.branches, 3);
        let e = solve_glcp_bruteforce(&single_block(&[2, 1], &[1, 1]), crate::DEFAULT_LIMIT).unwrap();
        assert_eq!(e.solutions, vec![GlcpSolution { w: vec_i(&[1, 1]), z: vec_i(&[0]) }]);
    }

    #[test]
    fn unit_blocks_agree_with_lcp() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let n = rng.gen_range(1..=4);
            let m = Matrix::from_fn(n, n, |_, _| int(rng.gen_range(-3..=3)));
            let q: Vec<Rational> = (0..n).map(|_| int(rng.gen_range(-4..=4))).collect();
            let l = LcpInstance::new(m, q).unwrap();
            let g: GlcpInstance<Rational> = l.clone().into();
            assert_eq!(is_block_p_matrix(&g, crate::DEFAULT_LIMIT).unwrap(), is_p_matrix(&l.m).unwrap());
            let mut a: Vec<_> = solve_lcp_bruteforce(&l, crate::DEFAULT_LIMIT)
                .unwrap()
                .solutions
                .into_iter()
                .map(|s| (s.w, s.z))
                .collect();
            let mut b: Vec<_> = solve_glcp_bruteforce(&g, crate::DEFAULT_LIMIT)
                .unwrap()
                .solutions
                .into_iter()
                .map(|s| (s.w, s.z))
                .collect();
            a.sort();
            b.sort();
            assert_eq!(a, b);
            for (w, z) in &a {
                let s = LcpSolution { w: w.clone(), z: z.clone() };
                let gs = GlcpSolution { w: w.clone(), z: z.clone() };
                assert_eq!(verify_lcp_solution(&l, &s).unwrap(), verify_glcp_solution(&g, &gs).unwrap());
            }
        }
    }
}
