use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex};

use super::{GridSpec, Orientation, Vertex};
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::geometry::{check_alpha, colorful_hyperplane, Hyperplane, PointSetFamily};
use crate::lcp::{LcpInstance, LcpSolution};
use crate::reduction::Reduction;

/// Per-block largest and second largest set position (1-based, 0 if none).
///
/// `blocks[i]` is the number of cube coordinates in block `i`; `j` is a cube vertex.
pub fn colors(blocks: &[usize], j: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut first = Vec::with_capacity(blocks.len());
    let mut second = Vec::with_capacity(blocks.len());
    let mut offset = 0;
    for &b in blocks {
        let set: Vec<usize> = (1..=b).filter(|&h| j[offset + h - 1] == 1).collect();
        let mut top = set.iter().rev();
        first.push(top.next().copied().unwrap_or(0));
        second.push(top.next().copied().unwrap_or(0));
        offset += b;
    }
    (first, second)
}

/// Block `i` is the unit vector at position `v_i`, or zero when `v_i = 0`.
pub fn star_embedding(blocks: &[usize], v: &[usize]) -> Vertex {
    let mut out = vec![0; blocks.iter().sum()];
    let mut offset = 0;
    for (&b, &x) in blocks.iter().zip(v) {
        if x > 0 {
            out[offset + x - 1] = 1;
        }
        offset += b;
    }
    out
}

/// Cube orientation of dimension `n_1 + ... + n_d` simulating a grid orientation.
pub struct GridToCube<G: ?Sized> {
    grid: Arc<G>,
    blocks: Vec<usize>,
    block_of: Vec<(usize, usize)>,
    spec: GridSpec,
}

impl<G: Orientation + ?Sized> GridToCube<G> {
    pub fn new(grid: Arc<G>) -> Self {
        let blocks = grid.spec().n.clone();
        let block_of = blocks
            .iter()
            .enumerate()
            .flat_map(|(i, &b)| (1..=b).map(move |h| (i, h)))
            .collect();
        let spec = GridSpec::cube(blocks.iter().sum());
        GridToCube { grid, blocks, block_of, spec }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Outmap bit of cube dimension `(i, h)` at `j`.
    fn bit(&self, j: &[usize], dim: usize) -> bool {
        let (i, h) = self.block_of[dim];
        let (first, second) = colors(&self.blocks, j);
        let g = &first;
        if h < first[i] {
            self.grid.outgoing(g, i, h) ^ (j[dim] == 1)
        } else if h > first[i] {
            self.grid.outgoing(g, i, h)
        } else {
            self.grid.outgoing(g, i, second[i])
        }
    }
}

impl<G: Orientation + ?Sized> Orientation for GridToCube<G> {
    fn spec(&self) -> &GridSpec {
        &self.spec
    }
    fn outgoing(&self, v: &[usize], dim: usize, _to: usize) -> bool {
        self.bit(v, dim)
    }
}

/// Target cube sink `J` pulls back to the grid vertex `colors(J)`.
pub fn reduce_grid_to_cube<G: Orientation + ?Sized + 'static>(
    grid: Arc<G>,
) -> Reduction<Arc<GridToCube<G>>, Vertex, Vertex> {
    let cube = Arc::new(GridToCube::new(grid));
    let pull_blocks = cube.blocks.clone();
    let push_blocks = cube.blocks.clone();
    let grid_spec = cube.grid.spec().clone();
    Reduction::new(
        cube,
        move |j: &Vertex| {
            if j.len() != pull_blocks.iter().sum::<usize>() || j.iter().any(|&b| b > 1) {
                return Err(Error::Invalid(format!("{j:?} is not a cube vertex")));
            }
            Ok(colors(&pull_blocks, j).0)
        },
        move |v: &Vertex| {
            grid_spec.check_vertex(v)?;
            Ok(star_embedding(&push_blocks, v))
        },
    )
}

/// Grid orientation over the colorful choices of a tangent query.
///
/// Grid dimension `k` is color `free_colors()[k]`, with coordinate `v_k` the
/// 0-based point index; single-point colors have no edges and stay fixed.
pub struct TangentGrid<T> {
    family: PointSetFamily<T>,
    alpha: Vec<usize>,
    free: Vec<usize>,
    spec: GridSpec,
    cache: Mutex<HashMap<Vertex, Option<Hyperplane<T>>>>,
}

impl<T: Scalar> TangentGrid<T> {
    pub fn new(family: PointSetFamily<T>, alpha: Vec<usize>) -> Result<Self> {
        check_alpha(&family, &alpha)?;
        let sizes = family.sizes();
        for (i, (&a, &k)) in alpha.iter().zip(&sizes).enumerate() {
            if a != 1 && a != k {
                return Err(Error::Invalid(format!(
                    "alpha_{} = {a} is neither 1 nor |P_{}| = {k}",
                    i + 1,
                    i + 1
                )));
            }
        }
        let free: Vec<usize> = (0..sizes.len()).filter(|&i| sizes[i] >= 2).collect();
        let spec = GridSpec::new(free.iter().map(|&i| sizes[i] - 1).collect())?;
        Ok(TangentGrid {
            family,
            alpha,
            free,
            spec,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn free_colors(&self) -> &[usize] {
        &self.free
    }

    /// Point index per color for grid vertex `v`.
    pub fn choice(&self, v: &[usize]) -> Vec<usize> {
        let mut c = vec![0; self.family.dim()];
        for (k, &i) in self.free.iter().enumerate() {
            c[i] = v[k];
        }
        c
    }

    pub fn vertex_of(&self, choice: &[usize]) -> Vertex {
        self.free.iter().map(|&i| choice[i]).collect()
    }

    /// The colorful hyperplane of `v`, `None` if its points are affinely dependent.
    pub fn hyperplane(&self, v: &[usize]) -> Option<Hyperplane<T>> {
        if let Some(h) = self.cache.lock().expect("cache lock").get(v) {
            return h.clone();
        }
        let h = colorful_hyperplane(&self.family, &self.choice(v)).ok();
        self.cache
            .lock()
            .expect("cache lock")
            .insert(v.to_vec(), h.clone());
        h
    }
}

impl<T: Scalar> Orientation for TangentGrid<T> {
    fn spec(&self) -> &GridSpec {
        &self.spec
    }

    fn outgoing(&self, v: &[usize], dim: usize, to: usize) -> bool {
        let color = self.free[dim];
        let p = &self.family.sets[color][to];
        match self.hyperplane(v) {
            Some(h) if !h.contains(p) => {
                let positive = h.is_positive(p);
                if self.alpha[color] == 1 {
                    positive
                } else {
                    !positive
                }
            }
            // Ties point toward the smaller coordinate.
            _ => to < v[dim],
        }
    }
}

/// Sinks pull back to their colorful hyperplanes.
pub fn reduce_tangent_to_grid_uso<T: Scalar>(
    fam: &PointSetFamily<T>,
    alpha: &[usize],
) -> Result<Reduction<Arc<TangentGrid<T>>, Hyperplane<T>, Vertex>> {
    let grid = Arc::new(TangentGrid::new(fam.clone(), alpha.to_vec())?);
    let pull_grid = grid.clone();
    let push_grid = grid.clone();
    Ok(Reduction::new(
        grid,
        move |v: &Vertex| {
            pull_grid.spec.check_vertex(v)?;
            pull_grid
                .hyperplane(v)
                .map(|h| h.canonical())
                .ok_or_else(|| Error::Degenerate(format!("vertex {v:?} spans no hyperplane")))
        },
        move |h: &Hyperplane<T>| {
            let on: Vec<Vec<usize>> = push_grid
                .family
                .sets
                .iter()
                .map(|set| (0..set.len()).filter(|&j| h.contains(&set[j])).collect())
                .collect();
            if let Some(i) = on.iter().position(Vec::is_empty) {
                return Err(Error::Invalid(format!("hyperplane misses color {}", i + 1)));
            }
            let mut candidates: Vec<Vertex> = vec![vec![]];
            for choices in &on {
                candidates = candidates
                    .into_iter()
                    .flat_map(|prefix| {
                        choices.iter().map(move |&c| {
                            let mut v = prefix.clone();
                            v.push(c);
                            v
                        })
                    })
                    .collect();
            }
            let vertices: Vec<Vertex> = candidates.iter().map(|c| push_grid.vertex_of(c)).collect();
            Ok(vertices
                .iter()
                .find(|v| push_grid.is_sink(v))
                .unwrap_or(&vertices[0])
                .clone())
        },
    ))
}

/// Vertex `B` is the complementary basis with `z_i` basic for `i` in `B`.
pub struct LcpCube<T> {
    inst: LcpInstance<T>,
    spec: GridSpec,
    cache: Mutex<HashMap<Vertex, Option<LcpSolution<T>>>>,
    singular: AtomicUsize,
}

impl<T: Scalar> LcpCube<T> {
    pub fn new(inst: LcpInstance<T>) -> Self {
        let spec = GridSpec::cube(inst.n());
        LcpCube {
            inst,
            spec,
            cache: Mutex::new(HashMap::new()),
            singular: AtomicUsize::new(0),
        }
    }

    pub fn instance(&self) -> &LcpInstance<T> {
        &self.inst
    }

    /// Number of distinct singular bases met so far.
    pub fn singular_bases(&self) -> usize {
        self.singular.load(AtomicOrdering::Relaxed)
    }

    pub fn basis_solution(&self, v: &[usize]) -> Option<LcpSolution<T>> {
        if let Some(s) = self.cache.lock().expect("cache lock").get(v) {
            return s.clone();
        }
        let basis: Vec<bool> = v.iter().map(|&b| b == 1).collect();
        let sol = self.inst.basis_solution(&basis).ok().flatten();
        let mut cache = self.cache.lock().expect("cache lock");
        if !cache.contains_key(v) {
            if sol.is_none() {
                self.singular.fetch_add(1, AtomicOrdering::Relaxed);
            }
            cache.insert(v.to_vec(), sol.clone());
        }
        sol
    }
}

impl<T: Scalar> Orientation for LcpCube<T> {
    fn spec(&self) -> &GridSpec {
        &self.spec
    }

    fn outgoing(&self, v: &[usize], dim: usize, _to: usize) -> bool {
        let in_basis = v[dim] == 1;
        match self.basis_solution(v) {
            Some(sol) => {
                let value = if in_basis { &sol.z[dim] } else { &sol.w[dim] };
                value.is_negative() || (value.is_zero() && in_basis)
            }
            // Singular bases point downward.
            None => in_basis,
        }
    }
}

/// Sink `B` pulls back to its basis solution; a solution pushes to `{i : z_i > 0}`.
pub fn reduce_plcp_to_cube_uso<T: Scalar>(
    inst: &LcpInstance<T>,
) -> Reduction<Arc<LcpCube<T>>, LcpSolution<T>, Vertex> {
    let cube = Arc::new(LcpCube::new(inst.clone()));
    let pull_cube = cube.clone();
    Reduction::new(
        cube,
        move |v: &Vertex| {
            pull_cube.spec.check_vertex(v)?;
            pull_cube
                .basis_solution(v)
                .ok_or_else(|| Error::PromiseViolation(format!("basis {v:?} is singular")))
        },
        |sol: &LcpSolution<T>| Ok(sol.z.iter().map(|z| z.is_positive() as usize).collect()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, Matrix};
    use crate::gen;
    use crate::geometry::tests::rectangle;
    use crate::geometry::{hyperplane_through, is_alpha_cut, solve_tangent_bruteforce};
    use crate::lcp::{solve_lcp_bruteforce, verify_lcp_solution};
    use crate::uso::generators::{random_combed, random_product};
    use crate::uso::tests::cube_table;
    use crate::uso::{
        find_alpha_outdegree_vertex, find_sink_bruteforce, is_grid_uso, sample_antisymmetry,
        check_antisymmetry, edge_list, ExplicitOrientationTable, FnOrientation,
    };
    use crate::{Rational, DEFAULT_LIMIT};
    use rand::Rng;

    fn bits(s: &str) -> Vec<usize> {
        s.chars().map(|c| if c == '1' { 1 } else { 0 }).collect()
    }

    #[test]
    fn color_examples() {
        assert_eq!(colors(&[1, 2], &bits("000")), (vec![0, 0], vec![0, 0]));
        assert_eq!(colors(&[4], &bits("0101")), (vec![4], vec![2]));
        assert_eq!(colors(&[4], &bits("1000")), (vec![1], vec![0]));
        assert_eq!(colors(&[2, 3], &bits("11011")), (vec![2, 3], vec![1, 2]));
        assert_eq!(star_embedding(&[2, 3], &[2, 0]), bits("01000"));
        assert_eq!(star_embedding(&[2, 3], &[1, 3]), bits("10001"));
    }

    #[test]
    fn simplex_to_cube_example() {
        let k3 = Arc::new(FnOrientation::new(GridSpec::new(vec![2]).unwrap(), |v: &[usize], _, to| {
            to > v[0]
        }));
        let red = reduce_grid_to_cube(k3);
        let expected = cube_table(2, &[("00", &[1, 1]), ("10", &[0, 1]), ("01", &[0, 0]), ("11", &[1, 0])]);
        let got = ExplicitOrientationTable::materialize(&red.target, DEFAULT_LIMIT).unwrap();
        assert_eq!(got, expected);
        let sinks = find_sink_bruteforce(&red.target, None, DEFAULT_LIMIT).unwrap();
        assert_eq!(sinks, vec![bits("01")]);
        assert_eq!(red.pull_back(&sinks[0]).unwrap(), vec![2]);
        assert_eq!(red.push_forward(&vec![2]).unwrap(), bits("01"));
    }

    fn exhaustive_usos(spec: &GridSpec) -> Vec<ExplicitOrientationTable> {
        let edges = edge_list(spec);
        (0..(1u64 << edges.len()))
            .filter_map(|k| {
                let b: Vec<bool> = (0..edges.len()).map(|i| k >> i & 1 == 1).collect();
                let t = ExplicitOrientationTable::from_edge_bits(spec.clone(), &b).unwrap();
                is_grid_uso(&t, DEFAULT_LIMIT).unwrap().is_uso().then_some(t)
            })
            .collect()
    }

    fn check_grid_to_cube(t: ExplicitOrientationTable) {
        let grid_sink = find_sink_bruteforce(&t, None, DEFAULT_LIMIT).unwrap();
        let red = reduce_grid_to_cube(Arc::new(t));
        assert!(is_grid_uso(&red.target, DEFAULT_LIMIT).unwrap().is_uso());
        let cube_sink = find_sink_bruteforce(&red.target, None, DEFAULT_LIMIT).unwrap();
        assert_eq!(cube_sink.len(), 1);
        assert_eq!(vec![red.pull_back(&cube_sink[0]).unwrap()], grid_sink);
        assert_eq!(red.push_forward(&grid_sink[0]).unwrap(), cube_sink[0]);
    }

    #[test]
    fn grid_to_cube_on_all_small_grid_usos() {
        for n in [vec![2], vec![1, 1], vec![3], vec![2, 1]] {
            let usos = exhaustive_usos(&GridSpec::new(n).unwrap());
            assert!(!usos.is_empty());
            for t in usos {
                check_grid_to_cube(t);
            }
        }
    }

    #[test]
    fn grid_to_cube_on_sampled_usos() {
        let mut rng = gen::rng(51);
        let spec = GridSpec::new(vec![2, 2]).unwrap();
        for k in 0..40 {
            let t = if k % 2 == 0 {
                random_product(&mut rng, &spec)
            } else {
                random_combed(&mut rng, &spec)
            };
            assert!(is_grid_uso(&t, DEFAULT_LIMIT).unwrap().is_uso());
            check_grid_to_cube(t);
        }
    }

    #[test]
    fn derived_cube_is_antisymmetric() {
        let mut rng = gen::rng(52);
        let t = random_combed(&mut rng, &GridSpec::new(vec![3, 2, 2]).unwrap());
        let red = reduce_grid_to_cube(Arc::new(t));
        let d = red.target.spec().dims();
        let samples: Vec<(Vertex, usize, usize)> = (0..1000)
            .map(|_| {
                let v: Vertex = (0..d).map(|_| rng.gen_range(0..=1)).collect();
                let dim = rng.gen_range(0..d);
                let to = 1 - v[dim];
                (v, dim, to)
            })
            .collect();
        assert_eq!(sample_antisymmetry(&red.target, samples), None);
    }

    #[test]
    fn rectangle_cube_orientations() {
        let fam = rectangle();
        let red = reduce_tangent_to_grid_uso(&fam, &[1, 1]).unwrap();
        let expected = cube_table(2, &[("00", &[0, 0]), ("10", &[1, 0]), ("01", &[0, 1]), ("11", &[1, 1])]);
        assert_eq!(ExplicitOrientationTable::materialize(&red.target, DEFAULT_LIMIT).unwrap(), expected);
        let sink = find_sink_bruteforce(&red.target, None, DEFAULT_LIMIT).unwrap();
        assert_eq!(sink, vec![vec![0, 0]]);
        let cut = red.pull_back(&sink[0]).unwrap();
        let through = |a: [i64; 2], b: [i64; 2]| {
            hyperplane_through(&[vec![int(a[0]), int(a[1])], vec![int(b[0]), int(b[1])]]).unwrap()
        };
        assert!(cut.same_oriented(&through([0, 0], [3, 0])));
        assert_eq!(red.push_forward(&cut).unwrap(), vec![0, 0]);

        let red = reduce_tangent_to_grid_uso(&fam, &[2, 2]).unwrap();
        let sink = find_sink_bruteforce(&red.target, None, DEFAULT_LIMIT).unwrap();
        assert_eq!(sink, vec![vec![1, 1]]);
        assert!(reduce_tangent_to_grid_uso(&fam, &[3, 1]).is_err());
    }

    #[test]
    fn single_point_colors_are_fixed() {
        let fam = crate::geometry::tests::family(&[&[&[0, 0]], &[&[3, 0], &[3, 1], &[3, -2]]]);
        let red = reduce_tangent_to_grid_uso(&fam, &[1, 3]).unwrap();
        assert_eq!(red.target.spec().n, vec![2]);
        assert_eq!(red.target.free_colors(), &[1]);
        let sink = find_sink_bruteforce(&red.target, None, DEFAULT_LIMIT).unwrap();
        assert_eq!(sink, vec![vec![1]]);
        let cut = red.pull_back(&sink[0]).unwrap();
        assert!(is_alpha_cut(&fam, &[1, 3], &cut).unwrap());
        assert_eq!(red.push_forward(&cut).unwrap(), vec![1]);

        let lone = crate::geometry::tests::family(&[&[&[4]]]);
        let red = reduce_tangent_to_grid_uso(&lone, &[1]).unwrap();
        assert_eq!(red.target.spec().vertex_count(), 1);
        assert!(is_grid_uso(&red.target, DEFAULT_LIMIT).unwrap().is_uso());
        let sink = find_sink_bruteforce(&red.target, None, DEFAULT_LIMIT).unwrap();
        assert_eq!(sink, vec![Vec::<usize>::new()]);
        assert!(red.pull_back(&sink[0]).unwrap().contains(&[int(4)]));
    }

    #[test]
    fn removing_a_point_gives_the_induced_subgrid() {
        let mut rng = gen::rng(53);
        let fam = gen::random_sws_family_sized(&mut rng, 2, 3, 3);
        let alpha = vec![1, 3];
        let full = reduce_tangent_to_grid_uso(&fam, &alpha).unwrap().target;
        let mut smaller = fam.clone();
        smaller.sets[1].remove(1);
        let sub = reduce_tangent_to_grid_uso(&smaller, &[1, 2]).unwrap().target;
        let keep = [0usize, 2];
        for v in sub.spec().vertices() {
            let lifted = vec![v[0], keep[v[1]]];
            for (dim, &n) in sub.spec().n.iter().enumerate() {
                for to in (0..=n).filter(|&t| t != v[dim]) {
                    let lifted_to = if dim == 1 { keep[to] } else { to };
                    assert_eq!(sub.outgoing(&v, dim, to), full.outgoing(&lifted, dim, lifted_to));
                }
            }
        }
    }

    #[test]
    fn tangent_grids_are_usos() {
        let mut rng = gen::rng(54);
        for round in 0..12 {
            let d = 1 + round % 3;
            let fam = gen::random_sws_family_sized(&mut rng, d, 1, 3);
            for alpha in gen::admissible_alphas(&fam) {
                let red = reduce_tangent_to_grid_uso(&fam, &alpha).unwrap();
                assert_eq!(check_antisymmetry(&red.target), None);
                assert!(is_grid_uso(&red.target, DEFAULT_LIMIT).unwrap().is_uso(), "{fam:?} {alpha:?}");
                let sink = find_sink_bruteforce(&red.target, None, DEFAULT_LIMIT).unwrap();
                let cut = red.pull_back(&sink[0]).unwrap();
                let brute = solve_tangent_bruteforce(&fam, &alpha, DEFAULT_LIMIT).unwrap();
                assert!(brute.unique().unwrap().hyperplane.same_oriented(&cut));
            }
        }
    }

    #[test]
    fn alpha_vertex_on_tangent_grid() {
        let mut rng = gen::rng(55);
        for round in 0..10 {
            let d = 1 + round % 3;
            let fam = gen::random_sws_family_sized(&mut rng, d, 1, 3);
            let ones = vec![1; d];
            let red = reduce_tangent_to_grid_uso(&fam, &ones).unwrap();
            let sizes = fam.sizes();
            // Every alpha' in the box, not only the extreme ones.
            let mut alphas: Vec<Vec<usize>> = vec![vec![]];
            for &k in &sizes {
                alphas = alphas
                    .into_iter()
                    .flat_map(|p| (1..=k).map(move |a| [p.clone(), vec![a]].concat()))
                    .collect();
            }
            for a in alphas {
                let free: Vec<usize> = red.target.free_colors().iter().map(|&i| a[i]).collect();
                let found = find_alpha_outdegree_vertex(&red.target, &free, DEFAULT_LIMIT).unwrap();
                assert_eq!(found.len(), 1, "{fam:?} {a:?}");
                let cut = red.pull_back(&found[0]).unwrap();
                assert!(is_alpha_cut(&fam, &a, &cut).unwrap());
                let brute = solve_tangent_bruteforce(&fam, &a, DEFAULT_LIMIT).unwrap();
                assert!(brute.unique().unwrap().hyperplane.same_oriented(&cut));
            }
        }
    }

    #[test]
    fn lcp_cube_examples() {
        let inst = LcpInstance::new(Matrix::from_rows(vec![vec![int(1)]]).unwrap(), vec![int(-1)]).unwrap();
        let red = reduce_plcp_to_cube_uso(&inst);
        assert!(red.target.outgoing(&[0], 0, 1));
        assert!(!red.target.outgoing(&[1], 0, 0));
        let sink = find_sink_bruteforce(&red.target, None, DEFAULT_LIMIT).unwrap();
        assert_eq!(sink, vec![vec![1]]);
        let sol = red.pull_back(&sink[0]).unwrap();
        assert_eq!(sol, LcpSolution { w: vec![int(0)], z: vec![int(1)] });
        assert_eq!(red.push_forward(&sol).unwrap(), vec![1]);

        let inst = LcpInstance::new(Matrix::identity(3), vec![int(0), int(2), int(1)]).unwrap();
        let red = reduce_plcp_to_cube_uso(&inst);
        let sink = find_sink_bruteforce(&red.target, None, DEFAULT_LIMIT).unwrap();
        assert_eq!(sink, vec![vec![0, 0, 0]]);
        assert_eq!(red.pull_back(&sink[0]).unwrap().z, vec![int(0); 3]);
    }

    #[test]
    fn singular_bases_are_counted_and_point_down() {
        let inst = LcpInstance::new(
            Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap(),
            vec![int(1), int(1)],
        )
        .unwrap();
        let red = reduce_plcp_to_cube_uso(&inst);
        assert!(red.target.outgoing(&[1, 0], 0, 0));
        let _ = red.target.outmap(&[0, 1]);
        assert_eq!(red.target.singular_bases(), 2);
        assert!(matches!(red.pull_back(&vec![1, 0]), Err(Error::PromiseViolation(_))));
    }

    #[test]
    fn lcp_cubes_are_usos_with_correct_sinks() {
        let mut rng = gen::rng(56);
        for round in 0..40 {
            let n = 1 + round % 5;
            let inst = gen::random_p_lcp(&mut rng, n);
            let red = reduce_plcp_to_cube_uso(&inst);
            assert!(is_grid_uso(&red.target, DEFAULT_LIMIT).unwrap().is_uso());
            let sink = find_sink_bruteforce(&red.target, None, DEFAULT_LIMIT).unwrap();
            let sol = red.pull_back(&sink[0]).unwrap();
            assert!(verify_lcp_solution(&inst, &sol).unwrap());
            assert_eq!(&sol, solve_lcp_bruteforce(&inst, DEFAULT_LIMIT).unwrap().unique().unwrap());
            assert_eq!(red.target.singular_bases(), 0);
        }
    }

    #[test]
    fn degenerate_lcp_stays_a_uso() {
        // q = 0 makes every basic value zero.
        let mut rng = gen::rng(57);
        for n in 1..=4 {
            let m = gen::random_p_matrix(&mut rng, n);
            let inst: LcpInstance<Rational> = LcpInstance::new(m, vec![int(0); n]).unwrap();
            let red = reduce_plcp_to_cube_uso(&inst);
            assert!(is_grid_uso(&red.target, DEFAULT_LIMIT).unwrap().is_uso());
            assert_eq!(find_sink_bruteforce(&red.target, None, DEFAULT_LIMIT).unwrap(), vec![vec![0; n]]);
        }
    }
}
