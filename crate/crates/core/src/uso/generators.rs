//! Random unique sink orientations.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{
    edge_list, is_grid_uso, reduce_plcp_to_cube_uso, ExplicitOrientationTable, FnOrientation,
    GridSpec,
};
use crate::gen;

fn ranks<R: Rng>(rng: &mut R, len: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..len).collect();
    order.shuffle(rng);
    let mut rank = vec![0; len];
    for (r, &x) in order.iter().enumerate() {
        rank[x] = r;
    }
    rank
}

/// Every dimension ordered by its own random permutation.
pub fn random_product<R: Rng>(rng: &mut R, spec: &GridSpec) -> ExplicitOrientationTable {
    let rank: Vec<Vec<usize>> = spec.n.iter().map(|&n| ranks(rng, n + 1)).collect();
    let o = FnOrientation::new(spec.clone(), move |v: &[usize], dim, to| {
        rank[dim][to] < rank[dim][v[dim]]
    });
    ExplicitOrientationTable::materialize(&o, u128::MAX).expect("table fits")
}

enum Comb {
    Leaf,
    Node {
        dim: usize,
        rank: Vec<usize>,
        children: Vec<Comb>,
    },
}

impl Comb {
    fn build<R: Rng>(rng: &mut R, spec: &GridSpec, free: &[usize]) -> Comb {
        if free.is_empty() {
            return Comb::Leaf;
        }
        let pick = rng.gen_range(0..free.len());
        let dim = free[pick];
        let rest: Vec<usize> = free.iter().copied().filter(|&k| k != dim).collect();
        let len = spec.n[dim] + 1;
        Comb::Node {
            dim,
            rank: ranks(rng, len),
            children: (0..len).map(|_| Comb::build(rng, spec, &rest)).collect(),
        }
    }

    fn outgoing(&self, v: &[usize], d: usize, to: usize) -> bool {
        match self {
            Comb::Leaf => unreachable!("every dimension is combed on the way down"),
            Comb::Node { dim, rank, children } => {
                if *dim == d {
                    rank[to] < rank[v[d]]
                } else {
                    children[v[*dim]].outgoing(v, d, to)
                }
            }
        }
    }
}

/// Recursively combed: one dimension is combed, each of its facets gets an independent orientation.
pub fn random_combed<R: Rng>(rng: &mut R, spec: &GridSpec) -> ExplicitOrientationTable {
    let free: Vec<usize> = (0..spec.dims()).collect();
    let comb = Comb::build(rng, spec, &free);
    let o = FnOrientation::new(spec.clone(), move |v: &[usize], d, to| comb.outgoing(v, d, to));
    ExplicitOrientationTable::materialize(&o, u128::MAX).expect("table fits")
}

/// Uniform edge bits until a USO appears; only sensible for a handful of edges.
pub fn random_rejection<R: Rng>(
    rng: &mut R,
    spec: &GridSpec,
    max_tries: usize,
) -> Option<ExplicitOrientationTable> {
    let edges = edge_list(spec).len();
    (0..max_tries).find_map(|_| {
        let bits: Vec<bool> = (0..edges).map(|_| rng.gen()).collect();
        let t = ExplicitOrientationTable::from_edge_bits(spec.clone(), &bits).ok()?;
        is_grid_uso(&t, u128::MAX).ok()?.is_uso().then_some(t)
    })
}

/// The cube orientation of a random P-LCP.
pub fn random_lcp_cube(rng: &mut gen::Rng64, n: usize) -> ExplicitOrientationTable {
    let inst = gen::random_p_lcp(rng, n);
    let red = reduce_plcp_to_cube_uso(&inst);
    ExplicitOrientationTable::materialize(&red.target, u128::MAX).expect("table fits")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uso::{find_sink_bruteforce, szabo_welzl_check};
    use crate::DEFAULT_LIMIT;

    #[test]
    fn generators_produce_usos() {
        let mut rng = gen::rng(61);
        for n in [vec![1], vec![1, 1, 1], vec![3, 1, 2], vec![2, 2]] {
            let spec = GridSpec::new(n).unwrap();
            for t in [random_product(&mut rng, &spec), random_combed(&mut rng, &spec)] {
                assert!(is_grid_uso(&t, DEFAULT_LIMIT).unwrap().is_uso());
                assert_eq!(find_sink_bruteforce(&t, None, DEFAULT_LIMIT).unwrap().len(), 1);
            }
        }
        for n in 1..=4 {
            let t = random_lcp_cube(&mut rng, n);
            assert_eq!(szabo_welzl_check(&t, DEFAULT_LIMIT).unwrap(), None);
        }
        let t = random_rejection(&mut rng, &GridSpec::cube(2), 500).unwrap();
        assert!(is_grid_uso(&t, DEFAULT_LIMIT).unwrap().is_uso());
    }

    #[test]
    fn combed_tables_are_seeded() {
        let spec = GridSpec::new(vec![2, 1, 1]).unwrap();
        let a = random_combed(&mut gen::rng(7), &spec);
        let b = random_combed(&mut gen::rng(7), &spec);
        assert_eq!(a, b);
    }
}
