//! Grid and cube orientations given by vertex-local oracles, unique sink
//! checks, and the reductions that produce such orientations.
//!
//! A grid has dimensions `0..d`; dimension `i` has the coordinate values
//! `0..=n_i`, and every two vertices differing only in coordinate `i` are
//! adjacent. A cube is the grid with all `n_i = 1`.

mod checks;
pub mod generators;
mod reductions;

use std::fmt;

pub use checks::{
    check_antisymmetry, find_alpha_outdegree_vertex, find_sink_bruteforce, is_grid_uso,
    sample_antisymmetry, szabo_welzl_check, UsoCheck,
};
pub use reductions::{
    colors, reduce_grid_to_cube, reduce_plcp_to_cube_uso, reduce_tangent_to_grid_uso,
    star_embedding, GridToCube, LcpCube, TangentGrid,
};

use crate::error::{check_limit, Error, Result};

pub type Vertex = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridSpec {
    pub n: Vec<usize>,
}

impl GridSpec {
    pub fn new(n: Vec<usize>) -> Result<Self> {
        if let Some(i) = n.iter().position(|&v| v == 0) {
            return Err(Error::Invalid(format!("dimension {} has no edges", i + 1)));
        }
        Ok(GridSpec { n })
    }

    pub fn cube(d: usize) -> Self {
        GridSpec { n: vec![1; d] }
    }

    pub fn dims(&self) -> usize {
        self.n.len()
    }

    pub fn is_cube(&self) -> bool {
        self.n.iter().all(|&v| v == 1)
    }

    pub fn vertex_count(&self) -> u128 {
        self.n
            .iter()
            .fold(1u128, |acc, &v| acc.saturating_mul(v as u128 + 1))
    }

    /// Length of an outmap: one bit per neighbor.
    pub fn outmap_len(&self) -> usize {
        self.n.iter().sum()
    }

    pub fn offset(&self, dim: usize) -> usize {
        self.n[..dim].iter().sum()
    }

    pub fn contains(&self, v: &[usize]) -> bool {
        v.len() == self.dims() && v.iter().zip(&self.n).all(|(&x, &n)| x <= n)
    }

    pub fn check_vertex(&self, v: &[usize]) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::Invalid(format!("{v:?} is not a vertex of grid {:?}", self.n)))
        }
    }

    /// Mixed radix, coordinate 0 least significant; a cube vertex index is its bitmask.
    pub fn index(&self, v: &[usize]) -> usize {
        let mut idx = 0;
        for (i, &x) in v.iter().enumerate().rev() {
            idx = idx * (self.n[i] + 1) + x;
        }
        idx
    }

    pub fn vertex(&self, mut index: usize) -> Vertex {
        self.n
            .iter()
            .map(|&n| {
                let x = index % (n + 1);
                index /= n + 1;
                x
            })
            .collect()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count() as usize).map(|i| self.vertex(i))
    }

    /// Outmap position of the edge from `v` to coordinate `to` in dimension `dim`.
    pub fn bit_position(&self, v: &[usize], dim: usize, to: usize) -> usize {
        let local = if to < v[dim] { to } else { to - 1 };
        self.offset(dim) + local
    }

    /// Inverse of [`GridSpec::bit_position`] for vertex `v`.
    pub fn neighbor_at(&self, v: &[usize], position: usize) -> (usize, usize) {
        let mut dim = 0;
        let mut local = position;
        while local >= self.n[dim] {
            local -= self.n[dim];
            dim += 1;
        }
        let to = if local < v[dim] { local } else { local + 1 };
        (dim, to)
    }

    pub fn format_vertex(&self, v: &[usize]) -> String {
        if self.is_cube() {
            v.iter().map(|x| char::from(b'0' + *x as u8)).collect()
        } else {
            v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
        }
    }

    pub fn parse_vertex(&self, text: &str) -> Result<Vertex> {
        let v: Option<Vertex> = if self.is_cube() {
            text.chars().map(|c| c.to_digit(2).map(|d| d as usize)).collect()
        } else if text.is_empty() {
            Some(vec![])
        } else {
            text.split(',').map(|t| t.parse().ok()).collect()
        };
        match v {
            Some(v) if self.contains(&v) && self.format_vertex(&v) == text => Ok(v),
            _ => Err(Error::Invalid(format!("bad vertex {text:?} for grid {:?}", self.n))),
        }
    }
}

/// A grid orientation answered one edge at a time.
pub trait Orientation: Send + Sync {
    fn spec(&self) -> &GridSpec;

    /// Whether the edge from `v` to `v` with coordinate `dim` set to `to` points away from `v`.
    fn outgoing(&self, v: &[usize], dim: usize, to: usize) -> bool;

    /// Bits ordered by dimension, then by neighbor coordinate skipping `v[dim]`.
    fn outmap(&self, v: &[usize]) -> Vec<bool> {
        let spec = self.spec();
        let mut out = Vec::with_capacity(spec.outmap_len());
        for (dim, &n) in spec.n.iter().enumerate() {
            for to in (0..=n).filter(|&t| t != v[dim]) {
                out.push(self.outgoing(v, dim, to));
            }
        }
        out
    }

    fn is_sink(&self, v: &[usize]) -> bool {
        !self.outmap(v).into_iter().any(|b| b)
    }
}

impl<O: Orientation + ?Sized> Orientation for std::sync::Arc<O> {
    fn spec(&self) -> &GridSpec {
        (**self).spec()
    }
    fn outgoing(&self, v: &[usize], dim: usize, to: usize) -> bool {
        (**self).outgoing(v, dim, to)
    }
    fn outmap(&self, v: &[usize]) -> Vec<bool> {
        (**self).outmap(v)
    }
}

impl<O: Orientation + ?Sized> Orientation for &O {
    fn spec(&self) -> &GridSpec {
        (**self).spec()
    }
    fn outgoing(&self, v: &[usize], dim: usize, to: usize) -> bool {
        (**self).outgoing(v, dim, to)
    }
    fn outmap(&self, v: &[usize]) -> Vec<bool> {
        (**self).outmap(v)
    }
}

/// Orientation from a closure `(v, dim, to) -> outgoing`.
pub struct FnOrientation<F> {
    spec: GridSpec,
    f: F,
}

impl<F: Fn(&[usize], usize, usize) -> bool + Send + Sync> FnOrientation<F> {
    pub fn new(spec: GridSpec, f: F) -> Self {
        FnOrientation { spec, f }
    }
}

impl<F: Fn(&[usize], usize, usize) -> bool + Send + Sync> Orientation for FnOrientation<F> {
    fn spec(&self) -> &GridSpec {
        &self.spec
    }
    fn outgoing(&self, v: &[usize], dim: usize, to: usize) -> bool {
        (self.f)(v, dim, to)
    }
}

/// Materialized outmaps, indexed by [`GridSpec::index`].
#[derive(Clone, PartialEq, Eq)]
pub struct ExplicitOrientationTable {
    spec: GridSpec,
    outmaps: Vec<Vec<bool>>,
}

impl fmt::Debug for ExplicitOrientationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (i, o) in self.outmaps.iter().enumerate() {
            let bits: String = o.iter().map(|&b| if b { '1' } else { '0' }).collect();
            m.entry(&self.spec.format_vertex(&self.spec.vertex(i)), &bits);
        }
        m.finish()
    }
}

impl ExplicitOrientationTable {
    /// Fails unless every edge is oriented consistently from both ends.
    pub fn new(spec: GridSpec, outmaps: Vec<Vec<bool>>) -> Result<Self> {
        let table = Self::new_unchecked(spec, outmaps)?;
        if let Some((v, w)) = check_antisymmetry(&table) {
            return Err(Error::Invalid(format!(
                "edge {} - {} is not antisymmetric",
                table.spec.format_vertex(&v),
                table.spec.format_vertex(&w)
            )));
        }
        Ok(table)
    }

    /// Shape checks only.
    pub fn new_unchecked(spec: GridSpec, outmaps: Vec<Vec<bool>>) -> Result<Self> {
        if outmaps.len() as u128 != spec.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} outmaps for {} vertices",
                outmaps.len(),
                spec.vertex_count()
            )));
        }
        if let Some(o) = outmaps.iter().find(|o| o.len() != spec.outmap_len()) {
            return Err(Error::DimensionMismatch(format!(
                "outmap of length {}, expected {}",
                o.len(),
                spec.outmap_len()
            )));
        }
        Ok(ExplicitOrientationTable { spec, outmaps })
    }

    pub fn materialize<O: Orientation + ?Sized>(o: &O, limit: u128) -> Result<Self> {
        let spec = o.spec().clone();
        check_limit("grid vertices", spec.vertex_count(), limit)?;
        let outmaps = spec.vertices().map(|v| o.outmap(&v)).collect();
        Ok(ExplicitOrientationTable { spec, outmaps })
    }

    /// Cube orientation from per-vertex outmap bitmasks (bit `i` = dimension `i`).
    pub fn from_cube_masks(d: usize, masks: &[u64]) -> Result<Self> {
        let outmaps = masks
            .iter()
            .map(|m| (0..d).map(|i| m >> i & 1 == 1).collect())
            .collect();
        Self::new(GridSpec::cube(d), outmaps)
    }

    /// Orientation from one bit per edge, edges listed as by [`edge_list`];
    /// bit set means the edge points to the larger coordinate.
    pub fn from_edge_bits(spec: GridSpec, bits: &[bool]) -> Result<Self> {
        let edges = edge_list(&spec);
        if bits.len() != edges.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} edge bits for {} edges",
                bits.len(),
                edges.len()
            )));
        }
        let mut outmaps: Vec<Vec<bool>> = vec![vec![false; spec.outmap_len()]; spec.vertex_count() as usize];
        for ((v, dim, to), &up) in edges.iter().zip(bits) {
            let mut w = v.clone();
            w[*dim] = *to;
            let (from, target) = if up { (v, &w) } else { (&w, v) };
            let pos = spec.bit_position(from, *dim, target[*dim]);
            outmaps[spec.index(from)][pos] = true;
        }
        Ok(ExplicitOrientationTable { spec, outmaps })
    }

    pub fn outmaps(&self) -> &[Vec<bool>] {
        &self.outmaps
    }

    pub fn outmap_of(&self, v: &[usize]) -> &[bool] {
        &self.outmaps[self.spec.index(v)]
    }
}

impl Orientation for ExplicitOrientationTable {
    fn spec(&self) -> &GridSpec {
        &self.spec
    }
    fn outgoing(&self, v: &[usize], dim: usize, to: usize) -> bool {
        self.outmaps[self.spec.index(v)][self.spec.bit_position(v, dim, to)]
    }
    fn outmap(&self, v: &[usize]) -> Vec<bool> {
        self.outmaps[self.spec.index(v)].clone()
    }
}

/// Every edge once, as `(lower endpoint, dimension, upper coordinate)`.
pub fn edge_list(spec: &GridSpec) -> Vec<(Vertex, usize, usize)> {
    let mut edges = Vec::new();
    for v in spec.vertices() {
        for (dim, &n) in spec.n.iter().enumerate() {
            for to in v[dim] + 1..=n {
                edges.push((v.clone(), dim, to));
            }
        }
    }
    edges
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn cube_table(d: usize, entries: &[(&str, &[u8])]) -> ExplicitOrientationTable {
        let spec = GridSpec::cube(d);
        let mut outmaps = vec![vec![]; spec.vertex_count() as usize];
        for (v, o) in entries {
            let v = spec.parse_vertex(v).unwrap();
            outmaps[spec.index(&v)] = o.iter().map(|&b| b == 1).collect();
        }
        ExplicitOrientationTable::new(spec, outmaps).unwrap()
    }

    #[test]
    fn indexing_round_trips() {
        let spec = GridSpec::new(vec![2, 1, 3]).unwrap();
        assert_eq!(spec.vertex_count(), 24);
        for (i, v) in spec.vertices().enumerate() {
            assert_eq!(spec.index(&v), i);
            assert_eq!(spec.parse_vertex(&spec.format_vertex(&v)).unwrap(), v);
            for pos in 0..spec.outmap_len() {
                let (dim, to) = spec.neighbor_at(&v, pos);
                assert_ne!(to, v[dim]);
                assert_eq!(spec.bit_position(&v, dim, to), pos);
            }
        }
        assert_eq!(spec.format_vertex(&[2, 0, 1]), "2,0,1");
        assert!(spec.parse_vertex("2,0,4").is_err());
        assert!(spec.parse_vertex("02,0,1").is_err());
        let cube = GridSpec::cube(3);
        assert_eq!(cube.index(&cube.parse_vertex("100").unwrap()), 1);
        assert!(cube.parse_vertex("1,0,0").is_err());
        assert!(GridSpec::new(vec![1, 0]).is_err());
    }

    #[test]
    fn neighbor_order_skips_own_coordinate() {
        let spec = GridSpec::new(vec![3]).unwrap();
        assert_eq!(spec.bit_position(&[2], 0, 0), 0);
        assert_eq!(spec.bit_position(&[2], 0, 1), 1);
        assert_eq!(spec.bit_position(&[2], 0, 3), 2);
    }

    #[test]
    fn tables_reject_inconsistent_edges() {
        let spec = GridSpec::cube(1);
        assert!(ExplicitOrientationTable::new(spec.clone(), vec![vec![true], vec![false]]).is_ok());
        assert!(ExplicitOrientationTable::new(spec.clone(), vec![vec![true], vec![true]]).is_err());
        assert!(ExplicitOrientationTable::new(spec, vec![vec![true]]).is_err());
    }

    #[test]
    fn edge_bits_build_consistent_tables() {
        let spec = GridSpec::new(vec![2, 1]).unwrap();
        let edges = edge_list(&spec);
        assert_eq!(edges.len(), 9);
        for k in 0..(1u32 << edges.len()) {
            let bits: Vec<bool> = (0..edges.len()).map(|i| k >> i & 1 == 1).collect();
            let t = ExplicitOrientationTable::from_edge_bits(spec.clone(), &bits).unwrap();
            assert!(check_antisymmetry(&t).is_none());
        }
    }

    #[test]
    fn two_cube_example_table() {
        let t = cube_table(2, &[("00", &[1, 1]), ("10", &[0, 1]), ("01", &[0, 0]), ("11", &[1, 0])]);
        assert!(t.is_sink(&[0, 1]));
        assert_eq!(t.outmap(&[1, 0]), vec![false, true]);
        let closure = FnOrientation::new(GridSpec::cube(2), |v: &[usize], dim, to| {
            t.outgoing(v, dim, to)
        });
        assert_eq!(closure.outmap(&[1, 1]), vec![true, false]);
    }
}
