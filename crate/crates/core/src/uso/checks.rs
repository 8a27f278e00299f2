use rayon::prelude::*;

use super::{ExplicitOrientationTable, GridSpec, Orientation, Vertex};
use crate::error::{check_limit, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UsoCheck {
    Uso,
    /// The first subgrid (per-dimension allowed coordinates) without exactly one sink.
    Violation {
        subgrid: Vec<Vec<usize>>,
        sinks: Vec<Vertex>,
    },
}

impl UsoCheck {
    pub fn is_uso(&self) -> bool {
        matches!(self, UsoCheck::Uso)
    }
}

/// First edge whose two endpoints disagree, scanning every edge.
pub fn check_antisymmetry<O: Orientation + ?Sized>(o: &O) -> Option<(Vertex, Vertex)> {
    let spec = o.spec();
    for (v, dim, to) in super::edge_list(spec) {
        let mut w = v.clone();
        w[dim] = to;
        if o.outgoing(&v, dim, to) == o.outgoing(&w, dim, v[dim]) {
            return Some((v, w));
        }
    }
    None
}

/// Antisymmetry on `samples` edges picked by the caller's vertex/neighbor stream.
pub fn sample_antisymmetry<O: Orientation + ?Sized>(
    o: &O,
    samples: impl IntoIterator<Item = (Vertex, usize, usize)>,
) -> Option<(Vertex, Vertex)> {
    for (v, dim, to) in samples {
        let mut w = v.clone();
        w[dim] = to;
        if o.outgoing(&v, dim, to) == o.outgoing(&w, dim, v[dim]) {
            return Some((v, w));
        }
    }
    None
}

fn subgrid_vertices(subgrid: &[Vec<usize>]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = vec![vec![]];
    for allowed in subgrid {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                allowed.iter().map(move |&x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn validate_subgrid(spec: &GridSpec, subgrid: &[Vec<usize>]) -> Result<()> {
    if subgrid.len() != spec.dims() {
        return Err(Error::DimensionMismatch(format!(
            "subgrid over {} dimensions in a {}-dimensional grid",
            subgrid.len(),
            spec.dims()
        )));
    }
    for (allowed, &n) in subgrid.iter().zip(&spec.n) {
        if allowed.is_empty() || allowed.iter().any(|&x| x > n) {
            return Err(Error::Invalid(format!("bad subgrid coordinates {allowed:?}")));
        }
    }
    Ok(())
}

/// Sinks of the induced subgrid; `None` means the whole grid.
pub fn find_sink_bruteforce<O: Orientation + ?Sized>(
    o: &O,
    subgrid: Option<&[Vec<usize>]>,
    limit: u128,
) -> Result<Vec<Vertex>> {
    let spec = o.spec();
    let full: Vec<Vec<usize>> = spec.n.iter().map(|&n| (0..=n).collect()).collect();
    let subgrid = subgrid.unwrap_or(&full);
    validate_subgrid(spec, subgrid)?;
    let count = subgrid
        .iter()
        .fold(1u128, |acc, s| acc.saturating_mul(s.len() as u128));
    check_limit("subgrid vertices", count, limit)?;
    Ok(subgrid_vertices(subgrid)
        .into_par_iter()
        .filter(|v| {
            subgrid.iter().enumerate().all(|(dim, allowed)| {
                allowed
                    .iter()
                    .all(|&to| to == v[dim] || !o.outgoing(v, dim, to))
            })
        })
        .collect())
}

/// Every induced subgrid has exactly one sink. Subgrids are visited in
/// lexicographic order of their per-dimension coordinate bitmasks.
pub fn is_grid_uso<O: Orientation + ?Sized>(o: &O, limit: u128) -> Result<UsoCheck> {
    let spec = o.spec();
    check_limit("grid vertices", spec.vertex_count(), limit)?;
    let subgrids = spec
        .n
        .iter()
        .fold(1u128, |acc, &n| acc.saturating_mul((1u128 << (n + 1).min(127)) - 1));
    check_limit("induced subgrids", subgrids, limit)?;
    let table = ExplicitOrientationTable::materialize(o, limit)?;
    // Outmaps as bitmasks over (dimension, coordinate) so a sink test is one AND.
    let width: Vec<usize> = spec.n.iter().map(|&n| n + 1).collect();
    let shift: Vec<usize> = width
        .iter()
        .scan(0, |acc, &w| {
            let s = *acc;
            *acc += w;
            Some(s)
        })
        .collect();
    if shift.last().map_or(0, |s| s + width[width.len() - 1]) > 128 {
        return Err(Error::LimitExceeded {
            what: "outmap bits",
            count: spec.outmap_len() as u128,
            limit: 128,
        });
    }
    let masks: Vec<u128> = spec
        .vertices()
        .map(|v| {
            let mut m = 0u128;
            for (dim, &n) in spec.n.iter().enumerate() {
                for to in (0..=n).filter(|&t| t != v[dim]) {
                    if table.outgoing(&v, dim, to) {
                        m |= 1 << (shift[dim] + to);
                    }
                }
            }
            m
        })
        .collect();

    let d = spec.dims();
    let radices: Vec<u128> = spec.n.iter().map(|&n| (1u128 << (n + 1)) - 1).collect();
    for k in 0..subgrids {
        // Dimension 0 is the most significant digit.
        let mut rest = k;
        let mut sel = vec![0u128; d];
        for dim in (0..d).rev() {
            sel[dim] = rest % radices[dim] + 1;
            rest /= radices[dim];
        }
        let allowed: Vec<Vec<usize>> = (0..d)
            .map(|dim| (0..=spec.n[dim]).filter(|&x| sel[dim] >> x & 1 == 1).collect())
            .collect();
        let mut window = 0u128;
        for dim in 0..d {
            window |= sel[dim] << shift[dim];
        }
        let mut sinks = Vec::new();
        for v in subgrid_vertices(&allowed) {
            if masks[spec.index(&v)] & window == 0 {
                sinks.push(v);
                if sinks.len() > 1 {
                    break;
                }
            }
        }
        if sinks.len() != 1 {
            return Ok(UsoCheck::Violation { subgrid: allowed, sinks });
        }
    }
    Ok(UsoCheck::Uso)
}

/// Cube criterion: for all `J != K`, the outmaps differ somewhere in `J xor K`.
/// Returns the first violating pair as bitmasks.
pub fn szabo_welzl_check<O: Orientation + ?Sized>(o: &O, limit: u128) -> Result<Option<(u64, u64)>> {
    let spec = o.spec();
    if !spec.is_cube() {
        return Err(Error::Invalid("Szabo-Welzl check needs a cube".into()));
    }
    let d = spec.dims();
    if d >= 32 {
        return Err(Error::LimitExceeded {
            what: "vertex pairs",
            count: u128::MAX,
            limit,
        });
    }
    check_limit("vertex pairs", 1u128 << (2 * d), limit)?;
    let outmap: Vec<u64> = (0..1u64 << d)
        .map(|j| {
            let v: Vertex = (0..d).map(|i| (j >> i & 1) as usize).collect();
            (0..d)
                .filter(|&i| o.outgoing(&v, i, 1 - v[i]))
                .fold(0u64, |m, i| m | 1 << i)
        })
        .collect();
    let n = 1u64 << d;
    Ok((0..n).into_par_iter().find_map_first(|j| {
        (j + 1..n)
            .find(|&k| (outmap[j as usize] ^ outmap[k as usize]) & (j ^ k) == 0)
            .map(|k| (j, k))
    }))
}

/// Vertices with exactly `alpha_i - 1` outgoing edges in each dimension `i`.
pub fn find_alpha_outdegree_vertex<O: Orientation + ?Sized>(
    o: &O,
    alpha: &[usize],
    limit: u128,
) -> Result<Vec<Vertex>> {
    let spec = o.spec();
    if alpha.len() != spec.dims() {
        return Err(Error::DimensionMismatch(format!(
            "alpha has {} entries for {} dimensions",
            alpha.len(),
            spec.dims()
        )));
    }
    if let Some(i) = (0..alpha.len()).find(|&i| alpha[i] == 0 || alpha[i] > spec.n[i] + 1) {
        return Err(Error::Invalid(format!(
            "alpha_{} = {} outside 1..={}",
            i + 1,
            alpha[i],
            spec.n[i] + 1
        )));
    }
    check_limit("grid vertices", spec.vertex_count(), limit)?;
    let vertices: Vec<Vertex> = spec.vertices().collect();
    Ok(vertices
        .into_par_iter()
        .filter(|v| {
            spec.n.iter().enumerate().all(|(dim, &n)| {
                let out = (0..=n).filter(|&t| t != v[dim] && o.outgoing(v, dim, t)).count();
                out + 1 == alpha[dim]
            })
        })
        .collect())
}
