//! Self-describing JSON instance and solution files.
//!
//! Every file is one object with a `kind` tag, the kind's payload, and an
//! optional `metadata` block. Rationals are canonical `p/q` strings, vertex
//! keys use the coordinate formatting of [`GridSpec::format_vertex`], and
//! outmaps are bit strings in neighbor order.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use lcpuso::exact::{format_rational, parse_rational};
use lcpuso::geometry::{Hyperplane, PointSetFamily, TangentInstance};
use lcpuso::lcp::{GlcpInstance, GlcpSolution, LcpInstance, LcpSolution};
use lcpuso::linbellman::LinBellmanSystem;
use lcpuso::uso::{ExplicitOrientationTable, GridSpec, Orientation, Vertex};
use lcpuso::{Matrix, Rational};
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    /// Reductions applied so far, oldest first.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chain: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Payload {
    Lcp {
        m: Vec<Vec<String>>,
        q: Vec<String>,
    },
    Glcp {
        blocks: Vec<usize>,
        m: Vec<Vec<String>>,
        q: Vec<String>,
    },
    Linbellman {
        n: usize,
        l: Vec<Vec<String>>,
        r: Vec<Vec<String>>,
        q: Vec<String>,
        /// 1-based, sorted.
        s: Vec<usize>,
    },
    Tangent {
        d: usize,
        sets: Vec<Vec<Vec<String>>>,
        alpha: Vec<usize>,
    },
    Cubeuso {
        spec: Vec<usize>,
        outmaps: BTreeMap<String, String>,
    },
    Griduso {
        spec: Vec<usize>,
        outmaps: BTreeMap<String, String>,
    },
    #[serde(rename = "lcp-solution")]
    LcpSolution { w: Vec<String>, z: Vec<String> },
    #[serde(rename = "glcp-solution")]
    GlcpSolution { w: Vec<String>, z: Vec<String> },
    #[serde(rename = "linbellman-solution")]
    LinbellmanSolution { x: Vec<String> },
    #[serde(rename = "tangent-solution")]
    TangentSolution { normal: Vec<String>, offset: String },
    #[serde(rename = "uso-solution")]
    UsoSolution { sink: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(flatten)]
    pub payload: Payload,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

/// A parsed and validated problem instance.
#[derive(Clone, Debug)]
pub enum Problem {
    Lcp(LcpInstance<Rational>),
    Glcp(GlcpInstance<Rational>),
    LinBellman(LinBellmanSystem<Rational>),
    Tangent(TangentInstance<Rational>),
    Uso(ExplicitOrientationTable),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Lcp(LcpSolution<Rational>),
    Glcp(GlcpSolution<Rational>),
    LinBellman(Vec<Rational>),
    Tangent(Hyperplane<Rational>),
    Uso(Vertex),
}

impl Problem {
    pub fn kind(&self) -> &'static str {
        match self {
            Problem::Lcp(_) => "lcp",
            Problem::Glcp(_) => "glcp",
            Problem::LinBellman(_) => "linbellman",
            Problem::Tangent(_) => "tangent",
            Problem::Uso(t) if t.spec().is_cube() => "cubeuso",
            Problem::Uso(_) => "griduso",
        }
    }
}

fn rationals(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| rationals(r)).collect()
}

fn parse_vec(values: &[String]) -> CliResult<Vec<Rational>> {
    values
        .iter()
        .map(|v| parse_rational(v).map_err(|e| CliError::Parse(e.to_string())))
        .collect()
}

fn parse_matrix(rows: &[Vec<String>], cols: usize) -> CliResult<Matrix> {
    let rows = rows.iter().map(|r| parse_vec(r)).collect::<CliResult<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, cols));
    }
    Matrix::from_rows(rows).map_err(schema)
}

fn schema(e: lcpuso::Error) -> CliError {
    CliError::Schema(e.to_string())
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn parse_table(spec: &[usize], outmaps: &BTreeMap<String, String>, cube: bool) -> CliResult<ExplicitOrientationTable> {
    let spec = GridSpec::new(spec.to_vec()).map_err(schema)?;
    if cube && !spec.is_cube() {
        return Err(CliError::Schema("cubeuso spec must be all ones".into()));
    }
    let count = spec.vertex_count();
    if outmaps.len() as u128 != count {
        return Err(CliError::Schema(format!(
            "{} outmaps for {count} vertices",
            outmaps.len()
        )));
    }
    let mut table = vec![Vec::new(); outmaps.len()];
    for (key, bits) in outmaps {
        let v = spec.parse_vertex(key).map_err(schema)?;
        if bits.len() != spec.outmap_len() || bits.chars().any(|c| c != '0' && c != '1') {
            return Err(CliError::Schema(format!("bad outmap {bits:?} at {key}")));
        }
        table[spec.index(&v)] = bits.chars().map(|c| c == '1').collect();
    }
    ExplicitOrientationTable::new(spec, table).map_err(schema)
}

pub fn table_outmaps(t: &ExplicitOrientationTable) -> BTreeMap<String, String> {
    let spec = t.spec();
    t.outmaps()
        .iter()
        .enumerate()
        .map(|(i, o)| (spec.format_vertex(&spec.vertex(i)), bit_string(o)))
        .collect()
}

impl Payload {
    pub fn is_solution(&self) -> bool {
        matches!(
            self,
            Payload::LcpSolution { .. }
                | Payload::GlcpSolution { .. }
                | Payload::LinbellmanSolution { .. }
                | Payload::TangentSolution { .. }
                | Payload::UsoSolution { .. }
        )
    }

    pub fn from_problem(p: &Problem) -> Payload {
        match p {
            Problem::Lcp(inst) => Payload::Lcp {
                m: matrix_rows(&inst.m),
                q: rationals(&inst.q),
            },
            Problem::Glcp(inst) => Payload::Glcp {
                blocks: inst.block_sizes.clone(),
                m: matrix_rows(&inst.m),
                q: rationals(&inst.q),
            },
            Problem::LinBellman(sys) => Payload::Linbellman {
                n: sys.n(),
                l: matrix_rows(&sys.l),
                r: matrix_rows(&sys.r),
                q: rationals(&sys.q),
                s: sys.s.iter().map(|i| i + 1).collect(),
            },
            Problem::Tangent(t) => Payload::Tangent {
                d: t.family.dim(),
                sets: t
                    .family
                    .sets
                    .iter()
                    .map(|set| set.iter().map(|p| rationals(p)).collect())
                    .collect(),
                alpha: t.alpha.clone(),
            },
            Problem::Uso(t) if t.spec().is_cube() => Payload::Cubeuso {
                spec: t.spec().n.clone(),
                outmaps: table_outmaps(t),
            },
            Problem::Uso(t) => Payload::Griduso {
                spec: t.spec().n.clone(),
                outmaps: table_outmaps(t),
            },
        }
    }

    pub fn to_problem(&self) -> CliResult<Problem> {
        Ok(match self {
            Payload::Lcp { m, q } => {
                let q = parse_vec(q)?;
                let m = parse_matrix(m, q.len())?;
                Problem::Lcp(LcpInstance::new(m, q).map_err(schema)?)
            }
            Payload::Glcp { blocks, m, q } => {
                let q = parse_vec(q)?;
                let m = parse_matrix(m, blocks.len())?;
                Problem::Glcp(GlcpInstance::new(blocks.clone(), m, q).map_err(schema)?)
            }
            Payload::Linbellman { n, l, r, q, s } => {
                let q = parse_vec(q)?;
                if q.len() != *n {
                    return Err(CliError::Schema(format!("q has {} entries, n = {n}", q.len())));
                }
                if s.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(CliError::Schema("S must be sorted without repeats".into()));
                }
                if let Some(&i) = s.iter().find(|&&i| i == 0 || i > *n) {
                    return Err(CliError::Schema(format!("S index {i} outside 1..={n}")));
                }
                let set: BTreeSet<usize> = s.iter().map(|i| i - 1).collect();
                let sys = LinBellmanSystem::new(parse_matrix(l, *n)?, parse_matrix(r, *n)?, q, set)
                    .map_err(schema)?;
                Problem::LinBellman(sys)
            }
            Payload::Tangent { d, sets, alpha } => {
                let sets = sets
                    .iter()
                    .map(|set| set.iter().map(|p| parse_vec(p)).collect::<CliResult<Vec<_>>>())
                    .collect::<CliResult<Vec<_>>>()?;
                let fam = PointSetFamily::new(sets).map_err(schema)?;
                if fam.dim() != *d {
                    return Err(CliError::Schema(format!("family lives in dimension {}, d = {d}", fam.dim())));
                }
                Problem::Tangent(TangentInstance::new(fam, alpha.clone()).map_err(schema)?)
            }
            Payload::Cubeuso { spec, outmaps } => Problem::Uso(parse_table(spec, outmaps, true)?),
            Payload::Griduso { spec, outmaps } => Problem::Uso(parse_table(spec, outmaps, false)?),
            _ => return Err(CliError::Schema("expected an instance, found a solution".into())),
        })
    }

    pub fn from_solution(sol: &Solution, problem: &Problem) -> Payload {
        match sol {
            Solution::Lcp(s) => Payload::LcpSolution {
                w: rationals(&s.w),
                z: rationals(&s.z),
            },
            Solution::Glcp(s) => Payload::GlcpSolution {
                w: rationals(&s.w),
                z: rationals(&s.z),
            },
            Solution::LinBellman(x) => Payload::LinbellmanSolution { x: rationals(x) },
            Solution::Tangent(h) => Payload::TangentSolution {
                normal: rationals(&h.normal),
                offset: format_rational(&h.offset),
            },
            Solution::Uso(v) => Payload::UsoSolution {
                sink: match problem {
                    Problem::Uso(t) => t.spec().format_vertex(v),
                    _ => v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
                },
            },
        }
    }

    /// Solutions of the wrong kind for `problem` are schema errors.
    pub fn to_solution(&self, problem: &Problem) -> CliResult<Solution> {
        let mismatch = || {
            CliError::Schema(format!("solution kind does not match a {} instance", problem.kind()))
        };
        Ok(match (self, problem) {
            (Payload::LcpSolution { w, z }, Problem::Lcp(_)) => Solution::Lcp(LcpSolution {
                w: parse_vec(w)?,
                z: parse_vec(z)?,
            }),
            (Payload::GlcpSolution { w, z }, Problem::Glcp(_)) => Solution::Glcp(GlcpSolution {
                w: parse_vec(w)?,
                z: parse_vec(z)?,
            }),
            (Payload::LinbellmanSolution { x }, Problem::LinBellman(_)) => {
                Solution::LinBellman(parse_vec(x)?)
            }
            (Payload::TangentSolution { normal, offset }, Problem::Tangent(_)) => {
                let offset = parse_vec(std::slice::from_ref(offset))?.remove(0);
                Solution::Tangent(Hyperplane::new(parse_vec(normal)?, offset).map_err(schema)?)
            }
            (Payload::UsoSolution { sink }, Problem::Uso(t)) => {
                Solution::Uso(t.spec().parse_vertex(sink).map_err(schema)?)
            }
            _ => return Err(mismatch()),
        })
    }
}

impl InstanceFile {
    pub fn new(payload: Payload, metadata: Option<Metadata>) -> Self {
        InstanceFile { payload, metadata }
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    /// Pretty JSON with a trailing newline; the canonical byte form.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        std::fs::write(path, self.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}
