//! Seeded instance generation; every output passes its promise checker first.

use lcpuso::exact::{int, Matrix};
use lcpuso::gen::{self as core_gen, Rng64};
use lcpuso::geometry::TangentInstance;
use lcpuso::lcp::{is_p_matrix, LcpInstance};
use lcpuso::uso::generators::{random_combed, random_lcp_cube, random_product, random_rejection};
use lcpuso::uso::{edge_list, GridSpec};
use lcpuso::Rational;
use rand::Rng;

use crate::format::{InstanceFile, Metadata, Payload, Problem};
use crate::ops::verify_promise;
use crate::{CliError, CliResult};

const RETRIES: usize = 16;
const REJECTION_MAX_EDGES: usize = 12;

#[derive(Clone, Debug, Default)]
pub struct GenParams {
    pub n: Option<usize>,
    pub sizes: Option<Vec<usize>>,
    pub spec: Option<Vec<usize>>,
    pub alpha: Option<Vec<usize>>,
    pub max_block: Option<usize>,
    pub method: Option<String>,
}

/// `B^T B + I` plus an off-diagonal perturbation that is kept only if the
/// result is still a P-matrix.
pub fn spd_p_matrix(rng: &mut Rng64, n: usize) -> Matrix<Rational> {
    let b = Matrix::from_fn(n, n, |_, _| int(rng.gen_range(-3..=3)));
    let base = b.transpose().mul(&b).expect("square").add(&Matrix::identity(n)).expect("square");
    let noise = Matrix::from_fn(n, n, |i, j| if i == j { int(0) } else { int(rng.gen_range(-1..=1)) });
    let perturbed = base.add(&noise).expect("square");
    if is_p_matrix(&perturbed).unwrap_or(false) {
        perturbed
    } else {
        base
    }
}

fn need<T: Clone>(v: &Option<T>, name: &str, kind: &str) -> CliResult<T> {
    v.clone().ok_or_else(|| CliError::Schema(format!("gen {kind} needs --{name}")))
}

fn candidate(kind: &str, p: &GenParams, rng: &mut Rng64) -> CliResult<Problem> {
    Ok(match kind {
        "lcp" => {
            let n = need(&p.n, "n", kind)?;
            let m = spd_p_matrix(rng, n);
            let q = (0..n).map(|_| int(rng.gen_range(-5..=5))).collect();
            Problem::Lcp(LcpInstance::new(m, q)?)
        }
        "glcp" => {
            let n = need(&p.n, "n", kind)?;
            Problem::Glcp(core_gen::random_block_p_glcp(rng, n, p.max_block.unwrap_or(3)))
        }
        "linbellman" => Problem::LinBellman(core_gen::random_p_lin_bellman(rng, need(&p.n, "n", kind)?)),
        "tangent" => {
            let sizes = need(&p.sizes, "sizes", kind)?;
            if sizes.is_empty() || sizes.contains(&0) {
                return Err(CliError::Schema("--sizes must be positive".into()));
            }
            let fam = core_gen::random_sws_family_with_sizes(rng, &sizes);
            let alpha = p.alpha.clone().unwrap_or_else(|| vec![1; sizes.len()]);
            Problem::Tangent(TangentInstance::new(fam, alpha)?)
        }
        "cubeuso" | "griduso" => {
            let spec = match (kind, &p.spec, p.n) {
                ("cubeuso", None, Some(n)) => GridSpec::cube(n),
                (_, Some(s), _) => GridSpec::new(s.clone())?,
                _ => return Err(CliError::Schema(format!("gen {kind} needs --spec"))),
            };
            if kind == "cubeuso" && !spec.is_cube() {
                return Err(CliError::Schema("cubeuso spec must be all ones".into()));
            }
            let table = match p.method.as_deref().unwrap_or("product") {
                "product" => random_product(rng, &spec),
                "combed" => random_combed(rng, &spec),
                "rejection" => {
                    if edge_list(&spec).len() > REJECTION_MAX_EDGES {
                        return Err(CliError::Schema(format!(
                            "rejection sampling is limited to {REJECTION_MAX_EDGES} edges"
                        )));
                    }
                    random_rejection(rng, &spec, 10_000)
                        .ok_or_else(|| CliError::Verify("rejection sampling found no USO".into()))?
                }
                "lcp" => {
                    if !spec.is_cube() {
                        return Err(CliError::Schema("method lcp produces cubes only".into()));
                    }
                    random_lcp_cube(rng, spec.dims())
                }
                m => return Err(CliError::Schema(format!("unknown method {m:?}"))),
            };
            Problem::Uso(table)
        }
        k => return Err(CliError::Schema(format!("unknown kind {k:?}"))),
    })
}

pub fn generate(kind: &str, params: &GenParams, seed: u64) -> CliResult<InstanceFile> {
    let mut rng = core_gen::rng(seed);
    for _ in 0..RETRIES {
        let problem = candidate(kind, params, &mut rng)?;
        let checks = verify_promise(&problem, u128::MAX)?;
        if checks.iter().all(|c| c.ok) {
            let meta = Metadata {
                seed: Some(seed),
                generator: Some(format!("{kind}/{}", params.method.as_deref().unwrap_or("default"))),
                chain: Vec::new(),
            };
            return Ok(InstanceFile::new(Payload::from_problem(&problem), Some(meta)));
        }
    }
    Err(CliError::Verify(format!("no {kind} instance passed its promise check after {RETRIES} tries")))
}
