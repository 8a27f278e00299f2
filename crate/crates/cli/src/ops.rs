//! Solving, verification and reduction routes over [`Problem`]s.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use lcpuso::geometry::{
    is_alpha_cut, is_strongly_well_separated, reduce_lb_to_tangent2p, reduce_tangent_to_lb,
    solve_tangent_bruteforce,
};
use lcpuso::lcp::{
    is_block_p_matrix, is_p_matrix, solve_glcp_bruteforce, solve_lcp_bruteforce,
    verify_glcp_solution, verify_lcp_solution,
};
use lcpuso::linbellman::{
    check_r_minus_i_invertible, reduce_glcp_to_lb, reduce_lb_to_plcp, reduce_plcp_to_lb,
    solve_lb_bruteforce, verify_lb_solution,
};
use lcpuso::uso::{
    find_sink_bruteforce, is_grid_uso, reduce_grid_to_cube, reduce_plcp_to_cube_uso,
    reduce_tangent_to_grid_uso, szabo_welzl_check, ExplicitOrientationTable, Orientation, UsoCheck,
};
use lcpuso::Error;

use crate::format::{Problem, Solution};
use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    Plcp2Lb,
    Lb2Plcp,
    Glcp2Lb,
    Tangent2Lb,
    Lb2Tangent,
    Tangent2GridUso,
    Plcp2CubeUso,
    GridUso2CubeUso,
}

impl Route {
    pub const ALL: [Route; 8] = [
        Route::Plcp2Lb,
        Route::Lb2Plcp,
        Route::Glcp2Lb,
        Route::Tangent2Lb,
        Route::Lb2Tangent,
        Route::Tangent2GridUso,
        Route::Plcp2CubeUso,
        Route::GridUso2CubeUso,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Route::Plcp2Lb => "plcp2lb",
            Route::Lb2Plcp => "lb2plcp",
            Route::Glcp2Lb => "glcp2lb",
            Route::Tangent2Lb => "tangent2lb",
            Route::Lb2Tangent => "lb2tangent",
            Route::Tangent2GridUso => "tangent2griduso",
            Route::Plcp2CubeUso => "plcp2cubeuso",
            Route::GridUso2CubeUso => "griduso2cubeuso",
        }
    }

    /// Source and target kinds; both USO kinds count as `uso`.
    pub fn kinds(self) -> (&'static str, &'static str) {
        match self {
            Route::Plcp2Lb => ("lcp", "linbellman"),
            Route::Lb2Plcp => ("linbellman", "lcp"),
            Route::Glcp2Lb => ("glcp", "linbellman"),
            Route::Tangent2Lb => ("tangent", "linbellman"),
            Route::Lb2Tangent => ("linbellman", "tangent"),
            Route::Tangent2GridUso => ("tangent", "uso"),
            Route::Plcp2CubeUso => ("lcp", "uso"),
            Route::GridUso2CubeUso => ("uso", "uso"),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        Route::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| CliError::Schema(format!("unknown reduction {s:?}")))
    }
}

fn family(kind: &str) -> &str {
    match kind {
        "cubeuso" | "griduso" => "uso",
        k => k,
    }
}

/// Parses a comma list and checks that adjacent steps fit together.
pub fn parse_route(text: &str) -> CliResult<Vec<Route>> {
    let route = text
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<CliResult<Vec<Route>>>()?;
    for w in route.windows(2) {
        if w[0].kinds().1 != w[1].kinds().0 {
            return Err(CliError::Schema(format!("{} produces {}, {} expects {}", w[0], w[0].kinds().1, w[1], w[1].kinds().0)));
        }
    }
    Ok(route)
}

pub type PullBack = Arc<dyn Fn(&Solution) -> lcpuso::Result<Solution> + Send + Sync>;

fn wrong_solution() -> Error {
    Error::Invalid("solution kind does not match the reduction target".into())
}

/// Applies one reduction, returning the target and the solution pull-back.
pub fn apply(route: Route, problem: &Problem, limit: u128) -> CliResult<(Problem, PullBack)> {
    if family(problem.kind()) != route.kinds().0 {
        return Err(CliError::Schema(format!("{route} cannot be applied to a {} instance", problem.kind())));
    }
    Ok(match (route, problem) {
        (Route::Plcp2Lb, Problem::Lcp(inst)) => {
            let red = reduce_plcp_to_lb(inst);
            let pull = red.pull_back_fn();
            (
                Problem::LinBellman(red.target),
                Arc::new(move |s: &Solution| match s {
                    Solution::LinBellman(x) => pull(x).map(Solution::Lcp),
                    _ => Err(wrong_solution()),
                }),
            )
        }
        (Route::Lb2Plcp, Problem::LinBellman(sys)) => {
            let red = reduce_lb_to_plcp(sys)?;
            let pull = red.pull_back_fn();
            (
                Problem::Lcp(red.target),
                Arc::new(move |s: &Solution| match s {
                    Solution::Lcp(sol) => pull(sol).map(Solution::LinBellman),
                    _ => Err(wrong_solution()),
                }),
            )
        }
        (Route::Glcp2Lb, Problem::Glcp(inst)) => {
            let red = reduce_glcp_to_lb(inst);
            let pull = red.pull_back_fn();
            (
                Problem::LinBellman(red.target),
                Arc::new(move |s: &Solution| match s {
                    Solution::LinBellman(x) => pull(x).map(Solution::Glcp),
                    _ => Err(wrong_solution()),
                }),
            )
        }
        (Route::Tangent2Lb, Problem::Tangent(t)) => {
            let red = reduce_tangent_to_lb(&t.family, &t.alpha)?;
            let pull = red.pull_back_fn();
            (
                Problem::LinBellman(red.target),
                Arc::new(move |s: &Solution| match s {
                    Solution::LinBellman(x) => pull(x).map(Solution::Tangent),
                    _ => Err(wrong_solution()),
                }),
            )
        }
        (Route::Lb2Tangent, Problem::LinBellman(sys)) => {
            let red = reduce_lb_to_tangent2p(sys)?;
            let pull = red.pull_back_fn();
            (
                Problem::Tangent(red.target),
                Arc::new(move |s: &Solution| match s {
                    Solution::Tangent(h) => pull(h).map(Solution::LinBellman),
                    _ => Err(wrong_solution()),
                }),
            )
        }
        (Route::Tangent2GridUso, Problem::Tangent(t)) => {
            let red = reduce_tangent_to_grid_uso(&t.family, &t.alpha)?;
            let table = ExplicitOrientationTable::materialize(&red.target, limit)?;
            let pull = red.pull_back_fn();
            (
                Problem::Uso(table),
                Arc::new(move |s: &Solution| match s {
                    Solution::Uso(v) => pull(v).map(Solution::Tangent),
                    _ => Err(wrong_solution()),
                }),
            )
        }
        (Route::Plcp2CubeUso, Problem::Lcp(inst)) => {
            let red = reduce_plcp_to_cube_uso(inst);
            let table = ExplicitOrientationTable::materialize(&red.target, limit)?;
            let pull = red.pull_back_fn();
            (
                Problem::Uso(table),
                Arc::new(move |s: &Solution| match s {
                    Solution::Uso(v) => pull(v).map(Solution::Lcp),
                    _ => Err(wrong_solution()),
                }),
            )
        }
        (Route::GridUso2CubeUso, Problem::Uso(t)) => {
            let red = reduce_grid_to_cube(Arc::new(t.clone()));
            let table = ExplicitOrientationTable::materialize(&red.target, limit)?;
            let pull = red.pull_back_fn();
            (
                Problem::Uso(table),
                Arc::new(move |s: &Solution| match s {
                    Solution::Uso(v) => pull(v).map(Solution::Uso),
                    _ => Err(wrong_solution()),
                }),
            )
        }
        _ => unreachable!("kinds checked above"),
    })
}

fn unique<S: Clone>(solutions: Vec<S>, what: &str) -> CliResult<S> {
    match solutions.len() {
        1 => Ok(solutions.into_iter().next().expect("one solution")),
        k => Err(CliError::Promise(format!("{what} has {k} solutions, expected exactly one"))),
    }
}

/// Brute-force solve; anything but exactly one solution is a promise violation.
pub fn solve(problem: &Problem, limit: u128) -> CliResult<Solution> {
    Ok(match problem {
        Problem::Lcp(inst) => Solution::Lcp(unique(solve_lcp_bruteforce(inst, limit)?.solutions, "LCP")?),
        Problem::Glcp(inst) => Solution::Glcp(unique(solve_glcp_bruteforce(inst, limit)?.solutions, "GLCP")?),
        Problem::LinBellman(sys) => {
            Solution::LinBellman(unique(solve_lb_bruteforce(sys, limit)?.solutions, "Lin-Bellman system")?)
        }
        Problem::Tangent(t) => {
            let cuts = solve_tangent_bruteforce(&t.family, &t.alpha, limit)?.solutions;
            Solution::Tangent(unique(cuts, "tangent query")?.hyperplane)
        }
        Problem::Uso(t) => Solution::Uso(unique(find_sink_bruteforce(t, None, limit)?, "orientation")?),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub ok: bool,
    pub detail: String,
}

impl Check {
    fn new(label: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check { label: label.into(), ok, detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.ok { "PASS" } else { "FAIL" }, self.label)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

fn list_vertices(t: &ExplicitOrientationTable, vs: &[Vec<usize>]) -> String {
    vs.iter().map(|v| t.spec().format_vertex(v)).collect::<Vec<_>>().join(" ")
}

pub fn verify_solution(problem: &Problem, sol: &Solution, limit: u128) -> CliResult<Check> {
    Ok(match (problem, sol) {
        (Problem::Lcp(inst), Solution::Lcp(s)) => Check::new("lcp solution", verify_lcp_solution(inst, s)?, ""),
        (Problem::Glcp(inst), Solution::Glcp(s)) => Check::new("glcp solution", verify_glcp_solution(inst, s)?, ""),
        (Problem::LinBellman(sys), Solution::LinBellman(x)) => {
            Check::new("linbellman solution", verify_lb_solution(sys, x)?, "")
        }
        (Problem::Tangent(t), Solution::Tangent(h)) => {
            Check::new("tangent cut", is_alpha_cut(&t.family, &t.alpha, h)?, "")
        }
        (Problem::Uso(t), Solution::Uso(v)) => {
            t.spec().check_vertex(v)?;
            let sinks = find_sink_bruteforce(t, None, limit)?;
            let ok = sinks.len() == 1 && &sinks[0] == v;
            let detail = if sinks.len() == 1 {
                String::new()
            } else {
                format!("{} sinks: {}", sinks.len(), list_vertices(t, &sinks))
            };
            Check::new("uso sink", ok, detail)
        }
        _ => return Err(CliError::Schema(format!("solution kind does not match a {} instance", problem.kind()))),
    })
}

/// Runs every applicable promise checker.
pub fn verify_promise(problem: &Problem, limit: u128) -> CliResult<Vec<Check>> {
    Ok(match problem {
        Problem::Lcp(inst) => vec![Check::new("P-matrix", is_p_matrix(&inst.m)?, "")],
        Problem::Glcp(inst) => vec![Check::new("block P-matrix", is_block_p_matrix(inst, limit)?, "")],
        Problem::LinBellman(sys) => {
            let ok = check_r_minus_i_invertible(sys)?;
            let detail = if ok {
                "necessary-condition only"
            } else {
                "necessary-condition only; R - I is singular, so some q admits no unique solution"
            };
            vec![Check::new("R - I invertible", ok, detail)]
        }
        Problem::Tangent(t) => {
            let sizes = t.family.sizes();
            let extreme = t.alpha.iter().zip(&sizes).all(|(&a, &k)| a == 1 || a == k);
            vec![
                Check::new("strongly well-separated", is_strongly_well_separated(&t.family)?, ""),
                Check::new("extreme alpha", extreme, "each alpha_i is 1 or |P_i|"),
            ]
        }
        Problem::Uso(t) => {
            let grid = match is_grid_uso(t, limit)? {
                UsoCheck::Uso => Check::new("unique sink orientation", true, ""),
                UsoCheck::Violation { subgrid, sinks } => Check::new(
                    "unique sink orientation",
                    false,
                    format!("subgrid {subgrid:?} has {} sinks: {}", sinks.len(), list_vertices(t, &sinks)),
                ),
            };
            let mut checks = vec![grid];
            if t.spec().is_cube() {
                let sw = szabo_welzl_check(t, limit)?;
                let detail = sw
                    .map(|(a, b)| {
                        let s = t.spec();
                        format!(
                            "{} and {} agree on every differing coordinate",
                            s.format_vertex(&s.vertex(a as usize)),
                            s.format_vertex(&s.vertex(b as usize))
                        )
                    })
                    .unwrap_or_default();
                checks.push(Check::new("pairwise condition", sw.is_none(), detail));
            }
            checks
        }
    })
}

pub fn problem_size(p: &Problem) -> String {
    match p {
        Problem::Lcp(inst) => format!("n={}", inst.n()),
        Problem::Glcp(inst) => format!("n={} rows={}", inst.n(), inst.total_rows()),
        Problem::LinBellman(sys) => format!("n={} |S|={}", sys.n(), sys.s.len()),
        Problem::Tangent(t) => format!("d={} points={}", t.family.dim(), t.family.sizes().iter().sum::<usize>()),
        Problem::Uso(t) => format!("spec={:?} vertices={}", t.spec().n, t.spec().vertex_count()),
    }
}

pub struct Stage {
    pub route: Route,
    pub source: Problem,
    pull: PullBack,
}

pub struct Pipeline {
    pub stages: Vec<Stage>,
    pub output: Problem,
}

impl Pipeline {
    pub fn build(input: Problem, route: &[Route], limit: u128) -> CliResult<Self> {
        let mut stages = Vec::with_capacity(route.len());
        let mut current = input;
        for &r in route {
            let (next, pull) = apply(r, &current, limit)?;
            stages.push(Stage { route: r, source: current, pull });
            current = next;
        }
        Ok(Pipeline { stages, output: current })
    }

    /// One line per stage with the target size.
    pub fn describe(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for (k, stage) in self.stages.iter().enumerate() {
            let target = self.stages.get(k + 1).map(|s| &s.source).unwrap_or(&self.output);
            lines.push(format!(
                "stage {} {}: {} ({}) -> {} ({})",
                k + 1,
                stage.route,
                stage.source.kind(),
                problem_size(&stage.source),
                target.kind(),
                problem_size(target)
            ));
        }
        lines
    }

    /// Solves the output by brute force and pulls the solution back through
    /// every stage, checking it against each stage's instance.
    pub fn solve_and_verify(&self, limit: u128) -> CliResult<(Vec<Check>, Solution)> {
        let mut sol = solve(&self.output, limit)?;
        let mut checks = vec![relabel(verify_solution(&self.output, &sol, limit)?, "output")];
        for (k, stage) in self.stages.iter().enumerate().rev() {
            sol = match (stage.pull)(&sol) {
                Ok(s) => s,
                Err(Error::PromiseViolation(m)) => return Err(CliError::Promise(m)),
                Err(e) => {
                    checks.push(Check::new(format!("stage {} {} pull-back", k + 1, stage.route), false, e.to_string()));
                    return Ok((checks, sol));
                }
            };
            let check = verify_solution(&stage.source, &sol, limit)?;
            checks.push(relabel(check, &format!("stage {} {} pull-back", k + 1, stage.route)));
        }
        Ok((checks, sol))
    }
}

fn relabel(mut c: Check, prefix: &str) -> Check {
    c.label = format!("{prefix} {}", c.label);
    c
}
