use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lcpuso_cli::dot::export_dot;
use lcpuso_cli::format::{InstanceFile, Metadata, Payload, Problem};
use lcpuso_cli::gen::{generate, GenParams};
use lcpuso_cli::ops::{parse_route, solve, verify_promise, verify_solution, Pipeline};
use lcpuso_cli::{CliError, CliResult};
use rayon::prelude::*;

/// Exact reductions between P-LCPs, Lin-Bellman systems, colorful tangents
/// and unique sink orientations.
#[derive(Parser)]
#[command(name = "lcpuso", version, about)]
struct Cli {
    /// Cap on exhaustive enumerations.
    #[arg(long, global = true, default_value_t = lcpuso::DEFAULT_LIMIT)]
    limit: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Input file, `-` or absent for stdin.
    #[arg(short = 'i', long = "input")]
    input: Option<PathBuf>,
    /// Output file, stdout if absent.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate random instances that satisfy their promise.
    Gen {
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of instances, seeds `seed..seed+count`; `-o` is then a directory.
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long)]
        n: Option<usize>,
        /// Points per color, comma separated (tangent).
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// Grid dimensions, comma separated (griduso, cubeuso).
        #[arg(long, value_delimiter = ',')]
        spec: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<usize>>,
        #[arg(long)]
        max_block: Option<usize>,
        /// product, combed, rejection or lcp (USO kinds).
        #[arg(long)]
        method: Option<String>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Apply reductions without solving.
    Reduce {
        #[arg(long)]
        route: String,
        #[command(flatten)]
        io: Io,
    },
    /// Apply reductions, optionally solve and verify every stage.
    Pipeline {
        #[arg(long)]
        route: String,
        #[arg(long)]
        solve: bool,
        /// Omit metadata from the output instance.
        #[arg(long)]
        bare: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Check the promise of an instance, or a solution against it.
    Verify {
        #[arg(long)]
        solution: Option<PathBuf>,
        #[command(flatten)]
        io: Io,
    },
    /// Brute-force solve an instance.
    Solve {
        #[command(flatten)]
        io: Io,
    },
    /// Render a cube or grid orientation as a Graphviz digraph.
    ExportDot {
        #[command(flatten)]
        io: Io,
    },
}

fn read_input(path: &Option<PathBuf>) -> CliResult<InstanceFile> {
    match path {
        Some(p) if p != Path::new("-") => InstanceFile::read(p),
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Io(e.to_string()))?;
            InstanceFile::from_json(&text)
        }
    }
}

fn emit(path: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn instance(file: &InstanceFile) -> CliResult<Problem> {
    file.payload.to_problem()
}

fn with_chain(file: &InstanceFile, route: &str, bare: bool) -> Option<Metadata> {
    if bare {
        return None;
    }
    let mut meta = file.metadata.clone().unwrap_or_default();
    meta.chain.extend(route.split(',').map(|s| s.trim().to_string()));
    Some(meta)
}

fn run(cli: Cli) -> CliResult<()> {
    let limit = cli.limit;
    match cli.command {
        Command::Gen { kind, seed, count, n, sizes, spec, alpha, max_block, method, output } => {
            let params = GenParams { n, sizes, spec, alpha, max_block, method };
            if count <= 1 {
                return emit(&output, &generate(&kind, &params, seed)?.to_json());
            }
            let dir = output.ok_or_else(|| CliError::Schema("--count needs -o <directory>".into()))?;
            std::fs::create_dir_all(&dir).map_err(|e| CliError::Io(e.to_string()))?;
            (seed..seed + count).into_par_iter().try_for_each(|s| {
                generate(&kind, &params, s)?.write(&dir.join(format!("{kind}-{s}.json")))
            })
        }
        Command::Reduce { route, io } => {
            let file = read_input(&io.input)?;
            let pipeline = Pipeline::build(instance(&file)?, &parse_route(&route)?, limit)?;
            for line in pipeline.describe() {
                eprintln!("{line}");
            }
            let out = InstanceFile::new(Payload::from_problem(&pipeline.output), with_chain(&file, &route, false));
            emit(&io.output, &out.to_json())
        }
        Command::Pipeline { route, solve: do_solve, bare, io } => {
            let file = read_input(&io.input)?;
            let pipeline = Pipeline::build(instance(&file)?, &parse_route(&route)?, limit)?;
            for line in pipeline.describe() {
                println!("{line}");
            }
            let out = InstanceFile::new(Payload::from_problem(&pipeline.output), with_chain(&file, &route, bare));
            if let Some(path) = &io.output {
                out.write(path)?;
            }
            if do_solve {
                let (checks, _) = pipeline.solve_and_verify(limit)?;
                for c in &checks {
                    println!("{c}");
                }
                if let Some(bad) = checks.iter().find(|c| !c.ok) {
                    return Err(CliError::Verify(bad.to_string()));
                }
            }
            Ok(())
        }
        Command::Verify { solution, io } => {
            let problem = instance(&read_input(&io.input)?)?;
            let given = solution.is_some();
            let checks = match solution {
                Some(path) => {
                    let sol = InstanceFile::read(&path)?.payload.to_solution(&problem)?;
                    vec![verify_solution(&problem, &sol, limit)?]
                }
                None => verify_promise(&problem, limit)?,
            };
            let report: String = checks.iter().map(|c| format!("{c}\n")).collect();
            emit(&io.output, &report)?;
            match checks.iter().find(|c| !c.ok) {
                None => Ok(()),
                Some(bad) if given => Err(CliError::Verify(bad.to_string())),
                Some(bad) => Err(CliError::Promise(bad.to_string())),
            }
        }
        Command::Solve { io } => {
            let file = read_input(&io.input)?;
            let problem = instance(&file)?;
            let sol = solve(&problem, limit)?;
            emit(&io.output, &InstanceFile::new(Payload::from_solution(&sol, &problem), None).to_json())
        }
        Command::ExportDot { io } => match instance(&read_input(&io.input)?)? {
            Problem::Uso(t) => emit(&io.output, &export_dot(&t)?),
            p => Err(CliError::Schema(format!("export-dot needs a cubeuso or griduso file, got {}", p.kind()))),
        },
    }
}

fn configure_workers() {
    if let Some(n) = std::env::var("LCPUSO_WORKERS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    configure_workers();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
