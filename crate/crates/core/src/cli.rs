//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::cut::DEFAULT_ORACLE_BUDGET;
use crate::error::{Error, Result};
use crate::fence::{export_svg, validate_fence};
use crate::generators::{gen_lower_bound, gen_random, GeneratorKind, GeneratorParams};
use crate::geom::validate_instance;
use crate::io::{parse_fence, parse_instance, serialize_fence, serialize_instance};
use crate::solver::{prepare, solve, Method};
use crate::steiner::{min_duplication, parse_tree};

pub const BUDGET_ENV: &str = "GEOMCUT_ORACLE_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "geomcut", version, about = "Shortest fences separating colored polygons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute a fence and print its length.
    Solve(SolveArgs),
    /// Check an instance, and optionally a fence against it.
    Validate {
        instance: PathBuf,
        #[arg(long)]
        fence: Option<PathBuf>,
    },
    /// Write a generated instance.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Minimum edge duplication on a full binary tree.
    ///
    /// A tree is written as the subtree below an implicit root leaf:
    /// `node := L:len | (node,node):len`, the length belonging to the edge
    /// above the node. `L:5` is one edge, `(L:1,L:1):1` the unit star.
    SteinerDp {
        /// File holding the tree expression.
        input: Option<PathBuf>,
        /// Tree expression given inline.
        #[arg(long, conflicts_with = "input")]
        tree: Option<String>,
    },
    /// Print instance, segment, arrangement and dual sizes.
    Stats { instance: PathBuf },
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub instance: PathBuf,
    /// auto, exact2, isolation, bruteforce or exact.
    #[arg(long, default_value = "auto")]
    pub method: Method,
    /// Fence file to write.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Labeling budget for exhaustive methods (default from GEOMCUT_ORACLE_BUDGET, else 2^25).
    #[arg(long)]
    pub oracle_budget: Option<u128>,
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Triangle grid of thin rectangles.
    LowerBound {
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0.01)]
        thickness: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random disjoint rectangles and convex polygons.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        objects: usize,
        #[arg(long, default_value_t = 2)]
        colors: usize,
        #[arg(long, default_value_t = 12)]
        range: i64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Exit code for an error: 1 bad input, 2 infeasible request, 3 internal failure.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TooLarge { .. } | Error::GenerationTimeout(_) | Error::MethodMismatch { .. } => 2,
        Error::Internal(_)
        | Error::ObjectFaceNotFound(_)
        | Error::ProvenanceMismatch(_)
        | Error::NoSeparationNeeded(_) => 3,
        _ => 1,
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::InvalidInstance(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::SinkWriteFailure(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::SinkWriteFailure(e.to_string()))
}

fn oracle_budget(flag: Option<u128>) -> Result<u128> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInstance(format!("{BUDGET_ENV}={v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_ORACLE_BUDGET),
    }
}

/// Runs one command, writing results to `out`. Returns the exit code.
pub fn run_with(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(cli: Cli) -> i32 {
    run_with(cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Solve(args) => {
            let inst = parse_instance(&read(&args.instance)?)?;
            let budget = oracle_budget(args.oracle_budget)?;
            let sol = solve(&inst, args.method, budget)?;
            log::info!("solved with {} in {} segments", sol.method, sol.fence.segments.len());
            if let Some(p) = &args.output {
                write_file(p, &serialize_fence(&sol.fence))?;
            }
            if let Some(p) = &args.svg {
                let mut file = std::fs::File::create(p)
                    .map_err(|e| Error::SinkWriteFailure(format!("{}: {e}", p.display())))?;
                export_svg(&inst, Some(&sol.fence), &mut file)?;
            }
            emit(out, &format!("{:.9}\n", sol.fence.total_length))?;
            Ok(0)
        }
        Command::Validate { instance, fence } => {
            let inst = parse_instance(&read(&instance)?)?;
            let report = validate_instance(&inst);
            emit(out, &report.to_string())?;
            let mut ok = report.is_valid();
            if let Some(p) = fence {
                let f = parse_fence(&read(&p)?)?;
                let sep = validate_fence(&inst, &f);
                emit(out, &format!("fence length {:.9}\n{sep}", f.total_length))?;
                ok &= sep.valid;
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Gen(g) => {
            let (inst, output) = match g {
                GenCommand::LowerBound { k, thickness, output } => {
                    (gen_lower_bound(k, thickness)?, output)
                }
                GenCommand::Random {
                    seed,
                    objects,
                    colors,
                    range,
                    output,
                } => {
                    let params = GeneratorParams {
                        kind: GeneratorKind::Random,
                        seed,
                        num_objects: objects,
                        num_colors: colors,
                        coordinate_range: range,
                        ..GeneratorParams::default()
                    };
                    (gen_random(&params)?, output)
                }
            };
            let bytes = serialize_instance(&inst);
            match output {
                Some(p) => write_file(&p, &bytes)?,
                None => out
                    .write_all(&bytes)
                    .map_err(|e| Error::SinkWriteFailure(e.to_string()))?,
            }
            Ok(0)
        }
        Command::SteinerDp { input, tree } => {
            let text = match (input, tree) {
                (_, Some(t)) => t,
                (Some(p), None) => String::from_utf8_lossy(&read(&p)?).into_owned(),
                (None, None) => {
                    return Err(Error::MalformedTree("give a tree file or --tree".into()))
                }
            };
            let t = parse_tree(&text)?;
            let r = min_duplication(&t);
            let mut text = format!("{:.9}\n", r.cost);
            for &e in &r.duplicated {
                let (u, v, len) = t.edges()[e];
                text.push_str(&format!("duplicate edge {e} ({u}-{v}, length {len})\n"));
            }
            emit(out, &text)?;
            Ok(0)
        }
        Command::Stats { instance } => {
            let inst = parse_instance(&read(&instance)?)?;
            let mut text = format!(
                "objects {}\ncolors {}\ncorners {}\n",
                inst.objects.len(),
                inst.num_colors,
                inst.num_corners()
            );
            if !inst.objects.is_empty() {
                let p = prepare(&inst)?;
                let a = &p.arrangement;
                text.push_str(&format!(
                    "free segments {}\nvertices {}\nedges {}\nfaces {}\ncomponents {}\ndual nodes {}\ndual edges {}\n",
                    p.segments.len(),
                    a.vertices.len(),
                    a.edges.len(),
                    a.faces.len(),
                    a.num_components,
                    p.dual.num_nodes,
                    p.dual.edges.len()
                ));
            }
            emit(out, &text)?;
            Ok(0)
        }
    }
}
