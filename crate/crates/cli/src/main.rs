//! `kempe`: transform, verify, generate, recognize and brute-force check
//! edge colorings from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 precondition or graph
//! class failure, 3 internal invariant breach.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kempe_core::coloring::{apply_trace, EdgeColoring, KempeTrace};
use kempe_core::engine::class2_transform;
use kempe_core::factory::{corpus, path_tree, prop31_generate, Family};
use kempe_core::graph::{is_chordless, Graph};
use kempe_core::oracle::{equivalence_classes, DEFAULT_CAP};
use kempe_core::solver::{find_delta_coloring, SolverResult};
use kempe_core::Error;
use serde_json::json;

#[derive(Parser)]
#[command(name = "kempe", version, about = "Kempe-change transformations between edge colorings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a Kempe trace from one coloring to another.
    Transform {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        /// Trace output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a trace and check that it reaches the target coloring.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        to: PathBuf,
    },
    /// Write a generated graph as JSON.
    Generate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Nesting depth of the triangle-rich family.
        #[arg(long, default_value_t = 0)]
        k: u32,
        /// Diameter of the path seeding the triangle-rich family.
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Vertex count (leaf count for stars).
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Arm lengths for theta graphs.
        #[arg(long, value_delimiter = ',', default_values_t = [2, 2, 3])]
        arms: Vec<usize>,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report triangle-freeness, chordlessness, maximum degree and class.
    Recognize {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Count Kempe-equivalence classes of all proper t-colorings.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Prop31,
    Path,
    Cycle,
    Star,
    Tree,
    Theta,
    RandomTriangleFree,
    RandomChordless,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Replay { .. } => 1,
            Error::Stall { .. } | Error::Invariant(_) | Error::ClassBreach(_) => 3,
            _ => 2,
        };
        let message = match &e {
            Error::ClassViolation(w) => format!(
                "graph is neither triangle-free nor chordless; chord witness: {}",
                json!({ "cycle": w.cycle, "chord": w.chord })
            ),
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))
}

fn write(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| Failure::new(2, format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    Ok(Graph::from_json(&read(path)?)?)
}

fn load_coloring(path: &Path, g: &Graph) -> Result<EdgeColoring, Failure> {
    let c = EdgeColoring::from_json(&read(path)?)?;
    if c.len() != g.edge_count() {
        return Err(Failure::new(2, format!("{}: {} colors for {} edges", path.display(), c.len(), g.edge_count())));
    }
    Ok(c)
}

fn cmd_transform(graph: &Path, from: &Path, to: &Path, out: Option<&Path>) -> Outcome {
    let g = load_graph(graph)?;
    let b1 = load_coloring(from, &g)?;
    let b2 = load_coloring(to, &g)?;
    b1.check_proper(&g)?;
    b2.check_proper(&g)?;
    let trace = class2_transform(&g, &b1, &b2)?;
    write(out, &trace.to_json())
}

fn cmd_verify(graph: &Path, from: &Path, trace: &Path, to: &Path) -> Outcome {
    let g = load_graph(graph)?;
    let start = load_coloring(from, &g)?;
    let target = load_coloring(to, &g)?;
    let trace = KempeTrace::from_json(&read(trace)?)?;
    let end = apply_trace(&g, &start, &trace).map_err(|e| match e {
        Error::Replay { step, reason } => Failure::new(1, format!("verification failed at step {step}: {reason}")),
        other => other.into(),
    })?;
    if end.colors() != target.colors() {
        let edge = (0..g.edge_count()).find(|&e| end.color(e) != target.color(e));
        return Err(Failure::new(
            1,
            format!(
                "verification failed at step {}: trace ended with edge {} colored {} instead of {}",
                trace.len(),
                edge.unwrap_or(0),
                edge.map_or(0, |e| end.color(e)),
                edge.map_or(0, |e| target.color(e)),
            ),
        ));
    }
    println!("ok: {} steps reach the target", trace.len());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    family: FamilyArg,
    k: u32,
    d: usize,
    n: usize,
    arms: &[usize],
    max_degree: Option<usize>,
    seed: u64,
    out: Option<&Path>,
) -> Outcome {
    let g = match family {
        FamilyArg::Prop31 => {
            if d == 0 {
                return Err(Failure::new(2, "--d must be at least 1"));
            }
            prop31_generate(k, &path_tree(d))?
        }
        other => {
            let fam = match other {
                FamilyArg::Path => Family::Path { n },
                FamilyArg::Cycle => Family::Cycle { n },
                FamilyArg::Star => Family::Star { leaves: n },
                FamilyArg::Tree => Family::Tree { n },
                FamilyArg::Theta => {
                    let arms: [usize; 3] =
                        arms.try_into().map_err(|_| Failure::new(2, "--arms takes exactly three lengths"))?;
                    Family::Theta { arms }
                }
                FamilyArg::RandomTriangleFree => Family::RandomTriangleFree { n, max_degree },
                FamilyArg::RandomChordless => Family::RandomChordless { n },
                FamilyArg::Prop31 => unreachable!(),
            };
            corpus(&fam, seed)?
        }
    };
    write(out, &g.to_json())
}

fn cmd_recognize(graph: &Path) -> Outcome {
    let g = load_graph(graph)?;
    let witness = is_chordless(&g).err();
    let class = match find_delta_coloring(&g) {
        SolverResult::Coloring(_) => 1,
        SolverResult::ClassTwo { .. } => 2,
    };
    let report = json!({
        "triangle_free": g.is_triangle_free(),
        "chordless": witness.is_none(),
        "max_degree": g.max_degree(),
        "class": class,
        "chord_witness": witness.map(|w| json!({ "cycle": w.cycle, "chord": w.chord })),
    });
    println!("{report}");
    Ok(())
}

fn cmd_oracle(graph: &Path, t: u32, cap: usize) -> Outcome {
    if cap == 0 {
        return Err(Failure::new(2, "--cap must be positive"));
    }
    let g = load_graph(graph)?;
    let space = equivalence_classes(&g, t, cap)?;
    let report = json!({
        "colorings": space.colorings.len(),
        "classes": space.class_count,
        "sizes": space.class_sizes(),
    });
    println!("{report}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Transform { graph, from, to, out } => cmd_transform(graph, from, to, out.as_deref()),
        Command::Verify { graph, from, trace, to } => cmd_verify(graph, from, trace, to),
        Command::Generate { family, k, d, n, arms, max_degree, seed, out } => {
            cmd_generate(*family, *k, *d, *n, arms, *max_degree, *seed, out.as_deref())
        }
        Command::Recognize { graph } => cmd_recognize(graph),
        Command::Oracle { graph, t, cap } => cmd_oracle(graph, *t, *cap),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
