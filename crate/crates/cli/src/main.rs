use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use kcontract::bisim::{bisimilar, k_bisimilar};
use kcontract::contraction::{contract, Mode, WorldOrder};
use kcontract::depth::compute_depth_bound;
use kcontract::formula::evaluate;
use kcontract::generators::{gen_chain, gen_figure, gen_random, gen_succinctness_tree, Figure};
use kcontract::harness::{succinctness_sweep, write_csv};
use kcontract::io::{export_dot, parse_formula, parse_model, serialize_model};
use kcontract::{Execution, PointedModel};

#[derive(Parser)]
#[command(
    name = "kcontract",
    version,
    about = "Bounded bisimulation contractions of Kripke models"
)]
struct Cli {
    /// Run every algorithm single-threaded.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a model document.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Contract a model.
    Contract {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short)]
        k: Option<usize>,
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        /// Comma-separated world ids, least first. Defaults to document order.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Writes the source-world to contraction-world map as JSON.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Exit 0 if the two pointed models are (k-)bisimilar, 1 if not.
    Check {
        #[arg(short)]
        a: PathBuf,
        #[arg(short)]
        b: PathBuf,
        #[arg(short)]
        k: Option<usize>,
    },
    /// Evaluate a formula at a world.
    Eval {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        world: String,
        #[arg(short, long)]
        formula: String,
    },
    /// Benchmarks.
    Bench {
        #[command(subcommand)]
        which: BenchKind,
    },
    /// Render a model as Graphviz DOT.
    ExportDot {
        #[arg(short, long)]
        input: PathBuf,
        /// Annotate nodes with depth and bound for this k.
        #[arg(short)]
        k: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Chain c0 -> ... -> ck of p-worlds.
    Chain {
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Succinctness tree of depth k.
    Tree {
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Seeded uniform random model.
    Random {
        #[arg(long)]
        worlds: usize,
        #[arg(long, default_value_t = 1)]
        indices: usize,
        #[arg(long, default_value_t = 1)]
        atoms: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// One of the fixed example models: fig2, n1, n2.
    Figure {
        name: String,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Args)]
struct OutputArg {
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BenchKind {
    /// Standard versus rooted contraction of the succinctness trees.
    Succinctness {
        #[arg(long)]
        k_min: usize,
        #[arg(long)]
        k_max: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse().map_err(|e: kcontract::Error| e.to_string())
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create a temporary file in {}", dir.display()))?;
    tmp.write_all(contents)?;
    tmp.persist(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn emit(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, contents.as_bytes()),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<PointedModel> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_model(&text).with_context(|| format!("in {}", path.display()))
}

fn generate(family: Family) -> Result<()> {
    let (model, out) = match family {
        Family::Chain { k, out } => (gen_chain(k), out),
        Family::Tree { k, out } => (gen_succinctness_tree(k), out),
        Family::Random {
            worlds,
            indices,
            atoms,
            density,
            seed,
            out,
        } => (gen_random(worlds, indices, atoms, density, seed)?, out),
        Family::Figure { name, out } => (gen_figure(name.parse::<Figure>()?), out),
    };
    emit(out.output.as_deref(), &serialize_model(&model))
}

/// Exit status of `check`; everything else reports faults through `Err`.
fn run(cli: Cli) -> Result<ExitCode> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match cli.command {
        Command::Gen { family } => generate(family)?,
        Command::Contract {
            input,
            k,
            mode,
            order,
            output,
            witness,
        } => {
            let m = load(&input)?;
            let order = order
                .map(|names| WorldOrder::from_names(&m, &names))
                .transpose()?;
            let result = contract(&m, mode, k, order.as_ref(), exec)?;
            emit(output.as_deref(), &serialize_model(&result.model))?;
            if let Some(path) = witness {
                let mut text = serde_json::to_string_pretty(&result.witness_named())?;
                text.push('\n');
                write_atomic(&path, text.as_bytes())?;
            }
            if output.is_some() {
                println!(
                    "{mode}: {} worlds, {} edges",
                    result.model.world_count(),
                    result.model.edge_count()
                );
            }
        }
        Command::Check { a, b, k } => {
            let (ma, mb) = (load(&a)?, load(&b)?);
            let (same, what) = match k {
                Some(k) => (k_bisimilar(&ma, &mb, k), format!("{k}-bisimilar")),
                None => (bisimilar(&ma, &mb), "bisimilar".to_string()),
            };
            if same {
                println!("{what}");
            } else {
                println!("not {what}");
                return Ok(ExitCode::from(1));
            }
        }
        Command::Eval {
            input,
            world,
            formula,
        } => {
            let m = load(&input)?;
            let w = m.require(&world)?;
            let f = parse_formula(&formula)?;
            println!("{} (modal depth {})", evaluate(&m, w, &f)?, f.modal_depth());
        }
        Command::Bench {
            which: BenchKind::Succinctness { k_min, k_max, csv },
        } => {
            let rows = succinctness_sweep(k_min, k_max, exec)?;
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            match csv {
                Some(path) => {
                    write_atomic(&path, &buf)?;
                    for r in &rows {
                        println!(
                            "k={:<3} standard {:>8} worlds  rooted {:>3} worlds",
                            r.k, r.worlds_standard, r.worlds_rooted
                        );
                    }
                }
                None => std::io::stdout().write_all(&buf)?,
            }
        }
        Command::ExportDot { input, k, output } => {
            let m = load(&input)?;
            let bounds = k.map(|k| compute_depth_bound(&m, k));
            emit(output.as_deref(), &export_dot(&m, bounds.as_ref()))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
