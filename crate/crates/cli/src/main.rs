use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use wdlab::coloring::{
    check_simplicial_sink_hypothesis, check_tripartite_hypothesis, conjecture_sweep,
    find_additive_coloring, ListAssignment, SweepReport,
};
use wdlab::eulerian::{count_ee_eo_classic, count_ee_eo_wd_threads, EulerianCount};
use wdlab::poly::{additive_coefficient, classical_coefficient, ExponentVector};
use wdlab::wd::build_wd;
use wdlab::{gen, parse, Bounds, Error, Graph, GraphFile, Orientation, Vertex, VertexPartition};

const BOUND_ENV: &str = "WD_LAB_BOUND";

#[derive(Parser)]
#[command(
    name = "wd-lab",
    version,
    about = "Eulerian parity counts and additive coloring certificates"
)]
struct Cli {
    /// Worker threads for `count --wd` and `sweep`; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    threads: u64,

    /// Enumeration bound for the chosen command (overrides WD_LAB_BOUND).
    #[arg(long, global = true)]
    bound: Option<u128>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print W(D) as an arc list with canonical names, then a JSON summary.
    BuildWd { file: PathBuf },
    /// Even and odd spanning Eulerian subdigraph counts.
    Count {
        file: PathBuf,
        #[command(flatten)]
        mode: CountMode,
        #[arg(long)]
        json: bool,
    },
    /// Coefficient of the out-degree monomial in a graph polynomial.
    Coefficient {
        file: PathBuf,
        #[command(flatten)]
        mode: PolyMode,
        #[arg(long)]
        json: bool,
    },
    /// Search for an additive coloring from per-vertex lists.
    Color {
        file: PathBuf,
        /// JSON object mapping vertex ids to label lists, e.g. {"1":[1,2],"2":[3]}.
        #[arg(long)]
        lists: String,
    },
    /// Test whether every odd cycle meets a simplicial sink.
    CheckHypothesis {
        file: PathBuf,
        /// Use the three-class formulation instead.
        #[arg(long)]
        tripartite: bool,
        /// Classes of a proper coloring as JSON, e.g. [[1,3],[2],[4]].
        #[arg(long, requires = "tripartite")]
        partition: Option<String>,
    },
    /// Additive coefficient of every orientation of a graph.
    Sweep {
        file: PathBuf,
        /// Examine only the first N orientations by index.
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Emit a graph from a standard family.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct CountMode {
    /// Count inside D itself (brute force, bounded).
    #[arg(long)]
    classic: bool,
    /// Count inside W(D) (default).
    #[arg(long)]
    wd: bool,
}

#[derive(Args)]
#[group(multiple = false)]
struct PolyMode {
    /// Product of x_v - x_w over arcs.
    #[arg(long)]
    classic: bool,
    /// Product of neighbor-sum differences over arcs (default).
    #[arg(long)]
    additive: bool,
}

#[derive(Subcommand)]
enum Family {
    /// Cyclic 2k-gon with a pendant triangle on each side, sinks outside.
    Sun {
        k: u32,
    },
    Cycle {
        n: u32,
    },
    Path {
        n: u32,
    },
    Complete {
        n: u32,
    },
    CompleteBipartite {
        a: u32,
        b: u32,
    },
}

#[derive(Serialize)]
struct CountJson {
    ee: String,
    eo: String,
    difference: String,
}

#[derive(Serialize)]
struct CoefficientJson {
    coefficient: String,
    cap: Vec<u32>,
}

#[derive(Serialize)]
struct WdSummary {
    vertices: usize,
    arcs: usize,
    sectors: usize,
}

#[derive(Serialize)]
struct NoColoring {
    result: &'static str,
}

#[derive(Serialize)]
struct Coloring<'a> {
    result: &'static str,
    labeling: &'a BTreeMap<Vertex, u64>,
}

#[derive(Serialize)]
struct WitnessJson {
    index: u64,
    coefficient: String,
    arcs: Vec<(Vertex, Vertex)>,
}

#[derive(Serialize)]
struct HistogramEntry {
    coefficient: String,
    count: u64,
}

#[derive(Serialize)]
struct SweepJson {
    edges: usize,
    orientations: u64,
    examined: u64,
    zero_count: u64,
    witness: Option<WitnessJson>,
    histogram: Vec<HistogramEntry>,
}

/// Whether the computed object exists; absence maps to exit code 1.
enum Found {
    Yes,
    No,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Found::Yes) => ExitCode::SUCCESS,
        Ok(Found::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", describe(&e));
            ExitCode::from(2)
        }
    }
}

fn describe(e: &anyhow::Error) -> String {
    match e.downcast_ref::<Error>().map(Error::kind) {
        Some(Error::BoundExceeded { .. }) => {
            format!("{e:#}; raise the limit with --bound <N> (or {BOUND_ENV})")
        }
        _ => format!("{e:#}"),
    }
}

/// The `--bound` flag wins over the environment, which wins over `default`.
fn bound(cli: &Cli, default: u128) -> anyhow::Result<u128> {
    if let Some(b) = cli.bound {
        return Ok(b);
    }
    match std::env::var(BOUND_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .with_context(|| format!("{BOUND_ENV}={s:?} is not a non-negative integer")),
        Err(std::env::VarError::NotPresent) => Ok(default),
        Err(e) => Err(e).context(BOUND_ENV),
    }
}

fn small_bound(cli: &Cli, default: usize) -> anyhow::Result<usize> {
    Ok(usize::try_from(bound(cli, default as u128)?).unwrap_or(usize::MAX))
}

fn read_file(path: &Path) -> anyhow::Result<GraphFile> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse(&text).with_context(|| format!("{}", path.display()))
}

fn read_orientation(path: &Path) -> anyhow::Result<Orientation> {
    read_file(path)?
        .into_orientation()
        .with_context(|| format!("{}", path.display()))
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<Found> {
    let defaults = Bounds::default();
    let threads = cli.threads as usize;
    match &cli.command {
        Command::BuildWd { file } => {
            let d = read_orientation(file)?;
            let w = build_wd(&d);
            print!("{}", w.to_file_string());
            print_json(&WdSummary {
                vertices: w.vertices().len(),
                arcs: w.arcs().len(),
                sectors: w.sectors().len(),
            })?;
        }
        Command::Count { file, mode, json } => {
            let d = read_orientation(file)?;
            let count = if mode.classic {
                count_ee_eo_classic(&d, small_bound(cli, defaults.eulerian_arcs)?)?
            } else {
                count_ee_eo_wd_threads(&d, threads)
            };
            print_count(&count, *json)?;
        }
        Command::Coefficient { file, mode, json } => {
            let d = read_orientation(file)?;
            let value = if mode.classic {
                classical_coefficient(&d)
            } else {
                additive_coefficient(&d)
            };
            if *json {
                print_json(&CoefficientJson {
                    coefficient: value.to_string(),
                    cap: ExponentVector::out_degrees(&d).0,
                })?;
            } else {
                println!("{value}");
            }
        }
        Command::Color { file, lists } => {
            let g = read_file(file)?.into_graph();
            let lists = parse_lists(lists, &g)?;
            match find_additive_coloring(&g, &lists, bound(cli, defaults.coloring_space)?)? {
                Some(l) => print_json(&Coloring {
                    result: "found",
                    labeling: &l.ell,
                })?,
                None => {
                    print_json(&NoColoring { result: "none" })?;
                    return Ok(Found::No);
                }
            }
        }
        Command::CheckHypothesis {
            file,
            tripartite,
            partition,
        } => {
            let d = read_orientation(file)?;
            let g = d.underlying();
            let holds = if *tripartite {
                let p = partition
                    .as_deref()
                    .map(|s| parse_partition(s, &g))
                    .transpose()?;
                check_tripartite_hypothesis(&g, &d, p.as_ref())?
            } else {
                check_simplicial_sink_hypothesis(&g, &d)?
            };
            println!("{holds}");
            if !holds {
                return Ok(Found::No);
            }
        }
        Command::Sweep { file, limit, json } => {
            let g = read_file(file)?.into_graph();
            let report = conjecture_sweep(
                &g,
                small_bound(cli, defaults.orientation_edges)?,
                *limit,
                threads,
            )?;
            print_sweep(&report, *json)?;
            if report.witness.is_none() {
                return Ok(Found::No);
            }
        }
        Command::Gen { family } => {
            let text = match *family {
                Family::Sun { k } => gen::sun(k)?.to_file_string(),
                Family::Cycle { n } => gen::cycle(n)?.to_file_string(),
                Family::Path { n } => gen::path(n)?.to_file_string(),
                Family::Complete { n } => gen::complete(n)?.to_file_string(),
                Family::CompleteBipartite { a, b } => {
                    gen::complete_bipartite(a, b)?.to_file_string()
                }
            };
            print!("{text}");
        }
    }
    Ok(Found::Yes)
}

fn print_count(count: &EulerianCount, json: bool) -> anyhow::Result<()> {
    if json {
        print_json(&CountJson {
            ee: count.ee.to_string(),
            eo: count.eo.to_string(),
            difference: count.difference().to_string(),
        })
    } else {
        println!(
            "ee {}\neo {}\ndifference {}",
            count.ee,
            count.eo,
            count.difference()
        );
        Ok(())
    }
}

fn print_sweep(report: &SweepReport, json: bool) -> anyhow::Result<()> {
    if json {
        return print_json(&SweepJson {
            edges: report.edge_count,
            orientations: report.total_orientations,
            examined: report.examined,
            zero_count: report.zero_count,
            witness: report.witness.as_ref().map(|w| WitnessJson {
                index: w.index,
                coefficient: w.coefficient.to_string(),
                arcs: w.orientation.arcs().collect(),
            }),
            histogram: report
                .histogram
                .iter()
                .map(|(c, &count)| HistogramEntry {
                    coefficient: c.to_string(),
                    count,
                })
                .collect(),
        });
    }
    println!("edges {}", report.edge_count);
    println!(
        "orientations {} of {}",
        report.examined, report.total_orientations
    );
    println!("zero {}", report.zero_count);
    match &report.witness {
        Some(w) => {
            let arcs: Vec<String> = w
                .orientation
                .arcs()
                .map(|(a, b)| format!("{a}->{b}"))
                .collect();
            println!(
                "witness #{} coefficient {}: {}",
                w.index,
                w.coefficient,
                arcs.join(" ")
            );
        }
        None => println!("witness none"),
    }
    for (c, count) in &report.histogram {
        println!("coefficient {c}: {count}");
    }
    Ok(())
}

fn parse_lists(text: &str, g: &Graph) -> anyhow::Result<ListAssignment> {
    let raw: BTreeMap<String, Vec<u64>> = serde_json::from_str(text)
        .context("--lists must be a JSON object of positive integer arrays")?;
    let mut lists = BTreeMap::new();
    for (key, labels) in raw {
        let v: Vertex = key
            .trim()
            .parse()
            .with_context(|| format!("--lists key {key:?} is not a vertex id"))?;
        if v == 0 || v > g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            }
            .into());
        }
        if lists
            .insert(v, labels.into_iter().collect::<BTreeSet<u64>>())
            .is_some()
        {
            bail!("--lists gives vertex {v} twice");
        }
    }
    Ok(ListAssignment::new(lists)?)
}

fn parse_partition(text: &str, g: &Graph) -> anyhow::Result<VertexPartition> {
    let raw: Vec<BTreeSet<Vertex>> =
        serde_json::from_str(text).context("--partition must be a JSON array of vertex arrays")?;
    Ok(VertexPartition::new(g.n(), raw)?)
}
