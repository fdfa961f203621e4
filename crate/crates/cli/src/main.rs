use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use treepart::config::Budgets;
use treepart::coverings::{check_cd_disjointed, Covering};
use treepart::oracles::{random_weakly_outer_k_planar, CircularDrawing};
use treepart::partition::CTreePartition;
use treepart::partitioner::CheckMode;
use treepart::treewidth::{best_td, exact_treewidth, heuristic_td};
use treepart::verify::{
    brute_min_tpw, rows_to_csv, rows_to_json, run_pipeline, run_row, validate_partition, Instance,
    Pipeline,
};
use treepart::{generate, Error, FamilySpec, Graph};

/// Largest graph `brute --tpw` will enumerate.
const BRUTE_LIMIT: usize = 10;
/// Largest number of block tuples `brute --disjointed` will try.
const TUPLE_LIMIT: usize = 200_000;

#[derive(Parser)]
#[command(
    name = "treepart",
    version,
    about = "Build, certify and audit c-tree-partitions"
)]
struct Cli {
    /// Seed for random instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph from a family spec such as `gcl 3 2`, or `outer N K`
    /// for a random weakly outer K-planar drawing.
    Gen {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Where to write the vertex order of a random drawing.
        #[arg(long)]
        drawing: Option<PathBuf>,
        /// Edge density of a random drawing.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
    /// Print the treewidth of a graph (or an upper bound).
    Tw {
        graph: PathBuf,
        #[arg(long, conflicts_with = "heuristic")]
        exact: bool,
        #[arg(long)]
        heuristic: bool,
        /// Write the decomposition here.
        #[arg(long)]
        td_out: Option<PathBuf>,
    },
    /// Build a c-tree-partition with the pipeline for a graph class.
    Partition(PartitionArgs),
    /// Validate a partition against its graph.
    Verify { graph: PathBuf, partition: PathBuf },
    /// Brute-force audits on small graphs.
    Brute {
        graph: PathBuf,
        /// Exact c-tree-partition-width.
        #[arg(long, value_name = "C", conflicts_with = "disjointed")]
        tpw: Option<usize>,
        /// Check that the singleton covering is (c, d)-disjointed.
        #[arg(long, num_args = 2, value_names = ["C", "D"])]
        disjointed: Option<Vec<usize>>,
    },
    /// Run a suite of `<class> <family spec>` lines and print a CSV table.
    Bench {
        suite: PathBuf,
        /// Also write the table as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PartitionArgs {
    graph: PathBuf,
    /// degree | minor-free:s | topo:p | k2t | outer-k:k | spider:s,t | path:n |
    /// induced-star:s | induced-star-forest:s,l | induced-p3:k | cliques |
    /// small-alpha:k | k1t:t
    #[arg(long)]
    class: String,
    /// Expected quotient treewidth; must match the class.
    #[arg(long)]
    c: Option<usize>,
    /// Vertex order of a circular drawing, for outer-k.
    #[arg(long)]
    drawing: Option<PathBuf>,
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Re-verify every oracle answer inline (the default).
    #[arg(long, conflicts_with = "release")]
    checked: bool,
    /// Skip inline oracle re-verification; the result is still validated.
    #[arg(long)]
    release: bool,
}

/// A failure and the exit code it maps to.
enum Failure {
    /// Bad flags, unreadable or malformed input: exit 2.
    Usage(String),
    /// The input is outside the class, or a result failed validation: exit 1.
    Rejected(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSpec(_)
            | Error::Parse { .. }
            | Error::TooLarge(_)
            | Error::PatternTooLarge(_)
            | Error::InvalidGraph(_) => Failure::Usage(e.to_string()),
            _ => Failure::Rejected(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_gen(
    spec: &[String],
    out: Option<&Path>,
    drawing: Option<&Path>,
    density: f64,
    seed: u64,
) -> CmdResult {
    let text = spec.join(" ");
    if spec[0] == "outer" {
        let nums: Vec<usize> = spec[1..]
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()
            .map_err(|_| Failure::Usage(format!("bad spec `{text}`")))?;
        let [n, k] = nums[..] else {
            return Err(Failure::Usage("usage: gen outer N K".into()));
        };
        let d = random_weakly_outer_k_planar(n, k, density, seed);
        write_or_print(out, &d.graph().to_text())?;
        if let Some(p) = drawing {
            write_or_print(Some(p), &d.to_text())?;
        }
        return Ok(());
    }
    let fam: FamilySpec = text.parse()?;
    write_or_print(out, &generate(fam)?.to_text())
}

fn cmd_tw(
    graph: &Path,
    exact: bool,
    heuristic: bool,
    td_out: Option<&Path>,
    budgets: &Budgets,
) -> CmdResult {
    let g = load_graph(graph)?;
    let td = if exact {
        exact_treewidth(&g, budgets.tw)?.1
    } else if heuristic {
        heuristic_td(&g)
    } else {
        best_td(&g, budgets.tw).0
    };
    println!("{}", td.width());
    if let Some(p) = td_out {
        write_or_print(Some(p), &td.to_text())?;
    }
    Ok(())
}

fn cmd_partition(a: &PartitionArgs, budgets: &Budgets) -> CmdResult {
    let pipeline: Pipeline = a.class.parse()?;
    if let Some(c) = a.c {
        if c != pipeline.c() {
            return Err(Failure::Usage(format!(
                "class {pipeline} builds {}-tree-partitions, not c = {c}",
                pipeline.c()
            )));
        }
    }
    let g = load_graph(&a.graph)?;
    let drawing = match &a.drawing {
        Some(p) => Some(
            CircularDrawing::parse(&read(p)?, g.clone())
                .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        ),
        None => None,
    };
    let mode = if a.release {
        CheckMode::Release
    } else {
        CheckMode::Checked
    };
    let out = run_pipeline(&g, pipeline, drawing.as_ref(), budgets, mode)?;
    let mut p = out.partition;
    p.set_meta("class", pipeline);
    if !out.flags.is_empty() {
        p.set_meta("flags", out.flags.join(";"));
    }
    write_or_print(a.out.as_deref(), &p.to_text())?;
    let bound = out.bound.map_or("none".to_string(), |b| b.to_string());
    eprintln!("width {} c {} bound {bound}", p.width(), p.c);
    Ok(())
}

fn cmd_verify(graph: &Path, partition: &Path) -> CmdResult {
    let g = load_graph(graph)?;
    let p = CTreePartition::parse(&read(partition)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", partition.display())))?;
    let r = validate_partition(&g, &p);
    if r.pass {
        println!("valid width {} c {}", p.width(), p.c);
        Ok(())
    } else {
        Err(Failure::Rejected(format!(
            "invalid partition: {}",
            r.failures.join("; ")
        )))
    }
}

fn cmd_brute(graph: &Path, tpw: Option<usize>, disjointed: Option<&[usize]>) -> CmdResult {
    let g = load_graph(graph)?;
    match (tpw, disjointed) {
        (Some(c), None) => {
            let (w, _) = brute_min_tpw(&g, c, BRUTE_LIMIT)?;
            println!("{w}");
            Ok(())
        }
        (None, Some(&[c, d])) => {
            let r = check_cd_disjointed(&g, &Covering::singletons(g.n()), c, d, TUPLE_LIMIT)?;
            println!("max_min_q {}", r.max_min_q);
            if r.holds {
                println!("holds");
                Ok(())
            } else {
                let (tuple, comp, q) = r.counterexample.expect("violations carry a witness");
                Err(Failure::Rejected(format!("not ({c}, {d})-disjointed: blocks {tuple:?}, component {comp:?} needs |Q| = {q}")))
            }
        }
        _ => Err(Failure::Usage(
            "brute needs exactly one of --tpw C or --disjointed C D".into(),
        )),
    }
}

/// Suite lines are `<class> <family spec>`; `#` starts a comment.
fn parse_suite(text: &str) -> Result<Vec<(Pipeline, Instance)>, Failure> {
    let mut jobs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (class, spec) = line.split_once(char::is_whitespace).ok_or_else(|| {
            Failure::Usage(format!(
                "suite line {}: expected `<class> <family spec>`",
                i + 1
            ))
        })?;
        let pipeline: Pipeline = class.parse()?;
        let fam: FamilySpec = spec.trim().parse()?;
        let id = format!("{pipeline}/{}", fam.to_string().replace(' ', "-"));
        jobs.push((pipeline, Instance::new(id, generate(fam)?)));
    }
    Ok(jobs)
}

fn cmd_bench(suite: &Path, json: Option<&Path>, budgets: &Budgets) -> CmdResult {
    use rayon::prelude::*;
    let jobs = parse_suite(&read(suite)?)?;
    let rows: Vec<_> = jobs
        .par_iter()
        .map(|(p, inst)| run_row(*p, inst, budgets))
        .collect();
    print!("{}", rows_to_csv(&rows));
    if let Some(path) = json {
        write_or_print(Some(path), &rows_to_json(&rows))?;
    }
    match rows.iter().find(|r| r.failed() || !r.within_bound()) {
        Some(r) => Err(Failure::Rejected(format!(
            "instance {} failed: {}",
            r.instance, r.flags
        ))),
        None => Ok(()),
    }
}

fn run(cli: Cli) -> CmdResult {
    let budgets = Budgets::from_env()
        .map_err(|e| Failure::Usage(format!("{}: {e}", treepart::config::BUDGETS_ENV)))?;
    match &cli.cmd {
        Cmd::Gen {
            spec,
            out,
            drawing,
            density,
        } => cmd_gen(spec, out.as_deref(), drawing.as_deref(), *density, cli.seed),
        Cmd::Tw {
            graph,
            exact,
            heuristic,
            td_out,
        } => cmd_tw(graph, *exact, *heuristic, td_out.as_deref(), &budgets),
        Cmd::Partition(a) => cmd_partition(a, &budgets),
        Cmd::Verify { graph, partition } => cmd_verify(graph, partition),
        Cmd::Brute {
            graph,
            tpw,
            disjointed,
        } => cmd_brute(graph, *tpw, disjointed.as_deref()),
        Cmd::Bench { suite, json } => cmd_bench(suite, json.as_deref(), &budgets),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
