//! Command line front end: generation, enumeration, counting, sampling and
//! level-wise accessible-metric listing.

use std::io::{BufWriter, Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use metsets::accmetric::acc_metric_enumerate;
use metsets::constraints::{build_system, Family};
use metsets::engine::{enumerate, sample_final_rows, EngineOptions, RowOrder};
use metsets::graph::Graph;
use metsets::paths::all_geodesics;

/// Upper bound on how many subsets --expand will materialize.
const EXPAND_CAP: u64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "metsets",
    version,
    about = "Enumerate metric, geodesically convex and connected vertex subsets as disjoint 012-rows"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded random instance in the graph text format
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// List all geodesics, one path per line
    Geodesics {
        /// Graph file, or "-" for standard input
        input: String,
        /// Also list the length-1 geodesics (the edges)
        #[arg(long)]
        include_edges: bool,
    },
    /// Enumerate one family as pairwise disjoint 012-rows
    Enum {
        input: String,
        #[command(flatten)]
        run: RunArgs,
        /// Print expanded member sets instead of rows (refused above 10^6)
        #[arg(long)]
        expand: bool,
        /// Print the superclause system instead of enumerating
        #[arg(long)]
        dump_clauses: bool,
        /// Print JSON run statistics instead of rows
        #[arg(long)]
        json: bool,
    },
    /// Count the family exactly, without printing rows
    Count {
        input: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Sample final rows via randomized stack traversal
    Sample {
        input: String,
        #[command(flatten)]
        run: RunArgs,
        /// How many final rows to draw
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Enumerate accessible metric sets level by level
    Accmetric {
        input: String,
        /// Stop after this cardinality
        #[arg(long)]
        max_card: Option<usize>,
        /// Print per-level counts as JSON instead of the sets
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Uniform random graph with n vertices and m edges
    Graph {
        n: usize,
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Re-sample until the graph is connected (up to 1000 draws)
        #[arg(long)]
        connected: bool,
        /// Write to a file instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random tree with n vertices and a prescribed number of leaves
    Tree {
        n: usize,
        leaves: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Which family to enumerate
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Keep only rows that can hold members of at most this cardinality
    #[arg(long)]
    max_card: Option<usize>,
    /// Seed for randomized traversal (required by sample)
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; more than one gives up output ordering
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

fn main() {
    reset_sigpipe();
    if let Err(err) = run() {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

/// Die quietly when the consumer closes the pipe, like any Unix filter.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Gen { kind } => cmd_gen(kind),
        Command::Geodesics {
            input,
            include_edges,
        } => cmd_geodesics(&input, include_edges),
        Command::Enum {
            input,
            run,
            expand,
            dump_clauses,
            json,
        } => cmd_enum(&input, &run, expand, dump_clauses, json),
        Command::Count { input, run } => cmd_count(&input, &run),
        Command::Sample { input, run, count } => cmd_sample(&input, &run, count),
        Command::Accmetric {
            input,
            max_card,
            json,
        } => cmd_accmetric(&input, max_card, json),
    }
}

fn load_graph(input: &str) -> Result<Graph> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading standard input")?;
        buf
    } else {
        std::fs::read_to_string(input).with_context(|| format!("reading {input}"))?
    };
    Ok(Graph::parse(&text)?)
}

fn cmd_gen(kind: GenKind) -> Result<()> {
    let (graph, output) = match kind {
        GenKind::Graph {
            n,
            m,
            seed,
            connected,
            output,
        } => {
            let g = if connected {
                metsets::generate::random_connected_graph(n, m, seed)?
            } else {
                metsets::generate::random_graph(n, m, seed)?
            };
            (g, output)
        }
        GenKind::Tree {
            n,
            leaves,
            seed,
            output,
        } => (metsets::generate::random_tree(n, leaves, seed)?, output),
    };
    let n = graph.vertex_count();
    let m = graph.edge_count();
    let text = graph.write();
    match output {
        Some(path) => {
            std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    // every non-adjacent pair triggers one superclause
    eprintln!("superclauses: {}", n * (n - 1) / 2 - m);
    Ok(())
}

fn cmd_geodesics(input: &str, include_edges: bool) -> Result<()> {
    let g = load_graph(input)?;
    let d = g.distances();
    let mut out = BufWriter::new(std::io::stdout().lock());
    for geo in all_geodesics(&g, &d, include_edges) {
        let words: Vec<String> = geo.vertices().iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", words.join(" "))?;
    }
    out.flush()?;
    Ok(())
}

fn engine_options(run: &RunArgs) -> EngineOptions {
    EngineOptions {
        max_card: run.max_card,
        seed: run.seed,
        workers: run.workers.max(1),
        row_order: RowOrder::Deterministic,
    }
}

fn cmd_enum(
    input: &str,
    run: &RunArgs,
    expand: bool,
    dump_clauses: bool,
    json: bool,
) -> Result<()> {
    let parse_start = Instant::now();
    let g = load_graph(input)?;
    let sys = build_system(&g, run.family);
    let parse_seconds = parse_start.elapsed().as_secs_f64();

    if dump_clauses {
        for clause in sys.clauses() {
            println!("{clause}");
        }
        return Ok(());
    }

    let family = enumerate(&sys, &engine_options(run));
    let stats = family.stats();

    if json {
        let reported = stats
            .bounded_models
            .clone()
            .unwrap_or_else(|| stats.models.clone());
        let payload = serde_json::json!({
            "schema": 1,
            "family": run.family.as_str(),
            "n": g.vertex_count(),
            "m": g.edge_count(),
            "k": run.max_card,
            "rows": stats.rows,
            "models": reported.to_string(),
            "seconds": stats.seconds,
            "parse_seconds": parse_seconds,
        });
        println!("{payload}");
        return Ok(());
    }

    if expand {
        let predicted = family.count_models(run.max_card);
        if predicted > EXPAND_CAP.into() {
            bail!("--expand refused: {predicted} member sets exceed the cap of {EXPAND_CAP}");
        }
        if g.vertex_count() > 64 {
            bail!("--expand supports at most 64 vertices");
        }
        let mut out = BufWriter::new(std::io::stdout().lock());
        for mask in family.expand_models(run.max_card, EXPAND_CAP)? {
            let words: Vec<String> = (1..=g.vertex_count())
                .filter(|&v| mask >> (v - 1) & 1 == 1)
                .map(|v| v.to_string())
                .collect();
            writeln!(out, "{}", words.join(" "))?;
        }
        out.flush()?;
        return Ok(());
    }

    print!("{}", family.to_text());
    Ok(())
}

fn cmd_count(input: &str, run: &RunArgs) -> Result<()> {
    let g = load_graph(input)?;
    let sys = build_system(&g, run.family);
    let family = enumerate(&sys, &engine_options(run));
    println!("{}", family.count_models(run.max_card));
    Ok(())
}

fn cmd_sample(input: &str, run: &RunArgs, count: usize) -> Result<()> {
    if run.seed.is_none() {
        bail!("sample needs --seed");
    }
    let g = load_graph(input)?;
    let sys = build_system(&g, run.family);
    for row in sample_final_rows(&sys, count, &engine_options(run)) {
        println!("{row}");
    }
    Ok(())
}

fn cmd_accmetric(input: &str, max_card: Option<usize>, json: bool) -> Result<()> {
    let g = load_graph(input)?;
    let levels = acc_metric_enumerate(&g, max_card);
    if json {
        let total: usize = levels.iter().map(|l| l.sets.len()).sum();
        let payload = serde_json::json!({
            "schema": 1,
            "n": g.vertex_count(),
            "levels": levels
                .iter()
                .map(|l| serde_json::json!({"k": l.k, "count": l.sets.len()}))
                .collect::<Vec<_>>(),
            "total": total,
        });
        println!("{payload}");
        return Ok(());
    }
    let mut out = BufWriter::new(std::io::stdout().lock());
    for level in &levels {
        writeln!(out, "# k={} p={}", level.k, level.sets.len())?;
        for set in &level.sets {
            let words: Vec<String> = set.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", words.join(" "))?;
        }
    }
    out.flush()?;
    Ok(())
}
