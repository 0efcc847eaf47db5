mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kcds::{
    brute_force_counts, exact_cds_bruteforce, extract_cds, max_local, parse_edge_list, run, Engine, Error, Exec,
    Graph, IterationConfig, PathOrder, Variant,
};
use report::{BenchTrace, Checkpoint, CountReport, DensestReport, OracleReport};

const EXIT_USAGE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_OVERFLOW: u8 = 4;
const EXIT_TOO_LARGE: u8 = 5;

/// Exact k-clique counting and approximate k-clique densest subgraphs.
#[derive(Parser)]
#[command(name = "kcds", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-vertex and total k-clique counts.
    Count(GraphArgs),
    /// Approximate densest subgraph after `--iters` weight updates.
    Densest(IterArgs),
    /// Exact densest subgraph by exhaustive search (at most 16 vertices).
    Oracle(GraphArgs),
    /// Density traces for every variant and path order.
    Bench(IterArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Whitespace-separated edge list; `#` and `%` start comment lines.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(2..))]
    k: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct IterArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, default_value_t = 100)]
    iters: usize,
    #[arg(long, value_enum, default_value_t = VariantArg::Ccas)]
    variant: VariantArg,
    #[arg(long, value_enum, default_value_t = OrderArg::Depth)]
    order: OrderArg,
    /// Seed for `--order random`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Basic,
    Ccas,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Basic => Variant::Basic,
            VariantArg::Ccas => Variant::Simultaneous,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Build,
    Random,
    Depth,
    Degeneracy,
}

impl OrderArg {
    fn with_seed(self, seed: u64) -> PathOrder {
        match self {
            OrderArg::Build => PathOrder::Build,
            OrderArg::Random => PathOrder::Random(seed),
            OrderArg::Depth => PathOrder::Depth,
            OrderArg::Degeneracy => PathOrder::Degeneracy,
        }
    }
}

enum Failure {
    Io(PathBuf, std::io::Error),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(..) => EXIT_PARSE,
            Failure::Lib(Error::Parse { .. }) => EXIT_PARSE,
            Failure::Lib(e) if e.is_overflow() => EXIT_OVERFLOW,
            Failure::Lib(Error::TooLarge { .. }) => EXIT_TOO_LARGE,
            Failure::Lib(_) => EXIT_USAGE,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(path, e) => format!("cannot read {}: {e}", path.display()),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

fn load(path: &PathBuf) -> Result<Graph, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Io(path.clone(), e))?;
    Ok(parse_edge_list(&bytes)?)
}

fn emit<T: Serialize>(value: &T, format: Format, text: impl FnOnce(&T) -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("reports serialize")),
        Format::Text => print!("{}", text(value)),
    }
}

fn count(args: &GraphArgs) -> Result<(), Failure> {
    let g = load(&args.input)?;
    let k = args.k as usize;
    let engine = Engine::new(&g, k, PathOrder::Build)?;
    let counts = engine.counts();
    let per_vertex: BTreeMap<u64, u128> =
        counts.per_vertex.iter().enumerate().map(|(v, &c)| (g.original_id(v), c)).collect();
    let report = CountReport {
        k,
        total: counts.total,
        per_vertex,
        delta: engine.delta(),
        core_reduced_n: engine.reduced_graph().n(),
    };
    emit(&report, args.format, CountReport::text);
    Ok(())
}

fn densest(args: &IterArgs) -> Result<(), Failure> {
    let g = load(&args.graph.input)?;
    let k = args.graph.k as usize;
    let variant = Variant::from(args.variant);
    let order = args.order.with_seed(args.seed);
    let cfg = IterationConfig { iterations: args.iters, variant, order, exec: Exec::Parallel };
    let (w, stats) = run(&g, k, &cfg)?;
    let cds = extract_cds(&g, &w, k)?;
    let report = DensestReport {
        k,
        iterations: args.iters,
        variant: variant.name(),
        ordering: order.name(),
        seed: args.seed,
        density: cds.density,
        clique_count: cds.clique_count,
        vertices: cds.vertices,
        max_weight: stats.max_weight,
        weight_sum: stats.weight_sum,
        delta: stats.delta,
        bound_report: stats.bound_report,
        per_iteration_ms: stats.iteration_ms,
    };
    emit(&report, args.graph.format, DensestReport::text);
    Ok(())
}

fn oracle(args: &GraphArgs) -> Result<(), Failure> {
    let g = load(&args.input)?;
    let k = args.k as usize;
    let best = exact_cds_bruteforce(&g, k)?;
    let report = OracleReport {
        k,
        density: best.density,
        clique_count: best.clique_count,
        vertices: best.vertices,
        delta: max_local(&brute_force_counts(&g, k)?),
    };
    emit(&report, args.format, OracleReport::text);
    Ok(())
}

/// 1, 2, 5, 10, 20, 50, ... up to `iters`, always ending at `iters`.
fn checkpoints(iters: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut scale = 1usize;
    'outer: loop {
        for step in [1, 2, 5] {
            let t = step * scale;
            if t >= iters {
                break 'outer;
            }
            out.push(t);
        }
        scale *= 10;
    }
    out.push(iters);
    out
}

fn bench(args: &IterArgs) -> Result<(), Failure> {
    let g = load(&args.graph.input)?;
    let k = args.graph.k as usize;
    let marks = checkpoints(args.iters);
    let orders = [OrderArg::Build, OrderArg::Random, OrderArg::Depth, OrderArg::Degeneracy];
    let mut engine = Engine::new(&g, k, PathOrder::Build)?;
    let initial = engine.initial_weights()?;
    let mut traces = Vec::new();
    for order in orders.map(|o| o.with_seed(args.seed)) {
        engine.set_order(order)?;
        for variant in [Variant::Basic, Variant::Simultaneous] {
            let start = Instant::now();
            let mut w = initial.clone();
            let mut trace = Vec::with_capacity(marks.len());
            for &t in &marks {
                while w.t < t {
                    w = engine.step(w, variant, Exec::Parallel)?;
                }
                let full = engine.expand(&w);
                let cds = extract_cds(&g, &full, k)?;
                trace.push(Checkpoint { t, density: cds.density, max_weight: full.max() });
            }
            traces.push(BenchTrace {
                variant: variant.name(),
                ordering: order.name(),
                seed: args.seed,
                trace,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            });
        }
    }
    emit(&traces, args.graph.format, |t| report::bench_text(t));
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Count(args) => count(args),
        Command::Densest(args) => densest(args),
        Command::Oracle(args) => oracle(args),
        Command::Bench(args) => bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("kcds: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
