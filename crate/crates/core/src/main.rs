//! Batch front door: compute polynomials, cross-check against the oracle,
//! build and validate expressions, benchmark.
//!
//! Exit codes: 0 success, 1 check mismatch, 2 input/validation error,
//! 3 redundant edge creation with the aggregated engine, 4 time budget
//! exceeded. Payloads go to stdout (or `--out`); diagnostics go to stderr.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use cwising::bench::loglog_slope;
use cwising::cwexpr::{
    build_biclique, build_clique, build_cycle, build_fallback, build_family, build_path,
    parse_term, CwTerm,
};
use cwising::engine::{
    preset, run_preset, run_theta, EngineError, Preset, RunOptions, RunOutput, Theta, Variant,
};
use cwising::graph::KGraph;
use cwising::oracle::{brute_force, DEFAULT_MAX_N};
use cwising::polynomial::Poly;

#[derive(Parser)]
#[command(
    name = "cwising",
    version,
    about = "Exact Ising-type graph polynomials via clique-width expressions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a polynomial with the dynamic-programming engine.
    Compute(ComputeArgs),
    /// Compute a polynomial by brute-force subset enumeration.
    Oracle(OracleArgs),
    /// Cross-check the engine against the brute-force oracle.
    Check(CheckArgs),
    /// Time the engine over a family parameter range, emitting CSV.
    Bench(BenchArgs),
    /// Parse, validate, and build expression terms.
    Expr {
        #[command(subcommand)]
        command: ExprCommand,
    },
}

/// Exactly one input source: a term file, a family spec, or a graph file
/// (computed through its width-n fallback term).
#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Term file (grammar: v(id,label), U(s,t), r(p->q,t), e(p,q,t))
    #[arg(long)]
    term: Option<PathBuf>,
    /// Family spec: clique:N, biclique:A,B, path:N, cycle:N, cograph:TREE
    #[arg(long)]
    family: Option<String>,
    /// Graph file (`n m`, then `u v` lines, optional `labels ...`)
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    source: Source,
    /// Specialization: ising, independence_ising, dominating_ising,
    /// independence, domination. independence_ising tracks the independent
    /// set as the x-marked block (x = its size, y = edges leaving it).
    #[arg(long)]
    poly: Preset,
    /// Engine variant
    #[arg(long, default_value = "aggregated")]
    engine: Variant,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Wall-clock budget in seconds
    #[arg(long, default_value_t = 3600)]
    budget_secs: u64,
    /// Per-node trace dump (JSON lines) for performance analysis
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// Graph file
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    poly: Preset,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest vertex count the oracle will enumerate
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    oracle_max_n: usize,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    source: Source,
    /// Check a single preset (all three predicates when omitted)
    #[arg(long)]
    poly: Option<Preset>,
    /// Check a single engine variant (both when omitted)
    #[arg(long)]
    engine: Option<Variant>,
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    oracle_max_n: usize,
    #[arg(long, default_value_t = 3600)]
    budget_secs: u64,
    /// Corrupt the engine output before comparing (mismatch-path self-test)
    #[arg(long, hide = true)]
    corrupt_for_tests: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Family to sweep: clique, biclique, path, cycle, fallback.
    /// biclique:n means K_{n,n}; fallback:n means K_n through its width-n term.
    #[arg(long)]
    family: String,
    #[arg(long)]
    min: usize,
    #[arg(long)]
    max: usize,
    #[arg(long, default_value_t = 1)]
    step: usize,
    #[arg(long, default_value = "ising")]
    poly: Preset,
    #[arg(long, default_value = "aggregated")]
    engine: Variant,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-instance wall-clock budget in seconds
    #[arg(long, default_value_t = 3600)]
    budget_secs: u64,
}

#[derive(Subcommand)]
enum ExprCommand {
    /// Parse a term file and print its canonical rendering.
    Parse {
        #[arg(long)]
        term: PathBuf,
    },
    /// Replay a term and report width, counts, and redundant sites.
    Validate {
        #[arg(long)]
        term: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Build a family term and print (or write) it.
    Build {
        /// clique:N, biclique:A,B, path:N, cycle:N, cograph:TREE, or
        /// fallback (with --graph)
        #[arg(long)]
        family: String,
        /// Graph file for the fallback family
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Input(String),
    Redundant(String),
    Budget,
    Mismatch,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch => 1,
            CliError::Input(_) => 2,
            CliError::Redundant(_) => 3,
            CliError::Budget => 4,
        }
    }

    fn report(&self) {
        match self {
            CliError::Input(msg) => eprintln!("error: {msg}"),
            CliError::Redundant(msg) => eprintln!("error: {msg}"),
            CliError::Budget => eprintln!("error: time budget exceeded"),
            CliError::Mismatch => {}
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::RedundantEdgeAdd { .. } => CliError::Redundant(e.to_string()),
            EngineError::BudgetExceeded => CliError::Budget,
            other => CliError::Input(other.to_string()),
        }
    }
}

fn input_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Check(args) => cmd_check(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Expr { command } => cmd_expr(command),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            e.report();
            ExitCode::from(e.exit_code())
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_payload(out: &Option<PathBuf>, payload: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, payload)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<KGraph, CliError> {
    KGraph::parse(&read_file(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn family_term(spec: &str) -> Result<CwTerm, CliError> {
    if spec == "fallback" || spec.starts_with("fallback:") {
        return Err(CliError::Input(
            "family fallback needs a graph: use --graph, or `expr build --family fallback --graph FILE`".into(),
        ));
    }
    build_family(spec).map_err(input_err)
}

fn load_source(source: &Source) -> Result<CwTerm, CliError> {
    if let Some(path) = &source.term {
        parse_term(&read_file(path)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    } else if let Some(spec) = &source.family {
        family_term(spec)
    } else if let Some(path) = &source.graph {
        build_fallback(&load_graph(path)?).map_err(input_err)
    } else {
        unreachable!("clap enforces the source group")
    }
}

fn run_options(budget_secs: u64) -> Result<RunOptions, CliError> {
    if budget_secs == 0 {
        return Err(CliError::Input("--budget-secs must be positive".into()));
    }
    Ok(RunOptions {
        collect_trace: false,
        deadline: Some(Instant::now() + Duration::from_secs(budget_secs)),
    })
}

fn render_poly(p: &Poly, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", p.to_json_string()),
        Format::Text => format!("{}\n", p.to_text()),
    }
}

fn print_run_diagnostics(output: &RunOutput, elapsed: Duration) {
    let s = &output.stats;
    eprintln!(
        "width: {}  vertices: {}  edges: {}",
        s.width, s.vertices, s.edges
    );
    eprintln!(
        "nodes: {}  peak cells: {}  max coeff bits: {}  elapsed: {:.3}s",
        s.nodes,
        s.peak_cells,
        s.max_coeff_bits,
        elapsed.as_secs_f64()
    );
}

fn cmd_compute(args: ComputeArgs) -> Result<(), CliError> {
    let term = load_source(&args.source)?;
    let mut opts = run_options(args.budget_secs)?;
    opts.collect_trace = args.trace.is_some();
    let started = Instant::now();
    let (specialized, output) = run_preset(&term, args.poly, args.engine, &opts)?;
    print_run_diagnostics(&output, started.elapsed());
    if let Some(path) = &args.trace {
        let mut text = String::new();
        for row in &output.trace {
            let line = serde_json::to_string(row).expect("trace rows serialize");
            let _ = writeln!(text, "{line}");
        }
        fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    write_payload(&args.out, &render_poly(&specialized, args.format))
}

fn cmd_oracle(args: OracleArgs) -> Result<(), CliError> {
    let g = load_graph(&args.graph)?;
    let result = brute_force(&g, args.poly.theta(), args.oracle_max_n).map_err(input_err)?;
    let specialized = preset(&result.poly, args.poly).map_err(input_err)?;
    eprintln!(
        "vertices: {}  edges: {}  satisfying subsets: {}",
        g.n(),
        g.edge_count(),
        result.satisfying_count
    );
    write_payload(&args.out, &render_poly(&specialized, args.format))
}

/// Lines describing how two polynomials differ, empty when equal.
fn poly_diff(engine: &Poly, oracle: &Poly) -> Vec<String> {
    let mut lines = Vec::new();
    if engine.vars() != oracle.vars() {
        lines.push(format!(
            "variable lists differ: engine={:?} oracle={:?}",
            engine.vars(),
            oracle.vars()
        ));
        return lines;
    }
    let mut exps: Vec<Vec<u64>> = engine.terms().map(|(e, _)| e.clone()).collect();
    exps.extend(oracle.terms().map(|(e, _)| e.clone()));
    exps.sort();
    exps.dedup();
    for exp in exps {
        let ce = engine.coeff(&exp);
        let co = oracle.coeff(&exp);
        if ce != co {
            lines.push(format!("exp {exp:?}: engine={ce} oracle={co}"));
        }
    }
    lines
}

fn cmd_check(args: CheckArgs) -> Result<(), CliError> {
    let term = load_source(&args.source)?;
    let g = term.evaluate().map_err(input_err)?;
    if g.n() > args.oracle_max_n {
        return Err(CliError::Input(format!(
            "graph has {} vertices, oracle bound is {} (raise --oracle-max-n)",
            g.n(),
            args.oracle_max_n
        )));
    }
    let thetas: Vec<Theta> = match args.poly {
        Some(p) => vec![p.theta()],
        None => vec![Theta::True, Theta::Independent, Theta::Dominating],
    };
    let variants: Vec<Variant> = match args.engine {
        Some(v) => vec![v],
        None => vec![Variant::Aggregated, Variant::Reference],
    };
    let opts = run_options(args.budget_secs)?;
    let mut mismatched = false;
    for &theta in &thetas {
        let oracle = brute_force(&g, theta, args.oracle_max_n).map_err(input_err)?;
        for &variant in &variants {
            let out = run_theta(&term, theta, variant, &opts)?;
            let mut engine_poly = out.poly;
            if args.corrupt_for_tests {
                engine_poly.add_term(vec![0; 5], 1.into());
            }
            let diff = poly_diff(&engine_poly, &oracle.poly);
            if diff.is_empty() {
                eprintln!("ok: theta={theta:?} engine={variant}");
            } else {
                mismatched = true;
                println!("MISMATCH theta={theta:?} engine={variant}");
                for line in diff {
                    println!("  {line}");
                }
            }
        }
    }
    if mismatched {
        return Err(CliError::Mismatch);
    }
    Ok(())
}

fn bench_term(family: &str, n: usize) -> Result<CwTerm, CliError> {
    match family {
        "clique" => Ok(build_clique(n)),
        "path" => Ok(build_path(n)),
        "cycle" => build_cycle(n).map_err(input_err),
        "biclique" => Ok(build_biclique(n, n)),
        "fallback" => {
            let edges: Vec<(u64, u64)> = (1..=n as u64)
                .flat_map(|u| ((u + 1)..=n as u64).map(move |v| (u, v)))
                .collect();
            let g = KGraph::unlabeled(n, &edges).map_err(input_err)?;
            build_fallback(&g).map_err(input_err)
        }
        other => Err(CliError::Input(format!("unknown bench family `{other}`"))),
    }
}

/// One CSV row; `outcome` is `Ok((peak_cells, max_coeff_bits))` for a
/// completed run and `Err(())` when the budget ran out.
fn bench_row(
    family: &str,
    n: usize,
    k: u32,
    engine: Variant,
    secs: f64,
    outcome: Result<(usize, u64), ()>,
) -> String {
    match outcome {
        Ok((cells, bits)) => {
            format!("{family},{n},{k},{engine},{secs:.6},{cells},{bits},ok\n")
        }
        Err(()) => format!("{family},{n},{k},{engine},{secs:.6},0,0,budget_exceeded\n"),
    }
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    if args.step == 0 {
        return Err(CliError::Input("--step must be positive".into()));
    }
    if args.budget_secs == 0 {
        return Err(CliError::Input("--budget-secs must be positive".into()));
    }
    let mut csv =
        String::from("family,n,k,engine,wall_time_secs,peak_cells,max_coeff_bits,status\n");
    let mut points: Vec<(f64, f64)> = Vec::new();
    let mut n = args.min;
    while n <= args.max {
        let term = bench_term(&args.family, n)?;
        let opts = RunOptions {
            collect_trace: false,
            deadline: Some(Instant::now() + Duration::from_secs(args.budget_secs)),
        };
        let started = Instant::now();
        match run_preset(&term, args.poly, args.engine, &opts) {
            Ok((_, output)) => {
                let secs = started.elapsed().as_secs_f64();
                csv.push_str(&bench_row(
                    &args.family,
                    n,
                    term.width(),
                    args.engine,
                    secs,
                    Ok((output.stats.peak_cells, output.stats.max_coeff_bits)),
                ));
                points.push((n as f64, secs));
            }
            Err(EngineError::BudgetExceeded) => {
                csv.push_str(&bench_row(
                    &args.family,
                    n,
                    term.width(),
                    args.engine,
                    started.elapsed().as_secs_f64(),
                    Err(()),
                ));
            }
            Err(other) => return Err(other.into()),
        }
        n += args.step;
    }
    match loglog_slope(&points) {
        Some(slope) => eprintln!("loglog-slope: {slope:.3}"),
        None => eprintln!("loglog-slope: n/a (fewer than two completed rows)"),
    }
    write_payload(&args.out, &csv)
}

fn cmd_expr(command: ExprCommand) -> Result<(), CliError> {
    match command {
        ExprCommand::Parse { term } => {
            let parsed = parse_term(&read_file(&term)?)
                .map_err(|e| CliError::Input(format!("{}: {e}", term.display())))?;
            println!("{}", parsed.render());
            Ok(())
        }
        ExprCommand::Validate { term, format } => {
            let parsed = parse_term(&read_file(&term)?)
                .map_err(|e| CliError::Input(format!("{}: {e}", term.display())))?;
            let report = parsed.validate().map_err(input_err)?;
            match format {
                Format::Json => {
                    let sites: Vec<serde_json::Value> = report
                        .redundant_sites
                        .iter()
                        .map(|s| serde_json::json!({"line": s.line, "col": s.col}))
                        .collect();
                    let payload = serde_json::json!({
                        "width": report.width,
                        "irredundant": report.irredundant,
                        "vertex_count": report.vertex_count,
                        "edge_count": report.edge_count,
                        "redundant_sites": sites,
                    });
                    println!("{payload}");
                }
                Format::Text => {
                    println!(
                        "width: {}\nirredundant: {}\nvertices: {}\nedges: {}",
                        report.width, report.irredundant, report.vertex_count, report.edge_count
                    );
                    for s in &report.redundant_sites {
                        println!("redundant edge creation at {s}");
                    }
                }
            }
            Ok(())
        }
        ExprCommand::Build { family, graph, out } => {
            let term = if family == "fallback" || family.starts_with("fallback:") {
                let path = graph
                    .ok_or_else(|| CliError::Input("fallback family needs --graph FILE".into()))?;
                build_fallback(&load_graph(&path)?).map_err(input_err)?
            } else {
                family_term(&family)?
            };
            write_payload(&out, &format!("{}\n", term.render()))
        }
    }
}
