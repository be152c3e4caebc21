//! `rtp`: decide and benchmark short δ-restless temporal paths.
//!
//! Exit status: 0 for yes / valid, 1 for no / invalid, 2 for any error.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use restless::areas::{area_graph, AreaSpec};
use restless::bench::{dense_probe_graph, probe_sweep, run_sweep, Budget, SweepSpec};
use restless::distances::{compute_distances, Distance};
use restless::generate::{random_temporal_graph, GenParams};
use restless::path_finder::{Backend, FinderConfig};
use restless::solver::{solve, SolveResult, SolveStats, SolverConfig};
use restless::temporal_graph::{validate_restless_path, TemporalGraph, Time, TimeEdge, Vertex, VertexAppearance};

#[derive(Parser)]
#[command(name = "rtp", version, about = "Short delta-restless temporal s-z paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a restless s-z path of length at most k exists.
    Solve(SolveArgs),
    /// Print the temporal distance d(v,t) to a target for every appearance.
    Distances(DistancesArgs),
    /// Check a candidate path given as "u v t" lines.
    Validate(ValidateArgs),
    /// Emit a seeded random temporal graph in TEL.
    Gen(GenArgs),
    /// Run a benchmark sweep and print CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Input {
    /// TEL file; reads stdin when absent or "-".
    input: Option<PathBuf>,
}

impl Input {
    fn load(&self) -> Result<TemporalGraph> {
        let bytes = match &self.input {
            Some(path) if path.as_os_str() != "-" => {
                std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?
            }
            _ => {
                let mut buf = Vec::new();
                io::stdin().read_to_end(&mut buf).context("cannot read stdin")?;
                buf
            }
        };
        let name = self.input.as_ref().map_or_else(|| "<stdin>".to_owned(), |p| p.display().to_string());
        TemporalGraph::parse_tel(&bytes).with_context(|| format!("invalid TEL in {name}"))
    }
}

#[derive(Args)]
struct FinderArgs {
    #[arg(long, default_value = "auto")]
    backend: Backend,
    /// Overall one-sided error probability.
    #[arg(long, default_value_t = 0.01)]
    error_prob: f64,
    /// Root seed, decimal or 0x-prefixed hex.
    #[arg(long, default_value = "0", value_parser = parse_seed)]
    seed: u64,
    /// Probe lengths below this use exhaustive search under --backend auto.
    #[arg(long, default_value_t = FinderConfig::default().auto_threshold)]
    auto_threshold: usize,
}

impl FinderArgs {
    fn solver_config(&self, time_window: bool) -> Result<SolverConfig> {
        Ok(SolverConfig {
            finder: FinderConfig {
                backend: self.backend,
                seed: self.seed,
                auto_threshold: self.auto_threshold,
                ..FinderConfig::default()
            },
            error_prob: self.error_prob,
            time_window,
            threads: threads_from_env()?,
        })
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: Input,
    /// Source vertex, alias or id.
    #[arg(long)]
    source: String,
    /// Target vertex, alias or id.
    #[arg(long)]
    target: String,
    /// Maximum waiting time between consecutive time-edges.
    #[arg(long)]
    delta: Time,
    /// Maximum path length.
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    finder: FinderArgs,
    /// Try every departure time on a window of the time-edges.
    #[arg(long)]
    time_window: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the area graph "b@t" (below b at t) or "a@t..b@t" to stderr as TEL.
    #[arg(long, value_name = "AREA")]
    dump_area: Option<String>,
}

#[derive(Args)]
struct DistancesArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    target: String,
    /// Also report d(s,1) for this vertex.
    #[arg(long)]
    source: Option<String>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    input: Input,
    /// File with one "u v t" step per line, in traversal order.
    #[arg(long)]
    path: PathBuf,
    #[arg(long)]
    source: String,
    #[arg(long)]
    target: String,
    #[arg(long)]
    delta: Time,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    vertices: usize,
    #[arg(long)]
    lifetime: usize,
    /// Expected number of edges per layer.
    #[arg(long)]
    edges_per_layer: f64,
    #[arg(long, default_value = "0", value_parser = parse_seed)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', default_value = "10")]
    vertices: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "6")]
    lifetime: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    delta: Vec<Time>,
    /// Length budgets; conflicts with --ell.
    #[arg(long, value_delimiter = ',', conflicts_with = "ell")]
    k: Vec<usize>,
    /// Budgets above the temporal distance: k = d(s,1) + ell.
    #[arg(long, value_delimiter = ',')]
    ell: Vec<usize>,
    #[arg(long, default_value_t = 3.0)]
    edges_per_layer: f64,
    #[arg(long, default_value_t = 1)]
    repetitions: usize,
    #[command(flatten)]
    finder: FinderArgs,
    /// Sieve probe sweep over the --ell list on complete layers, sized by the
    /// first value of each sweep list.
    #[arg(long)]
    probe: bool,
}

fn parse_seed(text: &str) -> Result<u64, String> {
    let parsed = match text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => text.parse(),
    };
    parsed.map_err(|e| format!("expected a 64-bit unsigned decimal or 0x-prefixed hex seed: {e}"))
}

fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var("RTP_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => bail!("RTP_THREADS must be a positive integer, got {v:?}"),
        },
        Err(_) => Ok(None),
    }
}

fn vertex(g: &TemporalGraph, name: &str, role: &str) -> Result<Vertex> {
    g.resolve_vertex(name)
        .ok_or_else(|| anyhow!("unknown {role} vertex {name:?}: use an alias from the TEL header or an id below {}", g.vertex_count()))
}

fn appearance(g: &TemporalGraph, text: &str) -> Result<VertexAppearance> {
    let (v, t) = text.split_once('@').ok_or_else(|| anyhow!("expected VERTEX@TIME, got {text:?}"))?;
    let t = t.parse().with_context(|| format!("bad time in {text:?}"))?;
    Ok(VertexAppearance::new(vertex(g, v, "area")?, t))
}

#[derive(Serialize)]
struct Step {
    u: Vertex,
    v: Vertex,
    t: Time,
    #[serde(skip_serializing_if = "Option::is_none")]
    u_alias: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    v_alias: Option<String>,
}

fn steps_json(g: &TemporalGraph, steps: &[TimeEdge]) -> Vec<Step> {
    steps
        .iter()
        .map(|e| Step {
            u: e.u,
            v: e.v,
            t: e.t,
            u_alias: g.alias(e.u).map(str::to_owned),
            v_alias: g.alias(e.v).map(str::to_owned),
        })
        .collect()
}

#[derive(Serialize)]
struct SolveOutput {
    decision: bool,
    witness: Option<Vec<Step>>,
    k: usize,
    k_requested: usize,
    temporal_distance: Distance,
    ell: Option<usize>,
    backend: Backend,
    error_prob: f64,
    finder_error_prob: Option<f64>,
    stats: SolveStats,
}

fn print_json(value: &impl Serialize) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_solve(args: &SolveArgs) -> Result<ExitCode> {
    let g = args.input.load()?;
    let s = vertex(&g, &args.source, "source")?;
    let z = vertex(&g, &args.target, "target")?;
    let cfg = args.finder.solver_config(args.time_window)?;

    if let Some(area) = &args.dump_area {
        dump_area(&g, z, args.delta, area)?;
    }

    let r: SolveResult = solve(&g, s, z, args.delta, args.k, &cfg)?;
    match args.format {
        Format::Json => print_json(&SolveOutput {
            decision: r.decision,
            witness: r.witness.as_ref().map(|w| steps_json(&g, w.steps())),
            k: r.params.k,
            k_requested: r.params.k_requested,
            temporal_distance: r.params.temporal_distance,
            ell: r.params.ell,
            backend: cfg.finder.backend,
            error_prob: r.params.error_prob,
            finder_error_prob: r.params.finder_error_prob,
            stats: r.stats,
        })?,
        Format::Text => {
            let mut out = io::stdout().lock();
            writeln!(out, "{}", if r.decision { "yes" } else { "no" })?;
            writeln!(out, "d(s,1) = {}, k = {}", r.params.temporal_distance, r.params.k)?;
            if let Some(w) = &r.witness {
                for e in w.steps() {
                    writeln!(out, "{} {} {}", g.display_vertex(e.u), g.display_vertex(e.v), e.t)?;
                }
            }
        }
    }
    Ok(if r.decision { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn dump_area(g: &TemporalGraph, z: Vertex, delta: Time, text: &str) -> Result<()> {
    let dt = compute_distances(g, z);
    let spec = match text.split_once("..") {
        Some((lower, upper)) => AreaSpec::between(&dt, appearance(g, lower)?, appearance(g, upper)?, delta),
        None => AreaSpec::source(&dt, appearance(g, text)?, delta),
    }
    .with_context(|| format!("cannot build area {text:?}"))?;
    let area = area_graph(g, &dt, &spec);
    eprint!("{}", area.to_parent_graph(g).to_tel());
    Ok(())
}

#[derive(Serialize)]
struct DistanceEntry {
    v: Vertex,
    t: Time,
    d: Distance,
    #[serde(skip_serializing_if = "Option::is_none")]
    alias: Option<String>,
}

#[derive(Serialize)]
struct DistancesOutput {
    target: Vertex,
    #[serde(skip_serializing_if = "Option::is_none")]
    source: Option<Vertex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    source_distance: Option<Distance>,
    entries: Vec<DistanceEntry>,
}

fn cmd_distances(args: &DistancesArgs) -> Result<ExitCode> {
    let g = args.input.load()?;
    let z = vertex(&g, &args.target, "target")?;
    let s = args.source.as_deref().map(|name| vertex(&g, name, "source")).transpose()?;
    let dt = compute_distances(&g, z);
    print_json(&DistancesOutput {
        target: z,
        source: s,
        source_distance: s.map(|s| dt.source_distance(s)),
        entries: dt
            .entries()
            .map(|(a, d)| DistanceEntry { v: a.v, t: a.t, d, alias: g.alias(a.v).map(str::to_owned) })
            .collect(),
    })?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ValidateOutput {
    valid: bool,
    length: usize,
    error: Option<String>,
}

fn read_steps(g: &TemporalGraph, path: &PathBuf) -> Result<Vec<TimeEdge>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut steps = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [u, v, t] = fields[..] else {
            bail!("{}:{}: expected \"u v t\"", path.display(), i + 1);
        };
        let t = t.parse().with_context(|| format!("{}:{}: bad time {t:?}", path.display(), i + 1))?;
        steps.push(TimeEdge::new(vertex(g, u, "path")?, vertex(g, v, "path")?, t));
    }
    Ok(steps)
}

fn cmd_validate(args: &ValidateArgs) -> Result<ExitCode> {
    let g = args.input.load()?;
    let s = vertex(&g, &args.source, "source")?;
    let z = vertex(&g, &args.target, "target")?;
    let steps = read_steps(&g, &args.path)?;
    let verdict = validate_restless_path(&g, &steps, s, z, args.delta);
    print_json(&ValidateOutput { valid: verdict.is_ok(), length: steps.len(), error: verdict.as_ref().err().map(|e| e.to_string()) })?;
    Ok(if verdict.is_ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_gen(args: &GenArgs) -> Result<ExitCode> {
    let params = GenParams { vertices: args.vertices, lifetime: args.lifetime, edges_per_layer: args.edges_per_layer };
    let g = random_temporal_graph(&params, args.seed)?;
    io::stdout().lock().write_all(g.to_tel().as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(args: &BenchArgs) -> Result<ExitCode> {
    let cfg = args.finder.solver_config(false)?;
    cfg.finder.validate()?;
    let mut out = csv::Writer::from_writer(io::stdout().lock());
    if args.probe {
        if args.ell.is_empty() {
            bail!("--probe needs an --ell list");
        }
        let n = args.vertices[0];
        if n < 2 {
            bail!("--probe needs at least 2 vertices");
        }
        let g = dense_probe_graph(n, args.lifetime[0]);
        for row in probe_sweep(&g, 0, n - 1, args.delta[0], &args.ell, &cfg.finder) {
            out.serialize(row)?;
        }
    } else {
        let budgets: Vec<Budget> = if args.ell.is_empty() {
            let ks = if args.k.is_empty() { vec![4] } else { args.k.clone() };
            ks.into_iter().map(Budget::K).collect()
        } else {
            args.ell.iter().copied().map(Budget::Ell).collect()
        };
        let spec = SweepSpec {
            vertices: args.vertices.clone(),
            lifetimes: args.lifetime.clone(),
            deltas: args.delta.clone(),
            budgets,
            edges_per_layer: args.edges_per_layer,
            repetitions: args.repetitions,
            seed: args.finder.seed,
            solver: cfg,
        };
        for row in run_sweep(&spec)? {
            out.serialize(row)?;
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Distances(args) => cmd_distances(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Bench(args) => cmd_bench(args),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
