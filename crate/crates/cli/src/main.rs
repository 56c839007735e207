use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qneuron_cli::config::parse_m_list;
use qneuron_cli::{
    cmd_estimate, cmd_gen_data, cmd_growth, cmd_reproduce, cmd_search, cmd_shapes, parse_angle, CliResult,
    RunConfig,
};

/// Quantum neuron simulator: datasets, grid searches, shape studies,
/// circuit growth and shot-based estimates.
#[derive(Parser, Debug)]
#[command(name = "qneuron", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Flat key = value config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// diagonal, circles or square.
    #[arg(long, global = true)]
    dataset: Option<String>,
    /// center, corner, inner, outer, xor or nxor.
    #[arg(long, global = true)]
    target: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Square-blob spread.
    #[arg(long, global = true)]
    std: Option<f64>,
    #[arg(long, global = true)]
    n_per_blob: Option<usize>,
    /// Circle noise.
    #[arg(long, global = true)]
    noise: Option<f64>,
    /// Dataset CSV (x0,x1,label) used instead of a generated one.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// bvqn, cvqn, cdqn or pcdqn.
    #[arg(long, global = true)]
    neuron: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    tau: Option<String>,
    /// Radians; forms like 3pi/4 are accepted.
    #[arg(long, global = true, allow_hyphen_values = true)]
    delta: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    phi0: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    phi1: Option<String>,
    /// Grid points per weight axis.
    #[arg(long, global = true)]
    resolution: Option<usize>,
    /// manhattan, euclidean, linear, polynomial, rbf or sigmoid.
    #[arg(long, global = true)]
    metric: Option<String>,
    /// Comma-separated input sizes, e.g. 2,4,8.
    #[arg(long, global = true)]
    m: Option<String>,
    #[arg(long, global = true)]
    shots: Option<u64>,
    #[arg(long, global = true)]
    shot_seed: Option<u64>,
    /// Output directory (default: $QNEURON_OUT_DIR or ./out).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Write a scaled, target-labeled dataset CSV.
    GenData,
    /// Grid-search weights (and PCDQN parameters) maximizing AUC.
    Search,
    /// Activation against each of 100 inputs with a classical metric.
    Shapes,
    /// Circuit depth and size as the input size grows.
    Growth,
    /// Shot-based activation estimates over a dataset.
    Estimate,
    /// Run every experiment into the output directory.
    Reproduce,
}

fn build_config(cli: &Cli) -> CliResult<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(p) = &cli.config {
        cfg.apply_file(p)?;
    }
    let strings = [
        ("dataset", &cli.dataset),
        ("target", &cli.target),
        ("neuron", &cli.neuron),
        ("metric", &cli.metric),
    ];
    for (k, v) in strings {
        if let Some(v) = v {
            cfg.set(k, v)?;
        }
    }
    if let Some(v) = cli.seed { cfg.seed = v; }
    if let Some(v) = cli.std { cfg.std = v; }
    if let Some(v) = cli.n_per_blob { cfg.n_per_blob = v; }
    if let Some(v) = cli.noise { cfg.noise = v; }
    if let Some(v) = &cli.input { cfg.input = Some(v.clone()); }
    if let Some(v) = &cli.tau { cfg.tau = Some(parse_angle(v)?); }
    if let Some(v) = &cli.delta { cfg.delta = Some(parse_angle(v)?); }
    if let Some(v) = &cli.phi0 { cfg.phi0 = Some(parse_angle(v)?); }
    if let Some(v) = &cli.phi1 { cfg.phi1 = Some(parse_angle(v)?); }
    if let Some(v) = cli.resolution { cfg.resolution = v; }
    if let Some(v) = &cli.m { cfg.m_values = parse_m_list(v)?; }
    if let Some(v) = cli.shots { cfg.shots = v; }
    if let Some(v) = cli.shot_seed { cfg.shot_seed = v; }
    if let Some(v) = &cli.out { cfg.out_dir = v.clone(); }
    Ok(cfg)
}

fn run(cli: &Cli) -> CliResult<()> {
    let cfg = build_config(cli)?;
    match cli.command {
        Command::GenData => cmd_gen_data(&cfg).map(drop),
        Command::Search => cmd_search(&cfg).map(drop),
        Command::Shapes => cmd_shapes(&cfg).map(drop),
        Command::Growth => cmd_growth(&cfg).map(drop),
        Command::Estimate => cmd_estimate(&cfg).map(drop),
        Command::Reproduce => cmd_reproduce(&cfg).map(drop),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qneuron: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
