//! Command implementations behind the `qneuron` binary.
//!
//! Every command is a deterministic function of its [`RunConfig`]. Files are
//! written under `out_dir`; a short human summary goes to stdout.

pub mod config;

use std::f64::consts::PI;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use qneuron_core::analysis::{
    circuit_growth, estimate_aucs, estimate_dataset, grid_search, shape_study, GrowthRow, MetricKind,
    SearchReport, SearchResult,
};
use qneuron_core::analysis::{estimate, growth, shapes};
use qneuron_core::datasets::{fmt_float, PROBLEMS};
use qneuron_core::{LabeledDataset, Neuron, NeuronKind, NeuronModel, PcdqnParams, Target};

pub use config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("io error: {0}")]
    Io(String),
    #[error("degenerate data: {0}")]
    Degenerate(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 2,
            CliError::Degenerate(_) => 3,
            CliError::Invalid(_) => 4,
        }
    }
}

impl From<qneuron_core::Error> for CliError {
    fn from(e: qneuron_core::Error) -> Self {
        use qneuron_core::Error as E;
        match e {
            E::Io(_) => CliError::Io(e.to_string()),
            E::DegenerateInput(_) => CliError::Degenerate(e.to_string()),
            E::InvalidArgument(_) | E::Format(_) => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Accepts plain numbers and multiples of pi such as `pi`, `3pi/4`, `-pi/2`.
pub fn parse_angle(s: &str) -> CliResult<f64> {
    let t = s.trim().to_ascii_lowercase();
    let bad = || CliError::Invalid(format!("bad angle '{s}'"));
    let Some((coef, rest)) = t.split_once("pi") else {
        return t.parse().map_err(|_| bad());
    };
    let coef = match coef.trim_end_matches('*') {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let div = match rest {
        "" => 1.0,
        r => r.strip_prefix('/').ok_or_else(bad)?.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(coef * PI / div)
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> CliResult<()>) -> CliResult<()> {
    let mut w = create(path)?;
    f(&mut w)?;
    w.flush().map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn params_of(cfg: &RunConfig) -> CliResult<Option<PcdqnParams<f64>>> {
    match (cfg.neuron, cfg.tau, cfg.delta) {
        (NeuronKind::Pcdqn, tau, delta) => {
            Ok(Some(PcdqnParams::new(tau.unwrap_or(1.0), delta.unwrap_or(0.0))?))
        }
        (_, None, None) => Ok(None),
        (k, _, _) => Err(CliError::Invalid(format!("tau/delta only apply to pcdqn, not {k}"))),
    }
}

/// The scaled dataset selected by the config: read from `input`, or generated
/// and labeled for the configured target.
pub fn load_dataset(cfg: &RunConfig) -> CliResult<LabeledDataset<f64>> {
    match &cfg.input {
        Some(path) => {
            let f = File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let d = LabeledDataset::<f64>::read_csv(std::io::BufReader::new(f))?;
            Ok(if d.is_scaled() { d } else { d.minmax_scale()? })
        }
        None => Ok(cfg.dataset_spec().problem(cfg.target())?),
    }
}

fn dataset_label(cfg: &RunConfig) -> (String, String) {
    match &cfg.input {
        Some(p) => (
            p.file_stem().map_or_else(|| "input".into(), |s| s.to_string_lossy().into_owned()),
            "input".into(),
        ),
        None => (cfg.dataset.name().into(), cfg.target().name().into()),
    }
}

fn check_target(cfg: &RunConfig) -> CliResult<()> {
    if cfg.input.is_none() && cfg.target().dataset() != cfg.dataset {
        return Err(CliError::Invalid(format!(
            "target {} does not belong to dataset {}",
            cfg.target().name(),
            cfg.dataset.name()
        )));
    }
    Ok(())
}

pub fn cmd_gen_data(cfg: &RunConfig) -> CliResult<PathBuf> {
    check_target(cfg)?;
    let d = cfg.dataset_spec().problem::<f64>(cfg.target())?;
    let path = cfg
        .out_dir
        .join(format!("{}_{}_seed{}.csv", cfg.dataset.name(), cfg.target().name(), cfg.seed));
    write_file(&path, |w| Ok(d.write_csv(w)?))?;
    println!("{}: {} samples ({} positive, {} negative)", path.display(), d.len(), d.positives(), d.negatives());
    Ok(path)
}

fn search_one(cfg: &RunConfig, dataset: &LabeledDataset<f64>) -> CliResult<SearchResult<f64>> {
    Ok(grid_search(cfg.neuron, dataset, cfg.resolution)?)
}

/// PCDQN searches always cover the full parameter grid, so tau and delta only
/// serve to reject misuse here.
pub fn cmd_search(cfg: &RunConfig) -> CliResult<SearchReport> {
    check_target(cfg)?;
    params_of(cfg)?;
    let d = load_dataset(cfg)?;
    let r = search_one(cfg, &d)?;
    let (ds, tg) = dataset_label(cfg);
    let report = SearchReport::from_result(&ds, &tg, &r);
    let path = cfg.out_dir.join(format!("search_{ds}_{tg}_{}.json", cfg.neuron.name()));
    write_json(&path, &report)?;
    println!("{}: auc {}", path.display(), report.auc);
    Ok(report)
}

fn write_json(path: &Path, report: &SearchReport) -> CliResult<()> {
    write_file(path, |w| {
        serde_json::to_writer_pretty(&mut *w, report).map_err(|e| CliError::Io(e.to_string()))?;
        writeln!(w)?;
        Ok(())
    })
}

fn shape_file(neuron: &Neuron<f64>, metric: MetricKind) -> String {
    match neuron.params() {
        Some(p) => format!("shapes_pcdqn_tau{}_delta{}_{}.csv", p.tau, p.delta, metric.name()),
        None => format!("shapes_{}_{}.csv", neuron.kind().name(), metric.name()),
    }
}

pub fn cmd_shapes(cfg: &RunConfig) -> CliResult<PathBuf> {
    if cfg.neuron == NeuronKind::Bvqn {
        return Err(CliError::Invalid("shape studies need a continuous-valued neuron".into()));
    }
    let neuron = Neuron::from_kind(cfg.neuron, params_of(cfg)?);
    let path = cfg.out_dir.join(shape_file(&neuron, cfg.metric));
    write_shapes(&path, &neuron, cfg.metric)?;
    println!("{}: 100 points", path.display());
    Ok(path)
}

fn write_shapes(path: &Path, neuron: &Neuron<f64>, metric: MetricKind) -> CliResult<()> {
    let pts = shape_study(neuron, metric)?;
    write_file(path, |w| Ok(shapes::write_shape_csv(w, metric, &pts)?))
}

/// Growth rows for CVQN, CDQN and the expanded PCDQN. The CVQN needs a
/// power-of-two arity, so other values of m are skipped for it.
pub fn growth_rows(m_values: &[usize]) -> CliResult<Vec<GrowthRow>> {
    let pow2: Vec<usize> = m_values.iter().copied().filter(|m| *m >= 2 && m.is_power_of_two()).collect();
    let mut rows = circuit_growth::<f64, _>(&Neuron::Cvqn { pruned: false }, &pow2)?;
    rows.extend(circuit_growth::<f64, _>(&Neuron::Cdqn, m_values)?);
    let pc = Neuron::Pcdqn { params: PcdqnParams::new(2.0, PI / 4.0)?, fused: false };
    rows.extend(circuit_growth::<f64, _>(&pc, m_values)?);
    Ok(rows)
}

pub fn cmd_growth(cfg: &RunConfig) -> CliResult<PathBuf> {
    let rows = growth_rows(&cfg.m_values)?;
    let path = cfg.out_dir.join("growth.csv");
    write_file(&path, |w| Ok(growth::write_growth_csv(w, &rows)?))?;
    println!("{}: {} rows", path.display(), rows.len());
    Ok(path)
}

/// Weights and model for `estimate`: fixed when phi0 and phi1 are given,
/// otherwise the best configuration found by a grid search.
fn estimate_setup(cfg: &RunConfig, d: &LabeledDataset<f64>) -> CliResult<(Neuron<f64>, Vec<f64>)> {
    match (cfg.phi0, cfg.phi1) {
        (Some(a), Some(b)) => Ok((Neuron::from_kind(cfg.neuron, params_of(cfg)?), vec![a, b])),
        (None, None) => {
            let r = search_one(cfg, d)?;
            Ok((r.model(), r.best_weights.into_inner()))
        }
        _ => Err(CliError::Invalid("give both phi0 and phi1, or neither".into())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateSummary {
    pub auc_closed: f64,
    pub auc_shots: f64,
}

pub fn cmd_estimate(cfg: &RunConfig) -> CliResult<EstimateSummary> {
    check_target(cfg)?;
    if cfg.neuron == NeuronKind::Bvqn {
        return Err(CliError::Invalid("the bvqn takes binary inputs; estimate a continuous neuron".into()));
    }
    let d = load_dataset(cfg)?;
    let (neuron, weights) = estimate_setup(cfg, &d)?;
    let (ds, tg) = dataset_label(cfg);
    let path = cfg.out_dir.join(format!("estimate_{ds}_{tg}_{}.csv", cfg.neuron.name()));
    let s = write_estimate(&path, &neuron, &d, &weights, cfg.shots, cfg.shot_seed)?;
    println!("{}: closed-form auc {}, shot auc {}", path.display(), s.auc_closed, s.auc_shots);
    Ok(s)
}

fn write_estimate(
    path: &Path,
    neuron: &Neuron<f64>,
    d: &LabeledDataset<f64>,
    weights: &[f64],
    shots: u64,
    seed: u64,
) -> CliResult<EstimateSummary> {
    let rows = estimate_dataset(neuron, d, weights, shots, seed)?;
    write_file(path, |w| Ok(estimate::write_estimate_csv(w, &rows)?))?;
    let (auc_closed, auc_shots) = estimate_aucs(&rows)?;
    Ok(EstimateSummary { auc_closed, auc_shots })
}

/// Parameter pairs (tau, delta in quarter turns) used for the PCDQN shape files.
pub const SHAPE_PARAMS: [(f64, u32); 6] = [(0.25, 2), (0.5, 1), (1.0, 1), (1.0, 6), (2.0, 5), (4.0, 0)];

/// The three searched neurons, in summary column order.
pub const SEARCHED: [NeuronKind; 3] = [NeuronKind::Cvqn, NeuronKind::Cdqn, NeuronKind::Pcdqn];

/// Problems that get shot-based validation.
pub const SHOT_PROBLEMS: [Target; 2] = [Target::Center, Target::Inner];

/// Output of a full reproduction.
#[derive(Debug, Clone, PartialEq)]
pub struct Reproduction {
    /// One entry per problem, in `PROBLEMS` order, each with the CVQN, CDQN
    /// and PCDQN results.
    pub searches: Vec<(Target, [SearchResult<f64>; 3])>,
    pub shots: Vec<(Target, NeuronKind, EstimateSummary)>,
}

/// Runs every experiment and writes:
///
/// ```text
/// datasets/<dataset>_<target>.csv
/// search/<dataset>_<target>_<neuron>.json
/// summary.csv          dataset,target,cvqn,cdqn,pcdqn
/// best_params.csv      dataset,target,neuron,tau,delta,phi0,phi1,auc
/// shapes/<neuron>_<metric>.csv, shapes/pcdqn_tau<t>_delta<k>pi4_euclidean.csv
/// growth.csv
/// estimates/<dataset>_<target>_<neuron>.csv
/// shots.csv            dataset,target,neuron,auc_closed,auc_shots,difference
/// ```
///
/// Files already written stay in place if a later step fails.
pub fn cmd_reproduce(cfg: &RunConfig) -> CliResult<Reproduction> {
    let out = &cfg.out_dir;
    let mut searches = Vec::new();
    for target in PROBLEMS {
        let spec = { let mut c = cfg.clone(); c.dataset = target.dataset(); c.dataset_spec() };
        let d = spec.problem::<f64>(target)?;
        let stem = format!("{}_{}", target.dataset().name(), target.name());
        write_file(&out.join("datasets").join(format!("{stem}.csv")), |w| Ok(d.write_csv(w)?))?;
        let mut row = Vec::with_capacity(3);
        for kind in SEARCHED {
            let r = grid_search(kind, &d, cfg.resolution)?;
            let report = SearchReport::from_result(target.dataset().name(), target.name(), &r);
            write_json(&out.join("search").join(format!("{stem}_{}.json", kind.name())), &report)?;
            row.push(r);
        }
        let row: [SearchResult<f64>; 3] = row.try_into().expect("three neurons");
        println!(
            "{:<9} {:<7} cvqn {:.4}  cdqn {:.4}  pcdqn {:.4}",
            target.dataset().name(),
            target.name(),
            row[0].best_auc,
            row[1].best_auc,
            row[2].best_auc
        );
        searches.push((target, row));
    }
    write_summary(&out.join("summary.csv"), &searches)?;
    write_best_params(&out.join("best_params.csv"), &searches)?;

    for kind in [NeuronKind::Cvqn, NeuronKind::Cdqn] {
        let n = Neuron::from_kind(kind, None);
        for metric in MetricKind::ALL {
            write_shapes(&out.join("shapes").join(format!("{}_{}.csv", kind.name(), metric.name())), &n, metric)?;
        }
    }
    for (tau, k) in SHAPE_PARAMS {
        let n = Neuron::Pcdqn { params: PcdqnParams::new(tau, f64::from(k) * PI / 4.0)?, fused: false };
        let name = format!("pcdqn_tau{tau}_delta{k}pi4_euclidean.csv");
        write_shapes(&out.join("shapes").join(name), &n, MetricKind::Euclidean)?;
    }

    let rows = growth_rows(&(2..=10).collect::<Vec<_>>())?;
    write_file(&out.join("growth.csv"), |w| Ok(growth::write_growth_csv(w, &rows)?))?;

    let mut shots = Vec::new();
    for target in SHOT_PROBLEMS {
        let (_, row) = searches.iter().find(|(t, _)| *t == target).expect("problem searched");
        let spec = { let mut c = cfg.clone(); c.dataset = target.dataset(); c.dataset_spec() };
        let d = spec.problem::<f64>(target)?;
        for r in row {
            let name = format!("{}_{}_{}.csv", target.dataset().name(), target.name(), r.neuron.name());
            let s = write_estimate(&out.join("estimates").join(name), &r.model(), &d, &r.best_weights, cfg.shots, cfg.shot_seed)?;
            shots.push((target, r.neuron, s));
        }
    }
    write_file(&out.join("shots.csv"), |w| {
        writeln!(w, "dataset,target,neuron,auc_closed,auc_shots,difference")?;
        for (t, k, s) in &shots {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                t.dataset().name(),
                t.name(),
                k.name(),
                fmt_float(s.auc_closed),
                fmt_float(s.auc_shots),
                fmt_float((s.auc_shots - s.auc_closed).abs())
            )?;
        }
        Ok(())
    })?;
    println!("wrote {}", out.display());
    Ok(Reproduction { searches, shots })
}

fn write_summary(path: &Path, searches: &[(Target, [SearchResult<f64>; 3])]) -> CliResult<()> {
    write_file(path, |w| {
        writeln!(w, "dataset,target,cvqn,cdqn,pcdqn")?;
        for (t, row) in searches {
            writeln!(
                w,
                "{},{},{},{},{}",
                t.dataset().name(),
                t.name(),
                fmt_float(row[0].best_auc),
                fmt_float(row[1].best_auc),
                fmt_float(row[2].best_auc)
            )?;
        }
        Ok(())
    })
}

fn write_best_params(path: &Path, searches: &[(Target, [SearchResult<f64>; 3])]) -> CliResult<()> {
    write_file(path, |w| {
        writeln!(w, "dataset,target,neuron,tau,delta,phi0,phi1,auc")?;
        for (t, row) in searches {
            for r in row {
                let (tau, delta) = r.best_params.map_or((String::new(), String::new()), |p| (fmt_float(p.tau), fmt_float(p.delta)));
                writeln!(
                    w,
                    "{},{},{},{tau},{delta},{},{},{}",
                    t.dataset().name(),
                    t.name(),
                    r.neuron.name(),
                    fmt_float(r.best_weights[0]),
                    fmt_float(r.best_weights[1]),
                    fmt_float(r.best_auc)
                )?;
            }
        }
        Ok(())
    })
}
