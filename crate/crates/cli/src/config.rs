//! Run configuration and its flat `key = value` file format.
//!
//! ```text
//! # comments start with '#'
//! dataset = circles        # diagonal | circles | square
//! target = inner           # center corner inner outer xor nxor
//! seed = 0
//! std = 0.05               # square-blob spread
//! n_per_blob = 25
//! noise = 0.05             # circle noise
//! input = data.csv         # optional: read x0,x1,label instead of generating
//! neuron = pcdqn           # bvqn cvqn cdqn pcdqn
//! tau = 4
//! delta = 0
//! phi0 = 0.04              # fixed weights for `estimate`
//! phi1 = 0.04
//! resolution = 100
//! metric = euclidean
//! m = 2,4,8
//! shots = 20000
//! shot_seed = 0
//! out_dir = out
//! ```
//!
//! Keys accept `-` or `_`. Command-line flags override file values.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use qneuron_core::analysis::{MetricKind, DEFAULT_RESOLUTION, DEFAULT_SHOTS};
use qneuron_core::datasets::{DatasetKind, Target, CIRCLES_NOISE, SQUARE_SAMPLES_PER_BLOB, SQUARE_STD};
use qneuron_core::{DatasetSpec, NeuronKind};

use crate::CliError;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "QNEURON_OUT_DIR";

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub dataset: DatasetKind,
    pub target: Option<Target>,
    pub seed: u64,
    pub std: f64,
    pub n_per_blob: usize,
    pub noise: f64,
    pub input: Option<PathBuf>,
    pub neuron: NeuronKind,
    pub tau: Option<f64>,
    pub delta: Option<f64>,
    pub phi0: Option<f64>,
    pub phi1: Option<f64>,
    pub resolution: usize,
    pub metric: MetricKind,
    pub m_values: Vec<usize>,
    pub shots: u64,
    pub shot_seed: u64,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            dataset: DatasetKind::Circles,
            target: None,
            seed: 0,
            std: SQUARE_STD,
            n_per_blob: SQUARE_SAMPLES_PER_BLOB,
            noise: CIRCLES_NOISE,
            input: None,
            neuron: NeuronKind::Cdqn,
            tau: None,
            delta: None,
            phi0: None,
            phi1: None,
            resolution: DEFAULT_RESOLUTION,
            metric: MetricKind::Euclidean,
            m_values: vec![2, 4, 8],
            shots: DEFAULT_SHOTS,
            shot_seed: 0,
            out_dir: std::env::var_os(OUT_DIR_ENV).map_or_else(|| PathBuf::from("out"), PathBuf::from),
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Invalid(format!("bad value '{value}' for '{key}'")))
}

pub fn parse_m_list(value: &str) -> Result<Vec<usize>, CliError> {
    let ms = value
        .split(',')
        .map(|s| parse::<usize>("m", s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if ms.is_empty() || ms.contains(&0) {
        return Err(CliError::Invalid("m values must be positive".into()));
    }
    Ok(ms)
}

impl RunConfig {
    /// Sets one key; unknown keys are an error.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let value = value.trim();
        let core = |e: qneuron_core::Error| CliError::Invalid(e.to_string());
        match key.trim().replace('-', "_").as_str() {
            "dataset" => self.dataset = value.parse().map_err(core)?,
            "target" => self.target = Some(value.parse().map_err(core)?),
            "seed" => self.seed = parse(key, value)?,
            "std" => self.std = parse(key, value)?,
            "n_per_blob" => self.n_per_blob = parse(key, value)?,
            "noise" => self.noise = parse(key, value)?,
            "input" => self.input = Some(PathBuf::from(value)),
            "neuron" => self.neuron = value.parse().map_err(core)?,
            "tau" => self.tau = Some(parse(key, value)?),
            "delta" => self.delta = Some(parse(key, value)?),
            "phi0" => self.phi0 = Some(parse(key, value)?),
            "phi1" => self.phi1 = Some(parse(key, value)?),
            "resolution" => self.resolution = parse(key, value)?,
            "metric" => self.metric = value.parse().map_err(core)?,
            "m" | "m_values" => self.m_values = parse_m_list(value)?,
            "shots" => self.shots = parse(key, value)?,
            "shot_seed" => self.shot_seed = parse(key, value)?,
            "out_dir" | "out" => self.out_dir = PathBuf::from(value),
            other => return Err(CliError::Invalid(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    pub fn parse_str(text: &str) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        cfg.apply_str(text)?;
        Ok(cfg)
    }

    pub fn apply_str(&mut self, text: &str) -> Result<(), CliError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Invalid(format!("config line {}: expected key = value", n + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        self.apply_str(&text)
    }

    pub fn target(&self) -> Target {
        self.target.unwrap_or_else(|| self.dataset.base_target())
    }

    pub fn dataset_spec(&self) -> DatasetSpec {
        DatasetSpec { kind: self.dataset, seed: self.seed, std: self.std, n_per_blob: self.n_per_blob, noise: self.noise }
    }
}
