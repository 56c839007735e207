//! Seeded regeneration of the three 2-D benchmark datasets, label swapping,
//! min-max scaling to [0, pi/2], and CSV persistence.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64` and
//! `rand_distr::Normal`, so every dataset is a pure function of its seed.

use std::io::{Read, Write};
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{invalid, Error, Result};
use crate::scalar::Scalar;

pub const DIAGONAL_CENTERS: [(f64, f64); 3] = [(-5.0, 8.0), (0.0, 0.0), (5.0, -8.0)];
pub const DIAGONAL_STD: f64 = 1.2;
/// Samples per corner cluster; the center cluster holds twice as many.
pub const DIAGONAL_CORNER_SAMPLES: usize = 25;
pub const CIRCLES_NOISE: f64 = 0.05;
pub const CIRCLES_FACTOR: f64 = 0.4;
pub const CIRCLES_SAMPLES: usize = 50;
pub const SQUARE_STD: f64 = 0.05;
pub const SQUARE_SAMPLES_PER_BLOB: usize = 25;

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset<T> {
    samples: Vec<[T; 2]>,
    labels: Vec<bool>,
    scaled: bool,
}

impl<T: Scalar> LabeledDataset<T> {
    pub fn new(samples: Vec<[T; 2]>, labels: Vec<bool>) -> Result<Self> {
        if samples.len() != labels.len() {
            return invalid(format!("{} samples but {} labels", samples.len(), labels.len()));
        }
        if samples.iter().flatten().any(|x| !x.is_finite()) {
            return invalid("samples must be finite");
        }
        let d = Self { samples, labels, scaled: false };
        if d.positives() == 0 || d.negatives() == 0 {
            return Err(Error::DegenerateInput("dataset needs both classes".into()));
        }
        Ok(d)
    }

    pub fn samples(&self) -> &[[T; 2]] {
        &self.samples
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    pub fn is_scaled(&self) -> bool {
        self.scaled
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn positives(&self) -> usize {
        self.labels.iter().filter(|&&l| l).count()
    }

    pub fn negatives(&self) -> usize {
        self.labels.len() - self.positives()
    }

    fn in_unit_range(&self) -> bool {
        self.samples.iter().flatten().all(|&x| x >= T::zero() && x <= T::FRAC_PI_2())
    }

    /// Complements every label.
    pub fn swap_labels(&self) -> Self {
        Self { labels: self.labels.iter().map(|l| !l).collect(), ..self.clone() }
    }

    /// Per-feature affine map of [min, max] onto [0, pi/2].
    pub fn minmax_scale(&self) -> Result<Self> {
        let half_pi = T::FRAC_PI_2();
        let mut out = self.samples.clone();
        for f in 0..2 {
            let (lo, hi) = self
                .samples
                .iter()
                .map(|s| s[f])
                .fold((T::infinity(), T::neg_infinity()), |(lo, hi), x| (lo.min(x), hi.max(x)));
            if hi <= lo {
                return Err(Error::DegenerateInput(format!("feature {f} has zero range")));
            }
            if lo == T::zero() && hi == half_pi {
                continue;
            }
            let span = hi - lo;
            for s in &mut out {
                s[f] = ((s[f] - lo) / span * half_pi).max(T::zero()).min(half_pi);
            }
        }
        Ok(Self { samples: out, labels: self.labels.clone(), scaled: true })
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["x0", "x1", "label"])?;
        for (s, &l) in self.samples.iter().zip(&self.labels) {
            wr.write_record([fmt_float(s[0]), fmt_float(s[1]), u8::from(l).to_string()])?;
        }
        wr.flush()?;
        Ok(())
    }

    /// Reads `x0,x1,label` rows. The result is flagged scaled when every
    /// coordinate already lies in [0, pi/2].
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let headers = rd.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["x0", "x1", "label"] {
            return Err(Error::Format(format!("expected header x0,x1,label, got {headers:?}")));
        }
        let mut samples = Vec::new();
        let mut labels = Vec::new();
        for rec in rd.records() {
            let rec = rec?;
            let x0 = parse_float::<T>(&rec[0])?;
            let x1 = parse_float::<T>(&rec[1])?;
            let label = match &rec[2] {
                "0" => false,
                "1" => true,
                other => return Err(Error::Format(format!("label '{other}' is not 0 or 1"))),
            };
            samples.push([x0, x1]);
            labels.push(label);
        }
        let mut d = Self::new(samples, labels)?;
        d.scaled = d.in_unit_range();
        Ok(d)
    }
}

/// 17 significant digits; round-trips every f64.
pub fn fmt_float<T: Scalar>(x: T) -> String {
    format!("{:.16e}", x.to_f64().unwrap_or(f64::NAN))
}

pub fn parse_float<T: Scalar>(s: &str) -> Result<T> {
    s.trim()
        .parse::<f64>()
        .ok()
        .and_then(T::from_f64)
        .ok_or_else(|| Error::Format(format!("'{s}' is not a number")))
}

fn normal(std: f64) -> Result<Normal<f64>> {
    Normal::new(0.0, std).map_err(|e| Error::InvalidArgument(format!("std {std}: {e}")))
}

fn build<T: Scalar>(points: Vec<([f64; 2], bool)>) -> Result<LabeledDataset<T>> {
    let (samples, labels): (Vec<_>, Vec<_>) = points
        .into_iter()
        .map(|(p, l)| ([T::lit(p[0]), T::lit(p[1])], l))
        .unzip();
    LabeledDataset::new(samples, labels)
}

/// Three isotropic clusters on the anti-diagonal; the center cluster (50
/// points) is positive, the two corner clusters (25 each) negative.
pub fn gen_diagonal_blobs<T: Scalar>(seed: u64) -> Result<LabeledDataset<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = normal(DIAGONAL_STD)?;
    let mut points = Vec::new();
    for (i, &(cx, cy)) in DIAGONAL_CENTERS.iter().enumerate() {
        let center = i == 1;
        let n = if center { 2 * DIAGONAL_CORNER_SAMPLES } else { DIAGONAL_CORNER_SAMPLES };
        for _ in 0..n {
            let x = cx + noise.sample(&mut rng);
            let y = cy + noise.sample(&mut rng);
            points.push(([x, y], center));
        }
    }
    build(points)
}

/// Outer unit circle (negative) and inner circle of radius 0.4 (positive),
/// 50 equally spaced angles each, plus Gaussian noise.
pub fn gen_concentric_circles<T: Scalar>(seed: u64) -> Result<LabeledDataset<T>> {
    gen_concentric_circles_with(seed, CIRCLES_NOISE)
}

pub fn gen_concentric_circles_with<T: Scalar>(seed: u64, noise: f64) -> Result<LabeledDataset<T>> {
    if !(noise >= 0.0 && noise.is_finite()) {
        return invalid("noise must be a finite non-negative number");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = CIRCLES_SAMPLES;
    let mut points = Vec::with_capacity(2 * n);
    for (radius, inner) in [(1.0, false), (CIRCLES_FACTOR, true)] {
        for k in 0..n {
            let a = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            points.push(([radius * a.cos(), radius * a.sin()], inner));
        }
    }
    if noise > 0.0 {
        let dist = normal(noise)?;
        for (p, _) in &mut points {
            p[0] += dist.sample(&mut rng);
            p[1] += dist.sample(&mut rng);
        }
    }
    build(points)
}

/// Four blobs on the corners of [0, pi/2]^2 with XOR labeling: (0, pi/2) and
/// (pi/2, 0) are positive.
pub fn gen_square_blobs<T: Scalar>(seed: u64, std: f64, n_per_blob: usize) -> Result<LabeledDataset<T>> {
    if !(std >= 0.0 && std.is_finite()) {
        return invalid("std must be a finite non-negative number");
    }
    if n_per_blob == 0 {
        return invalid("n_per_blob must be at least 1");
    }
    let h = std::f64::consts::FRAC_PI_2;
    let corners = [((0.0, 0.0), false), ((0.0, h), true), ((h, 0.0), true), ((h, h), false)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = normal(std.max(f64::MIN_POSITIVE))?;
    let mut points = Vec::with_capacity(4 * n_per_blob);
    for ((cx, cy), label) in corners {
        for _ in 0..n_per_blob {
            let p = if std > 0.0 {
                [cx + dist.sample(&mut rng), cy + dist.sample(&mut rng)]
            } else {
                [cx, cy]
            };
            points.push((p, label));
        }
    }
    build(points)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DatasetKind {
    Diagonal,
    Circles,
    Square,
}

impl DatasetKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Diagonal => "diagonal",
            Self::Circles => "circles",
            Self::Square => "square",
        }
    }

    /// Target whose positives are the generator's own positive class.
    pub fn base_target(self) -> Target {
        match self {
            Self::Diagonal => Target::Center,
            Self::Circles => Target::Inner,
            Self::Square => Target::Xor,
        }
    }
}

impl FromStr for DatasetKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "diagonal" | "diagonal-blobs" | "blobs" => Ok(Self::Diagonal),
            "circles" | "concentric-circles" => Ok(Self::Circles),
            "square" | "square-blobs" => Ok(Self::Square),
            _ => invalid(format!("unknown dataset '{s}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Center,
    Corner,
    Inner,
    Outer,
    Xor,
    Nxor,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Self::Center => "center",
            Self::Corner => "corner",
            Self::Inner => "inner",
            Self::Outer => "outer",
            Self::Xor => "xor",
            Self::Nxor => "nxor",
        }
    }

    pub fn dataset(self) -> DatasetKind {
        match self {
            Self::Center | Self::Corner => DatasetKind::Diagonal,
            Self::Inner | Self::Outer => DatasetKind::Circles,
            Self::Xor | Self::Nxor => DatasetKind::Square,
        }
    }

    pub fn is_swapped(self) -> bool {
        self != self.dataset().base_target()
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "center" => Ok(Self::Center),
            "corner" => Ok(Self::Corner),
            "inner" => Ok(Self::Inner),
            "outer" => Ok(Self::Outer),
            "xor" => Ok(Self::Xor),
            "nxor" => Ok(Self::Nxor),
            _ => invalid(format!("unknown target '{s}'")),
        }
    }
}

/// The six classification problems, in table order.
pub const PROBLEMS: [Target; 6] =
    [Target::Center, Target::Corner, Target::Inner, Target::Outer, Target::Xor, Target::Nxor];

/// Everything needed to regenerate one dataset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DatasetSpec {
    pub kind: DatasetKind,
    pub seed: u64,
    /// Square-blob spread.
    pub std: f64,
    pub n_per_blob: usize,
    /// Circle noise.
    pub noise: f64,
}

impl DatasetSpec {
    pub fn new(kind: DatasetKind, seed: u64) -> Self {
        Self { kind, seed, std: SQUARE_STD, n_per_blob: SQUARE_SAMPLES_PER_BLOB, noise: CIRCLES_NOISE }
    }

    /// Raw (unscaled) dataset with the generator's labeling.
    pub fn generate<T: Scalar>(&self) -> Result<LabeledDataset<T>> {
        match self.kind {
            DatasetKind::Diagonal => gen_diagonal_blobs(self.seed),
            DatasetKind::Circles => gen_concentric_circles_with(self.seed, self.noise),
            DatasetKind::Square => gen_square_blobs(self.seed, self.std, self.n_per_blob),
        }
    }

    /// Scaled dataset labeled for `target`.
    pub fn problem<T: Scalar>(&self, target: Target) -> Result<LabeledDataset<T>> {
        if target.dataset() != self.kind {
            return invalid(format!("target {} does not belong to dataset {}", target.name(), self.kind.name()));
        }
        let d = self.generate::<T>()?.minmax_scale()?;
        Ok(if target.is_swapped() { d.swap_labels() } else { d })
    }
}
