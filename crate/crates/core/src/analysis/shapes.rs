//! Activation-shape studies: activations of a 10 x 10 input grid against the
//! reference weight (pi/2, pi/2), paired with a classical metric.

use std::io::Write;
use std::str::FromStr;

use super::search::linspace_quarter_turn;
use crate::datasets::fmt_float;
use crate::error::{invalid, Error, Result};
use crate::framework::{ClassicalVector, NeuronModel};
use crate::scalar::Scalar;

pub const SHAPE_GRID_POINTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    Manhattan,
    Euclidean,
    Linear,
    Polynomial,
    Rbf,
    Sigmoid,
}

impl MetricKind {
    pub const ALL: [MetricKind; 6] =
        [Self::Manhattan, Self::Euclidean, Self::Linear, Self::Polynomial, Self::Rbf, Self::Sigmoid];

    pub fn name(self) -> &'static str {
        match self {
            Self::Manhattan => "manhattan",
            Self::Euclidean => "euclidean",
            Self::Linear => "linear",
            Self::Polynomial => "polynomial",
            Self::Rbf => "rbf",
            Self::Sigmoid => "sigmoid",
        }
    }
}

impl FromStr for MetricKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown metric '{s}'")))
    }
}

/// Distances and kernels with gamma = 1/m, coef0 = 1, degree 3.
pub fn metric<T: Scalar>(kind: MetricKind, x: &[T], y: &[T]) -> Result<T> {
    if x.len() != y.len() || x.is_empty() {
        return invalid(format!("metric needs equal non-empty lengths, got {} and {}", x.len(), y.len()));
    }
    let gamma = T::from_usize_exact(x.len()).recip();
    let dot = || x.iter().zip(y).map(|(&a, &b)| a * b).sum::<T>();
    let sq = || x.iter().zip(y).map(|(&a, &b)| (a - b) * (a - b)).sum::<T>();
    Ok(match kind {
        MetricKind::Manhattan => x.iter().zip(y).map(|(&a, &b)| (a - b).abs()).sum(),
        MetricKind::Euclidean => sq().sqrt(),
        MetricKind::Linear => dot(),
        MetricKind::Polynomial => (gamma * dot() + T::one()).powi(3),
        MetricKind::Rbf => (-gamma * sq()).exp(),
        MetricKind::Sigmoid => (gamma * dot() + T::one()).tanh(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapePoint<T> {
    pub input: ClassicalVector<T>,
    pub metric_value: T,
    pub activation: T,
}

/// 100 points, x0 outer, x1 inner, each with its metric to (pi/2, pi/2) and
/// the neuron's closed-form activation.
pub fn shape_study<T: Scalar, N: NeuronModel<T> + ?Sized>(neuron: &N, metric_kind: MetricKind) -> Result<Vec<ShapePoint<T>>> {
    let axis = linspace_quarter_turn::<T>(SHAPE_GRID_POINTS);
    let reference = [T::FRAC_PI_2(), T::FRAC_PI_2()];
    let mut out = Vec::with_capacity(axis.len() * axis.len());
    for &a in &axis {
        for &b in &axis {
            let input = ClassicalVector::new(vec![a, b])?;
            out.push(ShapePoint {
                metric_value: metric(metric_kind, &input, &reference)?,
                activation: neuron.activation(&input, &reference)?,
                input,
            });
        }
    }
    Ok(out)
}

/// Columns `input_x0,input_x1,metric,metric_value,activation`.
pub fn write_shape_csv<T: Scalar, W: Write>(w: W, metric_kind: MetricKind, points: &[ShapePoint<T>]) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["input_x0", "input_x1", "metric", "metric_value", "activation"])?;
    for p in points {
        wr.write_record([
            fmt_float(p.input[0]),
            fmt_float(p.input[1]),
            metric_kind.name().to_string(),
            fmt_float(p.metric_value),
            fmt_float(p.activation),
        ])?;
    }
    wr.flush()?;
    Ok(())
}
