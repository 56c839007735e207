//! Exhaustive weight and parameter grid search maximizing AUC.
//!
//! Candidates are scored with the closed-form activation. Evaluation runs in
//! parallel, and the reduction keeps the highest AUC with ties going to the
//! lowest candidate index, so results do not depend on thread scheduling.
//! For the PCDQN, parameters form the outer loop and weights the inner loop.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::auc::{rank_count, RankCount};
use crate::datasets::LabeledDataset;
use crate::error::{invalid, Result};
use crate::framework::{ClassicalVector, NeuronKind, NeuronModel};
use crate::neurons::{Neuron, PcdqnParams};
use crate::scalar::Scalar;

pub const DEFAULT_RESOLUTION: usize = 100;

/// `n` equidistant values spanning [0, pi/2], endpoints included.
pub fn linspace_quarter_turn<T: Scalar>(n: usize) -> Vec<T> {
    let stop = T::FRAC_PI_2();
    if n == 1 {
        return vec![T::zero()];
    }
    let step = stop / T::from_usize_exact(n - 1);
    (0..n).map(|k| if k == n - 1 { stop } else { T::from_usize_exact(k) * step }).collect()
}

/// All (phi0, phi1) on a `resolution` x `resolution` grid, phi0 outer.
pub fn weight_grid<T: Scalar>(resolution: usize) -> Result<Vec<ClassicalVector<T>>> {
    if resolution < 2 {
        return invalid(format!("grid resolution must be at least 2, got {resolution}"));
    }
    let axis = linspace_quarter_turn::<T>(resolution);
    axis.iter()
        .flat_map(|&a| axis.iter().map(move |&b| ClassicalVector::new(vec![a, b])))
        .collect()
}

pub fn tau_values<T: Scalar>() -> [T; 5] {
    [T::lit(0.25), T::lit(0.5), T::one(), T::lit(2.0), T::lit(4.0)]
}

pub fn delta_values<T: Scalar>() -> [T; 7] {
    let q = T::FRAC_PI_4();
    [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0].map(|k| T::lit(k) * q)
}

/// tau x delta with tau outer, both ascending, (1, 0) removed: 34 entries.
pub fn param_grid<T: Scalar>() -> Vec<PcdqnParams<T>> {
    extended_param_grid().into_iter().filter(|p| !p.is_identity()).collect()
}

/// The full 35-entry grid including (1, 0).
pub fn extended_param_grid<T: Scalar>() -> Vec<PcdqnParams<T>> {
    tau_values::<T>()
        .into_iter()
        .flat_map(|tau| delta_values::<T>().into_iter().map(move |delta| PcdqnParams { tau, delta }))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult<T> {
    pub neuron: NeuronKind,
    pub best_weights: ClassicalVector<T>,
    pub best_params: Option<PcdqnParams<T>>,
    pub best_auc: T,
    pub evaluations: usize,
}

impl<T: Scalar> SearchResult<T> {
    pub fn model(&self) -> Neuron<T> {
        Neuron::from_kind(self.neuron, self.best_params)
    }
}

/// Grid search with the default grids: the weight grid at `resolution`, and
/// for the PCDQN the 34-entry parameter grid.
pub fn grid_search<T: Scalar>(kind: NeuronKind, dataset: &LabeledDataset<T>, resolution: usize) -> Result<SearchResult<T>> {
    let weights = weight_grid(resolution)?;
    let params = match kind {
        NeuronKind::Pcdqn => param_grid(),
        _ => Vec::new(),
    };
    grid_search_over(kind, dataset, &weights, &params)
}

/// Grid search over explicit candidate lists. `params` is ignored for
/// neurons without parameters and must be non-empty for the PCDQN.
pub fn grid_search_over<T: Scalar>(
    kind: NeuronKind,
    dataset: &LabeledDataset<T>,
    weights: &[ClassicalVector<T>],
    params: &[PcdqnParams<T>],
) -> Result<SearchResult<T>> {
    if !dataset.is_scaled() {
        return invalid("grid search expects a dataset scaled to [0, pi/2]");
    }
    if weights.is_empty() {
        return invalid("empty weight grid");
    }
    let models: Vec<Neuron<T>> = match kind {
        NeuronKind::Bvqn => return invalid("the BVQN takes binary inputs and is not searched"),
        NeuronKind::Pcdqn if params.is_empty() => return invalid("empty parameter grid"),
        NeuronKind::Pcdqn => params.iter().map(|&p| Neuron::Pcdqn { params: p, fused: false }).collect(),
        other => vec![Neuron::from_kind(other, None)],
    };
    // fail fast on arity or class problems before going parallel
    score(&models[0], dataset, &weights[0], &mut Scratch::default())?;

    let total = models.len() * weights.len();
    let (best_idx, best_count) = (0..total)
        .into_par_iter()
        .map_init(Scratch::default, |scratch, idx| {
            let model = &models[idx / weights.len()];
            let w = &weights[idx % weights.len()];
            score(model, dataset, w, scratch).map(|c| (idx, c))
        })
        .try_reduce_with(|a, b| Ok(better(a, b)))
        .expect("non-empty candidate set")?;

    let model = &models[best_idx / weights.len()];
    Ok(SearchResult {
        neuron: kind,
        best_weights: weights[best_idx % weights.len()].clone(),
        best_params: model.params(),
        best_auc: best_count.auc(),
        evaluations: total,
    })
}

struct Scratch<T> {
    scores: Vec<T>,
    order: Vec<usize>,
}

impl<T> Default for Scratch<T> {
    fn default() -> Self {
        Self { scores: Vec::new(), order: Vec::new() }
    }
}

fn score<T: Scalar>(
    model: &Neuron<T>,
    dataset: &LabeledDataset<T>,
    weights: &[T],
    scratch: &mut Scratch<T>,
) -> Result<RankCount> {
    scratch.scores.clear();
    for s in dataset.samples() {
        scratch.scores.push(model.activation(s, weights)?);
    }
    rank_count(&scratch.scores, dataset.labels(), &mut scratch.order)
}

/// Higher count wins; equal counts keep the earlier candidate.
fn better(a: (usize, RankCount), b: (usize, RankCount)) -> (usize, RankCount) {
    let (ka, kb) = (a.1.doubled_wins, b.1.doubled_wins);
    if kb > ka || (kb == ka && b.0 < a.0) {
        b
    } else {
        a
    }
}

/// Serialized search outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub dataset: String,
    pub target: String,
    pub neuron: String,
    pub tau: Option<f64>,
    pub delta: Option<f64>,
    pub phi0: f64,
    pub phi1: f64,
    pub auc: f64,
    pub evaluations: usize,
}

impl SearchReport {
    pub fn from_result<T: Scalar>(dataset: &str, target: &str, r: &SearchResult<T>) -> Self {
        let f = |x: T| x.to_f64().unwrap_or(f64::NAN);
        Self {
            dataset: dataset.to_string(),
            target: target.to_string(),
            neuron: r.neuron.name().to_string(),
            tau: r.best_params.map(|p| f(p.tau)),
            delta: r.best_params.map(|p| f(p.delta)),
            phi0: f(r.best_weights[0]),
            phi1: f(r.best_weights[1]),
            auc: f(r.best_auc),
            evaluations: r.evaluations,
        }
    }
}
