//! Shot-based activation estimates from simulated framework circuits.

use std::io::Write;

use rayon::prelude::*;

use super::auc::auc_roc;
use crate::datasets::{fmt_float, LabeledDataset};
use crate::error::{invalid, Result};
use crate::framework::{framework_state, NeuronModel};
use crate::scalar::Scalar;

pub const DEFAULT_SHOTS: u64 = 20_000;

/// Fraction of 1 outcomes on the ancilla over `shots` runs of the framework circuit.
pub fn estimate_activation<T: Scalar, N: NeuronModel<T> + ?Sized>(
    neuron: &N,
    theta: &[T],
    phi: &[T],
    shots: u64,
    seed: u64,
) -> Result<T> {
    if shots == 0 {
        return invalid("shots must be at least 1");
    }
    let (circuit, state) = framework_state(neuron, theta, phi)?;
    let ones = state.sample_shots(circuit.num_qubits() - 1, shots, seed)?;
    Ok(T::from_u64(ones).unwrap() / T::from_u64(shots).unwrap())
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateRow<T> {
    pub sample_index: usize,
    pub x: [T; 2],
    pub label: bool,
    pub p_closed: T,
    pub p_estimated: T,
    pub shots: u64,
    pub seed: u64,
}

/// Estimates every sample of `dataset` against `weights`. Row i is sampled
/// with seed `seed + i` (wrapping), so rows are independent of evaluation order.
pub fn estimate_dataset<T: Scalar, N: NeuronModel<T> + Sync + ?Sized>(
    neuron: &N,
    dataset: &LabeledDataset<T>,
    weights: &[T],
    shots: u64,
    seed: u64,
) -> Result<Vec<EstimateRow<T>>> {
    dataset
        .samples()
        .par_iter()
        .zip(dataset.labels())
        .enumerate()
        .map(|(i, (x, &label))| {
            let row_seed = seed.wrapping_add(i as u64);
            Ok(EstimateRow {
                sample_index: i,
                x: *x,
                label,
                p_closed: neuron.activation(x, weights)?,
                p_estimated: estimate_activation(neuron, x, weights, shots, row_seed)?,
                shots,
                seed: row_seed,
            })
        })
        .collect()
}

/// (closed-form AUC, shot-estimated AUC) of a set of rows.
pub fn estimate_aucs<T: Scalar>(rows: &[EstimateRow<T>]) -> Result<(T, T)> {
    let labels: Vec<bool> = rows.iter().map(|r| r.label).collect();
    let closed: Vec<T> = rows.iter().map(|r| r.p_closed).collect();
    let est: Vec<T> = rows.iter().map(|r| r.p_estimated).collect();
    Ok((auc_roc(&closed, &labels)?, auc_roc(&est, &labels)?))
}

/// Columns `sample_index,x0,x1,label,p_closed,p_estimated,shots,seed`.
pub fn write_estimate_csv<T: Scalar, W: Write>(w: W, rows: &[EstimateRow<T>]) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["sample_index", "x0", "x1", "label", "p_closed", "p_estimated", "shots", "seed"])?;
    for r in rows {
        wr.write_record([
            r.sample_index.to_string(),
            fmt_float(r.x[0]),
            fmt_float(r.x[1]),
            u8::from(r.label).to_string(),
            fmt_float(r.p_closed),
            fmt_float(r.p_estimated),
            r.shots.to_string(),
            r.seed.to_string(),
        ])?;
    }
    wr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::neurons::{Neuron, PcdqnParams};
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn certain_outcomes_are_exact() {
        let th = [0.4, 1.2];
        assert_eq!(estimate_activation(&Neuron::<f64>::Cdqn, &th, &th, DEFAULT_SHOTS, 3).unwrap(), 1.0);
        let off = Neuron::Pcdqn { params: PcdqnParams::new(1.0, PI).unwrap(), fused: false };
        assert_eq!(estimate_activation(&off, &th, &th, DEFAULT_SHOTS, 3).unwrap(), 0.0);
        assert!(estimate_activation(&off, &th, &th, 0, 3).is_err());
    }

    #[test]
    fn half_probability_within_three_sigma() {
        let inside = (0..200u64)
            .filter(|&seed| {
                let p = estimate_activation(&Neuron::<f64>::Cdqn, &[FRAC_PI_2], &[0.0], DEFAULT_SHOTS, seed).unwrap();
                (p - 0.5).abs() <= 0.011
            })
            .count();
        assert!(inside >= 198, "{inside}/200");
    }
}
