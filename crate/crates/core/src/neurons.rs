//! Concrete neurons: BVQN and CVQN (amplitude encoding, N = m) and the
//! constant-depth CDQN / PCDQN (qubit encoding, N = 2^m).
//!
//! Bit selection is big-endian: component j of an m-component vector is
//! attached to qubit j, which is bit `m - 1 - j` of a basis index.

use num_complex::Complex;

use crate::circuit::Gate;
use crate::error::{invalid, Result};
use crate::framework::{FeatureVector, NeuronKind, NeuronModel};
use crate::scalar::Scalar;
use crate::statevector::MAX_QUBITS;

/// Largest number of data qubits a framework circuit may use (one is kept for the ancilla).
pub const MAX_DATA_QUBITS: usize = MAX_QUBITS - 1;

/// Multiplicative factor and additive shift applied to each component difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PcdqnParams<T> {
    pub tau: T,
    pub delta: T,
}

impl<T: Scalar> PcdqnParams<T> {
    pub fn new(tau: T, delta: T) -> Result<Self> {
        if !tau.is_finite() || !delta.is_finite() {
            return invalid("tau and delta must be finite");
        }
        Ok(Self { tau, delta })
    }

    /// (1, 0): the plain CDQN.
    pub fn identity() -> Self {
        Self { tau: T::one(), delta: T::zero() }
    }

    pub fn is_identity(&self) -> bool {
        self.tau == T::one() && self.delta == T::zero()
    }
}

/// Vector of +1/-1 entries with power-of-two length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryVector(Vec<i8>);

impl BinaryVector {
    pub fn new(components: Vec<i8>) -> Result<Self> {
        if components.len() < 2 || !components.len().is_power_of_two() {
            return invalid(format!("binary vector length {} is not 2^n, n >= 1", components.len()));
        }
        if components.iter().any(|&c| c != 1 && c != -1) {
            return invalid("binary vector entries must be +1 or -1");
        }
        Ok(Self(components))
    }

    /// Reads a real slice whose entries are exactly +1 or -1.
    pub fn from_reals<T: Scalar>(v: &[T]) -> Result<Self> {
        let comps = v
            .iter()
            .map(|&x| {
                if x == T::one() {
                    Ok(1)
                } else if x == -T::one() {
                    Ok(-1)
                } else {
                    invalid("binary vector entries must be +1 or -1")
                }
            })
            .collect::<Result<Vec<i8>>>()?;
        Self::new(comps)
    }

    pub fn components(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn amplitude_qubits(m: usize) -> Result<usize> {
    if m < 2 || !m.is_power_of_two() {
        return invalid(format!("amplitude encoding needs m = 2^n with n >= 1, got m = {m}"));
    }
    let n = m.trailing_zeros() as usize;
    if n > MAX_DATA_QUBITS {
        return invalid(format!("m = {m} exceeds the simulator cap"));
    }
    Ok(n)
}

fn qubit_encoding_qubits(m: usize) -> Result<usize> {
    if m == 0 || m > MAX_DATA_QUBITS {
        return invalid(format!("qubit encoding needs 1 <= m <= {MAX_DATA_QUBITS}, got {m}"));
    }
    Ok(m)
}

fn same_len<T>(a: &[T], b: &[T]) -> Result<()> {
    if a.len() != b.len() {
        return invalid(format!("length mismatch: {} vs {}", a.len(), b.len()));
    }
    Ok(())
}

fn unit_phase<T: Scalar>(angle: T) -> Complex<T> {
    Complex::from_polar(T::one(), angle)
}

/// Gates that multiply the amplitude of basis state `index` on `n` qubits by e^{i angle}.
fn basis_phase_block<T: Scalar>(n: usize, index: usize, angle: T) -> Vec<Gate<T>> {
    let flips: Vec<usize> = (0..n).filter(|&q| index >> (n - 1 - q) & 1 == 0).collect();
    let mut gates: Vec<Gate<T>> = flips.iter().map(|&q| Gate::PauliX(q)).collect();
    gates.push(if n == 1 {
        Gate::Phase { target: 0, angle }
    } else {
        Gate::MultiControlledPhase { controls: (0..n - 1).collect(), target: n - 1, angle }
    });
    gates.extend(flips.iter().map(|&q| Gate::PauliX(q)));
    gates
}

// ---------------------------------------------------------------- BVQN

pub fn bvqn_feature_map<T: Scalar>(v: &BinaryVector) -> Result<FeatureVector<T>> {
    let norm = T::from_usize_exact(v.len()).sqrt().recip();
    FeatureVector::new(
        v.components()
            .iter()
            .map(|&c| Complex::new(T::from_i8(c).unwrap() * norm, T::zero()))
            .collect(),
    )
}

/// |(1/N) sum_j phi_j theta_j|^2
pub fn bvqn_activation<T: Scalar>(theta: &BinaryVector, phi: &BinaryVector) -> Result<T> {
    same_len(theta.components(), phi.components())?;
    let dot: i64 = theta.components().iter().zip(phi.components()).map(|(&a, &b)| i64::from(a * b)).sum();
    let r = T::from_i64(dot).unwrap() / T::from_usize_exact(theta.len());
    Ok(r * r)
}

/// One sign-flip block per -1 entry. Sign flips are self-inverse, so
/// `invert` does not change the output.
pub fn bvqn_gates<T: Scalar>(v: &BinaryVector, _invert: bool) -> Vec<Gate<T>> {
    let n = v.len().trailing_zeros() as usize;
    v.components()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == -1)
        .flat_map(|(j, _)| basis_phase_block(n, j, T::PI()))
        .collect()
}

// ---------------------------------------------------------------- CVQN

/// (1/sqrt(N)) (e^{i v_0}, ..., e^{i v_{m-1}}), N = m.
pub fn cvqn_feature_map<T: Scalar>(v: &[T]) -> Result<FeatureVector<T>> {
    amplitude_qubits(v.len())?;
    let norm = T::from_usize_exact(v.len()).sqrt().recip();
    FeatureVector::new(v.iter().map(|&x| unit_phase(x) * norm).collect())
}

/// |(1/N) sum_j e^{i(theta_j - phi_j)}|^2
pub fn cvqn_activation<T: Scalar>(theta: &[T], phi: &[T]) -> Result<T> {
    same_len(theta, phi)?;
    amplitude_qubits(theta.len())?;
    let sum = theta
        .iter()
        .zip(phi)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (&t, &p)| acc + unit_phase(t - p));
    Ok((sum / T::from_usize_exact(theta.len())).norm_sqr().min(T::one()))
}

/// Phase-shift blocks, one per component. The decoder (`invert`) applies the
/// negated angles. With `pruned`, zero-angle blocks are skipped.
pub fn cvqn_gates<T: Scalar>(v: &[T], invert: bool, pruned: bool) -> Result<Vec<Gate<T>>> {
    let n = amplitude_qubits(v.len())?;
    Ok(v.iter()
        .enumerate()
        .filter(|(_, &x)| !(pruned && x == T::zero()))
        .flat_map(|(j, &x)| basis_phase_block(n, j, if invert { -x } else { x }))
        .collect())
}

// ---------------------------------------------------------------- CDQN / PCDQN

/// Component s is (1/sqrt(N)) prod_j (e^{i v_j})^{b_j(s)}, N = 2^m.
pub fn cdqn_feature_map<T: Scalar>(v: &[T]) -> Result<FeatureVector<T>> {
    let m = qubit_encoding_qubits(v.len())?;
    let dim = 1usize << m;
    let norm = T::from_usize_exact(dim).sqrt().recip();
    FeatureVector::new(
        (0..dim)
            .map(|s| {
                let angle: T = (0..m).filter(|&j| s >> (m - 1 - j) & 1 == 1).map(|j| v[j]).sum();
                unit_phase(angle) * norm
            })
            .collect(),
    )
}

/// Sum over all 2^m basis states of the bit-selected phase products.
pub fn cdqn_activation_full<T: Scalar>(theta: &[T], phi: &[T]) -> Result<T> {
    same_len(theta, phi)?;
    let m = qubit_encoding_qubits(theta.len())?;
    let dim = 1usize << m;
    let factors: Vec<Complex<T>> = theta.iter().zip(phi).map(|(&t, &p)| unit_phase(t - p)).collect();
    let sum = (0..dim).fold(Complex::new(T::zero(), T::zero()), |acc, s| {
        let term = (0..m)
            .filter(|&j| s >> (m - 1 - j) & 1 == 1)
            .fold(Complex::new(T::one(), T::zero()), |p, j| p * factors[j]);
        acc + term
    });
    Ok((sum / T::from_usize_exact(dim)).norm_sqr().min(T::one()))
}

/// |(1/N) prod_j (1 + e^{i(theta_j - phi_j)})|^2
pub fn cdqn_activation_product<T: Scalar>(theta: &[T], phi: &[T]) -> Result<T> {
    pcdqn_activation(theta, phi, PcdqnParams::identity())
}

/// |(1/N) prod_j (1 + e^{i[tau(theta_j - phi_j) + delta]})|^2
pub fn pcdqn_activation<T: Scalar>(theta: &[T], phi: &[T], params: PcdqnParams<T>) -> Result<T> {
    same_len(theta, phi)?;
    qubit_encoding_qubits(theta.len())?;
    let one = Complex::new(T::one(), T::zero());
    let half = T::lit(0.5);
    let prod = theta.iter().zip(phi).fold(one, |acc, (&t, &p)| {
        acc * (one + unit_phase(params.tau * (t - p) + params.delta)) * half
    });
    Ok(prod.norm_sqr().min(T::one()))
}

/// One phase gate per qubit: P(v_j), or P(-v_j) for the decoder.
pub fn cdqn_gates<T: Scalar>(v: &[T], invert: bool) -> Result<Vec<Gate<T>>> {
    qubit_encoding_qubits(v.len())?;
    Ok(v.iter()
        .enumerate()
        .map(|(j, &x)| Gate::Phase { target: j, angle: if invert { -x } else { x } })
        .collect())
}

/// Expanded PCDQN layer: P(tau v_j) for the encoder; P(-tau v_j) followed by a
/// P(delta) layer for the decoder.
pub fn pcdqn_gates<T: Scalar>(v: &[T], params: PcdqnParams<T>, invert: bool) -> Result<Vec<Gate<T>>> {
    let scaled: Vec<T> = v.iter().map(|&x| params.tau * x).collect();
    let mut gates = cdqn_gates(&scaled, invert)?;
    if invert {
        gates.extend((0..v.len()).map(|j| Gate::Phase { target: j, angle: params.delta }));
    }
    Ok(gates)
}

/// Single phase per qubit carrying tau(theta_j - phi_j) + delta.
pub fn pcdqn_fused_gates<T: Scalar>(theta: &[T], phi: &[T], params: PcdqnParams<T>) -> Result<Vec<Gate<T>>> {
    same_len(theta, phi)?;
    qubit_encoding_qubits(theta.len())?;
    Ok(theta
        .iter()
        .zip(phi)
        .enumerate()
        .map(|(j, (&t, &p))| Gate::Phase { target: j, angle: params.tau * (t - p) + params.delta })
        .collect())
}

// ---------------------------------------------------------------- models

/// The four neurons as framework models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Neuron<T> {
    Bvqn,
    Cvqn { pruned: bool },
    Cdqn,
    Pcdqn { params: PcdqnParams<T>, fused: bool },
}

impl<T: Scalar> Neuron<T> {
    /// Default model for a kind; PCDQN uses the expanded circuit with `params`
    /// (identity when absent).
    pub fn from_kind(kind: NeuronKind, params: Option<PcdqnParams<T>>) -> Self {
        match kind {
            NeuronKind::Bvqn => Neuron::Bvqn,
            NeuronKind::Cvqn => Neuron::Cvqn { pruned: false },
            NeuronKind::Cdqn => Neuron::Cdqn,
            NeuronKind::Pcdqn => Neuron::Pcdqn {
                params: params.unwrap_or_else(PcdqnParams::identity),
                fused: false,
            },
        }
    }

    pub fn params(&self) -> Option<PcdqnParams<T>> {
        match self {
            Neuron::Pcdqn { params, .. } => Some(*params),
            _ => None,
        }
    }
}

impl<T: Scalar> NeuronModel<T> for Neuron<T> {
    fn kind(&self) -> NeuronKind {
        match self {
            Neuron::Bvqn => NeuronKind::Bvqn,
            Neuron::Cvqn { .. } => NeuronKind::Cvqn,
            Neuron::Cdqn => NeuronKind::Cdqn,
            Neuron::Pcdqn { .. } => NeuronKind::Pcdqn,
        }
    }

    fn data_qubits(&self, m: usize) -> Result<usize> {
        match self {
            Neuron::Bvqn | Neuron::Cvqn { .. } => amplitude_qubits(m),
            Neuron::Cdqn | Neuron::Pcdqn { .. } => qubit_encoding_qubits(m),
        }
    }

    fn feature_map(&self, v: &[T]) -> Result<FeatureVector<T>> {
        match self {
            Neuron::Bvqn => bvqn_feature_map(&BinaryVector::from_reals(v)?),
            Neuron::Cvqn { .. } => cvqn_feature_map(v),
            Neuron::Cdqn => cdqn_feature_map(v),
            Neuron::Pcdqn { params, .. } => {
                cdqn_feature_map(&v.iter().map(|&x| params.tau * x).collect::<Vec<_>>())
            }
        }
    }

    fn input_feature_map(&self, theta: &[T]) -> Result<FeatureVector<T>> {
        match self {
            Neuron::Pcdqn { params, .. } => cdqn_feature_map(
                &theta.iter().map(|&x| params.tau * x + params.delta).collect::<Vec<_>>(),
            ),
            _ => self.feature_map(theta),
        }
    }

    fn encoder_gates(&self, theta: &[T]) -> Result<Vec<Gate<T>>> {
        match self {
            Neuron::Bvqn => Ok(bvqn_gates(&BinaryVector::from_reals(theta)?, false)),
            Neuron::Cvqn { pruned } => cvqn_gates(theta, false, *pruned),
            Neuron::Cdqn => cdqn_gates(theta, false),
            Neuron::Pcdqn { params, .. } => pcdqn_gates(theta, *params, false),
        }
    }

    fn decoder_gates(&self, phi: &[T]) -> Result<Vec<Gate<T>>> {
        match self {
            Neuron::Bvqn => Ok(bvqn_gates(&BinaryVector::from_reals(phi)?, true)),
            Neuron::Cvqn { pruned } => cvqn_gates(phi, true, *pruned),
            Neuron::Cdqn => cdqn_gates(phi, true),
            Neuron::Pcdqn { params, .. } => pcdqn_gates(phi, *params, true),
        }
    }

    fn kernel_gates(&self, theta: &[T], phi: &[T]) -> Result<Vec<Gate<T>>> {
        match self {
            Neuron::Pcdqn { params, fused: true } => pcdqn_fused_gates(theta, phi, *params),
            _ => {
                let mut g = self.encoder_gates(theta)?;
                g.extend(self.decoder_gates(phi)?);
                Ok(g)
            }
        }
    }

    fn activation(&self, theta: &[T], phi: &[T]) -> Result<T> {
        match self {
            Neuron::Bvqn => bvqn_activation(&BinaryVector::from_reals(theta)?, &BinaryVector::from_reals(phi)?),
            Neuron::Cvqn { .. } => cvqn_activation(theta, phi),
            Neuron::Cdqn => cdqn_activation_product(theta, phi),
            Neuron::Pcdqn { params, .. } => pcdqn_activation(theta, phi, *params),
        }
    }
}
