//! Generic kernel-machine neuron.
//!
//! A neuron is defined by a feature map and two gate builders: an encoder that
//! prepares the mapped input from |+>^n, and a decoder that takes the mapped
//! weight back to |+>^n. The framework circuit is
//!
//! ```text
//! H^n ; E(theta) ; D(phi) ; H^n ; X^n ; MCX(data -> ancilla) ; measure ancilla
//! ```
//!
//! and the ancilla fires with probability |<Phi(phi)|Phi(theta)>|^2.

use num_complex::Complex;

use crate::circuit::{Circuit, Gate};
use crate::error::{invalid, Result};
use crate::scalar::Scalar;
use crate::statevector::{run, StateVector};

/// Real input or weight vector, in radians once scaled.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalVector<T>(Vec<T>);

impl<T: Scalar> ClassicalVector<T> {
    pub fn new(components: Vec<T>) -> Result<Self> {
        if components.is_empty() {
            return invalid("classical vector needs at least one component");
        }
        if components.iter().any(|c| !c.is_finite()) {
            return invalid("classical vector components must be finite");
        }
        Ok(Self(components))
    }

    /// Like [`ClassicalVector::new`] but also requires every component in [0, pi/2].
    pub fn scaled(components: Vec<T>) -> Result<Self> {
        let v = Self::new(components)?;
        if v.0.iter().any(|&c| c < T::zero() || c > T::FRAC_PI_2()) {
            return invalid("scaled components must lie in [0, pi/2]");
        }
        Ok(v)
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }
}

impl<T> std::ops::Deref for ClassicalVector<T> {
    type Target = [T];
    fn deref(&self) -> &[T] {
        &self.0
    }
}

/// Unit-norm complex vector of power-of-two length.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector<T>(Vec<Complex<T>>);

impl<T: Scalar> FeatureVector<T> {
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if !amplitudes.len().is_power_of_two() {
            return invalid(format!("feature length {} is not a power of two", amplitudes.len()));
        }
        let norm: T = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - T::one()).abs() > T::norm_tolerance() {
            return invalid("feature vector is not unit norm");
        }
        Ok(Self(amplitudes))
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |<self|other>|, insensitive to global phase.
    pub fn fidelity(&self, other: &[Complex<T>]) -> T {
        inner(&self.0, other).norm()
    }
}

fn inner<T: Scalar>(w: &[Complex<T>], i: &[Complex<T>]) -> Complex<T> {
    w.iter()
        .zip(i)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b)
}

/// |w* . i|^2
pub fn activation_closed_form<T: Scalar>(w: &FeatureVector<T>, i: &FeatureVector<T>) -> Result<T> {
    if w.len() != i.len() {
        return invalid(format!("feature lengths differ: {} vs {}", w.len(), i.len()));
    }
    Ok(inner(&w.0, &i.0).norm_sqr().min(T::one()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NeuronKind {
    Bvqn,
    Cvqn,
    Cdqn,
    Pcdqn,
}

impl NeuronKind {
    pub const ALL: [NeuronKind; 4] = [Self::Bvqn, Self::Cvqn, Self::Cdqn, Self::Pcdqn];

    pub fn name(self) -> &'static str {
        match self {
            Self::Bvqn => "bvqn",
            Self::Cvqn => "cvqn",
            Self::Cdqn => "cdqn",
            Self::Pcdqn => "pcdqn",
        }
    }
}

impl std::fmt::Display for NeuronKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for NeuronKind {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| crate::Error::InvalidArgument(format!("unknown neuron '{s}'")))
    }
}

/// A neuron pluggable into the framework circuit.
pub trait NeuronModel<T: Scalar> {
    fn kind(&self) -> NeuronKind;

    /// Data qubits needed for an `m`-component input, or an error if the
    /// neuron does not accept that arity.
    fn data_qubits(&self, m: usize) -> Result<usize>;

    /// The map the encoder realizes from |+>^n.
    fn feature_map(&self, v: &[T]) -> Result<FeatureVector<T>>;

    /// The input-side map seen by the ancilla. Differs from `feature_map`
    /// only when the decoder carries extra gates after undoing the weight.
    fn input_feature_map(&self, theta: &[T]) -> Result<FeatureVector<T>> {
        self.feature_map(theta)
    }

    fn encoder_gates(&self, theta: &[T]) -> Result<Vec<Gate<T>>>;

    fn decoder_gates(&self, phi: &[T]) -> Result<Vec<Gate<T>>>;

    /// Everything between the two Hadamard layers.
    fn kernel_gates(&self, theta: &[T], phi: &[T]) -> Result<Vec<Gate<T>>> {
        let mut gates = self.encoder_gates(theta)?;
        gates.extend(self.decoder_gates(phi)?);
        Ok(gates)
    }

    /// Closed-form firing probability.
    fn activation(&self, theta: &[T], phi: &[T]) -> Result<T>;
}

fn check_pair<T: Scalar, N: NeuronModel<T> + ?Sized>(
    neuron: &N,
    theta: &[T],
    phi: &[T],
) -> Result<usize> {
    if theta.len() != phi.len() {
        return invalid(format!("input has {} components, weight has {}", theta.len(), phi.len()));
    }
    if theta.iter().chain(phi).any(|x| !x.is_finite()) {
        return invalid("inputs must be finite");
    }
    neuron.data_qubits(theta.len())
}

/// Assembles the framework circuit on `n` data qubits plus a trailing ancilla.
pub fn build_framework_circuit<T: Scalar, N: NeuronModel<T> + ?Sized>(
    neuron: &N,
    theta: &[T],
    phi: &[T],
) -> Result<Circuit<T>> {
    let n = check_pair(neuron, theta, phi)?;
    let ancilla = n;
    let mut c = Circuit::new(n + 1)?;
    c.extend((0..n).map(Gate::Hadamard))?;
    c.extend(neuron.kernel_gates(theta, phi)?)?;
    c.extend((0..n).map(Gate::Hadamard))?;
    c.extend((0..n).map(Gate::PauliX))?;
    c.push(Gate::MultiControlledX { controls: (0..n).collect(), target: ancilla })?;
    c.measure(ancilla)?;
    Ok(c)
}

/// Final statevector of the framework circuit started from |0...0>.
pub fn framework_state<T: Scalar, N: NeuronModel<T> + ?Sized>(
    neuron: &N,
    theta: &[T],
    phi: &[T],
) -> Result<(Circuit<T>, StateVector<T>)> {
    let circuit = build_framework_circuit(neuron, theta, phi)?;
    let zero = StateVector::zero(circuit.num_qubits())?;
    let state = run(&circuit, &zero)?;
    Ok((circuit, state))
}

/// Ancilla firing probability obtained by simulating the framework circuit.
pub fn activation_from_circuit<T: Scalar, N: NeuronModel<T> + ?Sized>(
    neuron: &N,
    theta: &[T],
    phi: &[T],
) -> Result<T> {
    let (circuit, state) = framework_state(neuron, theta, phi)?;
    state.one_probability(circuit.num_qubits() - 1)
}

/// |<Phi(phi)|Phi_in(theta)>|^2 computed from the neuron's feature maps.
pub fn activation_from_features<T: Scalar, N: NeuronModel<T> + ?Sized>(
    neuron: &N,
    theta: &[T],
    phi: &[T],
) -> Result<T> {
    check_pair(neuron, theta, phi)?;
    activation_closed_form(&neuron.feature_map(phi)?, &neuron.input_feature_map(theta)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn fv(v: &[(f64, f64)]) -> FeatureVector<f64> {
        FeatureVector::new(v.iter().map(|&(r, i)| Complex::new(r, i)).collect()).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let a = fv(&[(h, 0.0), (0.0, h)]);
        assert_abs_diff_eq!(activation_closed_form(&a, &a).unwrap(), 1.0, epsilon = 1e-15);
        let e0 = fv(&[(1.0, 0.0), (0.0, 0.0)]);
        let e1 = fv(&[(0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(activation_closed_form(&e0, &e1).unwrap(), 0.0);
        let plus = fv(&[(h, 0.0), (h, 0.0)]);
        assert_abs_diff_eq!(activation_closed_form(&plus, &e0).unwrap(), 0.5, epsilon = 1e-15);
        let four = fv(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        assert!(activation_closed_form(&four, &e0).is_err());
    }

    #[test]
    fn feature_vector_invariants() {
        assert!(FeatureVector::new(vec![Complex::new(1.0, 0.0); 3]).is_err());
        assert!(FeatureVector::new(vec![Complex::new(1.0, 0.0); 2]).is_err());
    }

    #[test]
    fn classical_vector_invariants() {
        assert!(ClassicalVector::<f64>::new(vec![]).is_err());
        assert!(ClassicalVector::new(vec![f64::INFINITY]).is_err());
        assert!(ClassicalVector::scaled(vec![0.0, 1.6]).is_err());
        assert!(ClassicalVector::scaled(vec![0.0, std::f64::consts::FRAC_PI_2]).is_ok());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("PCDQN".parse::<NeuronKind>().unwrap(), NeuronKind::Pcdqn);
        assert!("foo".parse::<NeuronKind>().is_err());
    }
}
