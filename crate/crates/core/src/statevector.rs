//! Dense statevector simulation.
//!
//! Qubit ordering is big-endian: qubit 0 is the most significant bit of the
//! basis index, so on q qubits qubit k selects bit `q - 1 - k`.
//!
//! Shot sampling uses ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded through
//! `SeedableRng::seed_from_u64`, and draws each shot as a Bernoulli trial
//! with `rand::distr::Bernoulli`, which compares one `u64` per shot against
//! `p * 2^64`. Both algorithms are platform independent, so counts are
//! reproducible everywhere for a given seed.

use num_complex::Complex;
use rand::distr::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate};
use crate::error::{invalid, Result};
use crate::scalar::Scalar;

/// Largest register the simulator allocates: 12 data qubits plus one ancilla.
pub const MAX_QUBITS: usize = 13;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    num_qubits: usize,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Scalar> StateVector<T> {
    /// |0...0> on `num_qubits` qubits.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        check_register(num_qubits)?;
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); 1 << num_qubits];
        amplitudes[0] = Complex::new(T::one(), T::zero());
        Ok(Self { num_qubits, amplitudes })
    }

    /// Computational basis state |index>.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let mut s = Self::zero(num_qubits)?;
        if index >= s.amplitudes.len() {
            return invalid(format!("basis index {index} out of range"));
        }
        s.amplitudes.swap(0, index);
        Ok(s)
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() || len < 2 {
            return invalid(format!("{len} amplitudes is not 2^q with q >= 1"));
        }
        let num_qubits = len.trailing_zeros() as usize;
        check_register(num_qubits)?;
        let s = Self { num_qubits, amplitudes };
        if (s.norm_sqr() - T::one()).abs() > T::norm_tolerance() {
            return invalid("amplitudes are not normalized");
        }
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// <self|other>
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b)
    }

    fn mask(&self, qubit: usize) -> usize {
        1 << (self.num_qubits - 1 - qubit)
    }

    pub fn apply(&mut self, gate: &Gate<T>) -> Result<()> {
        gate.validate(self.num_qubits)?;
        match gate {
            Gate::Hadamard(q) => {
                let m = self.mask(*q);
                let h = T::FRAC_1_SQRT_2();
                for i in (0..self.amplitudes.len()).filter(|i| i & m == 0) {
                    let a = self.amplitudes[i];
                    let b = self.amplitudes[i | m];
                    self.amplitudes[i] = (a + b) * h;
                    self.amplitudes[i | m] = (a - b) * h;
                }
            }
            Gate::PauliX(q) => {
                let m = self.mask(*q);
                for i in (0..self.amplitudes.len()).filter(|i| i & m == 0) {
                    self.amplitudes.swap(i, i | m);
                }
            }
            Gate::Phase { target, angle } => {
                let m = self.mask(*target);
                self.phase_where(m, *angle);
            }
            Gate::MultiControlledX { controls, target } => {
                let cm = controls.iter().fold(0, |acc, &c| acc | self.mask(c));
                let tm = self.mask(*target);
                for i in 0..self.amplitudes.len() {
                    if i & cm == cm && i & tm == 0 {
                        self.amplitudes.swap(i, i | tm);
                    }
                }
            }
            Gate::MultiControlledPhase { controls, target, angle } => {
                let m = controls.iter().fold(self.mask(*target), |acc, &c| acc | self.mask(c));
                self.phase_where(m, *angle);
            }
        }
        Ok(())
    }

    fn phase_where(&mut self, mask: usize, angle: T) {
        let factor = Complex::from_polar(T::one(), angle);
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            if i & mask == mask {
                *a = *a * factor;
            }
        }
    }

    /// Probability that measuring `qubit` yields 1.
    pub fn one_probability(&self, qubit: usize) -> Result<T> {
        if qubit >= self.num_qubits {
            return invalid(format!("qubit {qubit} out of range"));
        }
        let m = self.mask(qubit);
        let p: T = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| i & m != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        Ok(p.max(T::zero()).min(T::one()))
    }

    /// Number of 1 outcomes in `shots` independent measurements of `qubit`.
    pub fn sample_shots(&self, qubit: usize, shots: u64, seed: u64) -> Result<u64> {
        let p = self.one_probability(qubit)?;
        sample_bernoulli(p, shots, seed)
    }
}

/// Counts successes of `shots` Bernoulli(p) trials drawn from ChaCha8 seeded with `seed`.
pub fn sample_bernoulli<T: Scalar>(p: T, shots: u64, seed: u64) -> Result<u64> {
    if shots == 0 {
        return invalid("shots must be at least 1");
    }
    let p = p.to_f64().unwrap_or(f64::NAN);
    if !(0.0..=1.0).contains(&p) {
        return invalid(format!("probability {p} outside [0, 1]"));
    }
    let dist = Bernoulli::new(p).map_err(|e| crate::Error::InvalidArgument(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..shots).filter(|_| dist.sample(&mut rng)).count() as u64)
}

fn check_register(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return invalid(format!("qubit count {num_qubits} outside 1..={MAX_QUBITS}"));
    }
    Ok(())
}

/// Applies the circuit's gates in order to a copy of `state`.
pub fn run<T: Scalar>(circuit: &Circuit<T>, state: &StateVector<T>) -> Result<StateVector<T>> {
    if circuit.num_qubits() != state.num_qubits() {
        return invalid(format!(
            "circuit has {} qubits, state has {}",
            circuit.num_qubits(),
            state.num_qubits()
        ));
    }
    let mut out = state.clone();
    for g in circuit.gates() {
        out.apply(g)?;
    }
    Ok(out)
}
