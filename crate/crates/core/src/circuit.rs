//! Gate lists over a fixed qubit register, with depth/size accounting.
//!
//! Multi-controlled gates are logical gates: each counts as one operation and
//! occupies every qubit it touches for a single time step. A measurement
//! marker adds one operation and one time step on the measured qubit.

use crate::error::{invalid, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum Gate<T> {
    Hadamard(usize),
    PauliX(usize),
    /// diag(1, e^{i angle})
    Phase { target: usize, angle: T },
    MultiControlledX { controls: Vec<usize>, target: usize },
    /// Multiplies the amplitude by e^{i angle} when every control and the target are 1.
    MultiControlledPhase { controls: Vec<usize>, target: usize, angle: T },
}

impl<T: Scalar> Gate<T> {
    /// All qubits the gate acts on, controls first, target last.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Hadamard(q) | Gate::PauliX(q) => vec![*q],
            Gate::Phase { target, .. } => vec![*target],
            Gate::MultiControlledX { controls, target }
            | Gate::MultiControlledPhase { controls, target, .. } => {
                let mut qs = controls.clone();
                qs.push(*target);
                qs
            }
        }
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q >= num_qubits {
                return invalid(format!("qubit {q} out of range for {num_qubits} qubits"));
            }
            if qs[..i].contains(&q) {
                return invalid(format!("qubit {q} used twice in one gate"));
            }
        }
        match self {
            Gate::Phase { angle, .. } | Gate::MultiControlledPhase { angle, .. }
                if !angle.is_finite() =>
            {
                invalid("phase angle must be finite")
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit<T> {
    num_qubits: usize,
    gates: Vec<Gate<T>>,
    measured_qubit: Option<usize>,
}

impl<T: Scalar> Circuit<T> {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return invalid("a circuit needs at least one qubit");
        }
        Ok(Self { num_qubits, gates: Vec::new(), measured_qubit: None })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate<T>] {
        &self.gates
    }

    pub fn measured_qubit(&self) -> Option<usize> {
        self.measured_qubit
    }

    pub fn push(&mut self, gate: Gate<T>) -> Result<&mut Self> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(self)
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate<T>>) -> Result<&mut Self> {
        for g in gates {
            self.push(g)?;
        }
        Ok(self)
    }

    pub fn measure(&mut self, qubit: usize) -> Result<&mut Self> {
        if qubit >= self.num_qubits {
            return invalid(format!("measured qubit {qubit} out of range"));
        }
        self.measured_qubit = Some(qubit);
        Ok(self)
    }

    /// Number of gates, plus one for the measurement marker.
    pub fn size(&self) -> usize {
        self.gates.len() + usize::from(self.measured_qubit.is_some())
    }

    /// Length of the longest qubit-time path (ASAP layering).
    pub fn depth(&self) -> usize {
        let mut front = vec![0usize; self.num_qubits];
        for gate in &self.gates {
            let qs = gate.qubits();
            let t = qs.iter().map(|&q| front[q]).max().unwrap_or(0) + 1;
            for q in qs {
                front[q] = t;
            }
        }
        if let Some(q) = self.measured_qubit {
            front[q] += 1;
        }
        front.into_iter().max().unwrap_or(0)
    }
}
