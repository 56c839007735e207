//! Kernel-machine quantum neurons.
//!
//! A quantum neuron maps classical input and weight vectors to unit complex
//! feature vectors and fires with probability equal to the squared modulus of
//! their inner product. This crate provides:
//!
//! - an exact dense statevector simulator with depth/size accounting
//!   ([`statevector`], [`circuit`]);
//! - the generic framework circuit and the [`NeuronModel`] extension point
//!   ([`framework`]);
//! - the BVQN, CVQN, CDQN and PCDQN neurons, in closed form and as gates
//!   ([`neurons`]);
//! - the benchmark datasets and the search/shape/estimation/growth studies
//!   ([`datasets`], [`analysis`]).
//!
//! Numerics are generic over [`Scalar`] (`f32` or `f64`); the `*64` and `*32`
//! aliases below fix the precision.

pub mod analysis;
pub mod circuit;
pub mod datasets;
pub mod error;
pub mod framework;
pub mod neurons;
pub mod scalar;
pub mod statevector;

pub use circuit::{Circuit, Gate};
pub use datasets::{DatasetKind, DatasetSpec, LabeledDataset, Target};
pub use error::{Error, Result};
pub use framework::{
    activation_closed_form, activation_from_circuit, build_framework_circuit, ClassicalVector, FeatureVector,
    NeuronKind, NeuronModel,
};
pub use neurons::{BinaryVector, Neuron, PcdqnParams};
pub use scalar::Scalar;
pub use statevector::{run, StateVector, MAX_QUBITS};

pub type StateVector64 = StateVector<f64>;
pub type Circuit64 = Circuit<f64>;
pub type Gate64 = Gate<f64>;
pub type FeatureVector64 = FeatureVector<f64>;
pub type ClassicalVector64 = ClassicalVector<f64>;
pub type Neuron64 = Neuron<f64>;
pub type PcdqnParams64 = PcdqnParams<f64>;
pub type LabeledDataset64 = LabeledDataset<f64>;
pub type SearchResult64 = analysis::SearchResult<f64>;

pub type StateVector32 = StateVector<f32>;
pub type Circuit32 = Circuit<f32>;
pub type FeatureVector32 = FeatureVector<f32>;
pub type Neuron32 = Neuron<f32>;
pub type LabeledDataset32 = LabeledDataset<f32>;
