//! Circuit synthesis for factorized unitary coupled-cluster (UCC) operators
//! under the Jordan-Wigner encoding, together with ancilla-assisted
//! decompositions of high-rank factors into doubles and controlled doubles.
//!
//! Conventions used throughout:
//!
//! * qubit 0 is the least-significant bit of a basis-state index, and an
//!   occupied orbital is `|1⟩`;
//! * `a_p = ½(X + iY)` on qubit `q(p)` times `Z` on every qubit above it;
//! * a UCC factor with angle `θ` is `exp(θ(A − A†))`.

pub mod circuit;
pub mod cli;
pub mod controlled;
pub mod dense;
pub mod error;
pub mod fermion;
pub mod pauli;
pub mod resources;
pub mod schemes;
pub mod sim;
pub mod synth;
pub mod verify;

pub use circuit::{adjoint, compose, count_gates, export_text, import_text, unitary, Circuit, Gate, GateCounts};
pub use controlled::{lower_all, lower_mcrz, synth_controlled_ucc, ControlledFactorSpec};
pub use error::{Error, Result};
pub use fermion::{jw_generator, jw_ladder, ExcitationOperator, JwConvention};
pub use pauli::{PauliAxis, PauliString, PauliSum};
pub use schemes::{compile, CompiledPlan, DecompositionPlan, Scheme, Step, StepAngle};
pub use sim::{Determinant, StateVector};
pub use synth::{parity_of_cascade, synth_pauli_exponential, synth_ucc_factor};
