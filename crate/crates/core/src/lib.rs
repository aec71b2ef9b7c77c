//! Localizable entanglement versus the bipartite entanglement destroyed by
//! the localizing measurement, for multi-qubit pure states, phase-flip noisy
//! states and spin-chain ground states.

pub mod bounds;
pub mod closed_form;
pub mod error;
pub mod family;
pub mod linalg;
pub mod localize;
pub mod noise;
pub mod oracle;
pub mod qcore;
pub mod spinchain;
pub mod states;

pub use error::{Error, Result};
pub use linalg::C64;
pub use qcore::{DensityMatrix, PureState, Tripartition};
