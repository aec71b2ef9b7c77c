use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit index {index} out of range for a {n_qubits}-qubit system")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("qubit set must not be empty")]
    EmptyQubitSet,

    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),

    #[error("invalid tripartition: {0}")]
    InvalidTripartition(String),

    #[error("amplitude vector has length {len}, expected {expected}")]
    DimensionMismatch { len: usize, expected: usize },

    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("density matrix invariant violated: {0}")]
    InvalidDensityMatrix(String),

    #[error("angle {name} = {value} outside [{lo}, {hi}]")]
    AngleOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("value {value} outside the domain [{lo}, {hi}] of {what}")]
    Domain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("{n_qubits} qubits exceeds the budget of {max} for {what}")]
    SizeBudget {
        what: &'static str,
        n_qubits: usize,
        max: usize,
    },

    #[error("closed form not applicable: {0}")]
    ClosedFormNotApplicable(String),

    #[error("unknown {kind} '{name}'")]
    UnknownName { kind: &'static str, name: String },

    #[error("rank-deficient least-squares design: {0}")]
    RankDeficient(String),

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
