//! Experiment drivers behind the `locent` command line: sampling sweeps,
//! fraction tables, noise curves, spin-chain fits and self-checks.

pub mod config;
pub mod manifest;
pub mod noise_curve;
pub mod output;
pub mod scatter;
pub mod spin;
pub mod table;
pub mod verify;

use std::sync::Arc;

use locent::localize::{LocalizationStrategy, StrategyRegistry};

/// Exit status for a completed run that found a violated invariant or bound.
pub const EXIT_VIOLATION: i32 = 1;
/// Exit status for malformed arguments, configs or parameters.
pub const EXIT_USAGE: i32 = 2;

/// Bad input from the user, reported with exit status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

/// A record failed its own invariants; nothing was written.
#[derive(Debug, thiserror::Error)]
#[error("record {state_index} violates {invariant}: {detail}")]
pub struct InvariantViolation {
    pub state_index: usize,
    pub invariant: &'static str,
    pub detail: String,
}

/// Exit status for an error returned by a command.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<UsageError>().is_some() {
        return EXIT_USAGE;
    }
    if let Some(e) = err.downcast_ref::<locent::Error>() {
        use locent::Error::*;
        return match e {
            UnknownName { .. }
            | InvalidTripartition(_)
            | InvalidParameter(_)
            | Domain { .. }
            | SizeBudget { .. }
            | QubitOutOfRange { .. }
            | EmptyQubitSet
            | DuplicateQubit(_) => EXIT_USAGE,
            _ => EXIT_VIOLATION,
        };
    }
    EXIT_VIOLATION
}

pub fn strategy(name: &str) -> anyhow::Result<Arc<dyn LocalizationStrategy>> {
    Ok(StrategyRegistry::builtin().get(name)?)
}
