//! Named measurement-optimization strategies.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::{LocalizationResult, MeasurementBasis, MeasurementProblem, NelderMead};
use crate::error::{Error, Result};
use crate::states::stream_rng;

/// Where an optimizer run started.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StartLabel {
    SigmaX,
    SigmaY,
    SigmaZ,
    Random(usize),
    Fixed,
}

impl fmt::Display for StartLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StartLabel::SigmaX => write!(f, "sigma-x"),
            StartLabel::SigmaY => write!(f, "sigma-y"),
            StartLabel::SigmaZ => write!(f, "sigma-z"),
            StartLabel::Random(i) => write!(f, "random-{i}"),
            StartLabel::Fixed => write!(f, "fixed"),
        }
    }
}

fn seed_params(label: StartLabel, n: usize) -> Vec<f64> {
    let (t, p) = match label {
        StartLabel::SigmaX => (FRAC_PI_2, 0.0),
        StartLabel::SigmaY => (FRAC_PI_2, FRAC_PI_2),
        _ => (0.0, 0.0),
    };
    (0..n).flat_map(|_| [t, p]).collect()
}

/// Maximizes the average `A1:A2` negativity of a prepared problem.
pub trait LocalizationStrategy: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    /// `target`: stop as soon as a value `>= target` is found.
    fn localize(&self, problem: &MeasurementProblem, target: Option<f64>) -> LocalizationResult;
}

struct Run {
    label: StartLabel,
    x: Vec<f64>,
    value: f64,
    evaluations: usize,
    converged: bool,
    reached_target: bool,
}

fn finish(problem: &MeasurementProblem, runs: Vec<Run>) -> LocalizationResult {
    let evaluations = runs.iter().map(|r| r.evaluations).sum();
    let start_values = runs.iter().map(|r| (r.label, r.value)).collect();
    let best = runs
        .into_iter()
        .reduce(|a, b| if b.value > a.value { b } else { a })
        .expect("at least one start");
    let optimal_basis = MeasurementBasis::canonical(&best.x);
    let per_outcome = problem
        .outcome_stats(&optimal_basis)
        .expect("basis sized from problem");
    let value = per_outcome
        .iter()
        .map(|s| s.probability * s.entanglement)
        .sum();
    LocalizationResult {
        value,
        optimal_basis,
        per_outcome,
        evaluations,
        budget_exhausted: !best.converged && !best.reached_target,
        reached_target: best.reached_target,
        best_start: best.label,
        start_values,
    }
}

/// Nelder–Mead from the three Pauli seeds followed by `random_starts`
/// uniformly drawn angle sets.
#[derive(Clone, Debug)]
pub struct MultiStart {
    pub random_starts: usize,
    pub optimizer: NelderMead,
    /// Seed for the random starting angles.
    pub seed: u64,
}

impl Default for MultiStart {
    fn default() -> Self {
        Self {
            random_starts: 8,
            optimizer: NelderMead::default(),
            seed: 0x5eed1e,
        }
    }
}

impl MultiStart {
    fn starts(&self, n: usize) -> Vec<(StartLabel, Vec<f64>)> {
        let mut out: Vec<(StartLabel, Vec<f64>)> =
            [StartLabel::SigmaX, StartLabel::SigmaY, StartLabel::SigmaZ]
                .into_iter()
                .map(|l| (l, seed_params(l, n)))
                .collect();
        let mut rng = stream_rng(self.seed, n as u64);
        for i in 0..self.random_starts {
            let x = (0..n)
                .flat_map(|_| [rng.random_range(0.0..PI), rng.random_range(0.0..TAU)])
                .collect();
            out.push((StartLabel::Random(i), x));
        }
        out
    }
}

impl LocalizationStrategy for MultiStart {
    fn name(&self) -> &str {
        "multistart"
    }

    fn localize(&self, problem: &MeasurementProblem, target: Option<f64>) -> LocalizationResult {
        let mut runs = Vec::new();
        for (label, x0) in self.starts(problem.n_measured()) {
            let out = self
                .optimizer
                .maximize(|x| problem.objective(x), &x0, target);
            let stop = out.reached_target;
            runs.push(Run {
                label,
                x: out.x,
                value: out.value,
                evaluations: out.evaluations,
                converged: out.converged,
                reached_target: out.reached_target,
            });
            if stop {
                break;
            }
        }
        finish(problem, runs)
    }
}

/// Best of the three Pauli bases, no optimization.
#[derive(Clone, Copy, Debug, Default)]
pub struct SeedBases;

impl LocalizationStrategy for SeedBases {
    fn name(&self) -> &str {
        "seeds"
    }

    fn localize(&self, problem: &MeasurementProblem, _target: Option<f64>) -> LocalizationResult {
        let n = problem.n_measured();
        let runs = [StartLabel::SigmaX, StartLabel::SigmaY, StartLabel::SigmaZ]
            .into_iter()
            .map(|label| {
                let x = seed_params(label, n);
                Run {
                    label,
                    value: problem.objective(&x),
                    x,
                    evaluations: 1,
                    converged: true,
                    reached_target: false,
                }
            })
            .collect();
        finish(problem, runs)
    }
}

/// The same `(θ, φ)` on every measured qubit.
#[derive(Clone, Debug)]
pub struct FixedBasis {
    pub name: String,
    pub theta: f64,
    pub phi: f64,
}

impl FixedBasis {
    pub fn sigma_x() -> Self {
        Self {
            name: "sigma-x".into(),
            theta: FRAC_PI_2,
            phi: 0.0,
        }
    }

    pub fn sigma_y() -> Self {
        Self {
            name: "sigma-y".into(),
            theta: FRAC_PI_2,
            phi: FRAC_PI_2,
        }
    }

    pub fn sigma_z() -> Self {
        Self {
            name: "sigma-z".into(),
            theta: 0.0,
            phi: 0.0,
        }
    }
}

impl LocalizationStrategy for FixedBasis {
    fn name(&self) -> &str {
        &self.name
    }

    fn localize(&self, problem: &MeasurementProblem, _target: Option<f64>) -> LocalizationResult {
        let x: Vec<f64> = (0..problem.n_measured())
            .flat_map(|_| [self.theta, self.phi])
            .collect();
        let run = Run {
            label: StartLabel::Fixed,
            value: problem.objective(&x),
            x,
            evaluations: 1,
            converged: true,
            reached_target: false,
        };
        finish(problem, vec![run])
    }
}

/// Strategies addressable by name.
#[derive(Clone, Debug, Default)]
pub struct StrategyRegistry {
    entries: BTreeMap<String, Arc<dyn LocalizationStrategy>>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `multistart`, `seeds`, `sigma-x`, `sigma-y`, `sigma-z`.
    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(MultiStart::default()));
        r.register(Arc::new(SeedBases));
        r.register(Arc::new(FixedBasis::sigma_x()));
        r.register(Arc::new(FixedBasis::sigma_y()));
        r.register(Arc::new(FixedBasis::sigma_z()));
        r
    }

    /// Replaces any strategy already registered under the same name.
    pub fn register(&mut self, s: Arc<dyn LocalizationStrategy>) {
        self.entries.insert(s.name().to_string(), s);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn LocalizationStrategy>> {
        self.entries
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownName {
                kind: "localization strategy",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.keys().map(String::as_str).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;
    use crate::qcore::{PureState, Tripartition};
    use crate::states::{make_gghz, GghzParams};

    fn gghz(n: usize, a0: f64) -> PureState {
        make_gghz(&GghzParams {
            n_qubits: n,
            a0: C64::new(a0, 0.0),
            a1: C64::new((1.0 - a0 * a0).sqrt(), 0.0),
        })
        .unwrap()
    }

    #[test]
    fn registry_lookup() {
        let r = StrategyRegistry::builtin();
        assert_eq!(
            r.names(),
            vec!["multistart", "seeds", "sigma-x", "sigma-y", "sigma-z"]
        );
        assert_eq!(r.get("seeds").unwrap().name(), "seeds");
        assert!(matches!(r.get("annealing"), Err(Error::UnknownName { .. })));
    }

    #[test]
    fn multistart_finds_gghz_optimum_from_random_starts_only() {
        let psi = gghz(4, 0.6);
        let tri = Tripartition::contiguous(4, 2, 1).unwrap();
        let problem = MeasurementProblem::new(&psi, &tri).unwrap();
        let ms = MultiStart::default();
        let res = ms.localize(&problem, None);
        assert!((res.value - 0.96).abs() < 1e-8);
        for &(t, _) in res.optimal_basis.angles() {
            assert!((t - FRAC_PI_2).abs() < 1e-3);
        }
        for (label, v) in &res.start_values {
            if let StartLabel::Random(_) = label {
                assert!(*v > 0.96 - 1e-6, "{label}: {v}");
            }
        }
        assert_eq!(res.start_values.len(), 11);
        let total: f64 = res.per_outcome.iter().map(|s| s.probability).sum();
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn target_stops_early() {
        let psi = gghz(3, 0.6);
        let tri = Tripartition::contiguous(3, 1, 1).unwrap();
        let problem = MeasurementProblem::new(&psi, &tri).unwrap();
        let res = MultiStart::default().localize(&problem, Some(0.5));
        assert!(res.reached_target);
        assert_eq!(res.best_start, StartLabel::SigmaX);
        assert_eq!(res.start_values.len(), 1);
    }

    #[test]
    fn multistart_is_deterministic() {
        let psi = gghz(4, 0.8);
        let tri = Tripartition::contiguous(4, 1, 1).unwrap();
        let problem = MeasurementProblem::new(&psi, &tri).unwrap();
        let a = MultiStart::default().localize(&problem, None);
        let b = MultiStart::default().localize(&problem, None);
        assert_eq!(a.value, b.value);
        assert_eq!(a.optimal_basis, b.optimal_basis);
        assert_eq!(a.evaluations, b.evaluations);
    }
}
