//! Sampled `(E_{A1A2:B}, E_{A1:A2B}, E_{A2:A1B}, <E>)` tuples for a state family.

use std::sync::Arc;

use locent::bounds::{check_profile, BoundCheck};
use locent::family::{Family, FamilyRegistry, StateFamily};
use locent::localize::{
    cut_negativities, EntanglementProfile, LocalizationStrategy, MeasurementProblem,
};
use locent::noise::{apply_phase_flip, NoiseSpec};
use locent::qcore::Tripartition;
use locent::states::stream_rng;
use rayon::prelude::*;

use crate::output::{sig12, Table};
use crate::InvariantViolation;

pub const HEADER: [&str; 16] = [
    "family",
    "n_qubits",
    "n",
    "m",
    "q",
    "alpha",
    "e_ab",
    "e_a1",
    "e_a2",
    "le",
    "delta1",
    "delta2",
    "seed",
    "state_index",
    "checks",
    "violations",
];

#[derive(Clone, Debug)]
pub struct ScatterConfig {
    pub family: Arc<dyn StateFamily>,
    pub n_qubits: usize,
    /// `|B|`, measured qubits.
    pub n: usize,
    /// `|A1|`.
    pub m: usize,
    pub samples: usize,
    pub noise: NoiseSpec,
    pub seed: u64,
    pub strategy: Arc<dyn LocalizationStrategy>,
}

impl ScatterConfig {
    pub fn new(
        family: &str,
        n_qubits: usize,
        n: usize,
        m: usize,
        samples: usize,
        seed: u64,
    ) -> anyhow::Result<Self> {
        Ok(Self {
            family: FamilyRegistry::builtin().get(family)?,
            n_qubits,
            n,
            m,
            samples,
            noise: NoiseSpec::noiseless(),
            seed,
            strategy: crate::strategy("multistart")?,
        })
    }

    pub fn tripartition(&self) -> locent::Result<Tripartition> {
        Tripartition::contiguous(self.n_qubits, self.n, self.m)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScatterRecord {
    pub family: Family,
    pub n_qubits: usize,
    pub n: usize,
    pub m: usize,
    pub q: f64,
    pub alpha: f64,
    pub profile: EntanglementProfile,
    pub seed: u64,
    pub state_index: usize,
    pub checks: Vec<BoundCheck>,
}

impl ScatterRecord {
    pub fn delta1(&self) -> f64 {
        self.profile.delta1()
    }

    pub fn delta2(&self) -> f64 {
        self.profile.delta2()
    }

    pub fn violations(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| !c.satisfied)
    }

    /// `delta2 <= 1e-9`, `le >= 0`, every negativity `>= -1e-12`.
    pub fn validate(&self) -> Result<(), InvariantViolation> {
        let fail = |invariant, detail| {
            Err(InvariantViolation {
                state_index: self.state_index,
                invariant,
                detail,
            })
        };
        let p = &self.profile;
        if self.delta2() > 1e-9 {
            return fail("delta2 <= 1e-9", format!("delta2 = {:e}", self.delta2()));
        }
        if p.le < 0.0 || !p.le.is_finite() {
            return fail("le >= 0", format!("le = {:e}", p.le));
        }
        for (name, v) in [("e_ab", p.e_ab), ("e_a1", p.e_a1), ("e_a2", p.e_a2)] {
            if v < -1e-12 || !v.is_finite() {
                return fail("entanglement >= -1e-12", format!("{name} = {v:e}"));
            }
        }
        Ok(())
    }

    pub fn row(&self) -> Vec<String> {
        let p = &self.profile;
        let violations: Vec<&str> = self.violations().map(|c| c.tag.name()).collect();
        vec![
            self.family.name().to_string(),
            self.n_qubits.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            sig12(self.q),
            sig12(self.alpha),
            sig12(p.e_ab),
            sig12(p.e_a1),
            sig12(p.e_a2),
            sig12(p.le),
            sig12(self.delta1()),
            sig12(self.delta2()),
            self.seed.to_string(),
            self.state_index.to_string(),
            self.checks.len().to_string(),
            violations.join(";"),
        ]
    }
}

/// Negativities and localized value of sample `index`, drawn from stream
/// `index` of `seed`.
pub fn sample_profile(
    family: &dyn StateFamily,
    n_qubits: usize,
    tri: &Tripartition,
    noise: &NoiseSpec,
    seed: u64,
    index: u64,
    strategy: &dyn LocalizationStrategy,
    early_stop: Option<f64>,
) -> locent::Result<EntanglementProfile> {
    let psi = family.sample(n_qubits, &mut stream_rng(seed, index))?;
    let (e_ab, e_a1, e_a2, problem) = if noise.q() == 0.0 {
        let (a, b, c) = cut_negativities(&psi, tri)?;
        (a, b, c, MeasurementProblem::new(&psi, tri)?)
    } else {
        let rho = apply_phase_flip(&psi, noise)?;
        let (a, b, c) = cut_negativities(&rho, tri)?;
        (a, b, c, MeasurementProblem::new(&rho, tri)?)
    };
    let le = strategy
        .localize(&problem, early_stop.map(|d| e_ab + d))
        .value;
    Ok(EntanglementProfile {
        e_ab,
        e_a1,
        e_a2,
        le,
    })
}

/// Records in `state_index` order; each is validated before it is returned.
pub fn run_scatter(cfg: &ScatterConfig) -> anyhow::Result<Vec<ScatterRecord>> {
    let tri = cfg.tripartition()?;
    cfg.family.check_size(cfg.n_qubits)?;
    let records: Vec<ScatterRecord> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let profile = sample_profile(
                cfg.family.as_ref(),
                cfg.n_qubits,
                &tri,
                &cfg.noise,
                cfg.seed,
                i as u64,
                cfg.strategy.as_ref(),
                None,
            )?;
            Ok(ScatterRecord {
                family: cfg.family.tag(),
                n_qubits: cfg.n_qubits,
                n: cfg.n,
                m: cfg.m,
                q: cfg.noise.q(),
                alpha: cfg.noise.alpha(),
                checks: check_profile(&profile, Some(cfg.family.tag()), &cfg.noise),
                profile,
                seed: cfg.seed,
                state_index: i,
            })
        })
        .collect::<locent::Result<_>>()?;
    for r in &records {
        r.validate()?;
    }
    Ok(records)
}

pub fn to_table(records: &[ScatterRecord]) -> Table {
    let mut t = Table::new(&HEADER);
    for r in records {
        t.push(r.row());
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gghz_records_show_equality() {
        let cfg = ScatterConfig::new("gghz", 4, 1, 1, 20, 3).unwrap();
        let recs = run_scatter(&cfg).unwrap();
        assert_eq!(recs.len(), 20);
        for r in &recs {
            assert!((r.profile.le - r.profile.e_ab).abs() < 1e-8);
            assert_eq!(r.violations().count(), 0);
        }
        assert_eq!(to_table(&recs).rows[5][13], "5");
    }

    #[test]
    fn rejects_bad_partition() {
        let cfg = ScatterConfig::new("haar", 3, 2, 1, 1, 0).unwrap();
        assert!(run_scatter(&cfg).is_err());
        assert!(ScatterConfig::new("cluster", 3, 1, 1, 1, 0).is_err());
    }
}
