//! Entanglement of one fixed state along a grid of phase-flip strengths.

use locent::bounds::{gghz_noise_scale, gw_noise_scale};
use locent::family::{Family, FamilyRegistry};
use locent::localize::{cut_negativities, LocalizationStrategy, MeasurementProblem};
use locent::noise::{apply_phase_flip, NoiseSpec};
use locent::qcore::Tripartition;
use locent::states::stream_rng;

use crate::output::{sig12, Table};
use crate::UsageError;

pub const HEADER: [&str; 9] = [
    "family",
    "n_qubits",
    "q",
    "alpha",
    "factor",
    "le",
    "e_ab",
    "le_ratio",
    "e_ab_ratio",
];

#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub family: Family,
    pub n_qubits: usize,
    pub q: f64,
    /// Zero for Markovian noise.
    pub alpha: f64,
    /// Predicted multiplicative factor on the noiseless entanglement.
    pub factor: f64,
    pub le: f64,
    pub e_ab: f64,
    pub le_clean: f64,
    pub e_ab_clean: f64,
}

impl CurvePoint {
    fn ratio(x: f64, clean: f64) -> f64 {
        if clean > 0.0 {
            x / clean
        } else {
            0.0
        }
    }

    pub fn le_ratio(&self) -> f64 {
        Self::ratio(self.le, self.le_clean)
    }

    pub fn e_ab_ratio(&self) -> f64 {
        Self::ratio(self.e_ab, self.e_ab_clean)
    }

    pub fn row(&self) -> Vec<String> {
        vec![
            self.family.name().to_string(),
            self.n_qubits.to_string(),
            sig12(self.q),
            sig12(self.alpha),
            sig12(self.factor),
            sig12(self.le),
            sig12(self.e_ab),
            sig12(self.le_ratio()),
            sig12(self.e_ab_ratio()),
        ]
    }
}

/// `n` evenly spaced strengths covering `[0, 1]`.
pub fn unit_grid(n: usize) -> Vec<f64> {
    locent::spinchain::grid(0.0, 1.0, n)
}

/// Sweeps `qs` for each `alpha` (`0` meaning Markovian) on the state drawn
/// from stream 0 of `seed`, with `B` the first qubit and `A1` the second.
pub fn run_noise_curve(
    family: Family,
    n_qubits: usize,
    qs: &[f64],
    alphas: &[f64],
    seed: u64,
    strategy: &dyn LocalizationStrategy,
) -> anyhow::Result<Vec<CurvePoint>> {
    if !matches!(family, Family::Gghz | Family::Gw) {
        return Err(UsageError(format!(
            "noise curves have closed-form factors only for gghz and gw, not {family}"
        ))
        .into());
    }
    let sampler = FamilyRegistry::builtin().get(family.name())?;
    let psi = sampler.sample(n_qubits, &mut stream_rng(seed, 0))?;
    let tri = Tripartition::contiguous(n_qubits, 1, 1)?;
    let (e_ab_clean, _, _) = cut_negativities(&psi, &tri)?;
    let le_clean = strategy
        .localize(&MeasurementProblem::new(&psi, &tri)?, None)
        .value;
    let mut out = Vec::new();
    for &alpha in alphas {
        for &q in qs {
            let spec = if alpha == 0.0 {
                NoiseSpec::markovian(q)?
            } else {
                NoiseSpec::non_markovian(q, alpha)?
            };
            let factor = match family {
                Family::Gghz => gghz_noise_scale(&spec, n_qubits),
                _ => gw_noise_scale(&spec),
            };
            let rho = apply_phase_flip(&psi, &spec)?;
            let (e_ab, _, _) = cut_negativities(&rho, &tri)?;
            let le = strategy
                .localize(&MeasurementProblem::new(&rho, &tri)?, None)
                .value;
            out.push(CurvePoint {
                family,
                n_qubits,
                q,
                alpha,
                factor,
                le,
                e_ab,
                le_clean,
                e_ab_clean,
            });
        }
    }
    Ok(out)
}

pub fn to_table(points: &[CurvePoint]) -> Table {
    let mut t = Table::new(&HEADER);
    for p in points {
        t.push(p.row());
    }
    t
}
