//! Independent single-qubit phase-flip channels.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::localize::{LocalizationResult, LocalizationStrategy, MeasurementProblem};
use crate::qcore::{DensityMatrix, PureState, Tripartition};

/// Density-matrix budget for the channel.
pub const MAX_NOISY_QUBITS: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NoiseKind {
    Markovian,
    NonMarkovian,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseSpec {
    q: f64,
    alpha: f64,
    kind: NoiseKind,
}

fn check_unit(what: &'static str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::Domain {
            what,
            value: v,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(())
}

impl NoiseSpec {
    pub fn markovian(q: f64) -> Result<Self> {
        check_unit("noise strength q", q)?;
        Ok(Self {
            q,
            alpha: 0.0,
            kind: NoiseKind::Markovian,
        })
    }

    pub fn non_markovian(q: f64, alpha: f64) -> Result<Self> {
        check_unit("noise strength q", q)?;
        check_unit("non-Markovianity alpha", alpha)?;
        Ok(Self {
            q,
            alpha,
            kind: NoiseKind::NonMarkovian,
        })
    }

    pub fn noiseless() -> Self {
        Self {
            q: 0.0,
            alpha: 0.0,
            kind: NoiseKind::Markovian,
        }
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Zero for Markovian specs.
    pub fn alpha(&self) -> f64 {
        match self.kind {
            NoiseKind::Markovian => 0.0,
            NoiseKind::NonMarkovian => self.alpha,
        }
    }

    pub fn kind(&self) -> NoiseKind {
        self.kind
    }

    /// `p0 - p1`, the factor applied per differing bit of an off-diagonal element.
    pub fn dephasing_factor(&self) -> f64 {
        let (p0, p1) = kraus_probs(self);
        p0 - p1
    }
}

/// Weights `(p0, p1)` of the identity and `σz` Kraus operators.
pub fn kraus_probs(spec: &NoiseSpec) -> (f64, f64) {
    let q = spec.q;
    match spec.kind {
        NoiseKind::Markovian => (1.0 - q / 2.0, q / 2.0),
        NoiseKind::NonMarkovian => {
            let a = spec.alpha;
            (
                (1.0 - q / 2.0) * (1.0 - a * q / 2.0),
                (1.0 + a * (1.0 - q / 2.0)) * q / 2.0,
            )
        }
    }
}

/// Element `(i, j)` scaled by `(p0 - p1)^{popcount(i ^ j)}`.
pub fn dephase_matrix(m: &DMatrix<C64>, spec: &NoiseSpec) -> DMatrix<C64> {
    let n_bits = m.nrows().trailing_zeros() as usize;
    let f = spec.dephasing_factor();
    let powers: Vec<f64> = (0..=n_bits).map(|h| f.powi(h as i32)).collect();
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
        m[(i, j)] * powers[(i ^ j).count_ones() as usize]
    })
}

pub fn apply_phase_flip(psi: &PureState, spec: &NoiseSpec) -> Result<DensityMatrix> {
    let n = psi.n_qubits();
    if n > MAX_NOISY_QUBITS {
        return Err(Error::SizeBudget {
            what: "phase-flip density matrix",
            n_qubits: n,
            max: MAX_NOISY_QUBITS,
        });
    }
    let amps = psi.amplitudes();
    let f = spec.dephasing_factor();
    let powers: Vec<f64> = (0..=n).map(|h| f.powi(h as i32)).collect();
    let d = amps.len();
    let m = DMatrix::from_fn(d, d, |i, j| {
        amps[i] * amps[j].conj() * powers[(i ^ j).count_ones() as usize]
    });
    DensityMatrix::new(n, m)
}

/// Channel applied to an existing density matrix.
pub fn apply_phase_flip_mixed(rho: &DensityMatrix, spec: &NoiseSpec) -> Result<DensityMatrix> {
    DensityMatrix::new(rho.n_qubits(), dephase_matrix(rho.matrix(), spec))
}

pub fn le_noisy(
    psi: &PureState,
    tri: &Tripartition,
    spec: &NoiseSpec,
    strategy: &dyn LocalizationStrategy,
) -> Result<LocalizationResult> {
    let rho = apply_phase_flip(psi, spec)?;
    let problem = MeasurementProblem::new(&rho, tri)?;
    Ok(strategy.localize(&problem, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probabilities() {
        let (p0, p1) = kraus_probs(&NoiseSpec::markovian(0.4).unwrap());
        assert!((p0 - 0.8).abs() < 1e-15 && (p1 - 0.2).abs() < 1e-15);
        let (p0, p1) = kraus_probs(&NoiseSpec::non_markovian(0.4, 0.5).unwrap());
        assert!((p0 - 0.72).abs() < 1e-15 && (p1 - 0.28).abs() < 1e-15);
        for spec in [
            NoiseSpec::noiseless(),
            NoiseSpec::non_markovian(0.0, 0.7).unwrap(),
        ] {
            assert_eq!(kraus_probs(&spec), (1.0, 0.0));
        }
    }

    #[test]
    fn non_markovian_weights_sum_to_one() {
        for i in 0..=20 {
            for j in 0..=10 {
                let s = NoiseSpec::non_markovian(i as f64 / 20.0, j as f64 / 10.0).unwrap();
                let (p0, p1) = kraus_probs(&s);
                assert!((p0 + p1 - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(NoiseSpec::markovian(1.1).is_err());
        assert!(NoiseSpec::non_markovian(0.5, -0.1).is_err());
    }

    #[test]
    fn unital() {
        let spec = NoiseSpec::non_markovian(0.7, 0.3).unwrap();
        let id = DensityMatrix::maximally_mixed(3).unwrap();
        let out = apply_phase_flip_mixed(&id, &spec).unwrap();
        assert!((out.matrix() - id.matrix()).norm() < 1e-15);
    }
}
