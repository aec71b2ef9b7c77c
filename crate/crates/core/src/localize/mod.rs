//! Local projective measurements on `B`, post-measurement states on
//! `A = A1 ∪ A2`, and maximization of the average `A1:A2` negativity.

mod nelder_mead;
mod strategy;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{self, C64, ZERO};
use crate::qcore::{
    self, basis_vector, check_angles, permute_amplitudes, permute_matrix,
    schmidt_weighted_negativity, DensityMatrix, PureState, Tripartition, EPS_EIG,
};

pub use nelder_mead::{NelderMead, NmOutcome};
pub use strategy::{
    FixedBasis, LocalizationStrategy, MultiStart, SeedBases, StartLabel, StrategyRegistry,
};

/// Outcomes less likely than this are dropped from averages.
pub const EPS_PROB: f64 = 1e-12;

/// `|δ| < DELTA_ZERO` counts as zero in classification statistics.
pub const DELTA_ZERO: f64 = 1e-7;

/// Largest measured subsystem accepted by the optimizer.
pub const MAX_MEASURED: usize = 4;

/// One `(θ, φ)` pair per measured qubit, in the order of `Tripartition::b`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementBasis {
    angles: Vec<(f64, f64)>,
}

impl MeasurementBasis {
    /// Requires `0 <= θ <= π` and `0 <= φ < 2π`.
    pub fn new(angles: Vec<(f64, f64)>) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::EmptyQubitSet);
        }
        for &(t, p) in &angles {
            check_angles(t, p)?;
        }
        Ok(Self { angles })
    }

    pub fn uniform(n: usize, theta: f64, phi: f64) -> Result<Self> {
        Self::new(vec![(theta, phi); n])
    }

    pub fn sigma_x(n: usize) -> Self {
        Self {
            angles: vec![(FRAC_PI_2, 0.0); n],
        }
    }

    pub fn sigma_y(n: usize) -> Self {
        Self {
            angles: vec![(FRAC_PI_2, FRAC_PI_2); n],
        }
    }

    pub fn sigma_z(n: usize) -> Self {
        Self {
            angles: vec![(0.0, 0.0); n],
        }
    }

    /// Canonical basis from unconstrained parameters `[θ0, φ0, θ1, φ1, ...]`.
    ///
    /// Uses `θ ~ θ + 2π`, `(θ, φ) ~ (2π - θ, φ + π)` and the outcome relabeling
    /// `(θ, φ) -> (π - θ, φ + π)`, so the result has `θ ∈ [0, π/2]`. The
    /// objective is unchanged; individual outcomes may be relabeled.
    pub fn canonical(params: &[f64]) -> Self {
        let angles = params
            .chunks_exact(2)
            .map(|c| canonical_pair(c[0], c[1]))
            .collect();
        Self { angles }
    }

    pub fn angles(&self) -> &[(f64, f64)] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn to_params(&self) -> Vec<f64> {
        self.angles.iter().flat_map(|&(t, p)| [t, p]).collect()
    }
}

fn wrap_phi(phi: f64) -> f64 {
    let p = phi.rem_euclid(TAU);
    if p >= TAU {
        0.0
    } else {
        p
    }
}

fn canonical_pair(theta: f64, phi: f64) -> (f64, f64) {
    let mut t = theta.rem_euclid(TAU);
    let mut p = phi;
    if t > PI {
        t = TAU - t;
        p += PI;
    }
    if t > FRAC_PI_2 {
        t = PI - t;
        p += PI;
    }
    if t < 1e-12 {
        return (0.0, 0.0);
    }
    (t.min(FRAC_PI_2), wrap_phi(p))
}

/// State to be measured.
#[derive(Clone, Copy, Debug)]
pub enum StateInput<'a> {
    Pure(&'a PureState),
    Mixed(&'a DensityMatrix),
}

impl<'a> From<&'a PureState> for StateInput<'a> {
    fn from(s: &'a PureState) -> Self {
        StateInput::Pure(s)
    }
}

impl<'a> From<&'a DensityMatrix> for StateInput<'a> {
    fn from(s: &'a DensityMatrix) -> Self {
        StateInput::Mixed(s)
    }
}

impl StateInput<'_> {
    pub fn n_qubits(&self) -> usize {
        match self {
            StateInput::Pure(s) => s.n_qubits(),
            StateInput::Mixed(s) => s.n_qubits(),
        }
    }
}

#[derive(Clone, Debug)]
enum Kernel {
    /// Amplitudes reordered to `(B, A1, A2)`; index `b * d_a + a`.
    Pure(Vec<C64>),
    /// Density matrix reordered to `(B, A1, A2)`.
    Mixed(DMatrix<C64>),
}

/// Probability and entanglement of one measurement outcome.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OutcomeStat {
    pub probability: f64,
    /// Negativity of the normalized post-measurement state; 0 when undefined.
    pub entanglement: f64,
    /// False when `probability < EPS_PROB`.
    pub defined: bool,
}

/// A state and tripartition prepared for repeated evaluation over bases.
#[derive(Clone, Debug)]
pub struct MeasurementProblem {
    tri: Tripartition,
    n_b: usize,
    n_a1: usize,
    n_a2: usize,
    kernel: Kernel,
}

impl MeasurementProblem {
    pub fn new<'a>(state: impl Into<StateInput<'a>>, tri: &Tripartition) -> Result<Self> {
        let state = state.into();
        let n = state.n_qubits();
        if n != tri.n_qubits() {
            return Err(Error::InvalidTripartition(format!(
                "tripartition is for {} qubits, state has {n}",
                tri.n_qubits()
            )));
        }
        let n_b = tri.b().len();
        if n_b > MAX_MEASURED {
            return Err(Error::SizeBudget {
                what: "measured subsystem",
                n_qubits: n_b,
                max: MAX_MEASURED,
            });
        }
        let order = tri.measurement_order();
        let kernel = match state {
            StateInput::Pure(s) => Kernel::Pure(permute_amplitudes(s.amplitudes(), &order, n)),
            StateInput::Mixed(r) => Kernel::Mixed(permute_matrix(r.matrix(), &order, n)),
        };
        Ok(Self {
            tri: tri.clone(),
            n_b,
            n_a1: tri.a1().len(),
            n_a2: tri.a2().len(),
            kernel,
        })
    }

    pub fn tripartition(&self) -> &Tripartition {
        &self.tri
    }

    pub fn n_measured(&self) -> usize {
        self.n_b
    }

    pub fn n_outcomes(&self) -> usize {
        1 << self.n_b
    }

    fn d_a(&self) -> usize {
        1 << (self.n_a1 + self.n_a2)
    }

    /// Row `k` holds `conj(<b_k|b>)`-style coefficients `c_k[b]` with
    /// `post_k[a] = sum_b c_k[b] psi[b, a]`.
    fn outcome_coefficients(&self, angles: &[(f64, f64)]) -> Vec<Vec<C64>> {
        let n_b = self.n_b;
        let vecs: Vec<[[C64; 2]; 2]> = angles
            .iter()
            .map(|&(t, p)| [basis_vector(t, p, 0), basis_vector(t, p, 1)])
            .collect();
        let d_b = 1usize << n_b;
        (0..d_b)
            .map(|k| {
                (0..d_b)
                    .map(|b| {
                        let mut w = C64::new(1.0, 0.0);
                        for (i, v) in vecs.iter().enumerate() {
                            let shift = n_b - 1 - i;
                            w *= v[(k >> shift) & 1][(b >> shift) & 1];
                        }
                        w.conj()
                    })
                    .collect()
            })
            .collect()
    }

    fn pure_post(&self, psi: &[C64], coeff: &[C64]) -> Vec<C64> {
        let d_a = self.d_a();
        let mut v = vec![ZERO; d_a];
        for (b, &c) in coeff.iter().enumerate() {
            if c == ZERO {
                continue;
            }
            for (out, &x) in v.iter_mut().zip(&psi[b * d_a..(b + 1) * d_a]) {
                *out += c * x;
            }
        }
        v
    }

    fn mixed_post(&self, rho: &DMatrix<C64>, coeff: &[C64]) -> DMatrix<C64> {
        let d_a = self.d_a();
        let mut out = DMatrix::from_element(d_a, d_a, ZERO);
        for (b, &cb) in coeff.iter().enumerate() {
            if cb == ZERO {
                continue;
            }
            for (b2, &cb2) in coeff.iter().enumerate() {
                if cb2 == ZERO {
                    continue;
                }
                let w = cb * cb2.conj();
                for j in 0..d_a {
                    for i in 0..d_a {
                        out[(i, j)] += w * rho[(b * d_a + i, b2 * d_a + j)];
                    }
                }
            }
        }
        out
    }

    /// `(p_k, p_k E_k)` for every outcome.
    fn weighted_outcomes(&self, angles: &[(f64, f64)]) -> Vec<(f64, f64)> {
        let coeffs = self.outcome_coefficients(angles);
        let rows = 1usize << self.n_a1;
        match &self.kernel {
            Kernel::Pure(psi) => coeffs
                .iter()
                .map(|c| {
                    let v = self.pure_post(psi, c);
                    let (p, pe) = schmidt_weighted_negativity(&v, rows);
                    if p < EPS_PROB {
                        (p, 0.0)
                    } else {
                        (p, pe)
                    }
                })
                .collect(),
            Kernel::Mixed(rho) => {
                let mask = (rows - 1) << self.n_a2;
                coeffs
                    .iter()
                    .map(|c| {
                        let m = self.mixed_post(rho, c);
                        let p = linalg::trace(&m).re;
                        if p < EPS_PROB {
                            return (p.max(0.0), 0.0);
                        }
                        let pt = qcore::partial_transpose_matrix(&m, mask);
                        let neg = linalg::negative_eigen_sum(&pt, EPS_EIG * p);
                        (p, 2.0 * neg.abs())
                    })
                    .collect()
            }
        }
    }

    /// Objective on unconstrained parameters `[θ0, φ0, ...]`.
    pub fn objective(&self, params: &[f64]) -> f64 {
        let angles: Vec<(f64, f64)> = params.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        self.weighted_outcomes(&angles).iter().map(|w| w.1).sum()
    }

    fn check_basis(&self, basis: &MeasurementBasis) -> Result<()> {
        if basis.len() != self.n_b {
            return Err(Error::DimensionMismatch {
                len: basis.len(),
                expected: self.n_b,
            });
        }
        Ok(())
    }

    /// `sum_k p_k E_k` over outcomes with `p_k >= EPS_PROB`.
    pub fn average_entanglement(&self, basis: &MeasurementBasis) -> Result<f64> {
        self.check_basis(basis)?;
        Ok(self
            .weighted_outcomes(basis.angles())
            .iter()
            .map(|w| w.1)
            .sum())
    }

    pub fn outcome_stats(&self, basis: &MeasurementBasis) -> Result<Vec<OutcomeStat>> {
        self.check_basis(basis)?;
        Ok(self
            .weighted_outcomes(basis.angles())
            .into_iter()
            .map(|(p, pe)| {
                let defined = p >= EPS_PROB;
                OutcomeStat {
                    probability: p,
                    entanglement: if defined { pe / p } else { 0.0 },
                    defined,
                }
            })
            .collect())
    }

    /// Unnormalized post-measurement operator on `A` in `(A1, A2)` qubit order.
    fn unnormalized_post(&self, basis: &MeasurementBasis, outcome: usize) -> Result<DMatrix<C64>> {
        self.check_basis(basis)?;
        if outcome >= self.n_outcomes() {
            return Err(Error::InvalidParameter(format!(
                "outcome {outcome} out of range for {} measured qubits",
                self.n_b
            )));
        }
        let coeffs = self.outcome_coefficients(basis.angles());
        Ok(match &self.kernel {
            Kernel::Pure(psi) => {
                let v = self.pure_post(psi, &coeffs[outcome]);
                DMatrix::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
            }
            Kernel::Mixed(rho) => self.mixed_post(rho, &coeffs[outcome]),
        })
    }

    /// Order mapping the `(A1, A2)` layout back to ascending qubit labels.
    fn ascending_order(&self) -> Vec<usize> {
        let cur: Vec<usize> = self.tri.a1().iter().chain(self.tri.a2()).copied().collect();
        self.tri
            .a()
            .iter()
            .map(|q| cur.iter().position(|c| c == q).expect("A qubit"))
            .collect()
    }
}

/// Result of measuring outcome `k`.
#[derive(Clone, Debug)]
pub struct PostMeasurement {
    pub probability: f64,
    /// Normalized state on `A` (ascending qubit order); `None` below `EPS_PROB`.
    pub state: Option<DensityMatrix>,
}

/// Outcome `k` of measuring `B` in `basis`. Bit `i` of `k` (most significant
/// first) is the outcome on the `i`-th qubit of `B`.
pub fn post_measurement<'a>(
    state: impl Into<StateInput<'a>>,
    tri: &Tripartition,
    basis: &MeasurementBasis,
    outcome: usize,
) -> Result<PostMeasurement> {
    let problem = MeasurementProblem::new(state, tri)?;
    let m = problem.unnormalized_post(basis, outcome)?;
    let p = linalg::trace(&m).re;
    if p < EPS_PROB {
        return Ok(PostMeasurement {
            probability: p.max(0.0),
            state: None,
        });
    }
    let n_a = problem.n_a1 + problem.n_a2;
    let m = permute_matrix(&m, &problem.ascending_order(), n_a) / C64::new(p, 0.0);
    Ok(PostMeasurement {
        probability: p,
        state: Some(DensityMatrix::new(n_a, m)?),
    })
}

/// Unnormalized amplitudes `<b_k|psi>` on `A` (ascending qubit order).
pub fn post_measurement_amplitudes(
    psi: &PureState,
    tri: &Tripartition,
    basis: &MeasurementBasis,
    outcome: usize,
) -> Result<Vec<C64>> {
    let problem = MeasurementProblem::new(psi, tri)?;
    problem.check_basis(basis)?;
    if outcome >= problem.n_outcomes() {
        return Err(Error::InvalidParameter(format!(
            "outcome {outcome} out of range"
        )));
    }
    let Kernel::Pure(amps) = &problem.kernel else {
        unreachable!("pure input builds a pure kernel")
    };
    let coeffs = problem.outcome_coefficients(basis.angles());
    let v = problem.pure_post(amps, &coeffs[outcome]);
    let n_a = problem.n_a1 + problem.n_a2;
    Ok(permute_amplitudes(&v, &problem.ascending_order(), n_a))
}

pub fn average_entanglement<'a>(
    state: impl Into<StateInput<'a>>,
    tri: &Tripartition,
    basis: &MeasurementBasis,
) -> Result<f64> {
    MeasurementProblem::new(state, tri)?.average_entanglement(basis)
}

#[derive(Clone, Debug)]
pub struct LocalizationResult {
    pub value: f64,
    pub optimal_basis: MeasurementBasis,
    pub per_outcome: Vec<OutcomeStat>,
    pub evaluations: usize,
    /// The winning start ran out of budget before converging.
    pub budget_exhausted: bool,
    /// Optimizer stopped early on reaching the caller's target.
    pub reached_target: bool,
    pub best_start: StartLabel,
    /// Best value reached from each start, in start order.
    pub start_values: Vec<(StartLabel, f64)>,
}

impl LocalizationResult {
    /// Value reached from a given start, if it was run.
    pub fn start_value(&self, label: StartLabel) -> Option<f64> {
        self.start_values
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, v)| *v)
    }
}

pub fn maximize_le<'a>(
    state: impl Into<StateInput<'a>>,
    tri: &Tripartition,
    strategy: &dyn LocalizationStrategy,
) -> Result<LocalizationResult> {
    let problem = MeasurementProblem::new(state, tri)?;
    Ok(strategy.localize(&problem, None))
}

/// Bipartite negativities across the three cuts plus the localized value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntanglementProfile {
    /// `E_{A1A2:B}`
    pub e_ab: f64,
    /// `E_{A1:A2B}`
    pub e_a1: f64,
    /// `E_{A2:A1B}`
    pub e_a2: f64,
    pub le: f64,
}

impl EntanglementProfile {
    pub fn delta1(&self) -> f64 {
        self.le - self.e_ab
    }

    pub fn delta2(&self) -> f64 {
        self.le - self.e_a1.min(self.e_a2)
    }

    pub fn e_min(&self) -> f64 {
        self.e_a1.min(self.e_a2)
    }
}

/// `(E_{A1A2:B}, E_{A1:A2B}, E_{A2:A1B})`.
pub fn cut_negativities<'a>(
    state: impl Into<StateInput<'a>>,
    tri: &Tripartition,
) -> Result<(f64, f64, f64)> {
    let state = state.into();
    let cut = |q: &[usize]| match state {
        StateInput::Pure(s) => qcore::pure_negativity(s, q),
        StateInput::Mixed(r) => qcore::negativity(r, q),
    };
    Ok((cut(tri.b())?, cut(tri.a1())?, cut(tri.a2())?))
}

pub fn profile<'a>(
    state: impl Into<StateInput<'a>>,
    tri: &Tripartition,
    strategy: &dyn LocalizationStrategy,
) -> Result<(EntanglementProfile, LocalizationResult)> {
    let state = state.into();
    let (e_ab, e_a1, e_a2) = cut_negativities(state, tri)?;
    let res = maximize_le(state, tri, strategy)?;
    Ok((
        EntanglementProfile {
            e_ab,
            e_a1,
            e_a2,
            le: res.value,
        },
        res,
    ))
}

/// `<E> - E_{A1A2:B}`.
pub fn delta1<'a>(
    state: impl Into<StateInput<'a>>,
    tri: &Tripartition,
    strategy: &dyn LocalizationStrategy,
) -> Result<f64> {
    Ok(profile(state, tri, strategy)?.0.delta1())
}

/// `<E> - min(E_{A1:A2B}, E_{A2:A1B})`; never above `1e-9`.
pub fn delta2<'a>(
    state: impl Into<StateInput<'a>>,
    tri: &Tripartition,
    strategy: &dyn LocalizationStrategy,
) -> Result<f64> {
    Ok(profile(state, tri, strategy)?.0.delta2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{make_dicke, make_gghz, make_gw, DickeParams, GghzParams, GwParams};

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn gghz(n: usize, a0: f64) -> PureState {
        make_gghz(&GghzParams {
            n_qubits: n,
            a0: c(a0),
            a1: c((1.0 - a0 * a0).sqrt()),
        })
        .unwrap()
    }

    #[test]
    fn canonical_angles_land_in_range_and_preserve_objective() {
        let a = [c(0.3), C64::new(0.2, 0.5), c(0.6), C64::new(-0.1, 0.4)];
        let n = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let psi = make_gw(&GwParams {
            n_qubits: 4,
            a: a.iter().map(|x| x / n).collect(),
        })
        .unwrap();
        let g = gghz(4, 0.6);
        let tri = Tripartition::contiguous(4, 2, 1).unwrap();
        for state in [&psi, &g] {
            let prob = MeasurementProblem::new(state, &tri).unwrap();
            for raw in [
                [2.5, -1.0, 7.0, 3.3],
                [-4.0, 9.0, 0.2, -0.3],
                [PI, 0.1, 1.9, 6.5],
            ] {
                let basis = MeasurementBasis::canonical(&raw);
                for &(t, p) in basis.angles() {
                    assert!((0.0..=FRAC_PI_2).contains(&t));
                    assert!((0.0..TAU).contains(&p));
                }
                let a = prob.objective(&raw);
                let b = prob.average_entanglement(&basis).unwrap();
                assert!((a - b).abs() < 1e-12, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn gghz_probabilities_in_sigma_x() {
        let psi = gghz(4, 0.6);
        let tri = Tripartition::contiguous(4, 2, 1).unwrap();
        let prob = MeasurementProblem::new(&psi, &tri).unwrap();
        let stats = prob.outcome_stats(&MeasurementBasis::sigma_x(2)).unwrap();
        for s in &stats {
            assert!((s.probability - 0.25).abs() < 1e-14);
            assert!((s.entanglement - 0.96).abs() < 1e-12);
        }
    }

    #[test]
    fn gghz_average_entanglement_examples() {
        let psi = gghz(3, std::f64::consts::FRAC_1_SQRT_2);
        let tri = Tripartition::contiguous(3, 1, 1).unwrap();
        let x = average_entanglement(&psi, &tri, &MeasurementBasis::sigma_x(1)).unwrap();
        let z = average_entanglement(&psi, &tri, &MeasurementBasis::sigma_z(1)).unwrap();
        assert!((x - 1.0).abs() < 1e-12);
        assert!(z.abs() < 1e-12);
    }

    #[test]
    fn gw_is_basis_independent() {
        let a = 1.0 / 3f64.sqrt();
        let psi = make_gw(&GwParams {
            n_qubits: 3,
            a: vec![c(a); 3],
        })
        .unwrap();
        let tri = Tripartition::contiguous(3, 1, 1).unwrap();
        let prob = MeasurementProblem::new(&psi, &tri).unwrap();
        for (t, p) in [(0.0, 0.0), (0.3, 1.0), (FRAC_PI_2, 4.0), (2.9, 6.0)] {
            let v = prob
                .average_entanglement(&MeasurementBasis::new(vec![(t, p)]).unwrap())
                .unwrap();
            assert!((v - 2.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn mixed_kernel_matches_pure_kernel() {
        let psi = gghz(4, 0.8);
        let rho = psi.to_density();
        let tri = Tripartition::new(4, &[3], &[0], &[1, 2]).unwrap();
        let pp = MeasurementProblem::new(&psi, &tri).unwrap();
        let mp = MeasurementProblem::new(&rho, &tri).unwrap();
        for raw in [[0.4, 1.1, 1.3, 0.2], [FRAC_PI_2, 0.0, FRAC_PI_2, 0.0]] {
            assert!((pp.objective(&raw) - mp.objective(&raw)).abs() < 1e-12);
        }
    }

    #[test]
    fn post_measurement_is_normalized_and_sigma_z_gives_marginals() {
        let psi = make_dicke(&DickeParams {
            n_qubits: 4,
            n_excited: 2,
        })
        .unwrap();
        let tri = Tripartition::new(4, &[0], &[3], &[2, 1]).unwrap();
        let basis = MeasurementBasis::sigma_z(2);
        let mut total = 0.0;
        for k in 0..4 {
            let pm = post_measurement(&psi, &tri, &basis, k).unwrap();
            total += pm.probability;
            // B is stored ascending, so bit 1 of k is qubit 1 and bit 0 is qubit 2
            let marg: f64 = (0..16)
                .filter(|i| ((i >> 2) & 1) == (k >> 1) && ((i >> 1) & 1) == (k & 1))
                .map(|i| psi.amplitudes()[i].norm_sqr())
                .sum();
            assert!((pm.probability - marg).abs() < 1e-14);
            if let Some(s) = pm.state {
                assert!((s.trace().re - 1.0).abs() < 1e-12);
            }
        }
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_mismatched_inputs() {
        let psi = gghz(3, 0.6);
        let tri = Tripartition::contiguous(4, 1, 1).unwrap();
        assert!(MeasurementProblem::new(&psi, &tri).is_err());
        let tri = Tripartition::contiguous(3, 1, 1).unwrap();
        assert!(average_entanglement(&psi, &tri, &MeasurementBasis::sigma_x(2)).is_err());
        assert!(post_measurement(&psi, &tri, &MeasurementBasis::sigma_x(1), 2).is_err());
    }
}
