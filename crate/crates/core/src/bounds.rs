//! Bound curves on the (lost entanglement, localized entanglement) planes and
//! per-state bound checks.

use std::fmt;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::localize::{
    cut_negativities, EntanglementProfile, LocalizationStrategy, MeasurementProblem, StateInput,
};
use crate::noise::NoiseSpec;
use crate::qcore::Tripartition;
use crate::states::{GwParams, WClassParams};

/// One-sided slack before a bound counts as violated.
pub const BOUND_TOL: f64 = 1e-9;

/// Slack for the four-way gGHZ equality.
pub const EQUALITY_TOL: f64 = 1e-8;

const PREDICATE_TOL: f64 = 1e-10;

fn check_range(what: &'static str, v: f64, hi: f64) -> Result<f64> {
    // tiny overshoots from eigensolver noise are clamped
    if !(-BOUND_TOL..=hi + BOUND_TOL).contains(&v) {
        return Err(Error::Domain {
            what,
            value: v,
            lo: 0.0,
            hi,
        });
    }
    Ok(v.clamp(0.0, hi))
}

fn check_scale(s: f64) -> Result<f64> {
    check_range("entanglement scale", s, 1.0)
}

/// `(s + sqrt(s^2 - E^2)) / 2`: upper curve for gW states whose entanglement
/// has been scaled by `s` (`s = 1` without noise).
pub fn gw_upper_scaled(e_ab: f64, s: f64) -> Result<f64> {
    let s = check_scale(s)?;
    let e = check_range("E_{A1A2:B}", e_ab, s)?;
    Ok(0.5 * (s + (s * s - e * e).max(0.0).sqrt()))
}

/// Smaller root of `x^2 - 2 s x + E^2 = 0`.
pub fn gw_lower_scaled(e_min: f64, s: f64) -> Result<f64> {
    let s = check_scale(s)?;
    let e = check_range("min(E_{A1:A2B}, E_{A2:A1B})", e_min, s)?;
    let r = (s * s - e * e).max(0.0).sqrt();
    // same root, written without cancellation
    Ok(if s + r > 0.0 { e * e / (s + r) } else { 0.0 })
}

/// `(1 + sqrt(1 - E^2)) / 2`.
pub fn gw_upper(e_ab: f64) -> Result<f64> {
    gw_upper_scaled(e_ab, 1.0)
}

/// `1 - sqrt(1 - E^2)`.
pub fn gw_lower(e_min: f64) -> Result<f64> {
    gw_lower_scaled(e_min, 1.0)
}

/// Entanglement scale `|1 - f(q, α)|^2` that the channel imposes on gW states.
pub fn gw_noise_scale(spec: &NoiseSpec) -> f64 {
    spec.dephasing_factor().powi(2)
}

/// Entanglement scale `|1 - f(q, α)|^N` that the channel imposes on gGHZ states.
pub fn gghz_noise_scale(spec: &NoiseSpec, n_qubits: usize) -> f64 {
    spec.dephasing_factor().abs().powi(n_qubits as i32)
}

fn q_checked(q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::Domain {
            what: "noise strength q",
            value: q,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(q)
}

pub fn gw_upper_noisy(e_ab: f64, q: f64) -> Result<f64> {
    let q = q_checked(q)?;
    gw_upper_scaled(e_ab, (1.0 - q).powi(2))
}

pub fn gw_lower_noisy(e_min: f64, q: f64) -> Result<f64> {
    let q = q_checked(q)?;
    gw_lower_scaled(e_min, (1.0 - q).powi(2))
}

/// Largest `E_{A1A2:B}` reachable by a gW state under Markovian noise `q`.
pub fn gw_boundary_line(q: f64) -> Result<f64> {
    Ok((1.0 - q_checked(q)?).powi(2))
}

/// `f(q, α) = q (1 + α (1 - q/2))`.
pub fn nonmarkovian_f(q: f64, alpha: f64) -> f64 {
    q * (1.0 + alpha * (1.0 - q / 2.0))
}

/// `|1 - f(q, α)|^2`.
pub fn nonmarkovian_factor(q: f64, alpha: f64) -> Result<f64> {
    let q = q_checked(q)?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain {
            what: "non-Markovianity alpha",
            value: alpha,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok((1.0 - nonmarkovian_f(q, alpha)).powi(2))
}

/// Noise strength at which `f(q, α) = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalNoise {
    pub q: f64,
    /// Set for `α = 0`, where only the limit `q -> 1` exists.
    pub limit_only: bool,
}

/// `(1 + α - sqrt(1 + α^2)) / α`.
pub fn q_critical(alpha: f64) -> Result<CriticalNoise> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain {
            what: "non-Markovianity alpha",
            value: alpha,
            lo: 0.0,
            hi: 1.0,
        });
    }
    if alpha == 0.0 {
        return Ok(CriticalNoise {
            q: 1.0,
            limit_only: true,
        });
    }
    // rationalized form of the same root, stable for small alpha
    let q = 2.0 / (1.0 + alpha + (1.0 + alpha * alpha).sqrt());
    Ok(CriticalNoise {
        q,
        limit_only: false,
    })
}

/// Named bound or identity checked on a state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundTag {
    /// `<E> <= min(E_{A1:A2B}, E_{A2:A1B})` for every state.
    Monotonicity,
    /// All four quantities equal for gGHZ.
    GghzEquality,
    GwUpper,
    GwLower,
    /// `E_{A1A2:B} <= s`.
    GwMaxLine,
    WClassUpper,
    WClassLower,
    /// Lower curve of the W class applied to GHZ-class states.
    GhzClassLower,
    /// `<E> <= E_{A1A2:B}` for symmetric states.
    SymmetricUpper,
}

impl BoundTag {
    pub fn name(self) -> &'static str {
        match self {
            BoundTag::Monotonicity => "monotonicity",
            BoundTag::GghzEquality => "gghz-equality",
            BoundTag::GwUpper => "gw-upper",
            BoundTag::GwLower => "gw-lower",
            BoundTag::GwMaxLine => "gw-max-line",
            BoundTag::WClassUpper => "wclass-upper",
            BoundTag::WClassLower => "wclass-lower",
            BoundTag::GhzClassLower => "ghzclass-lower",
            BoundTag::SymmetricUpper => "symmetric-upper",
        }
    }
}

impl fmt::Display for BoundTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `margin` includes the tolerance, so `satisfied == (margin >= 0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundCheck {
    pub tag: BoundTag,
    pub satisfied: bool,
    pub margin: f64,
}

impl BoundCheck {
    fn new(tag: BoundTag, margin: f64) -> Self {
        Self {
            tag,
            satisfied: margin >= 0.0,
            margin,
        }
    }

    fn upper(tag: BoundTag, bound: f64, value: f64) -> Self {
        Self::new(tag, bound - value + BOUND_TOL)
    }

    fn lower(tag: BoundTag, bound: f64, value: f64) -> Self {
        Self::new(tag, value - bound + BOUND_TOL)
    }

    fn domain_failure(tag: BoundTag, excess: f64) -> Self {
        Self::new(tag, -excess.abs().max(f64::MIN_POSITIVE))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub state_id: String,
    pub profile: EntanglementProfile,
    pub checks: Vec<BoundCheck>,
}

impl BoundReport {
    pub fn all_satisfied(&self) -> bool {
        self.checks.iter().all(|c| c.satisfied)
    }

    pub fn violations(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| !c.satisfied)
    }
}

fn upper_curve(tag: BoundTag, e: f64, s: f64, le: f64) -> BoundCheck {
    match gw_upper_scaled(e, s) {
        Ok(b) => BoundCheck::upper(tag, b, le),
        Err(_) => BoundCheck::domain_failure(tag, e - s),
    }
}

fn lower_curve(tag: BoundTag, e: f64, s: f64, le: f64) -> BoundCheck {
    match gw_lower_scaled(e, s) {
        Ok(b) => BoundCheck::lower(tag, b, le),
        Err(_) => BoundCheck::domain_failure(tag, e - s),
    }
}

/// Checks that apply to `family` given its four quantities. Noise enters only
/// through `spec`; W-class and GHZ-class curves are noiseless statements and
/// are skipped when `q > 0`.
pub fn check_profile(
    p: &EntanglementProfile,
    family: Option<Family>,
    spec: &NoiseSpec,
) -> Vec<BoundCheck> {
    let mut out = vec![BoundCheck::upper(BoundTag::Monotonicity, p.e_min(), p.le)];
    let noiseless = spec.q() == 0.0;
    match family {
        Some(Family::Gghz) => {
            let v = [p.e_ab, p.e_a1, p.e_a2, p.le];
            let hi = v.iter().copied().fold(f64::MIN, f64::max);
            let lo = v.iter().copied().fold(f64::MAX, f64::min);
            out.push(BoundCheck::new(
                BoundTag::GghzEquality,
                EQUALITY_TOL - (hi - lo),
            ));
        }
        Some(Family::Gw) => {
            let s = gw_noise_scale(spec);
            out.push(BoundCheck::upper(BoundTag::GwMaxLine, s, p.e_ab));
            out.push(upper_curve(BoundTag::GwUpper, p.e_ab, s, p.le));
            out.push(lower_curve(BoundTag::GwLower, p.e_min(), s, p.le));
        }
        Some(Family::WClass) if noiseless => {
            out.push(upper_curve(BoundTag::WClassUpper, p.e_ab, 1.0, p.le));
            out.push(lower_curve(BoundTag::WClassLower, p.e_min(), 1.0, p.le));
        }
        Some(Family::GhzClass) if noiseless => {
            out.push(lower_curve(BoundTag::GhzClassLower, p.e_min(), 1.0, p.le));
        }
        Some(Family::Dicke) | Some(Family::Gd) => {
            out.push(BoundCheck::upper(BoundTag::SymmetricUpper, p.e_ab, p.le));
        }
        _ => {}
    }
    out
}

/// Computes the four quantities with `strategy` and checks them.
pub fn check_state<'a>(
    state_id: impl Into<String>,
    state: impl Into<StateInput<'a>>,
    tri: &Tripartition,
    family: Option<Family>,
    spec: &NoiseSpec,
    strategy: &dyn LocalizationStrategy,
) -> Result<BoundReport> {
    let state = state.into();
    let (e_ab, e_a1, e_a2) = cut_negativities(state, tri)?;
    let problem = MeasurementProblem::new(state, tri)?;
    let le = strategy.localize(&problem, None).value;
    let profile = EntanglementProfile {
        e_ab,
        e_a1,
        e_a2,
        le,
    };
    Ok(BoundReport {
        state_id: state_id.into(),
        checks: check_profile(&profile, family, spec),
        profile,
    })
}

fn weight(p: &GwParams, qubits: &[usize]) -> f64 {
    qubits.iter().map(|&i| p.a[i].norm_sqr()).sum()
}

/// Equal excitation weight on `A1` and `A2`: the gW states on the upper curve.
pub fn gw_on_upper_curve(p: &GwParams, tri: &Tripartition) -> bool {
    tri.n_qubits() == p.n_qubits
        && (weight(p, tri.a1()) - weight(p, tri.a2())).abs() < PREDICATE_TOL
}

/// `4 S_B S_A = 1`: the gW states with `E_{A1A2:B} = 1`.
pub fn gw_unit_entanglement(p: &GwParams, tri: &Tripartition) -> bool {
    tri.n_qubits() == p.n_qubits
        && (4.0 * weight(p, tri.b()) * (1.0 - weight(p, tri.b())) - 1.0).abs() < PREDICATE_TOL
}

/// `|a2|^2 = |a3|^2 = (1 - |a1|^2) / 2`: W-class states on the upper curve.
pub fn wclass_on_upper_curve(p: &WClassParams) -> bool {
    let w: Vec<f64> = p.a.iter().map(|x| x.norm_sqr()).collect();
    let target = (1.0 - w[1]) / 2.0;
    (w[2] - target).abs() < PREDICATE_TOL && (w[3] - target).abs() < PREDICATE_TOL
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_examples() {
        assert_eq!(gw_upper(0.0).unwrap(), 1.0);
        assert!((gw_upper(1.0).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(gw_lower(0.0).unwrap(), 0.0);
        assert!((gw_lower(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((gw_upper_noisy(0.0, 0.2).unwrap() - 0.64).abs() < 1e-15);
        for e in [0.0, 0.3, 0.7, 1.0] {
            assert_eq!(gw_upper_noisy(e, 0.0).unwrap(), gw_upper(e).unwrap());
            assert_eq!(gw_lower_noisy(e, 0.0).unwrap(), gw_lower(e).unwrap());
        }
        assert!(gw_upper(1.2).is_err());
        assert!(gw_upper_noisy(0.7, 0.2).is_err());
    }

    #[test]
    fn lower_is_root_of_quadratic() {
        for i in 0..=50 {
            let s = 0.3 + 0.014 * i as f64;
            let e = s * (i as f64 / 50.0);
            let x = gw_lower_scaled(e, s).unwrap();
            assert!((x * x - 2.0 * s * x + e * e).abs() < 1e-14);
            assert!(x <= s + 1e-15);
        }
    }

    #[test]
    fn lower_curve_below_min_line() {
        for i in 0..=100 {
            let e = i as f64 / 100.0;
            let l = gw_lower(e).unwrap();
            if i < 100 {
                assert!(l < e || e == 0.0);
            } else {
                assert!((l - e).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn noisy_regions_nest() {
        let qs = [0.0, 0.05, 0.1, 0.2, 0.3];
        for w in qs.windows(2) {
            let (q, q2) = (w[0], w[1]);
            let line2 = gw_boundary_line(q2).unwrap();
            assert!(line2 < gw_boundary_line(q).unwrap());
            for i in 0..=40 {
                let e = line2 * i as f64 / 40.0;
                assert!(gw_upper_noisy(e, q2).unwrap() < gw_upper_noisy(e, q).unwrap());
                assert!(gw_lower_noisy(e, q2).unwrap() >= gw_lower_noisy(e, q).unwrap());
            }
        }
    }

    #[test]
    fn critical_noise() {
        let c = q_critical(1.0).unwrap();
        assert!((c.q - (2.0 - 2f64.sqrt())).abs() < 1e-15);
        assert!(nonmarkovian_factor(c.q, 1.0).unwrap() < 1e-24);
        let c0 = q_critical(0.0).unwrap();
        assert!(c0.limit_only && c0.q == 1.0);
        assert!((q_critical(1e-9).unwrap().q - 1.0).abs() < 1e-8);
        let mut prev = 1.0;
        for i in 1..=20 {
            let q = q_critical(i as f64 / 20.0).unwrap().q;
            assert!(q < prev);
            prev = q;
        }
        for q in [0.0, 0.3, 0.9] {
            assert!((nonmarkovian_factor(q, 0.0).unwrap() - (1.0 - q).powi(2)).abs() < 1e-15);
        }
    }

    #[test]
    fn margins_follow_tolerance() {
        let p = EntanglementProfile {
            e_ab: 0.5,
            e_a1: 0.4,
            e_a2: 0.6,
            le: 0.4 + 5e-10,
        };
        let checks = check_profile(&p, None, &NoiseSpec::noiseless());
        assert_eq!(checks.len(), 1);
        assert!(checks[0].satisfied && checks[0].margin >= 0.0);
        let p = EntanglementProfile {
            le: 0.4 + 2e-9,
            ..p
        };
        let c = check_profile(&p, None, &NoiseSpec::noiseless())[0];
        assert!(!c.satisfied && c.margin < 0.0);
    }
}
