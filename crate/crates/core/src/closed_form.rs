//! Closed-form negativities and localizable entanglement for families whose
//! measurement outcome structure is known analytically.

use crate::error::{Error, Result};
use crate::qcore::{normalize_qubit_set, Tripartition};
use crate::states::{binomial, DickeParams, GghzParams, GwParams, WClassParams};

fn check_n(tri: &Tripartition, n: usize, family: &str) -> Result<()> {
    if tri.n_qubits() != n {
        return Err(Error::ClosedFormNotApplicable(format!(
            "{family} state has {n} qubits, tripartition has {}",
            tri.n_qubits()
        )));
    }
    Ok(())
}

/// `2 |a0| |a1|`, the same across every cut.
pub fn gghz_negativity(p: &GghzParams) -> f64 {
    2.0 * p.a0.norm() * p.a1.norm()
}

pub fn closed_le_gghz(p: &GghzParams, tri: &Tripartition) -> Result<f64> {
    check_n(tri, p.n_qubits, "gGHZ")?;
    Ok(gghz_negativity(p))
}

fn gw_weight(p: &GwParams, qubits: &[usize]) -> f64 {
    qubits.iter().map(|&i| p.a[i].norm_sqr()).sum()
}

/// `2 sqrt(S (1 - S))` with `S` the weight of the excitation inside `cut`.
pub fn gw_cut_negativity(p: &GwParams, cut: &[usize]) -> Result<f64> {
    let cut = normalize_qubit_set(cut, p.n_qubits)?;
    let s = gw_weight(p, &cut).clamp(0.0, 1.0);
    Ok(2.0 * (s * (1.0 - s)).sqrt())
}

/// `(E_{A1A2:B}, E_{A1:A2B}, E_{A2:A1B})`.
pub fn gw_cut_negativities(p: &GwParams, tri: &Tripartition) -> Result<(f64, f64, f64)> {
    check_n(tri, p.n_qubits, "gW")?;
    Ok((
        gw_cut_negativity(p, tri.b())?,
        gw_cut_negativity(p, tri.a1())?,
        gw_cut_negativity(p, tri.a2())?,
    ))
}

/// `2 sqrt(S_{A1} S_{A2})`, independent of the measurement basis.
pub fn closed_le_gw(p: &GwParams, tri: &Tripartition) -> Result<f64> {
    check_n(tri, p.n_qubits, "gW")?;
    Ok(2.0 * (gw_weight(p, tri.a1()) * gw_weight(p, tri.a2())).sqrt())
}

/// Negativity of `D(n, k)` across one qubit versus the rest.
pub fn dicke_single_qubit_negativity(n: usize, k: usize) -> f64 {
    if n < 2 || k == 0 || k >= n {
        return 0.0;
    }
    2.0 * (binomial(n - 1, k) * binomial(n - 1, k - 1)).sqrt() / binomial(n, k)
}

/// Localized value with `σz` on a single measured qubit, for tripartitions
/// where `A1` or `A2` is a single qubit.
pub fn closed_le_dicke(p: &DickeParams, tri: &Tripartition) -> Result<f64> {
    check_n(tri, p.n_qubits, "Dicke")?;
    if tri.b().len() != 1 || (tri.a1().len() != 1 && tri.a2().len() != 1) {
        return Err(Error::ClosedFormNotApplicable(
            "Dicke closed form needs |B| = 1 and a single-qubit A1 or A2".into(),
        ));
    }
    let (n, k) = (p.n_qubits, p.n_excited);
    if k > n {
        return Err(Error::InvalidParameter(format!("N1 = {k} exceeds N = {n}")));
    }
    let p_ground = (n - k) as f64 / n as f64;
    let p_excited = k as f64 / n as f64;
    let e_ground = dicke_single_qubit_negativity(n - 1, k);
    let e_excited = if k == 0 {
        0.0
    } else {
        dicke_single_qubit_negativity(n - 1, k - 1)
    };
    Ok(p_ground * e_ground + p_excited * e_excited)
}

/// `(E_{0:12}, E_{1:02}, E_{2:01})` for `a0|000> + a1|100> + a2|010> + a3|001>`.
pub fn wclass_negativities(p: &WClassParams) -> (f64, f64, f64) {
    let m: Vec<f64> = p.a.iter().map(|x| x.norm()).collect();
    let cut = |x: f64, y: f64, z: f64| 2.0 * x * (y * y + z * z).sqrt();
    (
        cut(m[1], m[2], m[3]),
        cut(m[2], m[1], m[3]),
        cut(m[3], m[1], m[2]),
    )
}

/// `2 |a2| |a3|` for the measured qubit 0.
pub fn closed_le_wclass(p: &WClassParams, tri: &Tripartition) -> Result<f64> {
    check_n(tri, 3, "W-class")?;
    if tri.b() != [0] {
        return Err(Error::ClosedFormNotApplicable(
            "W-class closed form measures qubit 0".into(),
        ));
    }
    Ok(2.0 * p.a[2].norm() * p.a[3].norm())
}
