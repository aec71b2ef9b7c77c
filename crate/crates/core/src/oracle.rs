//! Reference computations that avoid the fast paths, for cross-checking.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{kron, pauli_z, C64};
use crate::qcore::{DensityMatrix, PureState};

/// Post-measurement coefficients `[f_0, f_1, ..., f_{N-n}]` for a gW state
/// measured in its first one or two qubits, written out term by term.
/// `f_0` multiplies `|0...0>` on `A`, `f_i` the excitation on the `i`-th
/// qubit of `A`. Outcome `k` has the first qubit as its most significant bit.
pub fn gw_outcome_coefficients(a: &[C64], angles: &[(f64, f64)], k: usize) -> Result<Vec<C64>> {
    let n_b = angles.len();
    if !(1..=2).contains(&n_b) || a.len() <= n_b {
        return Err(Error::InvalidParameter(
            "one or two measured qubits of a larger gW state".into(),
        ));
    }
    let half = |t: f64| ((t / 2.0).cos(), (t / 2.0).sin());
    let tail = &a[n_b..];
    let (f0, w) = if n_b == 1 {
        let (th, ph) = angles[0];
        let (c, s) = half(th);
        let e = C64::from_polar(1.0, -ph);
        match k {
            0 => (a[0] * e * s, c),
            1 => (-a[0] * e * c, s),
            _ => return Err(Error::InvalidParameter(format!("outcome {k}"))),
        }
    } else {
        let (c1, s1) = half(angles[0].0);
        let (c2, s2) = half(angles[1].0);
        let e1 = a[0] * C64::from_polar(1.0, -angles[0].1);
        let e2 = a[1] * C64::from_polar(1.0, -angles[1].1);
        match k {
            0 => (e1 * s1 * c2 + e2 * c1 * s2, c1 * c2),
            1 => (e1 * s1 * s2 - e2 * c1 * c2, c1 * s2),
            2 => (-e1 * c1 * c2 + e2 * s1 * s2, s1 * c2),
            3 => (-e1 * c1 * s2 - e2 * s1 * c2, s1 * s2),
            _ => return Err(Error::InvalidParameter(format!("outcome {k}"))),
        }
    };
    let mut out = vec![f0];
    out.extend(tail.iter().map(|&x| x * w));
    Ok(out)
}

/// Outcome probabilities `sum_i |f_i|^2` from the coefficients above.
pub fn gw_outcome_probabilities(a: &[C64], angles: &[(f64, f64)]) -> Result<Vec<f64>> {
    (0..1usize << angles.len())
        .map(|k| {
            let f = gw_outcome_coefficients(a, angles, k)?;
            Ok(f.iter().map(|x| x.norm_sqr()).sum())
        })
        .collect()
}

/// `[f_0, f_1, f_2]` for a W-class state measured on qubit 0.
pub fn wclass_outcome_coefficients(
    a: &[C64; 4],
    theta: f64,
    phi: f64,
    k: usize,
) -> Result<Vec<C64>> {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e = a[1] * C64::from_polar(1.0, -phi);
    match k {
        0 => Ok(vec![a[0] * c + e * s, a[2] * c, a[3] * c]),
        1 => Ok(vec![a[0] * s - e * c, a[2] * s, a[3] * s]),
        _ => Err(Error::InvalidParameter(format!("outcome {k}"))),
    }
}

/// Phase-flip channel as an explicit sum over all `2^N` product Kraus
/// operators `sqrt(p_alpha) K_alpha`, built from dense Kronecker products.
pub fn kraus_sum_phase_flip(psi: &PureState, p0: f64, p1: f64) -> Result<DensityMatrix> {
    let n = psi.n_qubits();
    if n > 6 {
        return Err(Error::SizeBudget {
            what: "explicit Kraus sum",
            n_qubits: n,
            max: 6,
        });
    }
    let rho0 = psi.to_density().into_matrix();
    let id = DMatrix::<C64>::identity(2, 2);
    let z = pauli_z();
    let dim = 1usize << n;
    let mut out = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
    for alpha in 0..dim {
        let mut k = DMatrix::from_element(1, 1, C64::new(1.0, 0.0));
        let mut weight = 1.0;
        for q in 0..n {
            let flip = (alpha >> (n - 1 - q)) & 1 == 1;
            weight *= if flip { p1 } else { p0 };
            k = kron(&k, if flip { &z } else { &id });
        }
        out += (&k * &rho0 * k.adjoint()) * C64::new(weight, 0.0);
    }
    DensityMatrix::new(n, out)
}
