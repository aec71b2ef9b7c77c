//! Multi-qubit states and operators: partial trace, partial transpose and
//! negativity.
//!
//! Qubit `0` is the most significant bit of a computational-basis index, so
//! for `n` qubits the bit of qubit `q` in index `i` is `(i >> (n - 1 - q)) & 1`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{self, C64, ZERO};

/// Eigenvalues of a partial transpose in `(-EPS_EIG, 0)` count as zero.
pub const EPS_EIG: f64 = 1e-12;

const NORM_TOL: f64 = 1e-12;
const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;

#[inline]
pub(crate) fn qubit_bit(index: usize, qubit: usize, n_qubits: usize) -> usize {
    (index >> (n_qubits - 1 - qubit)) & 1
}

/// Bit mask of the given qubits inside an `n_qubits`-bit basis index.
pub(crate) fn qubit_mask(qubits: &[usize], n_qubits: usize) -> usize {
    qubits.iter().fold(0, |m, &q| m | (1 << (n_qubits - 1 - q)))
}

/// Checks a qubit list for range and duplicates and returns it sorted.
pub fn normalize_qubit_set(qubits: &[usize], n_qubits: usize) -> Result<Vec<usize>> {
    let mut sorted = qubits.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateQubit(w[0]));
        }
    }
    if let Some(&q) = sorted.iter().find(|&&q| q >= n_qubits) {
        return Err(Error::QubitOutOfRange { index: q, n_qubits });
    }
    Ok(sorted)
}

fn complement(qubits: &[usize], n_qubits: usize) -> Vec<usize> {
    (0..n_qubits).filter(|q| !qubits.contains(q)).collect()
}

/// Index map for reordering qubits: entry `i` is the index in the new
/// ordering of old basis index `i`, where new qubit `j` is old qubit `order[j]`.
pub(crate) fn permutation_map(order: &[usize], n_qubits: usize) -> Vec<usize> {
    debug_assert_eq!(order.len(), n_qubits);
    (0..1usize << n_qubits)
        .map(|i| {
            order.iter().enumerate().fold(0, |acc, (j, &old)| {
                acc | (qubit_bit(i, old, n_qubits) << (n_qubits - 1 - j))
            })
        })
        .collect()
}

pub(crate) fn permute_amplitudes(amps: &[C64], order: &[usize], n_qubits: usize) -> Vec<C64> {
    let map = permutation_map(order, n_qubits);
    let mut out = vec![ZERO; amps.len()];
    for (old, &new) in map.iter().enumerate() {
        out[new] = amps[old];
    }
    out
}

pub(crate) fn permute_matrix(m: &DMatrix<C64>, order: &[usize], n_qubits: usize) -> DMatrix<C64> {
    let map = permutation_map(order, n_qubits);
    let dim = m.nrows();
    let mut out = DMatrix::from_element(dim, dim, ZERO);
    for j in 0..dim {
        for i in 0..dim {
            out[(map[i], map[j])] = m[(i, j)];
        }
    }
    out
}

/// Normalized pure state of `n_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amps: Vec<C64>,
}

impl PureState {
    pub fn new(n_qubits: usize, amps: Vec<C64>) -> Result<Self> {
        check_len(n_qubits, amps.len())?;
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { n_qubits, amps })
    }

    /// Rescales `amps` to unit norm.
    pub fn from_unnormalized(n_qubits: usize, mut amps: Vec<C64>) -> Result<Self> {
        check_len(n_qubits, amps.len())?;
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::NotNormalized { norm });
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { n_qubits, amps })
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn with_global_phase(&self, phase: f64) -> Self {
        let f = C64::from_polar(1.0, phase);
        Self {
            n_qubits: self.n_qubits,
            amps: self.amps.iter().map(|a| a * f).collect(),
        }
    }

    /// Reorders qubits so that new qubit `j` is old qubit `order[j]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let sorted = normalize_qubit_set(order, self.n_qubits)?;
        if sorted.len() != self.n_qubits {
            return Err(Error::InvalidParameter(
                "permutation must list every qubit".into(),
            ));
        }
        Ok(Self {
            n_qubits: self.n_qubits,
            amps: permute_amplitudes(&self.amps, order, self.n_qubits),
        })
    }

    pub fn to_density(&self) -> DensityMatrix {
        let dim = self.dim();
        let mat = DMatrix::from_fn(dim, dim, |i, j| self.amps[i] * self.amps[j].conj());
        DensityMatrix {
            n_qubits: self.n_qubits,
            mat,
        }
    }

    pub fn inner(&self, other: &PureState) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

fn check_len(n_qubits: usize, len: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits >= usize::BITS as usize {
        return Err(Error::InvalidParameter(format!("n_qubits = {n_qubits}")));
    }
    let expected = 1usize << n_qubits;
    if len != expected {
        return Err(Error::DimensionMismatch { len, expected });
    }
    Ok(())
}

/// Hermitian, unit-trace, positive semidefinite operator on `n_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    mat: DMatrix<C64>,
}

impl DensityMatrix {
    pub fn new(n_qubits: usize, mat: DMatrix<C64>) -> Result<Self> {
        let rho = Self::from_raw(n_qubits, mat)?;
        rho.validate()?;
        Ok(rho)
    }

    /// Shape check only; callers guarantee the physical invariants.
    pub(crate) fn from_raw(n_qubits: usize, mat: DMatrix<C64>) -> Result<Self> {
        check_len(n_qubits, mat.nrows())?;
        if !mat.is_square() {
            return Err(Error::InvalidDensityMatrix("matrix is not square".into()));
        }
        Ok(Self { n_qubits, mat })
    }

    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        check_len(n_qubits, 1 << n_qubits)?;
        let dim = 1usize << n_qubits;
        let mat = DMatrix::from_diagonal_element(dim, dim, C64::new(1.0 / dim as f64, 0.0));
        Ok(Self { n_qubits, mat })
    }

    /// Checks Hermiticity, unit trace and positivity.
    pub fn validate(&self) -> Result<()> {
        let defect = linalg::hermiticity_defect(&self.mat);
        if defect > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (defect {defect:e})"
            )));
        }
        let tr = linalg::trace(&self.mat);
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace = {tr}")));
        }
        let min = linalg::hermitian_eigenvalues(&self.mat)
            .first()
            .copied()
            .unwrap_or(0.0);
        if min < -PSD_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.mat
    }

    pub fn trace(&self) -> C64 {
        linalg::trace(&self.mat)
    }

    pub fn purity(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }
}

impl From<&PureState> for DensityMatrix {
    fn from(psi: &PureState) -> Self {
        psi.to_density()
    }
}

/// Disjoint split `A1 : A2 : B` of the qubits; `B` is the measured part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tripartition {
    n_qubits: usize,
    part_a1: Vec<usize>,
    part_a2: Vec<usize>,
    part_b: Vec<usize>,
}

impl Tripartition {
    pub fn new(n_qubits: usize, a1: &[usize], a2: &[usize], b: &[usize]) -> Result<Self> {
        let a1 = normalize_qubit_set(a1, n_qubits)?;
        let a2 = normalize_qubit_set(a2, n_qubits)?;
        let b = normalize_qubit_set(b, n_qubits)?;
        if a1.is_empty() || a2.is_empty() {
            return Err(Error::InvalidTripartition(
                "A1 and A2 must be non-empty".into(),
            ));
        }
        if b.is_empty() {
            return Err(Error::InvalidTripartition("B must be non-empty".into()));
        }
        let mut all: Vec<usize> = a1.iter().chain(&a2).chain(&b).copied().collect();
        all.sort_unstable();
        if all.len() != n_qubits || all.iter().enumerate().any(|(i, &q)| i != q) {
            return Err(Error::InvalidTripartition(format!(
                "parts must be disjoint and cover 0..{n_qubits}"
            )));
        }
        Ok(Self {
            n_qubits,
            part_a1: a1,
            part_a2: a2,
            part_b: b,
        })
    }

    /// `B = {0..n_b}`, `A1` the next `m` qubits, `A2` the rest.
    pub fn contiguous(n_qubits: usize, n_b: usize, m: usize) -> Result<Self> {
        if n_b + m >= n_qubits {
            return Err(Error::InvalidTripartition(format!(
                "n = {n_b}, m = {m} leave no qubit for A2 (N = {n_qubits})"
            )));
        }
        let b: Vec<usize> = (0..n_b).collect();
        let a1: Vec<usize> = (n_b..n_b + m).collect();
        let a2: Vec<usize> = (n_b + m..n_qubits).collect();
        Self::new(n_qubits, &a1, &a2, &b)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn a1(&self) -> &[usize] {
        &self.part_a1
    }

    pub fn a2(&self) -> &[usize] {
        &self.part_a2
    }

    pub fn b(&self) -> &[usize] {
        &self.part_b
    }

    /// `A1 ∪ A2`, ascending.
    pub fn a(&self) -> Vec<usize> {
        let mut a: Vec<usize> = self.part_a1.iter().chain(&self.part_a2).copied().collect();
        a.sort_unstable();
        a
    }

    /// Positions of the `A1` qubits inside the ascending list [`Self::a`].
    pub fn a1_positions_in_a(&self) -> Vec<usize> {
        let a = self.a();
        self.part_a1
            .iter()
            .map(|q| a.iter().position(|x| x == q).expect("A1 is a subset of A"))
            .collect()
    }

    /// Qubit order `B, A1, A2` used by the measurement kernels.
    pub fn measurement_order(&self) -> Vec<usize> {
        self.part_b
            .iter()
            .chain(&self.part_a1)
            .chain(&self.part_a2)
            .copied()
            .collect()
    }
}

/// Reduced state on `keep`, with the kept qubits in ascending order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n_qubits;
    let keep = normalize_qubit_set(keep, n)?;
    if keep.is_empty() {
        return Err(Error::EmptyQubitSet);
    }
    let traced = complement(&keep, n);
    let mut order = keep.clone();
    order.extend_from_slice(&traced);
    let map = permutation_map(&order, n);
    // inverse: new index -> old index
    let mut inv = vec![0usize; map.len()];
    for (old, &new) in map.iter().enumerate() {
        inv[new] = old;
    }
    let d_keep = 1usize << keep.len();
    let d_tr = 1usize << traced.len();
    let m = &rho.mat;
    let out = DMatrix::from_fn(d_keep, d_keep, |a, b| {
        let mut acc = ZERO;
        for t in 0..d_tr {
            acc += m[(inv[a * d_tr + t], inv[b * d_tr + t])];
        }
        acc
    });
    DensityMatrix::from_raw(keep.len(), out)
}

/// Partial transpose on the qubits in `transposed`. Pure element shuffle, so
/// applying it twice returns the input bit for bit.
pub fn partial_transpose(rho: &DensityMatrix, transposed: &[usize]) -> Result<DMatrix<C64>> {
    let n = rho.n_qubits;
    let set = normalize_qubit_set(transposed, n)?;
    Ok(partial_transpose_matrix(&rho.mat, qubit_mask(&set, n)))
}

/// Partial transpose of a raw matrix on the index bits in `mask`.
pub(crate) fn partial_transpose_matrix(m: &DMatrix<C64>, mask: usize) -> DMatrix<C64> {
    let dim = m.nrows();
    let mut out = DMatrix::from_element(dim, dim, ZERO);
    for j in 0..dim {
        for i in 0..dim {
            let ni = (i & !mask) | (j & mask);
            let nj = (j & !mask) | (i & mask);
            out[(ni, nj)] = m[(i, j)];
        }
    }
    out
}

/// Negativity `2 |sum of negative eigenvalues of rho^{T_cut}|`; equals 1 for
/// a Bell pair.
pub fn negativity(rho: &DensityMatrix, cut: &[usize]) -> Result<f64> {
    let pt = partial_transpose(rho, cut)?;
    Ok(2.0 * linalg::negative_eigen_sum(&pt, EPS_EIG).abs())
}

/// Negativity through the trace norm, `||rho^{T_cut}||_1 - 1`, with the trace
/// norm taken as the sum of singular values.
pub fn trace_norm_negativity(rho: &DensityMatrix, cut: &[usize]) -> Result<f64> {
    let pt = partial_transpose(rho, cut)?;
    let sv = pt.singular_values();
    Ok((sv.iter().sum::<f64>() - 1.0).max(0.0))
}

/// Negativity of a pure state from its Schmidt coefficients,
/// `(sum_i s_i)^2 - 1`.
pub fn pure_negativity(psi: &PureState, cut: &[usize]) -> Result<f64> {
    let n = psi.n_qubits;
    let cut = normalize_qubit_set(cut, n)?;
    if cut.is_empty() || cut.len() == n {
        return Ok(0.0);
    }
    let mut order = cut.clone();
    order.extend(complement(&cut, n));
    let v = permute_amplitudes(&psi.amps, &order, n);
    let (p, weighted) = schmidt_weighted_negativity(&v, 1 << cut.len());
    Ok((weighted / p).max(0.0))
}

/// For an unnormalized vector `v` viewed as a `rows x (len/rows)` matrix,
/// returns `(p, p * E)` with `p = |v|^2` and `E` the negativity of `v/|v|`
/// across the row/column split. Contributes zero below the eigen noise floor.
pub(crate) fn schmidt_weighted_negativity(v: &[C64], rows: usize) -> (f64, f64) {
    let cols = v.len() / rows;
    let p: f64 = v.iter().map(|a| a.norm_sqr()).sum();
    if p == 0.0 {
        return (0.0, 0.0);
    }
    let (small, large, row_major) = if rows <= cols {
        (rows, cols, true)
    } else {
        (cols, rows, false)
    };
    let at = |s: usize, l: usize| {
        if row_major {
            v[s * cols + l]
        } else {
            v[l * cols + s]
        }
    };
    if small == 2 {
        // p E = 2 sqrt(det G) for a qubit on one side
        let (mut g00, mut g11, mut g10) = (0.0, 0.0, ZERO);
        for l in 0..large {
            let x0 = at(0, l);
            let x1 = at(1, l);
            g00 += x0.norm_sqr();
            g11 += x1.norm_sqr();
            g10 += x1 * x0.conj();
        }
        let det = (g00 * g11 - g10.norm_sqr()).max(0.0);
        let w = 2.0 * det.sqrt();
        return (p, if w > 2.0 * EPS_EIG * p { w } else { 0.0 });
    }
    let m = DMatrix::from_fn(small, large, at);
    let s: f64 = m.singular_values().iter().sum();
    let w = s * s - p;
    (p, if w > 2.0 * EPS_EIG * p { w } else { 0.0 })
}

/// Single-qubit measurement vector `|b_outcome>` for angles `(theta, phi)`:
/// outcome 0 is `cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>`, outcome 1 is
/// `sin(θ/2)|0> - e^{iφ} cos(θ/2)|1>`. No range checks.
#[inline]
pub fn basis_vector(theta: f64, phi: f64, outcome: usize) -> [C64; 2] {
    let (s, c) = (0.5 * theta).sin_cos();
    let e = C64::from_polar(1.0, phi);
    if outcome == 0 {
        [C64::new(c, 0.0), e * s]
    } else {
        [C64::new(s, 0.0), -e * c]
    }
}

pub fn projector_state(theta: f64, phi: f64, outcome: u8) -> Result<PureState> {
    check_angles(theta, phi)?;
    if outcome > 1 {
        return Err(Error::InvalidParameter(format!(
            "outcome {outcome} is not a bit"
        )));
    }
    let v = basis_vector(theta, phi, outcome as usize);
    Ok(PureState {
        n_qubits: 1,
        amps: v.to_vec(),
    })
}

pub(crate) fn check_angles(theta: f64, phi: f64) -> Result<()> {
    use std::f64::consts::PI;
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::AngleOutOfRange {
            name: "theta",
            value: theta,
            lo: 0.0,
            hi: PI,
        });
    }
    if !(0.0..2.0 * PI).contains(&phi) {
        return Err(Error::AngleOutOfRange {
            name: "phi",
            value: phi,
            lo: 0.0,
            hi: 2.0 * PI,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn bell() -> PureState {
        PureState::new(2, vec![c(FRAC_1_SQRT_2), ZERO, ZERO, c(FRAC_1_SQRT_2)]).unwrap()
    }

    fn gghz3(a0: f64) -> PureState {
        let mut amps = vec![ZERO; 8];
        amps[0] = c(a0);
        amps[7] = c((1.0 - a0 * a0).sqrt());
        PureState::new(3, amps).unwrap()
    }

    #[test]
    fn rejects_bad_states() {
        assert!(matches!(
            PureState::new(2, vec![c(1.0); 3]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            PureState::new(1, vec![c(1.0), c(1.0)]),
            Err(Error::NotNormalized { .. })
        ));
        let bad = DMatrix::from_diagonal_element(2, 2, c(1.0));
        assert!(DensityMatrix::new(1, bad).is_err());
    }

    #[test]
    fn partial_trace_keep_all_is_identity_map() {
        let rho = gghz3(0.6).to_density();
        let same = partial_trace(&rho, &[0, 1, 2]).unwrap();
        assert_eq!(same.matrix(), rho.matrix());
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let red = partial_trace(&bell().to_density(), &[0]).unwrap();
        let expect = DensityMatrix::maximally_mixed(1).unwrap();
        assert!((red.matrix() - expect.matrix()).norm() < 1e-15);
    }

    #[test]
    fn gghz_marginal() {
        let red = partial_trace(&gghz3(0.6).to_density(), &[0]).unwrap();
        assert!((red.matrix()[(0, 0)].re - 0.36).abs() < 1e-14);
        assert!((red.matrix()[(1, 1)].re - 0.64).abs() < 1e-14);
        assert!(red.matrix()[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn partial_trace_errors() {
        let rho = bell().to_density();
        assert_eq!(partial_trace(&rho, &[]).unwrap_err(), Error::EmptyQubitSet);
        assert!(matches!(
            partial_trace(&rho, &[2]),
            Err(Error::QubitOutOfRange { index: 2, .. })
        ));
    }

    #[test]
    fn partial_transpose_of_bell() {
        let rho = bell().to_density();
        assert_eq!(&partial_transpose(&rho, &[]).unwrap(), rho.matrix());
        let ev = linalg::hermitian_eigenvalues(&partial_transpose(&rho, &[1]).unwrap());
        let expect = [-0.5, 0.5, 0.5, 0.5];
        for (a, b) in ev.iter().zip(expect) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!(partial_transpose(&rho, &[5]).is_err());
    }

    #[test]
    fn gghz_partial_transpose_spectrum() {
        let a0: f64 = 0.6;
        let a1 = 0.8;
        let ev = linalg::hermitian_eigenvalues(
            &partial_transpose(&gghz3(a0).to_density(), &[0]).unwrap(),
        );
        let mut nonzero: Vec<f64> = ev.into_iter().filter(|l| l.abs() > 1e-12).collect();
        nonzero.sort_by(|a, b| a.total_cmp(b));
        let mut expect = vec![a0 * a0, a1 * a1, a0 * a1, -a0 * a1];
        expect.sort_by(|a, b| a.total_cmp(b));
        assert_eq!(nonzero.len(), 4);
        for (a, b) in nonzero.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn negativity_examples() {
        let prod = PureState::basis(4, 0).unwrap().to_density();
        assert_eq!(negativity(&prod, &[0, 2]).unwrap(), 0.0);
        assert!((negativity(&bell().to_density(), &[0]).unwrap() - 1.0).abs() < 1e-13);
        let mut amps = vec![ZERO; 16];
        amps[0] = c(0.6);
        amps[15] = c(0.8);
        let g4 = PureState::new(4, amps).unwrap();
        for cut in [vec![0], vec![1, 2], vec![0, 3], vec![3]] {
            let e = negativity(&g4.to_density(), &cut).unwrap();
            assert!((e - 0.96).abs() < 1e-12, "{cut:?}: {e}");
            assert!((pure_negativity(&g4, &cut).unwrap() - 0.96).abs() < 1e-12);
        }
    }

    #[test]
    fn projector_examples() {
        let z = projector_state(0.0, 0.0, 0).unwrap();
        assert_eq!(z.amplitudes(), &[c(1.0), ZERO]);
        let x = projector_state(FRAC_PI_2, 0.0, 0).unwrap();
        assert!((x.amplitudes()[0] - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((x.amplitudes()[1] - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        let y1 = projector_state(FRAC_PI_2, FRAC_PI_2, 1).unwrap();
        assert!((y1.amplitudes()[0] - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((y1.amplitudes()[1] - C64::new(0.0, -FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!(projector_state(-0.1, 0.0, 0).is_err());
        assert!(projector_state(0.0, 2.0 * PI, 0).is_err());
        assert!(projector_state(0.0, 0.0, 2).is_err());
    }

    #[test]
    fn tripartition_validation() {
        assert!(Tripartition::new(4, &[1], &[2, 3], &[0]).is_ok());
        assert!(Tripartition::new(4, &[1], &[2], &[0]).is_err());
        assert!(Tripartition::new(4, &[1], &[1, 3], &[0, 2]).is_err());
        assert!(Tripartition::new(3, &[1], &[2], &[]).is_err());
        assert!(Tripartition::new(3, &[], &[1, 2], &[0]).is_err());
        let t = Tripartition::contiguous(5, 1, 2).unwrap();
        assert_eq!(t.b(), &[0]);
        assert_eq!(t.a1(), &[1, 2]);
        assert_eq!(t.a2(), &[3, 4]);
        let t = Tripartition::new(5, &[4], &[0, 2], &[1, 3]).unwrap();
        assert_eq!(t.a1_positions_in_a(), vec![2]);
    }

    #[test]
    fn permutation_roundtrip() {
        let psi = gghz3(0.6);
        let mut amps = psi.amplitudes().to_vec();
        amps[1] = c(0.0);
        let order = [2, 0, 1];
        let p = psi.permuted(&order).unwrap();
        // qubit 0 of p is qubit 2 of psi, so |001> of psi sits at |100> of p
        let mut q = vec![ZERO; 8];
        q[1] = c(1.0);
        let e = PureState::new(3, q).unwrap().permuted(&order).unwrap();
        assert_eq!(e.amplitudes()[4], c(1.0));
        assert_eq!(p.amplitudes()[0], c(0.6));
    }
}
