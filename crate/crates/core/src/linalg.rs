//! Small dense helpers shared by the state, measurement and spin-chain code.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Only the lower triangle is read. Goes through nalgebra's Hermitian
/// tridiagonalization path, never the general (non-symmetric) solver.
pub fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    debug_assert!(m.is_square());
    let mut ev: Vec<f64> = match m.nrows() {
        0 => Vec::new(),
        1 => vec![m[(0, 0)].re],
        2 => {
            let a = m[(0, 0)].re;
            let d = m[(1, 1)].re;
            let b = m[(1, 0)];
            let mean = 0.5 * (a + d);
            let half = 0.5 * (a - d);
            let r = (half * half + b.norm_sqr()).sqrt();
            vec![mean - r, mean + r]
        }
        _ => general_eigenvalues(m),
    };
    ev.sort_by(|x, y| x.total_cmp(y));
    ev
}

fn plausible_spectrum(ev: &[f64], m: &DMatrix<C64>) -> bool {
    let tr = trace(m).re;
    let scale = m.iter().map(|x| x.norm()).fold(1.0, f64::max) * m.nrows() as f64;
    ev.iter().all(|x| x.is_finite()) && (ev.iter().sum::<f64>() - tr).abs() <= 1e-10 * scale
}

// The implicit QR iteration can break down on very sparse inputs, so retry
// on a shifted copy and finally on the real symmetric embedding.
fn general_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    let n = m.nrows();
    let ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    if plausible_spectrum(&ev, m) {
        return ev;
    }
    let scale = m.iter().map(|x| x.norm()).fold(0.0, f64::max).max(1.0);
    let shift = 0.37 * scale;
    let mut shifted = m.clone();
    for i in 0..n {
        shifted[(i, i)] += C64::new(shift, 0.0);
    }
    let ev: Vec<f64> = shifted
        .symmetric_eigenvalues()
        .iter()
        .map(|x| x - shift)
        .collect();
    if plausible_spectrum(&ev, m) {
        return ev;
    }
    // [[Re, -Im], [Im, Re]] carries every eigenvalue twice.
    let real = DMatrix::<f64>::from_fn(2 * n, 2 * n, |i, j| {
        let z = m[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let mut doubled: Vec<f64> = nalgebra::SymmetricEigen::new(real)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    doubled.sort_by(|x, y| x.total_cmp(y));
    doubled.into_iter().step_by(2).collect()
}

/// Sum of the eigenvalues below `-threshold`.
pub fn negative_eigen_sum(m: &DMatrix<C64>, threshold: f64) -> f64 {
    hermitian_eigenvalues(m)
        .into_iter()
        .filter(|&l| l < -threshold)
        .sum()
}

pub fn trace(m: &DMatrix<C64>) -> C64 {
    (0..m.nrows()).map(|i| m[(i, i)]).sum()
}

/// Largest absolute deviation from Hermiticity, `max |m_ij - conj(m_ji)|`.
pub fn hermiticity_defect(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..=i {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Kronecker product of two dense complex matrices.
pub fn kron(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    DMatrix::from_fn(ar * br, ac * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

pub fn identity(dim: usize) -> DMatrix<C64> {
    DMatrix::identity(dim, dim)
}

/// Pauli matrices in the computational basis with `sigma_z |0> = |0>`.
pub fn pauli_x() -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[ZERO, C64::new(1.0, 0.0), C64::new(1.0, 0.0), ZERO])
}

pub fn pauli_y() -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[ZERO, C64::new(0.0, -1.0), C64::new(0.0, 1.0), ZERO])
}

pub fn pauli_z() -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[C64::new(1.0, 0.0), ZERO, ZERO, C64::new(-1.0, 0.0)])
}
