//! Constructors for the paradigmatic state families and Haar-uniform samplers
//! over their coefficient spaces.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{C64, ZERO};
use crate::qcore::PureState;

const NORM_TOL: f64 = 1e-12;

/// Random stream used by every sampler. One generator per worker; see
/// [`stream_rng`].
pub type StateRng = ChaCha8Rng;

/// Independent, reproducible stream `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> StateRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn check_unit_norm(coeffs: &[C64]) -> Result<()> {
    let norm = coeffs.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    Ok(())
}

fn check_min_qubits(n_qubits: usize, min: usize, what: &str) -> Result<()> {
    if n_qubits < min || n_qubits > 30 {
        return Err(Error::InvalidParameter(format!(
            "{what} needs {min} <= n_qubits <= 30, got {n_qubits}"
        )));
    }
    Ok(())
}

/// `a0 |0...0> + a1 |1...1>`.
#[derive(Clone, Debug, PartialEq)]
pub struct GghzParams {
    pub n_qubits: usize,
    pub a0: C64,
    pub a1: C64,
}

/// Single-excitation superposition `sum_i a_i |0..1_i..0>`.
#[derive(Clone, Debug, PartialEq)]
pub struct GwParams {
    pub n_qubits: usize,
    pub a: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DickeParams {
    pub n_qubits: usize,
    pub n_excited: usize,
}

/// Superposition of Dicke layers; `a[k]` weights the layer with `k` excitations.
#[derive(Clone, Debug, PartialEq)]
pub struct GdParams {
    pub n_qubits: usize,
    pub a: Vec<C64>,
}

/// `a0|000> + a1|100> + a2|010> + a3|001>`.
#[derive(Clone, Debug, PartialEq)]
pub struct WClassParams {
    pub a: [C64; 4],
}

/// Arbitrary three-qubit state `sum_i c_i |i>`.
#[derive(Clone, Debug, PartialEq)]
pub struct GhzClassParams {
    pub c: [C64; 8],
}

pub fn make_gghz(p: &GghzParams) -> Result<PureState> {
    check_min_qubits(p.n_qubits, 2, "gGHZ")?;
    check_unit_norm(&[p.a0, p.a1])?;
    let dim = 1usize << p.n_qubits;
    let mut amps = vec![ZERO; dim];
    amps[0] = p.a0;
    amps[dim - 1] = p.a1;
    PureState::new(p.n_qubits, amps)
}

/// Basis index with a single excitation on qubit `i`.
#[inline]
pub(crate) fn one_hot(n_qubits: usize, i: usize) -> usize {
    1 << (n_qubits - 1 - i)
}

pub fn make_gw(p: &GwParams) -> Result<PureState> {
    check_min_qubits(p.n_qubits, 2, "gW")?;
    if p.a.len() != p.n_qubits {
        return Err(Error::DimensionMismatch {
            len: p.a.len(),
            expected: p.n_qubits,
        });
    }
    check_unit_norm(&p.a)?;
    let mut amps = vec![ZERO; 1 << p.n_qubits];
    for (i, &a) in p.a.iter().enumerate() {
        amps[one_hot(p.n_qubits, i)] = a;
    }
    PureState::new(p.n_qubits, amps)
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn make_dicke(p: &DickeParams) -> Result<PureState> {
    check_min_qubits(p.n_qubits, 1, "Dicke")?;
    if p.n_excited > p.n_qubits {
        return Err(Error::InvalidParameter(format!(
            "N1 = {} exceeds N = {}",
            p.n_excited, p.n_qubits
        )));
    }
    let mut weights = vec![ZERO; p.n_qubits + 1];
    weights[p.n_excited] = C64::new(1.0, 0.0);
    make_gd(&GdParams {
        n_qubits: p.n_qubits,
        a: weights,
    })
}

pub fn make_gd(p: &GdParams) -> Result<PureState> {
    check_min_qubits(p.n_qubits, 1, "generalized Dicke")?;
    if p.a.len() != p.n_qubits + 1 {
        return Err(Error::DimensionMismatch {
            len: p.a.len(),
            expected: p.n_qubits + 1,
        });
    }
    check_unit_norm(&p.a)?;
    let scale: Vec<f64> = (0..=p.n_qubits)
        .map(|k| 1.0 / binomial(p.n_qubits, k).sqrt())
        .collect();
    let amps = (0..1usize << p.n_qubits)
        .map(|i| {
            let w = i.count_ones() as usize;
            p.a[w] * scale[w]
        })
        .collect();
    PureState::new(p.n_qubits, amps)
}

pub fn make_wclass(p: &WClassParams) -> Result<PureState> {
    check_unit_norm(&p.a)?;
    let mut amps = vec![ZERO; 8];
    amps[0] = p.a[0];
    amps[0b100] = p.a[1];
    amps[0b010] = p.a[2];
    amps[0b001] = p.a[3];
    PureState::new(3, amps)
}

pub fn make_ghzclass(p: &GhzClassParams) -> Result<PureState> {
    check_unit_norm(&p.c)?;
    PureState::new(3, p.c.to_vec())
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn radicand(x: f64, what: &str) -> Result<f64> {
    if x < -1e-15 {
        return Err(Error::InvalidParameter(format!(
            "{what}: negative radicand {x}"
        )));
    }
    Ok(x.max(0.0).sqrt())
}

/// Three-qubit gW state on the upper-bound curve:
/// `a|100> + sqrt((1-a^2)/2) (|010> + |001>)`.
pub fn make_psi3(a: f64) -> Result<PureState> {
    let t = radicand((1.0 - a * a) / 2.0, "psi3")?;
    make_gw(&GwParams {
        n_qubits: 3,
        a: vec![real(a), real(t), real(t)],
    })
}

/// Four-qubit gW state on the upper-bound curve for `B = {0}`, `A1 = {1}`.
pub fn make_psi4(a: f64, b: f64) -> Result<PureState> {
    let t = radicand((1.0 - a * a) / 2.0, "psi4")?;
    let u = radicand((1.0 - a * a - 2.0 * b * b) / 2.0, "psi4")?;
    make_gw(&GwParams {
        n_qubits: 4,
        a: vec![real(a), real(t), real(b), real(u)],
    })
}

/// Three-qubit gW state with unit `A:B` entanglement.
pub fn make_phi3(a: f64) -> Result<PureState> {
    let t = radicand(0.5 - a * a, "phi3")?;
    make_gw(&GwParams {
        n_qubits: 3,
        a: vec![real(0.5f64.sqrt()), real(a), real(t)],
    })
}

pub fn make_phi4(a: f64, b: f64) -> Result<PureState> {
    let t = radicand(0.5 - a * a - b * b, "phi4")?;
    make_gw(&GwParams {
        n_qubits: 4,
        a: vec![real(0.5f64.sqrt()), real(a), real(b), real(t)],
    })
}

/// `len` i.i.d. standard complex Gaussians, normalized. `real` zeroes the
/// imaginary parts, which samples the real slice of the same sphere.
pub fn gaussian_unit_vector(len: usize, rng: &mut StateRng, real: bool) -> Vec<C64> {
    loop {
        let mut v: Vec<C64> = (0..len)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = if real {
                    0.0
                } else {
                    StandardNormal.sample(rng)
                };
                C64::new(re, im)
            })
            .collect();
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-300 {
            v.iter_mut().for_each(|a| *a /= norm);
            return v;
        }
    }
}

/// Haar-uniform pure state on `n_qubits` qubits.
pub fn haar_pure(n_qubits: usize, rng: &mut StateRng) -> Result<PureState> {
    check_min_qubits(n_qubits, 1, "Haar state")?;
    PureState::new(n_qubits, gaussian_unit_vector(1 << n_qubits, rng, false))
}

pub fn sample_gghz(n_qubits: usize, rng: &mut StateRng, real: bool) -> Result<PureState> {
    let v = gaussian_unit_vector(2, rng, real);
    make_gghz(&GghzParams {
        n_qubits,
        a0: v[0],
        a1: v[1],
    })
}

pub fn sample_gw_params(n_qubits: usize, rng: &mut StateRng, real: bool) -> GwParams {
    GwParams {
        n_qubits,
        a: gaussian_unit_vector(n_qubits, rng, real),
    }
}

pub fn sample_gw(n_qubits: usize, rng: &mut StateRng, real: bool) -> Result<PureState> {
    make_gw(&sample_gw_params(n_qubits, rng, real))
}

pub fn sample_gd(n_qubits: usize, rng: &mut StateRng, real: bool) -> Result<PureState> {
    make_gd(&GdParams {
        n_qubits,
        a: gaussian_unit_vector(n_qubits + 1, rng, real),
    })
}

pub fn sample_wclass_params(rng: &mut StateRng, real: bool) -> WClassParams {
    let v = gaussian_unit_vector(4, rng, real);
    WClassParams {
        a: [v[0], v[1], v[2], v[3]],
    }
}

pub fn sample_ghzclass(rng: &mut StateRng, real: bool) -> Result<PureState> {
    let v = gaussian_unit_vector(8, rng, real);
    let mut c = [ZERO; 8];
    c.copy_from_slice(&v);
    make_ghzclass(&GhzClassParams { c })
}
