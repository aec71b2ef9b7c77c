//! Periodic XY and XXZ chains in a field: ground states, entanglement pairs
//! and disorder averages.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::localize::{
    cut_negativities, EntanglementProfile, LocalizationStrategy, MeasurementProblem,
};
use crate::qcore::{PureState, Tripartition};
use crate::states::stream_rng;

pub const MIN_SITES: usize = 2;
pub const MAX_SITES: usize = 14;

/// Sectors at most this large are diagonalized densely.
const DENSE_SECTOR: usize = 64;
const LANCZOS_MAX_ITER: usize = 300;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Model {
    /// `(1+γ) XX + (1-γ) YY` bonds, transverse field.
    Txy { gamma: f64 },
    /// `XX + YY + Δ ZZ` bonds, longitudinal field.
    Xxz { delta: f64 },
}

impl Model {
    fn couplings(&self) -> (f64, f64) {
        match *self {
            Model::Txy { gamma } => (gamma, 0.0),
            Model::Xxz { delta } => (0.0, delta),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::Txy { .. } => "txy",
            Model::Xxz { .. } => "xxz",
        }
    }
}

/// How the dimensionless field `g` enters the Pauli-operator Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldConvention {
    /// Field term `2 g σz`: the Hamiltonian written with spin-1/2 operators
    /// `S = σ/2` and field `g S^z`, rescaled. Critical points sit at `g = 1`
    /// (TXY) and `g = 1 + Δ` (XXZ).
    SpinHalf,
    /// Field term `g σz`.
    Pauli,
}

impl FieldConvention {
    fn scale(self) -> f64 {
        match self {
            FieldConvention::SpinHalf => 2.0,
            FieldConvention::Pauli => 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinModelSpec {
    pub n_sites: usize,
    pub model: Model,
    pub g: f64,
    pub convention: FieldConvention,
}

impl SpinModelSpec {
    pub fn new(n_sites: usize, model: Model, g: f64) -> Result<Self> {
        let s = Self {
            n_sites,
            model,
            g,
            convention: FieldConvention::SpinHalf,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_convention(mut self, convention: FieldConvention) -> Self {
        self.convention = convention;
        self
    }

    pub fn with_g(&self, g: f64) -> Self {
        Self { g, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(MIN_SITES..=MAX_SITES).contains(&self.n_sites) {
            return Err(Error::SizeBudget {
                what: "spin chain",
                n_qubits: self.n_sites,
                max: MAX_SITES,
            });
        }
        if !self.g.is_finite() {
            return Err(Error::InvalidParameter(format!("field g = {}", self.g)));
        }
        match self.model {
            Model::Txy { gamma } if !gamma.is_finite() => {
                Err(Error::InvalidParameter(format!("gamma = {gamma}")))
            }
            Model::Xxz { delta } if !(-1.0..=1.0).contains(&delta) => Err(Error::Domain {
                what: "z anisotropy delta",
                value: delta,
                lo: -1.0,
                hi: 1.0,
            }),
            _ => Ok(()),
        }
    }

    /// Field `h_i` on every site in the Pauli form of the Hamiltonian.
    pub fn site_fields(&self) -> Vec<f64> {
        vec![self.convention.scale() * self.g; self.n_sites]
    }
}

/// Real symmetric Hamiltonian in the `σz` product basis (bit 0 = spin up,
/// `σz = +1`), stored as bonds and fields.
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    n: usize,
    /// `(1+γ)XX + (1-γ)YY` flip amplitude is `2γ` on equal bits, `2` on unequal.
    gamma: f64,
    delta: f64,
    fields: Vec<f64>,
    conserves_magnetization: bool,
}

impl Hamiltonian {
    pub fn new(model: Model, fields: Vec<f64>) -> Result<Self> {
        let n = fields.len();
        if !(MIN_SITES..=MAX_SITES).contains(&n) {
            return Err(Error::SizeBudget {
                what: "spin chain",
                n_qubits: n,
                max: MAX_SITES,
            });
        }
        let (gamma, delta) = model.couplings();
        Ok(Self {
            n,
            gamma,
            delta,
            fields,
            conserves_magnetization: matches!(model, Model::Xxz { .. }),
        })
    }

    pub fn from_spec(spec: &SpinModelSpec) -> Result<Self> {
        spec.validate()?;
        Self::new(spec.model, spec.site_fields())
    }

    pub fn n_sites(&self) -> usize {
        self.n
    }

    fn mask(&self, site: usize) -> usize {
        1 << (self.n - 1 - site)
    }

    fn diagonal(&self, s: usize) -> f64 {
        let z = |site: usize| if s & self.mask(site) == 0 { 1.0 } else { -1.0 };
        let mut e = 0.0;
        for i in 0..self.n {
            let j = (i + 1) % self.n;
            e += self.delta * z(i) * z(j) + self.fields[i] * z(i);
        }
        e
    }

    /// Off-diagonal entries `(target, amplitude)` of row `s`, duplicates kept.
    fn flips(&self, s: usize, out: &mut Vec<(usize, f64)>) {
        out.clear();
        for i in 0..self.n {
            let j = (i + 1) % self.n;
            let (mi, mj) = (self.mask(i), self.mask(j));
            let equal = ((s & mi) == 0) == ((s & mj) == 0);
            let amp = if equal { 2.0 * self.gamma } else { 2.0 };
            if amp != 0.0 {
                out.push((s ^ mi ^ mj, amp));
            }
        }
    }

    /// Dense `2^N x 2^N` matrix, for small chains and cross-checks.
    pub fn dense(&self) -> Result<DMatrix<f64>> {
        if self.n > 10 {
            return Err(Error::SizeBudget {
                what: "dense Hamiltonian",
                n_qubits: self.n,
                max: 10,
            });
        }
        let d = 1usize << self.n;
        let mut h = DMatrix::zeros(d, d);
        let mut buf = Vec::new();
        for s in 0..d {
            h[(s, s)] += self.diagonal(s);
            self.flips(s, &mut buf);
            for &(t, a) in &buf {
                h[(t, s)] += a;
            }
        }
        Ok(h)
    }

    /// Basis states grouped by the conserved quantity: magnetization for
    /// XXZ, parity for TXY.
    fn sectors(&self) -> Vec<Vec<usize>> {
        let d = 1usize << self.n;
        let n_labels = if self.conserves_magnetization {
            self.n + 1
        } else {
            2
        };
        let mut out = vec![Vec::new(); n_labels];
        for s in 0..d {
            let w = s.count_ones() as usize;
            let label = if self.conserves_magnetization {
                w
            } else {
                w & 1
            };
            out[label].push(s);
        }
        out.retain(|v| !v.is_empty());
        out
    }

    /// Upper bound on the spectral radius.
    pub fn norm_bound(&self) -> f64 {
        let bond = 2.0 * self.gamma.abs().max(1.0) + self.delta.abs();
        self.n as f64 * bond + self.fields.iter().map(|h| h.abs()).sum::<f64>()
    }
}

/// Sparse block of `H` restricted to one sector.
struct SectorOp {
    diag: Vec<f64>,
    /// Row-major off-diagonal entries.
    offsets: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl SectorOp {
    fn new(h: &Hamiltonian, states: &[usize]) -> Self {
        let mut index = vec![usize::MAX; 1 << h.n];
        for (k, &s) in states.iter().enumerate() {
            index[s] = k;
        }
        let mut diag = Vec::with_capacity(states.len());
        let mut offsets = vec![0];
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        let mut buf = Vec::new();
        for &s in states {
            diag.push(h.diagonal(s));
            h.flips(s, &mut buf);
            for &(t, a) in &buf {
                cols.push(index[t]);
                vals.push(a);
            }
            offsets.push(cols.len());
        }
        Self {
            diag,
            offsets,
            cols,
            vals,
        }
    }

    fn dim(&self) -> usize {
        self.diag.len()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (r, yr) in y.iter_mut().enumerate() {
            let mut acc = self.diag[r] * x[r];
            for k in self.offsets[r]..self.offsets[r + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            *yr = acc;
        }
    }

    fn dense(&self) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for r in 0..d {
            m[(r, r)] += self.diag[r];
            for k in self.offsets[r]..self.offsets[r + 1] {
                m[(self.cols[k], r)] += self.vals[k];
            }
        }
        m
    }
}

/// Lowest two eigenvalues (second may be absent) and the lowest eigenvector.
struct SectorGround {
    e0: f64,
    e1: Option<f64>,
    vec: Vec<f64>,
}

fn dense_ground(op: &SectorOp) -> SectorGround {
    let eig = SymmetricEigen::new(op.dense());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let v = eig.eigenvectors.column(order[0]).iter().copied().collect();
    SectorGround {
        e0: eig.eigenvalues[order[0]],
        e1: order.get(1).map(|&i| eig.eigenvalues[i]),
        vec: v,
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Lanczos with full reorthogonalization, deterministic start vector.
fn lanczos_ground(op: &SectorOp, scale: f64, seed: u64) -> Result<SectorGround> {
    let d = op.dim();
    let mut rng = stream_rng(0x1a2c705, seed);
    let mut v: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
    let nv = dot(&v, &v).sqrt();
    v.iter_mut().for_each(|x| *x /= nv);

    let mut basis: Vec<Vec<f64>> = vec![v];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut w = vec![0.0; d];
    let tol = 1e-13 * scale;
    let max_iter = LANCZOS_MAX_ITER.min(d);
    let mut last: Option<(SymmetricEigen<f64, nalgebra::Dyn>, usize)> = None;

    for j in 0..max_iter {
        op.apply(&basis[j], &mut w);
        let a = dot(&w, &basis[j]);
        alpha.push(a);
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&w, b);
                w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let b = dot(&w, &w).sqrt();
        let k = j + 1;
        let check = k % 5 == 0 || b < tol || k == max_iter;
        if check {
            let t = DMatrix::from_fn(k, k, |r, c| {
                if r == c {
                    alpha[r]
                } else if r == c + 1 {
                    beta[c]
                } else if c == r + 1 {
                    beta[r]
                } else {
                    0.0
                }
            });
            let eig = SymmetricEigen::new(t);
            let i0 = (0..k)
                .min_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]))
                .expect("non-empty");
            let resid = b * eig.eigenvectors[(k - 1, i0)].abs();
            let done = resid < tol || b < tol || k == max_iter;
            last = Some((eig, i0));
            if done {
                break;
            }
        }
        beta.push(b);
        basis.push(w.iter().map(|x| x / b).collect());
    }

    let (eig, i0) =
        last.ok_or_else(|| Error::Eigensolver("Lanczos produced no Ritz values".into()))?;
    let k = eig.eigenvalues.len();
    let mut gs = vec![0.0; d];
    for (r, b) in basis.iter().take(k).enumerate() {
        let c = eig.eigenvectors[(r, i0)];
        gs.iter_mut().zip(b).for_each(|(g, x)| *g += c * x);
    }
    let n = dot(&gs, &gs).sqrt();
    gs.iter_mut().for_each(|x| *x /= n);
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.total_cmp(b));
    // refine the energy with the Rayleigh quotient of the assembled vector
    let mut hv = vec![0.0; d];
    op.apply(&gs, &mut hv);
    let e0 = dot(&gs, &hv);
    let resid = hv
        .iter()
        .zip(&gs)
        .map(|(h, g)| (h - e0 * g).powi(2))
        .sum::<f64>()
        .sqrt();
    if resid > 1e-8 * scale {
        return Err(Error::Eigensolver(format!(
            "Lanczos residual {resid:.3e} after {k} iterations"
        )));
    }
    Ok(SectorGround {
        e0,
        e1: vals.get(1).copied(),
        vec: gs,
    })
}

#[derive(Clone, Debug)]
pub struct GroundState {
    pub energy: f64,
    pub state: PureState,
    /// Another eigenvalue lies within `EPS_DEG * spectral bound` of the energy.
    pub degenerate: bool,
    pub gap: Option<f64>,
}

/// Relative degeneracy tolerance.
pub const EPS_DEG: f64 = 1e-10;

pub fn ground_state(spec: &SpinModelSpec) -> Result<GroundState> {
    ground_state_of(&Hamiltonian::from_spec(spec)?)
}

pub fn ground_state_of(h: &Hamiltonian) -> Result<GroundState> {
    let scale = h.norm_bound().max(1.0);
    let mut sector_results = Vec::new();
    for (i, states) in h.sectors().into_iter().enumerate() {
        let op = SectorOp::new(h, &states);
        let g = if op.dim() <= DENSE_SECTOR {
            dense_ground(&op)
        } else {
            lanczos_ground(&op, scale, i as u64)?
        };
        sector_results.push((states, g));
    }
    let best = (0..sector_results.len())
        .min_by(|&a, &b| sector_results[a].1.e0.total_cmp(&sector_results[b].1.e0))
        .expect("at least one sector");
    let e0 = sector_results[best].1.e0;
    let mut others: Vec<f64> = Vec::new();
    for (i, (_, g)) in sector_results.iter().enumerate() {
        if i == best {
            others.extend(g.e1);
        } else {
            others.push(g.e0);
        }
    }
    let gap = others
        .iter()
        .map(|e| e - e0)
        .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.min(x))));
    let degenerate = gap.is_some_and(|g| g.abs() <= EPS_DEG * scale);

    let (states, g) = &sector_results[best];
    let mut amps = vec![C64::new(0.0, 0.0); 1 << h.n];
    // sign fixed by the first largest-magnitude component
    let pivot = g
        .vec
        .iter()
        .enumerate()
        .fold((0, 0.0f64), |(bi, bv), (i, &x)| {
            if x.abs() > bv + 1e-12 {
                (i, x.abs())
            } else {
                (bi, bv)
            }
        })
        .0;
    let sign = if g.vec[pivot] < 0.0 { -1.0 } else { 1.0 };
    for (&s, &x) in states.iter().zip(&g.vec) {
        amps[s] = C64::new(sign * x, 0.0);
    }
    Ok(GroundState {
        energy: e0,
        state: PureState::from_unnormalized(h.n, amps)?,
        degenerate,
        gap,
    })
}

/// `B = {0}`, `A1 = {1}`, `A2` the rest of the ring.
pub fn neighbour_tripartition(n_sites: usize) -> Result<Tripartition> {
    Tripartition::contiguous(n_sites, 1, 1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinPoint {
    pub g: f64,
    pub energy: f64,
    pub profile: EntanglementProfile,
    pub degenerate: bool,
}

pub fn scatter_point(
    spec: &SpinModelSpec,
    tri: &Tripartition,
    strategy: &dyn LocalizationStrategy,
) -> Result<SpinPoint> {
    let gs = ground_state(spec)?;
    let (e_ab, e_a1, e_a2) = cut_negativities(&gs.state, tri)?;
    let problem = MeasurementProblem::new(&gs.state, tri)?;
    let le = strategy.localize(&problem, None).value;
    Ok(SpinPoint {
        g: spec.g,
        energy: gs.energy,
        profile: EntanglementProfile {
            e_ab,
            e_a1,
            e_a2,
            le,
        },
        degenerate: gs.degenerate,
    })
}

/// Gaussian field disorder: one `g ~ N(mean_g, sigma_g)` per realization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DisorderSpec {
    pub mean_g: f64,
    pub sigma_g: f64,
    pub n_realizations: usize,
    pub seed: u64,
}

impl DisorderSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma_g >= 0.0 && self.sigma_g.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sigma_g = {}",
                self.sigma_g
            )));
        }
        if self.n_realizations == 0 {
            return Err(Error::InvalidParameter(
                "n_realizations must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Field of realization `r`, drawn from its own stream.
    pub fn field(&self, r: usize) -> f64 {
        let mut rng = stream_rng(self.seed, r as u64);
        let z: f64 = StandardNormal.sample(&mut rng);
        self.mean_g + self.sigma_g * z
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    EAb,
    EA1,
    EA2,
    Le,
}

impl Quantity {
    pub fn of(self, p: &EntanglementProfile) -> f64 {
        match self {
            Quantity::EAb => p.e_ab,
            Quantity::EA1 => p.e_a1,
            Quantity::EA2 => p.e_a2,
            Quantity::Le => p.le,
        }
    }
}

/// Sample mean and standard error of each quantity over realizations.
#[derive(Clone, Debug, PartialEq)]
pub struct QuenchedPoint {
    pub mean_g: f64,
    pub mean: EntanglementProfile,
    pub std_error: EntanglementProfile,
    pub n_realizations: usize,
    pub degenerate_count: usize,
}

fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (m, 0.0);
    }
    let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

pub fn quenched_profile(
    dspec: &DisorderSpec,
    template: &SpinModelSpec,
    tri: &Tripartition,
    strategy: &dyn LocalizationStrategy,
) -> Result<QuenchedPoint> {
    dspec.validate()?;
    if dspec.sigma_g == 0.0 {
        let p = scatter_point(&template.with_g(dspec.mean_g), tri, strategy)?;
        let zero = EntanglementProfile {
            e_ab: 0.0,
            e_a1: 0.0,
            e_a2: 0.0,
            le: 0.0,
        };
        return Ok(QuenchedPoint {
            mean_g: dspec.mean_g,
            mean: p.profile,
            std_error: zero,
            n_realizations: 1,
            degenerate_count: p.degenerate as usize,
        });
    }
    let points: Vec<SpinPoint> = (0..dspec.n_realizations)
        .into_par_iter()
        .map(|r| scatter_point(&template.with_g(dspec.field(r)), tri, strategy))
        .collect::<Result<_>>()?;
    let stat = |q: Quantity| {
        let xs: Vec<f64> = points.iter().map(|p| q.of(&p.profile)).collect();
        mean_se(&xs)
    };
    let (ab, a1, a2, le) = (
        stat(Quantity::EAb),
        stat(Quantity::EA1),
        stat(Quantity::EA2),
        stat(Quantity::Le),
    );
    Ok(QuenchedPoint {
        mean_g: dspec.mean_g,
        mean: EntanglementProfile {
            e_ab: ab.0,
            e_a1: a1.0,
            e_a2: a2.0,
            le: le.0,
        },
        std_error: EntanglementProfile {
            e_ab: ab.1,
            e_a1: a1.1,
            e_a2: a2.1,
            le: le.1,
        },
        n_realizations: points.len(),
        degenerate_count: points.iter().filter(|p| p.degenerate).count(),
    })
}

/// `(mean, standard error)` of one quantity.
pub fn quenched_average(
    dspec: &DisorderSpec,
    template: &SpinModelSpec,
    tri: &Tripartition,
    quantity: Quantity,
    strategy: &dyn LocalizationStrategy,
) -> Result<(f64, f64)> {
    let p = quenched_profile(dspec, template, tri, strategy)?;
    Ok((quantity.of(&p.mean), quantity.of(&p.std_error)))
}

/// `n` evenly spaced points covering `[lo, hi]`.
pub fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Ordinary least squares for `y = λ2 x^2 + λ1 x + λ0`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticFit {
    /// `[λ0, λ1, λ2]`
    pub lambda: [f64; 3],
    pub std_error: [f64; 3],
    pub r_squared: f64,
    pub rss: f64,
    pub n_points: usize,
}

pub fn quadratic_fit(points: &[(f64, f64)]) -> Result<QuadraticFit> {
    let n = points.len();
    if n < 4 {
        return Err(Error::RankDeficient(format!("{n} points, need at least 4")));
    }
    let x = DMatrix::from_fn(n, 3, |r, c| points[r].0.powi(c as i32));
    let y = DVector::from_iterator(n, points.iter().map(|p| p.1));
    let svd = x.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if smin <= 1e-10 * smax {
        return Err(Error::RankDeficient(format!(
            "design singular values {smin:.3e} / {smax:.3e}"
        )));
    }
    let beta = svd
        .solve(&y, 1e-14 * smax)
        .map_err(|e| Error::RankDeficient(e.to_string()))?;
    let resid = &y - &x * &beta;
    let rss = resid.norm_squared();
    let ybar = y.mean();
    let tss: f64 = y.iter().map(|v| (v - ybar).powi(2)).sum();
    let r_squared = if tss > 0.0 { 1.0 - rss / tss } else { 1.0 };
    let xtx_inv = (x.transpose() * &x)
        .try_inverse()
        .ok_or_else(|| Error::RankDeficient("normal matrix not invertible".into()))?;
    let sigma2 = rss / (n - 3) as f64;
    let se = |i: usize| (sigma2 * xtx_inv[(i, i)]).max(0.0).sqrt();
    Ok(QuadraticFit {
        lambda: [beta[0], beta[1], beta[2]],
        std_error: [se(0), se(1), se(2)],
        r_squared,
        rss,
        n_points: n,
    })
}

fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut r = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            r[k] = avg;
        }
        i = j + 1;
    }
    r
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(points: &[(f64, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let (rx, ry) = (ranks(&xs), ranks(&ys));
    let n = rx.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    if vx == 0.0 || vy == 0.0 {
        return 0.0;
    }
    cov / (vx * vy).sqrt()
}
