//! Ordered and disordered spin-chain sweeps with quadratic fits of the
//! localized against the lost entanglement.

use locent::localize::{EntanglementProfile, LocalizationStrategy};
use locent::spinchain::{
    grid, neighbour_tripartition, quadratic_fit, quenched_profile, DisorderSpec, FieldConvention,
    Model, QuadraticFit, SpinModelSpec,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{sig12, Table};

pub const HEADER: [&str; 15] = [
    "model",
    "n_sites",
    "g",
    "sigma_g",
    "realizations",
    "e_ab",
    "e_a1",
    "e_a2",
    "le",
    "delta1",
    "delta2",
    "e_ab_se",
    "le_se",
    "degenerate",
    "seed",
];

/// Field windows on either side of the transition.
pub const DEFAULT_WINDOWS: [(f64, f64); 2] = [(0.2, 0.8), (1.2, 1.8)];
pub const DEFAULT_POINTS: usize = 31;

#[derive(Clone, Debug)]
pub struct SpinConfig {
    pub model: Model,
    pub sizes: Vec<usize>,
    pub windows: Vec<(f64, f64)>,
    pub points_per_window: usize,
    pub sigma_g: f64,
    pub realizations: usize,
    pub seed: u64,
    pub convention: FieldConvention,
}

impl SpinConfig {
    pub fn ordered(model: Model, sizes: Vec<usize>) -> Self {
        Self {
            model,
            sizes,
            windows: DEFAULT_WINDOWS.to_vec(),
            points_per_window: DEFAULT_POINTS,
            sigma_g: 0.0,
            realizations: 1,
            seed: 0,
            convention: FieldConvention::SpinHalf,
        }
    }

    pub fn fields(&self) -> Vec<f64> {
        self.windows
            .iter()
            .flat_map(|&(lo, hi)| grid(lo, hi, self.points_per_window))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinRow {
    pub model: &'static str,
    pub n_sites: usize,
    pub g: f64,
    pub sigma_g: f64,
    pub realizations: usize,
    pub mean: EntanglementProfile,
    pub std_error: EntanglementProfile,
    pub degenerate: usize,
    pub seed: u64,
}

impl SpinRow {
    pub fn row(&self) -> Vec<String> {
        let p = &self.mean;
        vec![
            self.model.to_string(),
            self.n_sites.to_string(),
            sig12(self.g),
            sig12(self.sigma_g),
            self.realizations.to_string(),
            sig12(p.e_ab),
            sig12(p.e_a1),
            sig12(p.e_a2),
            sig12(p.le),
            sig12(p.delta1()),
            sig12(p.delta2()),
            sig12(self.std_error.e_ab),
            sig12(self.std_error.le),
            self.degenerate.to_string(),
            self.seed.to_string(),
        ]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FitSummary {
    /// `None` for the fit over every size together.
    pub n_sites: Option<usize>,
    pub lambda: [f64; 3],
    pub std_error: [f64; 3],
    pub r_squared: f64,
    pub n_points: usize,
}

impl FitSummary {
    fn new(n_sites: Option<usize>, f: QuadraticFit) -> Self {
        Self {
            n_sites,
            lambda: f.lambda,
            std_error: f.std_error,
            r_squared: f.r_squared,
            n_points: f.n_points,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpinReport {
    pub rows: Vec<SpinRow>,
    /// One fit per size, then the pooled fit.
    pub fits: Vec<FitSummary>,
}

impl SpinReport {
    pub fn pooled(&self) -> &FitSummary {
        self.fits.last().expect("pooled fit is always present")
    }

    pub fn for_size(&self, n: usize) -> Option<&FitSummary> {
        self.fits.iter().find(|f| f.n_sites == Some(n))
    }
}

/// Disorder seed of grid point `index` at size `n`.
fn point_seed(seed: u64, n: usize, index: usize) -> u64 {
    seed ^ ((n as u64) << 32 | index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

pub fn run_spin(
    cfg: &SpinConfig,
    strategy: &dyn LocalizationStrategy,
) -> anyhow::Result<SpinReport> {
    let fields = cfg.fields();
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        let tri = neighbour_tripartition(n)?;
        let template = SpinModelSpec::new(n, cfg.model, 0.0)?.with_convention(cfg.convention);
        let started = std::time::Instant::now();
        let sized: Vec<SpinRow> = fields
            .par_iter()
            .enumerate()
            .map(|(i, &g)| {
                let d = DisorderSpec {
                    mean_g: g,
                    sigma_g: cfg.sigma_g,
                    n_realizations: cfg.realizations,
                    seed: point_seed(cfg.seed, n, i),
                };
                let p = quenched_profile(&d, &template, &tri, strategy)?;
                Ok(SpinRow {
                    model: cfg.model.name(),
                    n_sites: n,
                    g,
                    sigma_g: cfg.sigma_g,
                    realizations: p.n_realizations,
                    mean: p.mean,
                    std_error: p.std_error,
                    degenerate: p.degenerate_count,
                    seed: d.seed,
                })
            })
            .collect::<locent::Result<_>>()?;
        log::info!(
            "{} N={n} sigma_g={}: {} points in {:.1}s",
            cfg.model.name(),
            cfg.sigma_g,
            sized.len(),
            started.elapsed().as_secs_f64()
        );
        rows.extend(sized);
    }
    let points = |rows: &[&SpinRow]| -> Vec<(f64, f64)> {
        rows.iter().map(|r| (r.mean.e_ab, r.mean.le)).collect()
    };
    let mut fits = Vec::new();
    for &n in &cfg.sizes {
        let sized: Vec<&SpinRow> = rows.iter().filter(|r| r.n_sites == n).collect();
        fits.push(FitSummary::new(Some(n), quadratic_fit(&points(&sized))?));
    }
    let all: Vec<&SpinRow> = rows.iter().collect();
    fits.push(FitSummary::new(None, quadratic_fit(&points(&all))?));
    Ok(SpinReport { rows, fits })
}

pub fn to_table(report: &SpinReport) -> Table {
    let mut t = Table::new(&HEADER);
    for r in &report.rows {
        t.push(r.row());
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use locent::localize::SeedBases;

    #[test]
    fn zero_disorder_matches_ordered_sweep() {
        let mut cfg = SpinConfig::ordered(Model::Txy { gamma: 0.5 }, vec![6]);
        cfg.points_per_window = 5;
        let ordered = run_spin(&cfg, &SeedBases).unwrap();
        cfg.realizations = 7;
        cfg.seed = 99;
        let zero = run_spin(&cfg, &SeedBases).unwrap();
        for (a, b) in ordered.rows.iter().zip(&zero.rows) {
            assert_eq!(a.mean, b.mean);
        }
        assert_eq!(ordered.fits.len(), 2);
        assert!(ordered.pooled().r_squared > 0.9);
    }
}
