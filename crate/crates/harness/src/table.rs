//! Percentage of sampled states whose localized entanglement exceeds the
//! bipartite entanglement lost to the measurement.

use locent::family::{Family, FamilyRegistry};
use locent::localize::{LocalizationStrategy, DELTA_ZERO};
use locent::noise::NoiseSpec;
use locent::qcore::Tripartition;
use rayon::prelude::*;

use crate::output::{sig12, Table};
use crate::scatter::sample_profile;

pub const HEADER: [&str; 9] = [
    "n_qubits",
    "n",
    "m",
    "q",
    "family",
    "samples",
    "count",
    "percent",
    "std_error_pp",
];

/// `(N, n, m)` rows and Markovian strengths used by default.
pub const DEFAULT_ROWS: [(usize, usize, usize); 4] = [(3, 1, 1), (4, 1, 1), (5, 1, 1), (5, 1, 2)];
pub const DEFAULT_Q: [f64; 5] = [0.0, 0.1, 0.2, 0.3, 0.4];

#[derive(Clone, Debug, PartialEq)]
pub struct FractionCell {
    pub n_qubits: usize,
    pub n: usize,
    pub m: usize,
    pub q: f64,
    pub family: Family,
    pub samples: usize,
    /// Samples with `delta1 > DELTA_ZERO`.
    pub count: usize,
}

impl FractionCell {
    pub fn percent(&self) -> f64 {
        100.0 * self.count as f64 / self.samples as f64
    }

    /// Binomial standard error in percentage points.
    pub fn std_error_pp(&self) -> f64 {
        let p = self.count as f64 / self.samples as f64;
        100.0 * (p * (1.0 - p) / self.samples as f64).sqrt()
    }

    pub fn row(&self) -> Vec<String> {
        vec![
            self.n_qubits.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            sig12(self.q),
            self.family.name().to_string(),
            self.samples.to_string(),
            self.count.to_string(),
            sig12(self.percent()),
            sig12(self.std_error_pp()),
        ]
    }
}

/// Three-qubit rows sample the GHZ class, larger ones Haar-random states.
pub fn family_for(n_qubits: usize) -> Family {
    if n_qubits == 3 {
        Family::GhzClass
    } else {
        Family::Haar
    }
}

/// Stream of sample `i` in row `(N, n, m)`: the same states at every `q`.
fn stream(row: (usize, usize, usize), i: usize) -> u64 {
    ((row.0 as u64) << 48) | ((row.1 as u64) << 44) | ((row.2 as u64) << 40) | i as u64
}

pub fn run_table(
    rows: &[(usize, usize, usize)],
    qs: &[f64],
    samples: usize,
    seed: u64,
    strategy: &dyn LocalizationStrategy,
) -> anyhow::Result<Vec<FractionCell>> {
    let registry = FamilyRegistry::builtin();
    let mut cells = Vec::new();
    for &row in rows {
        let (n_qubits, n, m) = row;
        let tri = Tripartition::contiguous(n_qubits, n, m)?;
        let tag = family_for(n_qubits);
        let family = registry.get(tag.name())?;
        for &q in qs {
            let noise = NoiseSpec::markovian(q)?;
            let started = std::time::Instant::now();
            let hits: Vec<bool> = (0..samples)
                .into_par_iter()
                .map(|i| {
                    let p = sample_profile(
                        family.as_ref(),
                        n_qubits,
                        &tri,
                        &noise,
                        seed,
                        stream(row, i),
                        strategy,
                        Some(DELTA_ZERO),
                    )?;
                    Ok(p.delta1() > DELTA_ZERO)
                })
                .collect::<locent::Result<_>>()?;
            let cell = FractionCell {
                n_qubits,
                n,
                m,
                q,
                family: tag,
                samples,
                count: hits.iter().filter(|&&h| h).count(),
            };
            log::info!(
                "N={n_qubits} n={n} m={m} q={q}: {:.3}% ({:.1}s)",
                cell.percent(),
                started.elapsed().as_secs_f64()
            );
            cells.push(cell);
        }
    }
    Ok(cells)
}

pub fn to_table(cells: &[FractionCell]) -> Table {
    let mut t = Table::new(&HEADER);
    for c in cells {
        t.push(c.row());
    }
    t
}
