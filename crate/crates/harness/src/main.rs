use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use locent::family::{Family, FamilyRegistry};
use locent::noise::NoiseSpec;
use locent::spinchain::{FieldConvention, Model};
use locent_harness::config::Config;
use locent_harness::manifest::RunManifest;
use locent_harness::output::Table;
use locent_harness::{
    exit_code, noise_curve, scatter, spin, table, verify, UsageError, EXIT_USAGE, EXIT_VIOLATION,
};

#[derive(Parser, Debug)]
#[command(
    name = "locent",
    version,
    about = "Localizable versus lost entanglement experiments"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Data file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// `key = value` file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Localization strategy: multistart, seeds, sigma-x, sigma-y, sigma-z.
    #[arg(long, global = true)]
    strategy: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One record per sampled state, with bound checks.
    Scatter {
        #[arg(long)]
        family: Option<String>,
        #[arg(long = "qubits")]
        n_qubits: Option<usize>,
        /// Measured qubits `|B|`.
        #[arg(short = 'n', long = "measured")]
        n: Option<usize>,
        /// Size of `A1`.
        #[arg(short = 'm', long = "a1")]
        m: Option<usize>,
        #[arg(long)]
        q: Option<f64>,
        /// Non-Markovianity; Markovian noise when 0.
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Percentage of states gaining entanglement, per (N, n, m, q).
    Table1 {
        /// Rows as `N:n:m`, comma separated.
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<String>>,
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<f64>>,
    },
    /// Entanglement of one state along a grid of noise strengths.
    NoiseCurve {
        #[arg(long)]
        family: Option<String>,
        #[arg(long = "qubits")]
        n_qubits: Option<usize>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<f64>>,
    },
    /// Spin-chain sweep and quadratic fit.
    Spin {
        /// txy or xxz.
        #[arg(long)]
        model: Option<String>,
        /// γ for txy, Δ for xxz.
        #[arg(long)]
        anisotropy: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// Windows as `lo:hi`, comma separated.
        #[arg(long, value_delimiter = ',')]
        windows: Option<Vec<String>>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        sigma_g: Option<f64>,
        #[arg(long)]
        realizations: Option<usize>,
        /// spin-half (field 2gσz) or pauli (field gσz).
        #[arg(long)]
        convention: Option<String>,
    },
    /// Self-check suites; nonzero exit on any failure.
    Verify {
        /// Suite name or `all`.
        #[arg(long)]
        suite: Option<String>,
    },
}

fn parse_row(s: &str) -> Result<(usize, usize, usize), UsageError> {
    let parts: Vec<&str> = s.trim().split(':').collect();
    let bad = || UsageError(format!("row `{s}`: expected N:n:m"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let v: Vec<usize> = parts
        .iter()
        .map(|p| p.parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    Ok((v[0], v[1], v[2]))
}

fn parse_window(s: &str) -> Result<(f64, f64), UsageError> {
    let bad = || UsageError(format!("window `{s}`: expected lo:hi"));
    let (lo, hi) = s.trim().split_once(':').ok_or_else(bad)?;
    Ok((
        lo.parse().map_err(|_| bad())?,
        hi.parse().map_err(|_| bad())?,
    ))
}

fn noise_spec(q: f64, alpha: f64) -> anyhow::Result<NoiseSpec> {
    Ok(if alpha == 0.0 {
        NoiseSpec::markovian(q)?
    } else {
        NoiseSpec::non_markovian(q, alpha)?
    })
}

/// Writes data and, for file output, its manifest.
fn emit(
    t: &Table,
    out: Option<&Path>,
    cfg: &Config,
    seed: u64,
    started: Instant,
) -> anyhow::Result<()> {
    t.write(out)?;
    if let Some(path) = out {
        let m = RunManifest::new(cfg, seed, started.elapsed().as_secs_f64(), Some(path));
        m.write(&RunManifest::path_for(path))?;
        log::info!("wrote {} rows to {}", t.rows.len(), path.display());
    }
    Ok(())
}

/// Returns whether any violation was found.
fn run(cli: Cli) -> anyhow::Result<bool> {
    let started = Instant::now();
    let mut cfg = match &cli.common.config {
        Some(p) => Config::load(p)?,
        None => Config::empty(),
    };
    let c = &cli.common;
    let seed = cfg.resolve("seed", c.seed, 0u64)?;
    let samples = cfg.resolve("samples", c.samples, 10_000usize)?;
    let threads = cfg.resolve("threads", c.threads, 0usize)?;
    let strategy_name = cfg.resolve("strategy", c.strategy.clone(), "multistart".to_string())?;
    let out: Option<PathBuf> = match (&c.out, cfg.resolve("out", None, String::new())?) {
        (Some(p), _) => Some(p.clone()),
        (None, s) if !s.is_empty() => Some(PathBuf::from(s)),
        _ => None,
    };
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| UsageError(format!("thread pool: {e}")))?;
    }
    let strategy = locent_harness::strategy(&strategy_name)?;
    if samples == 0 {
        return Err(UsageError("samples must be positive".into()).into());
    }

    let violated = match cli.command {
        Command::Scatter {
            family,
            n_qubits,
            n,
            m,
            q,
            alpha,
        } => {
            let family = cfg.resolve("family", family, "gw".to_string())?;
            let n_qubits = cfg.resolve("n_qubits", n_qubits, 3usize)?;
            let n = cfg.resolve("n", n, 1usize)?;
            let m = cfg.resolve("m", m, 1usize)?;
            let q = cfg.resolve("q", q, 0.0f64)?;
            let alpha = cfg.resolve("alpha", alpha, 0.0f64)?;
            let run_cfg = scatter::ScatterConfig {
                family: FamilyRegistry::builtin().get(&family)?,
                n_qubits,
                n,
                m,
                samples,
                noise: noise_spec(q, alpha)?,
                seed,
                strategy,
            };
            warn_unused(&cfg);
            let records = scatter::run_scatter(&run_cfg)?;
            let bad = records
                .iter()
                .filter(|r| r.violations().count() > 0)
                .count();
            if bad > 0 {
                log::warn!("{bad} of {} records violate a bound", records.len());
            }
            emit(
                &scatter::to_table(&records),
                out.as_deref(),
                &cfg,
                seed,
                started,
            )?;
            bad > 0
        }
        Command::Table1 { rows, q } => {
            let rows: Vec<(usize, usize, usize)> = match rows {
                Some(r) => r.iter().map(|s| parse_row(s)).collect::<Result<_, _>>()?,
                None => {
                    let default: Vec<String> = table::DEFAULT_ROWS
                        .iter()
                        .map(|(a, b, c)| format!("{a}:{b}:{c}"))
                        .collect();
                    cfg.resolve_list("rows", None, default)?
                        .iter()
                        .map(|s| parse_row(s))
                        .collect::<Result<_, _>>()?
                }
            };
            let qs = cfg.resolve_list("q", q, table::DEFAULT_Q.to_vec())?;
            warn_unused(&cfg);
            let cells = table::run_table(&rows, &qs, samples, seed, strategy.as_ref())?;
            emit(
                &table::to_table(&cells),
                out.as_deref(),
                &cfg,
                seed,
                started,
            )?;
            false
        }
        Command::NoiseCurve {
            family,
            n_qubits,
            points,
            alpha,
        } => {
            let family: Family = cfg.resolve("family", family, "gghz".to_string())?.parse()?;
            let n_qubits = cfg.resolve("n_qubits", n_qubits, 3usize)?;
            let points = cfg.resolve("points", points, 21usize)?;
            let alphas = cfg.resolve_list("alpha", alpha, vec![0.0, 0.3, 0.6, 0.9, 1.0])?;
            warn_unused(&cfg);
            let pts = noise_curve::run_noise_curve(
                family,
                n_qubits,
                &noise_curve::unit_grid(points),
                &alphas,
                seed,
                strategy.as_ref(),
            )?;
            emit(
                &noise_curve::to_table(&pts),
                out.as_deref(),
                &cfg,
                seed,
                started,
            )?;
            false
        }
        Command::Spin {
            model,
            anisotropy,
            sizes,
            windows,
            points,
            sigma_g,
            realizations,
            convention,
        } => {
            let model_name = cfg.resolve("model", model, "txy".to_string())?;
            let aniso = cfg.resolve("anisotropy", anisotropy, 0.5f64)?;
            let model = match model_name.as_str() {
                "txy" => Model::Txy { gamma: aniso },
                "xxz" => Model::Xxz { delta: aniso },
                other => return Err(UsageError(format!("unknown model `{other}`")).into()),
            };
            let sizes = cfg.resolve_list("sizes", sizes, vec![8usize, 10, 12])?;
            let default_windows: Vec<String> = spin::DEFAULT_WINDOWS
                .iter()
                .map(|(a, b)| format!("{a}:{b}"))
                .collect();
            let windows = cfg
                .resolve_list("windows", windows, default_windows)?
                .iter()
                .map(|s| parse_window(s))
                .collect::<Result<_, _>>()?;
            let points = cfg.resolve("points", points, spin::DEFAULT_POINTS)?;
            let sigma_g = cfg.resolve("sigma_g", sigma_g, 0.0f64)?;
            let realizations = cfg.resolve("realizations", realizations, 50usize)?;
            let convention = match cfg
                .resolve("convention", convention, "spin-half".to_string())?
                .as_str()
            {
                "spin-half" => FieldConvention::SpinHalf,
                "pauli" => FieldConvention::Pauli,
                other => return Err(UsageError(format!("unknown convention `{other}`")).into()),
            };
            warn_unused(&cfg);
            let run_cfg = spin::SpinConfig {
                model,
                sizes,
                windows,
                points_per_window: points,
                sigma_g,
                realizations,
                seed,
                convention,
            };
            let report = spin::run_spin(&run_cfg, strategy.as_ref())?;
            emit(
                &spin::to_table(&report),
                out.as_deref(),
                &cfg,
                seed,
                started,
            )?;
            let fits = serde_json::to_string_pretty(&report.fits)?;
            match out.as_deref() {
                Some(p) => {
                    let mut s = p.as_os_str().to_owned();
                    s.push(".fit.json");
                    std::fs::write(PathBuf::from(s), fits + "\n")?;
                }
                None => eprintln!("{fits}"),
            }
            for f in &report.fits {
                let label = f.n_sites.map_or("pooled".to_string(), |n| format!("N={n}"));
                log::info!(
                    "{label}: lambda = {:?} +/- {:?}, R^2 = {:.5}",
                    f.lambda,
                    f.std_error,
                    f.r_squared
                );
            }
            false
        }
        Command::Verify { suite } => {
            let suite = cfg.resolve("suite", suite, "all".to_string())?;
            let draws = samples.min(500);
            warn_unused(&cfg);
            let names: Vec<&str> = if suite == "all" {
                verify::SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let mut failed = false;
            let mut lines = String::new();
            for name in names {
                let r = verify::run_suite(name, seed, draws, strategy.as_ref())?;
                failed |= !r.passed();
                lines.push_str(&serde_json::to_string(&r)?);
                lines.push('\n');
            }
            match out.as_deref() {
                Some(p) => std::fs::write(p, &lines)?,
                None => print!("{lines}"),
            }
            failed
        }
    };
    Ok(violated)
}

fn warn_unused(cfg: &Config) {
    for k in cfg.unused_keys() {
        log::warn!("config key `{k}` is not used by this command");
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(EXIT_VIOLATION as u8),
        Err(e) => {
            log::error!("{e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
