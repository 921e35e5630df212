//! `riffle-oracle`: exact tables, simulation, limit-law grids and verification
//! suites for the feedback-free guessing game after one riffle shuffle.
//!
//! Exit codes: 0 success, 1 verification failure or I/O error, 2 invalid
//! arguments, 3 capacity exceeded.

mod output;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use riffle_core::exactdist::{self, MomentTable};
use riffle_core::limitlaw::{limit_cdf, limit_density, limit_moment};
use riffle_core::montecarlo;
use riffle_core::Error;

use output::Output;
use verify::{Bounds, Suite};

/// Largest number of rows `limit` will write.
const MAX_GRID_POINTS: usize = 10_000_000;

#[derive(Parser, Debug)]
#[command(name = "riffle-oracle", version, about = "Card guessing after one riffle shuffle: exact laws, simulation and checks")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Output directory, or `-` for standard output.
    #[arg(long, global = true, default_value = ".")]
    out: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Suppress progress notes and the verification table.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact law and moments of the score: pmf.csv and moments.csv.
    Exact {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        s_max: usize,
    },
    /// Exact (or floating) law of the half-deck statistic: pmf_y.csv.
    PmfY {
        #[arg(long)]
        m1: usize,
        #[arg(long)]
        m2: usize,
        /// Use the normalised floating recurrence (large sizes).
        #[arg(long)]
        float: bool,
    },
    /// Monte Carlo histogram and fit statistics: hist.csv and fit.csv.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Worker threads (0 = all cores).
        #[arg(long, env = "RIFFLE_ORACLE_THREADS", default_value_t = 0)]
        workers: usize,
    },
    /// Density and distribution function of the limit law on a grid: limit.csv.
    Limit {
        #[arg(long, default_value_t = 0.0)]
        grid_min: f64,
        #[arg(long, default_value_t = 6.0)]
        grid_max: f64,
        #[arg(long, default_value_t = 0.01)]
        grid_step: f64,
    },
    /// Exact moments only: moments.csv.
    Moments {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        s_max: usize,
    },
    /// Run cross-route equivalence suites; exit 0 iff all pass.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Largest deck for enum-vs-lemma.
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        /// Largest m1 + m2 for dyck-vs-dp and the fixed-difference check.
        #[arg(long, default_value_t = 12)]
        size_max: usize,
        /// Series order for kernel-vs-dp.
        #[arg(long, default_value_t = 20)]
        order: usize,
        /// Largest deck for moments-vs-limit.
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        s_max: usize,
        /// m1 + m2 for the linexp suite.
        #[arg(long, default_value_t = 1800)]
        total: usize,
    },
}

enum Failure {
    Invalid(String),
    Capacity(String),
    Failed(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Failed(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Capacity(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Capacity(m) | Failure::Failed(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } => Failure::Capacity(e.to_string()),
            Error::SeriesInvariant(_) => Failure::Failed(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Failed(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("riffle-oracle: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let Format::Csv = cli.common.format;
    let quiet = cli.common.quiet;
    match cli.command {
        Command::Exact { n, s_max } => {
            require(n >= 1, "--n must be at least 1")?;
            let pmf = exactdist::pmf_x(n)?;
            let moments = exactdist::moments(n, s_max)?;
            let mut out = Output::new(&cli.common.out, quiet)?;
            let rows: Vec<Vec<String>> = (0..=n)
                .rev()
                .map(|k| {
                    vec![
                        k.to_string(),
                        pmf.numerator(k).to_string(),
                        pmf.denominator().to_string(),
                        pmf.prob_f64(k).to_string(),
                    ]
                })
                .collect();
            out.table("pmf.csv", &["k", "prob_num", "prob_den", "prob_float"], &rows)?;
            write_moments(&mut out, &moments)?;
            out.finish();
        }
        Command::PmfY { m1, m2, float } => {
            require(m1 + m2 >= 1, "--m1 + --m2 must be at least 1")?;
            let mut out = Output::new(&cli.common.out, quiet)?;
            if float {
                let p = exactdist::pmf_y_float(m1, m2)?;
                let rows: Vec<Vec<String>> =
                    p.iter().enumerate().map(|(k, x)| vec![k.to_string(), x.to_string()]).collect();
                out.table("pmf_y.csv", &["k", "prob_float"], &rows)?;
            } else {
                let p = exactdist::pmf_y(m1, m2)?.with_len(m1 + m2 + 1);
                let rows: Vec<Vec<String>> = (0..p.len())
                    .map(|k| {
                        vec![
                            k.to_string(),
                            p.numerator(k).to_string(),
                            p.denominator().to_string(),
                            p.prob_f64(k).to_string(),
                        ]
                    })
                    .collect();
                out.table("pmf_y.csv", &["k", "prob_num", "prob_den", "prob_float"], &rows)?;
            }
            out.finish();
        }
        Command::Simulate { n, samples, seed, workers } => {
            require(n >= 1, "--n must be at least 1")?;
            require(samples >= 1, "--samples must be at least 1")?;
            let report = montecarlo::simulate(n, samples, seed, workers)?;
            let mut out = Output::new(&cli.common.out, quiet)?;
            let pmf = report.empirical_pmf();
            let rows: Vec<Vec<String>> = report
                .counts
                .iter()
                .enumerate()
                .map(|(k, c)| vec![k.to_string(), c.to_string(), pmf[k].to_string()])
                .collect();
            out.table("hist.csv", &["k", "count", "empirical_prob"], &rows)?;
            let mut fit = vec![
                stat("n", report.n),
                stat("samples", report.samples),
                stat("seed", report.seed),
                stat("mean", report.mean),
                stat("variance", report.variance),
                stat("ks_to_limit", report.ks_to_limit),
            ];
            if let Some(tv) = report.tv_to_exact {
                fit.push(stat("tv_to_exact", tv));
            }
            out.table("fit.csv", &["statistic", "value"], &fit)?;
            out.finish();
        }
        Command::Limit { grid_min, grid_max, grid_step } => {
            require(
                grid_min.is_finite() && grid_max.is_finite() && grid_step.is_finite(),
                "grid bounds must be finite",
            )?;
            require(grid_step > 0.0, "--grid-step must be positive")?;
            require(grid_max >= grid_min, "--grid-max must not be below --grid-min")?;
            let span = (grid_max - grid_min) / grid_step;
            if span >= MAX_GRID_POINTS as f64 {
                return Err(Failure::Capacity(format!(
                    "grid has more than {MAX_GRID_POINTS} points"
                )));
            }
            let points = (span + 1e-9).floor() as usize + 1;
            let rows: Vec<Vec<String>> = (0..points)
                .map(|i| {
                    let x = grid_min + i as f64 * grid_step;
                    vec![x.to_string(), limit_density(x).to_string(), limit_cdf(x).to_string()]
                })
                .collect();
            let mut out = Output::new(&cli.common.out, quiet)?;
            out.table("limit.csv", &["x", "density", "cdf"], &rows)?;
            out.finish();
        }
        Command::Moments { n, s_max } => {
            require(n >= 1, "--n must be at least 1")?;
            let moments = exactdist::moments(n, s_max)?;
            let mut out = Output::new(&cli.common.out, quiet)?;
            write_moments(&mut out, &moments)?;
            out.finish();
        }
        Command::Verify { suite, n_max, size_max, order, n, s_max, total } => {
            require(n >= 64, "--n must be at least 64")?;
            require(total >= 40, "--total must be at least 40")?;
            let bounds = Bounds { n_max, size_max, order, n, s_max, total };
            let outcomes = verify::run(suite, &bounds)?;
            if !quiet {
                for o in &outcomes {
                    println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.suite, o.detail);
                }
            }
            let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.suite).collect();
            if !failed.is_empty() {
                return Err(Failure::Failed(format!("failed suites: {}", failed.join(", "))));
            }
        }
    }
    Ok(())
}

fn require(ok: bool, msg: &str) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Invalid(msg.to_string()))
    }
}

fn stat(name: &str, value: impl ToString) -> Vec<String> {
    vec![name.to_string(), value.to_string()]
}

fn write_moments(out: &mut Output, m: &MomentTable) -> std::io::Result<()> {
    let den = m.denominator().to_string();
    let rows: Vec<Vec<String>> = (0..=m.s_max())
        .map(|s| {
            vec![
                s.to_string(),
                m.factorial_numerators()[s].to_string(),
                den.clone(),
                m.raw_numerators()[s].to_string(),
                den.clone(),
                m.raw_f64(s).to_string(),
                limit_moment(s as u32).to_string(),
                m.normalized_raw(s).to_string(),
            ]
        })
        .collect();
    out.table(
        "moments.csv",
        &[
            "s",
            "factorial_num",
            "factorial_den",
            "raw_num",
            "raw_den",
            "raw_float",
            "limit_mu_tilde",
            "normalized_raw",
        ],
        &rows,
    )
}
