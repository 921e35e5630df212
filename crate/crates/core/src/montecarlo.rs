//! Simulation of the full game: riffle shuffle, canonical guesses, score.

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::exactdist;
use crate::limitlaw::{Cdf, LimitLaw};
use crate::pmf::sup_cdf_distance;
use crate::rng::StreamFactory;
use crate::shuffle::sample_shuffle_into;
use crate::strategy::{canonical_guesses, count_matches};

/// Largest deck for which the report carries the distance to the exact law.
pub const EXACT_TV_MAX: usize = 512;

const BLOCK: u64 = 1024;

/// Histogram of `N` simulated scores plus summary statistics. Every statistic
/// is a function of the count vector.
#[derive(Clone, Debug, PartialEq)]
pub struct SimulationReport {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    /// `counts[k]` games scored exactly `k`, `k = 0..=n`.
    pub counts: Vec<u64>,
    pub mean: f64,
    /// Unbiased sample variance (zero for a single sample).
    pub variance: f64,
    /// KS distance of `X_n / sqrt(n)` to the limit law.
    pub ks_to_limit: f64,
    /// Total variation to the exact law, for `n <= EXACT_TV_MAX`.
    pub tv_to_exact: Option<f64>,
}

impl SimulationReport {
    pub fn from_counts(n: usize, seed: u64, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != n + 1 {
            return Err(invalid("count vector must cover 0..=n"));
        }
        let samples: u64 = counts.iter().sum();
        if samples == 0 {
            return Err(invalid("empty histogram"));
        }
        let (s1, s2) = counts.iter().enumerate().fold((0u128, 0u128), |(a, b), (k, &c)| {
            let (k, c) = (k as u128, u128::from(c));
            (a + k * c, b + k * k * c)
        });
        let nn = samples as f64;
        let mean = s1 as f64 / nn;
        let variance = if samples > 1 {
            // sum (k - mean)^2 = s2 - s1^2 / N, kept in integers until the last step.
            let centred = s2 as f64 - (s1 as f64) * (s1 as f64) / nn;
            (centred / (nn - 1.0)).max(0.0)
        } else {
            0.0
        };
        let mut report = SimulationReport {
            n,
            samples,
            seed,
            counts,
            mean,
            variance,
            ks_to_limit: 0.0,
            tv_to_exact: None,
        };
        report.ks_to_limit = ks_distance(&report, &LimitLaw);
        if n <= EXACT_TV_MAX {
            let exact = exactdist::pmf_x(n)?.to_f64();
            report.tv_to_exact = Some(0.5 * report.empirical_pmf().iter().zip(&exact).map(|(a, b)| (a - b).abs()).sum::<f64>());
        }
        Ok(report)
    }

    /// `h_k = counts[k] / N`.
    pub fn empirical_pmf(&self) -> Vec<f64> {
        let nn = self.samples as f64;
        self.counts.iter().map(|&c| c as f64 / nn).collect()
    }
}

/// Plays `samples` independent games on an `n`-card deck.
///
/// Sample `i` uses the stream `(seed, i)`, and the per-block histograms are
/// combined by integer addition, so the report does not depend on `workers`
/// (0 means the global rayon pool).
pub fn simulate(n: usize, samples: u64, seed: u64, workers: usize) -> Result<SimulationReport> {
    if n == 0 {
        return Err(invalid("deck size must be at least 1"));
    }
    if samples == 0 {
        return Err(invalid("sample count must be at least 1"));
    }
    let counts = if workers == 0 {
        histogram(n, samples, seed)
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| invalid(format!("cannot start {workers} workers: {e}")))?
            .install(|| histogram(n, samples, seed))
    };
    SimulationReport::from_counts(n, seed, counts)
}

fn histogram(n: usize, samples: u64, seed: u64) -> Vec<u64> {
    let factory = StreamFactory::new(seed);
    let guesses = canonical_guesses(n);
    (0..samples.div_ceil(BLOCK))
        .into_par_iter()
        .map(|b| {
            let mut counts = vec![0u64; n + 1];
            let mut deck = Vec::with_capacity(n);
            for i in b * BLOCK..((b + 1) * BLOCK).min(samples) {
                let mut rng = factory.stream(i);
                sample_shuffle_into(n, &mut rng, &mut deck);
                counts[count_matches(&guesses, &deck)] += 1;
            }
            counts
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// `sup_x |F_emp(x) - F(x)|` for `X_n / sqrt(n)`, over both sides of every jump.
pub fn ks_distance(report: &SimulationReport, law: &impl Cdf) -> f64 {
    ks_distance_weights(&report.empirical_pmf(), report.n, law)
}

/// Same statistic for any law on `0..=n` given by its masses, scaled by `1 / sqrt(n)`.
pub fn ks_distance_weights(masses: &[f64], n: usize, law: &impl Cdf) -> f64 {
    sup_cdf_distance(masses, 1.0 / (n as f64).sqrt(), law)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_deck_frequencies() {
        let r = simulate(3, 200_000, 11, 0).unwrap();
        assert_eq!(r.counts.iter().sum::<u64>(), 200_000);
        let p3 = r.empirical_pmf()[3];
        let se = (0.25f64 / 200_000.0).sqrt();
        assert!((p3 - 0.5).abs() <= 4.0 * se, "{p3}");
        assert_eq!(r.counts[2], 0);
    }

    #[test]
    fn worker_count_does_not_matter() {
        let a = simulate(17, 5000, 3, 1).unwrap();
        let b = simulate(17, 5000, 3, 3).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.counts, simulate(17, 5000, 4, 1).unwrap().counts);
    }

    #[test]
    fn ks_of_exact_law_decreases() {
        let ks = |n| ks_distance_weights(&exactdist::pmf_x(n).unwrap().to_f64(), n, &LimitLaw);
        let (a, b) = (ks(50), ks(200));
        assert!(b < a && b < 0.07, "{a} {b}");
    }

    #[test]
    fn statistics_from_counts() {
        let r = SimulationReport::from_counts(2, 0, vec![1, 2, 1]).unwrap();
        assert_eq!(r.mean, 1.0);
        assert!((r.variance - 2.0 / 3.0).abs() < 1e-15);
        assert!(SimulationReport::from_counts(2, 0, vec![0, 0, 0]).is_err());
        assert!(simulate(0, 1, 0, 0).is_err());
    }
}
