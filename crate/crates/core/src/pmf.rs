//! Exact probability mass functions over `0..=max` with a structural
//! denominator (`2^n` for deck statistics, `C(m1+m2, m1)` for path statistics).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{ratio_to_f64, rational_to_f64};
use crate::error::{invalid, Result};
use crate::limitlaw::Cdf;

/// Masses `numerators[k] / denominator`. The denominator is kept as produced by
/// the counting argument and never reduced; use [`ExactPmf::prob`] for lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPmf {
    numerators: Vec<BigUint>,
    denominator: BigUint,
}

impl ExactPmf {
    /// Fails unless the numerators sum exactly to the denominator.
    pub fn new(numerators: Vec<BigUint>, denominator: BigUint) -> Result<Self> {
        if denominator.is_zero() {
            return Err(invalid("pmf denominator is zero"));
        }
        let total: BigUint = numerators.iter().sum();
        if total != denominator {
            return Err(invalid(format!(
                "pmf masses sum to {total}/{denominator}, not 1"
            )));
        }
        Ok(ExactPmf {
            numerators,
            denominator,
        })
    }

    /// Point mass at `k`.
    pub fn dirac(k: usize) -> Self {
        let mut numerators = vec![BigUint::zero(); k + 1];
        numerators[k] = BigUint::one();
        ExactPmf {
            numerators,
            denominator: BigUint::one(),
        }
    }

    /// Builds from occurrence counts; the denominator is their total.
    pub fn from_counts(counts: Vec<BigUint>) -> Result<Self> {
        let total = counts.iter().sum();
        Self::new(counts, total)
    }

    /// Number of support slots, `max + 1`.
    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn numerators(&self) -> &[BigUint] {
        &self.numerators
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    /// Structural numerator at `k` (zero beyond the support).
    pub fn numerator(&self, k: usize) -> BigUint {
        self.numerators.get(k).cloned().unwrap_or_default()
    }

    /// `P{X = k}` in lowest terms.
    pub fn prob(&self, k: usize) -> BigRational {
        BigRational::new(
            BigInt::from(self.numerator(k)),
            BigInt::from(self.denominator.clone()),
        )
    }

    pub fn prob_f64(&self, k: usize) -> f64 {
        ratio_to_f64(&self.numerator(k), &self.denominator)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.prob_f64(k)).collect()
    }

    /// Same law with the support padded (or trimmed of zero tail) to `0..len`.
    pub fn with_len(&self, len: usize) -> Self {
        let mut numerators = self.numerators.clone();
        numerators.resize(len.max(self.last_nonzero().map_or(0, |k| k + 1)), BigUint::zero());
        ExactPmf {
            numerators,
            denominator: self.denominator.clone(),
        }
    }

    /// Index of the largest `k` with positive mass.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.numerators.iter().rposition(|c| !c.is_zero())
    }

    /// Law of `X + shift`.
    pub fn shifted(&self, shift: usize) -> Self {
        let mut numerators = vec![BigUint::zero(); shift];
        numerators.extend(self.numerators.iter().cloned());
        ExactPmf {
            numerators,
            denominator: self.denominator.clone(),
        }
    }

    /// `E(X^s)`.
    pub fn raw_moment(&self, s: u32) -> BigRational {
        let num: BigUint = self
            .numerators
            .iter()
            .enumerate()
            .map(|(k, c)| c * BigUint::from(k).pow(s))
            .sum();
        BigRational::new(num.into(), self.denominator.clone().into())
    }

    /// `E(X (X-1) ... (X-s+1))`.
    pub fn factorial_moment(&self, s: usize) -> BigRational {
        let num: BigUint = self
            .numerators
            .iter()
            .enumerate()
            .filter(|(k, _)| *k >= s)
            .map(|(k, c)| c * ((k + 1 - s)..=k).fold(BigUint::one(), |acc, j| acc * j))
            .sum();
        BigRational::new(num.into(), self.denominator.clone().into())
    }

    pub fn mean(&self) -> BigRational {
        self.raw_moment(1)
    }

    /// Exact total-variation distance `(1/2) sum_k |p_k - q_k|`.
    pub fn total_variation(&self, other: &ExactPmf) -> BigRational {
        let len = self.len().max(other.len());
        let mut acc = BigRational::zero();
        for k in 0..len {
            acc += (self.prob(k) - other.prob(k)).abs();
        }
        acc / BigRational::from_integer(2.into())
    }

    pub fn total_variation_f64(&self, other: &ExactPmf) -> f64 {
        rational_to_f64(&self.total_variation(other))
    }
}

/// `sup_x |G(x) - F(x)|` where `G` is the distribution function of the law
/// with masses `masses[k]` at `k * scale`; checked on both sides of every jump.
pub fn sup_cdf_distance(masses: &[f64], scale: f64, law: &impl Cdf) -> f64 {
    let mut below = 0.0;
    let mut sup = 0.0f64;
    for (k, &p) in masses.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let f = law.cdf(k as f64 * scale);
        sup = sup.max((below - f).abs());
        below += p;
        sup = sup.max((below - f).abs());
    }
    sup
}

/// Sup-norm distance between two floating PMFs (missing entries count as zero).
pub fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    let len = a.len().max(b.len());
    (0..len)
        .map(|k| (a.get(k).copied().unwrap_or(0.0) - b.get(k).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max)
}
