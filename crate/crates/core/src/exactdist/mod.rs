//! Exact law of the number of correct guesses `X_n` under the canonical
//! strategy, and of the half-deck path statistic `Y_{m1,m2}`.
//!
//! Three routes are provided: the weighted Pascal recurrence for `g_{m1,m2}(q)`,
//! the deck polynomial `f_n(q)` assembled from anti-diagonal sums of `g`, and
//! exhaustive enumeration of all `2^n` shuffles for small decks.

mod frontier;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{binomial, factorial, ratio_to_f64, stirling2_table};
use crate::error::{check_capacity, invalid, Error, Result};
use crate::limitlaw::LinExpLaw;
use crate::pmf::{sup_cdf_distance, ExactPmf};
use crate::qpoly::QPolynomial;
use crate::shuffle::{interleave_into, DEFAULT_MAX_ENUM};
use crate::strategy::{canonical_guesses, count_matches};

use frontier::{rectangle, rectangle_float, sweep_diagonals, FullPoly, Taylor};

/// Smallest deck size for which the closed-form deck polynomial is used.
pub const CLOSED_FORM_MIN: usize = 4;

/// Size bounds for the exact routes. Exceeding one yields [`Error::Capacity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `m1 + m2` for exact `g_{m1,m2}` and `pmf_y`.
    pub grid: usize,
    /// Largest deck for the full polynomial `f_n` and `pmf_x`.
    pub deck: usize,
    /// Largest deck for exact moments (Taylor window, much cheaper than `deck`).
    pub moment_deck: usize,
    /// Largest moment order.
    pub moment_order: usize,
    /// Largest `m1 + m2` for [`ExactEngine::pmf_y_float`].
    pub float_grid: usize,
    /// Largest deck for exhaustive enumeration.
    pub enumeration: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            grid: 1200,
            deck: 4096,
            moment_deck: 1 << 15,
            moment_order: 64,
            float_grid: 8000,
            enumeration: DEFAULT_MAX_ENUM,
        }
    }
}

/// Exact moments of `X_n` up to order `s_max`, over the structural denominator `2^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentTable {
    n: usize,
    factorial: Vec<BigUint>,
    raw: Vec<BigUint>,
    denominator: BigUint,
}

impl MomentTable {
    fn from_factorial(n: usize, factorial: Vec<BigUint>) -> Self {
        let stirling = stirling2_table(factorial.len() - 1);
        let raw = stirling
            .iter()
            .map(|row| row.iter().zip(&factorial).map(|(s, f)| s * f).sum())
            .collect();
        MomentTable {
            n,
            factorial,
            raw,
            denominator: BigUint::one() << n,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s_max(&self) -> usize {
        self.factorial.len() - 1
    }

    /// `2^n`, shared by every entry.
    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    /// `2^n E(X_n^{s falling})` for `s = 0..=s_max`.
    pub fn factorial_numerators(&self) -> &[BigUint] {
        &self.factorial
    }

    /// `2^n E(X_n^s)` for `s = 0..=s_max`.
    pub fn raw_numerators(&self) -> &[BigUint] {
        &self.raw
    }

    pub fn factorial(&self, s: usize) -> BigRational {
        BigRational::new(self.factorial[s].clone().into(), self.denominator.clone().into())
    }

    pub fn raw(&self, s: usize) -> BigRational {
        BigRational::new(self.raw[s].clone().into(), self.denominator.clone().into())
    }

    pub fn factorial_f64(&self, s: usize) -> f64 {
        ratio_to_f64(&self.factorial[s], &self.denominator)
    }

    pub fn raw_f64(&self, s: usize) -> f64 {
        ratio_to_f64(&self.raw[s], &self.denominator)
    }

    /// `E(X_n^s) / n^{s/2}`.
    pub fn normalized_raw(&self, s: usize) -> f64 {
        self.raw_f64(s) / (self.n as f64).powf(s as f64 / 2.0)
    }
}

/// Entry point for the exact routes under configurable size limits.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactEngine {
    limits: Limits,
}

impl ExactEngine {
    pub fn new(limits: Limits) -> Self {
        ExactEngine { limits }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// `g_{m1,m2}(q)` by the weighted Pascal recurrence over the rectangle.
    pub fn g_poly(&self, m1: usize, m2: usize) -> Result<QPolynomial> {
        check_capacity("m1 + m2", m1 + m2, self.limits.grid)?;
        Ok(QPolynomial::from_unsigned(rectangle(FullPoly::one(), m1, m2).0))
    }

    /// Every cell `g_{m1, M-m1}` of the anti-diagonal `M`, indexed by `m1`.
    pub fn g_diagonal(&self, m: usize) -> Result<Vec<QPolynomial>> {
        check_capacity("m1 + m2", m, self.limits.grid)?;
        let mut out = Vec::new();
        sweep_diagonals(FullPoly::one(), m, |d, cells| {
            if d == m {
                out = cells.iter().map(|c| QPolynomial::from_unsigned(c.0.clone())).collect();
            }
        });
        Ok(out)
    }

    /// All anti-diagonals `0..=m_max` of the `g` triangle; `out[M][m1] = g_{m1, M-m1}`.
    pub fn g_diagonals(&self, m_max: usize) -> Result<Vec<Vec<QPolynomial>>> {
        check_capacity("m1 + m2", m_max, self.limits.grid)?;
        let mut out = Vec::with_capacity(m_max + 1);
        sweep_diagonals(FullPoly::one(), m_max, |_, cells| {
            out.push(cells.iter().map(|c| QPolynomial::from_unsigned(c.0.clone())).collect());
        });
        Ok(out)
    }

    /// `sum_{a=0}^{M} g_{a, M-a}(q)` for every `M = 0..=m_max`.
    pub fn diagonal_sums(&self, m_max: usize) -> Result<Vec<QPolynomial>> {
        check_capacity("m1 + m2", m_max, self.limits.grid.max(self.limits.deck / 2 + 1))?;
        let mut out = Vec::with_capacity(m_max + 1);
        sweep_diagonals(FullPoly::one(), m_max, |_, cells| {
            out.push(QPolynomial::from_unsigned(sum_full(cells)));
        });
        Ok(out)
    }

    /// `[w^s] sum_a g_{a, M-a}(1 + w)` for `M = 0..=m_max`, `s = 0..=s_max`.
    pub fn diagonal_taylor_sums(&self, m_max: usize, s_max: usize) -> Result<Vec<Vec<BigUint>>> {
        check_capacity("m1 + m2", m_max, self.limits.moment_deck / 2 + 1)?;
        check_capacity("moment order", s_max, self.limits.moment_order)?;
        let mut out = Vec::with_capacity(m_max + 1);
        sweep_diagonals(Taylor::one(s_max), m_max, |_, cells| {
            out.push(sum_taylor(cells, s_max));
        });
        Ok(out)
    }

    /// The deck polynomial `f_n(q) = sum_k 2^n P{X_n = k} q^k`, for `n >= 4`:
    ///
    /// `f_n = 4q^4 - 2q^3 - 2q^2 + A_h(q) A_{n-h}(q)`, `h = ceil(n/2)`,
    /// with `A_M` the anti-diagonal sum of `g` at `M`.
    pub fn f_poly(&self, n: usize) -> Result<QPolynomial> {
        if n < CLOSED_FORM_MIN {
            return Err(Error::BelowClosedFormRange(n));
        }
        check_capacity("deck size", n, self.limits.deck)?;
        let h = n.div_ceil(2);
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        sweep_diagonals(FullPoly::one(), h, |m, cells| {
            if m == h {
                top = sum_full(cells);
            }
            if m == n - h {
                bottom = sum_full(cells);
            }
        });
        let product = QPolynomial::from_unsigned(top) * QPolynomial::from_unsigned(bottom);
        let f = &product + &correction();
        if !f.is_nonnegative() || f.eval_one() != BigInt::one() << n {
            return Err(Error::SeriesInvariant(format!(
                "deck polynomial for n = {n} is not a pmf numerator"
            )));
        }
        Ok(f)
    }

    /// Law of `X_n`: closed form for `n >= 4`, enumeration below.
    pub fn pmf_x(&self, n: usize) -> Result<ExactPmf> {
        if n == 0 {
            return Err(invalid("deck size must be at least 1"));
        }
        if n < CLOSED_FORM_MIN {
            return self.pmf_x_enumerated(n);
        }
        let f = self.f_poly(n)?;
        let mut numerators = f.to_unsigned().expect("checked nonnegative");
        numerators.resize(n + 1, BigUint::zero());
        ExactPmf::new(numerators, BigUint::one() << n)
    }

    /// Law of `X_n` by scoring the canonical strategy on all `2^n` shuffles.
    pub fn pmf_x_enumerated(&self, n: usize) -> Result<ExactPmf> {
        if n == 0 {
            return Err(invalid("deck size must be at least 1"));
        }
        check_capacity("enumeration deck size", n, self.limits.enumeration)?;
        let guesses = canonical_guesses(n);
        let total = 1u64 << n;
        let chunk = 1u64 << 12;
        let counts = (0..total.div_ceil(chunk))
            .into_par_iter()
            .map(|c| {
                let mut counts = vec![0u64; n + 1];
                let mut deck = Vec::with_capacity(n);
                for word in c * chunk..((c + 1) * chunk).min(total) {
                    interleave_into(n, word, &mut deck);
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
            );
        ExactPmf::new(counts.into_iter().map(BigUint::from).collect(), BigUint::one() << n)
    }

    /// Law of `Y_{m1,m2}`: coefficients of `g_{m1,m2}` over `C(m1 + m2, m1)`.
    pub fn pmf_y(&self, m1: usize, m2: usize) -> Result<ExactPmf> {
        if m1 + m2 == 0 {
            return Err(invalid("m1 + m2 must be at least 1"));
        }
        check_capacity("m1 + m2", m1 + m2, self.limits.grid)?;
        let g = rectangle(FullPoly::one(), m1, m2).0;
        ExactPmf::new(g, binomial((m1 + m2) as u64, m1 as u64))
    }

    /// Floating law of `Y_{m1,m2}`, normalised on the fly; entries past the
    /// last one above `f64::MIN_POSITIVE` are dropped.
    pub fn pmf_y_float(&self, m1: usize, m2: usize) -> Result<Vec<f64>> {
        if m1 + m2 == 0 {
            return Err(invalid("m1 + m2 must be at least 1"));
        }
        check_capacity("m1 + m2", m1 + m2, self.limits.float_grid)?;
        Ok(rectangle_float(m1, m2))
    }

    /// Exact factorial and raw moments of `X_n` for `s = 0..=s_max`.
    pub fn moments(&self, n: usize, s_max: usize) -> Result<MomentTable> {
        if n == 0 {
            return Err(invalid("deck size must be at least 1"));
        }
        check_capacity("moment order", s_max, self.limits.moment_order)?;
        if n < CLOSED_FORM_MIN {
            let pmf = self.pmf_x_enumerated(n)?;
            let factorial = (0..=s_max)
                .map(|s| {
                    pmf.numerators()
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k >= s)
                        .map(|(k, c)| c * ((k + 1 - s)..=k).product::<BigUint>())
                        .sum()
                })
                .collect();
            return Ok(MomentTable::from_factorial(n, factorial));
        }
        check_capacity("deck size", n, self.limits.moment_deck)?;
        let h = n.div_ceil(2);
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        sweep_diagonals(Taylor::one(s_max), h, |m, cells| {
            if m == h {
                top = sum_taylor(cells, s_max);
            }
            if m == n - h {
                bottom = sum_taylor(cells, s_max);
            }
        });
        let r = correction().expand_at_one(s_max);
        let factorial = (0..=s_max)
            .map(|s| {
                let mut c = BigInt::from(
                    (0..=s).map(|k| &top[k] * &bottom[s - k]).sum::<BigUint>(),
                );
                c += &r[s];
                let c = c.to_biguint().ok_or_else(|| {
                    Error::SeriesInvariant(format!("negative Taylor coefficient at s = {s}"))
                })?;
                Ok(c * factorial(s))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MomentTable::from_factorial(n, factorial))
    }

    /// `E(X_n^{s falling})` for `s = 0..=s_max`; zero beyond `n`.
    pub fn factorial_moments(&self, n: usize, s_max: usize) -> Result<Vec<BigRational>> {
        let t = self.moments(n, s_max)?;
        Ok((0..=s_max).map(|s| t.factorial(s)).collect())
    }

    /// `E(X_n^s) = sum_k S(s, k) E(X_n^{k falling})` for `s = 0..=s_max`.
    pub fn raw_moments(&self, n: usize, s_max: usize) -> Result<Vec<BigRational>> {
        let t = self.moments(n, s_max)?;
        Ok((0..=s_max).map(|s| t.raw(s)).collect())
    }
}

/// Distance of the half-deck statistic from its linear-exponential limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinExpFit {
    pub m1: usize,
    pub m2: usize,
    /// `(m1 - m2) / sqrt(m1)`.
    pub t: f64,
    /// `sup_z |P{Y <= z sqrt(m1)} - (1 - exp(-z (2t + z) / 4))|`.
    pub sup_distance: f64,
}

/// Compares `Y_{m1,m2}` (floating route) with `LinExp` at `t = (m1 - m2) / sqrt(m1)`.
pub fn linexp_fit(m1: usize, m2: usize) -> Result<LinExpFit> {
    if m1 <= m2 {
        return Err(invalid("the linear-exponential regime needs m1 > m2"));
    }
    linexp_fit_at(m1, m2, (m1 - m2) as f64 / (m1 as f64).sqrt())
}

/// As [`linexp_fit`], with the drift `t` of the reference law given explicitly.
pub fn linexp_fit_at(m1: usize, m2: usize, t: f64) -> Result<LinExpFit> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(invalid("drift t must be finite and nonnegative"));
    }
    let pmf = pmf_y_float(m1, m2)?;
    let scale = 1.0 / (m1.max(1) as f64).sqrt();
    let sup_distance = sup_cdf_distance(&pmf, scale, &LinExpLaw::new(t));
    Ok(LinExpFit { m1, m2, t, sup_distance })
}

/// The pair with `m1 - m2 = ceil(t sqrt(m1))` and `m1 + m2` the first value
/// reaching `total - 1` (so `total - 1` or `total`) as `m1` grows.
pub fn linexp_pair(total: usize, t: f64) -> (usize, usize) {
    let mut m1 = total.div_ceil(2);
    loop {
        let d = (t * (m1 as f64).sqrt()).ceil() as usize;
        if 2 * m1 >= total + d - 1 {
            return (m1, m1 - d);
        }
        m1 += 1;
    }
}

/// `4q^4 - 2q^3 - 2q^2`.
fn correction() -> QPolynomial {
    QPolynomial::from_i64s(&[0, 0, -2, -2, 4])
}

fn sum_full(cells: &[FullPoly]) -> Vec<BigUint> {
    let len = cells.iter().map(|c| c.0.len()).max().unwrap_or(0);
    let mut acc = vec![BigUint::zero(); len];
    for c in cells {
        for (a, b) in acc.iter_mut().zip(&c.0) {
            *a += b;
        }
    }
    acc
}

fn sum_taylor(cells: &[Taylor], s_max: usize) -> Vec<BigUint> {
    let mut acc = vec![BigUint::zero(); s_max + 1];
    for c in cells {
        for (a, b) in acc.iter_mut().zip(&c.0) {
            *a += b;
        }
    }
    acc
}

pub fn g_poly(m1: usize, m2: usize) -> Result<QPolynomial> {
    ExactEngine::default().g_poly(m1, m2)
}

pub fn f_poly(n: usize) -> Result<QPolynomial> {
    ExactEngine::default().f_poly(n)
}

pub fn pmf_x(n: usize) -> Result<ExactPmf> {
    ExactEngine::default().pmf_x(n)
}

pub fn pmf_x_enumerated(n: usize) -> Result<ExactPmf> {
    ExactEngine::default().pmf_x_enumerated(n)
}

pub fn pmf_y(m1: usize, m2: usize) -> Result<ExactPmf> {
    ExactEngine::default().pmf_y(m1, m2)
}

pub fn pmf_y_float(m1: usize, m2: usize) -> Result<Vec<f64>> {
    ExactEngine::default().pmf_y_float(m1, m2)
}

pub fn moments(n: usize, s_max: usize) -> Result<MomentTable> {
    ExactEngine::default().moments(n, s_max)
}

pub fn factorial_moments(n: usize, s_max: usize) -> Result<Vec<BigRational>> {
    ExactEngine::default().factorial_moments(n, s_max)
}

pub fn raw_moments(n: usize, s_max: usize) -> Result<Vec<BigRational>> {
    ExactEngine::default().raw_moments(n, s_max)
}
