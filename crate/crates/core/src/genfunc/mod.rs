//! Closed-form generating functions expanded as exact truncated series: the
//! shifted Catalan series, the kernel-method trivariate function `G~(z, u, q)`,
//! its `u = 1` specialisation expanded around `q = 1`, and the fixed-difference
//! series for the half-deck statistic.

pub mod series;

pub use series::TruncatedSeries;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, signed_ratio_to_f64};
use crate::error::{check_capacity, invalid, Error, Result};
use crate::limitlaw::gamma_half;
use crate::qpoly::QPolynomial;

/// Largest order for the integer series routes.
pub const MAX_SERIES_ORDER: usize = 1 << 14;
/// Largest order for the `u`-resolved expansion.
pub const MAX_RESOLVED_ORDER: usize = 64;

/// `P(t) = sum_{n >= 1} (1/n) C(2n-2, n-1) t^n`, the root of `P^2 - P + t = 0`
/// with `P(0) = 0`, truncated at `t^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalanSeries {
    series: TruncatedSeries<BigInt>,
}

impl CatalanSeries {
    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// `[t^k] P`.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.series.coeff(k)
    }

    pub fn as_series(&self) -> &TruncatedSeries<BigInt> {
        &self.series
    }

    /// `P(z^2)` truncated at `z^order`.
    pub fn in_z_squared(&self, order: usize) -> TruncatedSeries<BigInt> {
        let full = self.series.in_z_squared();
        if order <= full.order() {
            full.truncate(order)
        } else {
            TruncatedSeries::from_coeffs(full.into_coeffs(), order)
        }
    }

    /// `P^2 - P + t` vanishes up to the order.
    pub fn satisfies_defining_equation(&self) -> bool {
        let p = &self.series;
        let t = TruncatedSeries::monomial(BigInt::one(), 1, p.order());
        p.mul(p).sub(p).add(&t).is_zero()
    }
}

pub fn catalan_series(order: usize) -> Result<CatalanSeries> {
    if order == 0 {
        return Err(invalid("series order must be at least 1"));
    }
    check_capacity("series order", order, MAX_SERIES_ORDER)?;
    let mut coeffs = vec![BigInt::zero()];
    for n in 1..=order as u64 {
        coeffs.push(BigInt::from(binomial(2 * n - 2, n - 1) / n));
    }
    Ok(CatalanSeries {
        series: TruncatedSeries::from_coeffs(coeffs, order),
    })
}

/// `(1 - 4z^2)^{a/2}` by the binomial series, truncated at `z^order`.
///
/// `[z^{2k}] = C(a/2, k) (-4)^k`, generated by `c_k = c_{k-1} * (-2)(a - 2k + 2) / k`;
/// every division is checked to be exact.
pub fn one_minus_4z2_power(a: i64, order: usize) -> Result<TruncatedSeries<BigInt>> {
    check_capacity("series order", order, MAX_SERIES_ORDER)?;
    let mut coeffs = vec![BigInt::zero(); order + 1];
    let mut c = BigInt::one();
    coeffs[0] = c.clone();
    for k in 1..=order / 2 {
        let (quot, rem) = (c * BigInt::from(-2 * (a - 2 * k as i64 + 2))).div_rem(&BigInt::from(k));
        if !rem.is_zero() {
            return Err(Error::SeriesInvariant(format!(
                "binomial series of (1-4z^2)^({a}/2) is not integral at z^{}",
                2 * k
            )));
        }
        c = quot;
        coeffs[2 * k] = c.clone();
    }
    Ok(TruncatedSeries::from_coeffs(coeffs, order))
}

/// `sqrt(1 - 4z^2)`.
pub fn sqrt_one_minus_4z2(order: usize) -> Result<TruncatedSeries<BigInt>> {
    one_minus_4z2_power(1, order)
}

/// `P(z^2) = (1 - sqrt(1 - 4z^2)) / 2`, built from the binomial series.
pub fn p_of_z_squared(order: usize) -> Result<TruncatedSeries<BigInt>> {
    let root = sqrt_one_minus_4z2(order)?;
    let two = BigInt::from(2);
    let diff = TruncatedSeries::one(order).sub(&root);
    let coeffs = diff
        .coeffs()
        .iter()
        .map(|c| {
            let (q, r) = c.div_rem(&two);
            if r.is_zero() {
                Ok(q)
            } else {
                Err(Error::SeriesInvariant("1 - sqrt(1 - 4z^2) is not even".into()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries::from_coeffs(coeffs, order))
}

/// The small kernel root `u1 = (1 - sqrt(1 - 4z^2)) / (2z) = P(z^2) / z`.
pub fn kernel_root(order: usize) -> Result<TruncatedSeries<BigInt>> {
    p_of_z_squared(order + 1)?.div_z_pow(1)
}

/// Outcome of the kernel-root identities up to a given order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelCheck {
    pub order: usize,
    /// `z u1^2 - u1 + z = 0`.
    pub root_of_kernel: bool,
    /// `u1 u2 = 1`, with `z u2 = 1 - z u1` taken from the root sum `u1 + u2 = 1/z`.
    pub roots_multiply_to_one: bool,
    /// `P(z^2)` from the binomial series equals the Catalan coefficients.
    pub catalan_agrees: bool,
}

impl KernelCheck {
    pub fn all_hold(&self) -> bool {
        self.root_of_kernel && self.roots_multiply_to_one && self.catalan_agrees
    }
}

pub fn kernel_identity_check(order: usize) -> Result<KernelCheck> {
    let u1 = kernel_root(order)?;
    let z = TruncatedSeries::monomial(BigInt::one(), 1, order);
    let root_of_kernel = z.mul(&u1.mul(&u1)).sub(&u1).add(&z).is_zero();
    // (z u1)(z u2) = z^2 is u1 u2 = 1 without Laurent terms.
    let zu1 = u1.mul_z_pow(1);
    let zu2 = TruncatedSeries::one(order).sub(&zu1);
    let z2 = TruncatedSeries::monomial(BigInt::one(), 2, order);
    let roots_multiply_to_one = zu1.mul(&zu2) == z2;
    let catalan_agrees =
        catalan_series(order.div_ceil(2).max(1))?.in_z_squared(order) == p_of_z_squared(order)?;
    Ok(KernelCheck {
        order,
        root_of_kernel,
        roots_multiply_to_one,
        catalan_agrees,
    })
}

/// `[w^s][z^M] G~(z, 1, 1 + w)` for `s = 0..=s_max`, `M = 0..=order`:
/// the Taylor coefficients around `q = 1` of the anti-diagonal sums
/// `sum_a g_{a, M-a}(q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TildeG {
    series: Vec<TruncatedSeries<BigInt>>,
}

impl TildeG {
    pub fn order(&self) -> usize {
        self.series[0].order()
    }

    pub fn s_max(&self) -> usize {
        self.series.len() - 1
    }

    /// `g~_s(z)`.
    pub fn series(&self, s: usize) -> &TruncatedSeries<BigInt> {
        &self.series[s]
    }

    /// `[z^m] g~_s(z)`.
    pub fn coeff(&self, s: usize, m: usize) -> BigInt {
        self.series[s].coeff(m)
    }

    /// `[z^m] g~_s / main term`, see [`singular_coefficient_asymptotics`].
    pub fn singular_ratio(&self, s: usize, m: usize) -> f64 {
        let exact = self.coeff(s, m);
        signed_ratio_to_f64(&exact, &(num_bigint::BigUint::one() << m))
            / singular_main_term_scaled(s as u32, m)
    }
}

/// Expands
///
/// ```text
/// g~_0 = 1 / (1 - 2z)
/// g~_1 = (P(z^2) + z) / ((1 - 2z)(1 - 2P(z^2)))
/// g~_s = ((z + 1) P(z^2) - z^2) (2P(z^2))^{s-2} / (z (1 - 2z) (1 - 2P(z^2))^s),  s >= 2
/// ```
///
/// using `1 - 2P(z^2) = sqrt(1 - 4z^2)`, so that
/// `(2P)^{s-2} / (1 - 2P)^s = sum_j C(s-2, j) (-1)^j (1 - 4z^2)^{(j-s)/2}`.
pub fn tilde_g_series(order: usize, s_max: usize) -> Result<TildeG> {
    check_capacity("series order", order + 1, MAX_SERIES_ORDER)?;
    let ext = order + 1;
    let two = BigInt::from(2);
    let p2 = p_of_z_squared(ext)?;
    let z = TruncatedSeries::monomial(BigInt::one(), 1, ext);
    let mut series = Vec::with_capacity(s_max + 1);
    series.push(TruncatedSeries::one(order).div_one_minus(&two));
    if s_max >= 1 {
        let num = p2.add(&z).truncate(order);
        let inv_root = one_minus_4z2_power(-1, order)?;
        series.push(num.mul(&inv_root).div_one_minus(&two));
    }
    if s_max >= 2 {
        // (z + 1) P(z^2) - z^2
        let a = p2
            .mul_z_pow(1)
            .add(&p2)
            .sub(&TruncatedSeries::monomial(BigInt::one(), 2, ext));
        let mut powers = Vec::with_capacity(s_max + 1);
        for e in 0..=s_max as i64 {
            powers.push(one_minus_4z2_power(-e, ext)?);
        }
        for s in 2..=s_max {
            let mut b = TruncatedSeries::zero(ext);
            for j in 0..=s - 2 {
                let c = BigInt::from(binomial((s - 2) as u64, j as u64));
                let term = powers[s - j].scale(&c);
                b = if j % 2 == 0 { b.add(&term) } else { b.sub(&term) };
            }
            let g = a.mul(&b).div_z_pow(1)?.div_one_minus(&two);
            series.push(g);
        }
    }
    for (s, g) in series.iter().enumerate() {
        if let Some(m) = g.coeffs().iter().position(|c| c.is_negative()) {
            return Err(Error::SeriesInvariant(format!(
                "negative coefficient [z^{m}] in g~_{s}"
            )));
        }
    }
    Ok(TildeG { series })
}

/// Coefficients of `G~(z, u, q)` resolved in `u`: `[z^M u^d] = g_{(M-d)/2, (M+d)/2}(q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct UResolvedSeries {
    /// `rows[m][d + m]` for `d` in `-m..=m`.
    rows: Vec<Vec<QPolynomial>>,
}

impl UResolvedSeries {
    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    /// `[z^m u^d]`, zero outside `|d| <= m`.
    pub fn coeff(&self, m: usize, d: i64) -> QPolynomial {
        let idx = d + m as i64;
        if idx < 0 || idx > 2 * m as i64 || m > self.order() {
            return QPolynomial::zero();
        }
        self.rows[m][idx as usize].clone()
    }

    /// `[z^m]` as a slice indexed by `d + m`.
    pub fn row(&self, m: usize) -> &[QPolynomial] {
        &self.rows[m]
    }
}

/// The kernel-method closed form
///
/// ```text
/// G~(z, u, q) = N / (z u (z u^2 - u + z)(1 - 2q P(z^2))),
/// N = (2q u^2 z + (q - 1)^2 u - q (q - 1) z) P(z^2) - z u (u + q (q - 1) z)
/// ```
///
/// expanded in `z` with exact `u`-coefficients. The kernel `z u^2 - u + z =
/// -u (1 - z (u + 1/u))` is inverted coefficient-wise by the recurrence
/// `X_M = Y_M + (u + 1/u) X_{M-1}`, where `Y_M = -[z^{M+1}] T / u^2` and
/// `T = N / (1 - 2q P(z^2))`. Both divisions (by `z` and by `u^2`) are checked.
#[allow(non_snake_case)]
pub fn tilde_G_series(order: usize) -> Result<UResolvedSeries> {
    check_capacity("u-resolved order", order, MAX_RESOLVED_ORDER)?;
    let ext = order + 1;
    let p2 = p_of_z_squared(ext)?.to_q();
    let q = QPolynomial::q();
    let one = QPolynomial::one();
    let qm1 = &q - &one;
    let q_qm1 = &q * &qm1;
    let z = TruncatedSeries::monomial(one.clone(), 1, ext);
    let z2 = TruncatedSeries::monomial(one.clone(), 2, ext);
    // N = N_0 + N_1 u + N_2 u^2
    let two_q = &q + &q;
    let n2 = p2.mul_z_pow(1).scale(&two_q).sub(&z);
    let n1 = p2.scale(&(&qm1 * &qm1)).sub(&z2.scale(&q_qm1));
    let n0 = p2.mul_z_pow(1).scale(&q_qm1).neg();
    let inv = TruncatedSeries::one(ext).sub(&p2.scale(&two_q)).inverse()?;
    let t: Vec<TruncatedSeries<QPolynomial>> = [n0, n1, n2].iter().map(|n| n.mul(&inv)).collect();
    for (e, te) in t.iter().enumerate() {
        if !te.coeff(0).is_zero() {
            return Err(Error::SeriesInvariant(format!("[z^0 u^{e}] T is nonzero")));
        }
    }
    let mut rows: Vec<Vec<QPolynomial>> = Vec::with_capacity(ext);
    for m in 0..=order {
        let width = 2 * m + 1;
        let mut row = vec![QPolynomial::zero(); width];
        // Y_M at u^{e-2}
        for (e, te) in t.iter().enumerate() {
            let y = -te.coeff(m + 1);
            if y.is_zero() {
                continue;
            }
            let d = e as i64 - 2;
            if d.abs() > m as i64 {
                return Err(Error::SeriesInvariant(format!(
                    "[z^{m} u^{d}] is nonzero outside |d| <= M"
                )));
            }
            row[(d + m as i64) as usize] += &y;
        }
        if m > 0 {
            let prev = &rows[m - 1];
            // prev index i holds d = i - (m-1); it feeds d +- 1, i.e. indices i and i + 2.
            for (i, x) in prev.iter().enumerate() {
                row[i] += x;
                row[i + 2] += x;
            }
        }
        rows.push(row);
    }
    Ok(UResolvedSeries { rows })
}

/// `G(z, q) = q^2 (P(z^2)/z)^d / (1 - 2q P(z^2))`: for `m1 - m2 = d >= 2`,
/// `[z^{m1+m2}] G = g_{m1,m2}(q)`.
pub fn fixed_difference_gf(d: usize, order: usize) -> Result<TruncatedSeries<QPolynomial>> {
    if d < 2 {
        return Err(invalid("fixed difference must be at least 2"));
    }
    check_capacity("u-resolved order", order, MAX_RESOLVED_ORDER)?;
    let u1 = kernel_root(order)?.to_q();
    let p2 = p_of_z_squared(order)?.to_q();
    let q = QPolynomial::q();
    let two_q = &q + &q;
    let inv = TruncatedSeries::one(order).sub(&p2.scale(&two_q)).inverse()?;
    Ok(u1.pow(d).mul(&inv).scale(&(&q * &q)))
}

/// Main term of `[z^n] g~_s(z)`:
/// `2^n 2^{s/2} Gamma((s+1)/2) n^{s/2} / (s! sqrt(pi))`.
///
/// Overflows to infinity once `2^n` leaves the `f64` range; see
/// [`singular_main_term_scaled`] for the value divided by `2^n`.
pub fn singular_coefficient_asymptotics(s: u32, n: usize) -> f64 {
    2f64.powi(n as i32) * singular_main_term_scaled(s, n)
}

/// [`singular_coefficient_asymptotics`] divided by `2^n`.
pub fn singular_main_term_scaled(s: u32, n: usize) -> f64 {
    let fact: f64 = (1..=s).map(f64::from).product();
    2f64.powf(s as f64 / 2.0) * gamma_half(s + 1) * (n as f64).powf(s as f64 / 2.0)
        / (fact * std::f64::consts::PI.sqrt())
}
