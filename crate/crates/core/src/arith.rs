//! Exact-arithmetic helpers: dyadic rationals, binomials, Stirling numbers and
//! accurate conversion of huge ratios to `f64`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// A probability of the form `num / 2^exp`, kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicProb {
    num: BigUint,
    exp: u32,
}

impl DyadicProb {
    pub fn new(num: impl Into<BigUint>, exp: u32) -> Self {
        let mut p = DyadicProb {
            num: num.into(),
            exp,
        };
        p.reduce();
        p
    }

    pub fn zero() -> Self {
        DyadicProb {
            num: BigUint::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        DyadicProb {
            num: BigUint::one(),
            exp: 0,
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0);
        let k = tz.min(u64::from(self.exp)) as u32;
        if k > 0 {
            self.num >>= k;
            self.exp -= k;
        }
    }

    /// Numerator in lowest terms.
    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    /// Power of two in the reduced denominator.
    pub fn exponent(&self) -> u32 {
        self.exp
    }

    /// Numerator over the structural denominator `2^exp` (requires `exp >= self.exponent()`).
    pub fn numer_over(&self, exp: u32) -> BigUint {
        assert!(exp >= self.exp, "denominator 2^{exp} too small for {self}");
        &self.num << (exp - self.exp)
    }

    pub fn to_ratio(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.num.clone()),
            BigInt::from(BigUint::one() << self.exp),
        )
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.num, &(BigUint::one() << self.exp))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for &DyadicProb {
    type Output = DyadicProb;

    fn add(self, rhs: &DyadicProb) -> DyadicProb {
        let exp = self.exp.max(rhs.exp);
        DyadicProb::new(self.numer_over(exp) + rhs.numer_over(exp), exp)
    }
}

impl Add for DyadicProb {
    type Output = DyadicProb;

    fn add(self, rhs: DyadicProb) -> DyadicProb {
        &self + &rhs
    }
}

impl std::iter::Sum for DyadicProb {
    fn sum<I: Iterator<Item = DyadicProb>>(iter: I) -> Self {
        iter.fold(DyadicProb::zero(), |acc, p| acc + p)
    }
}

impl PartialOrd for DyadicProb {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicProb {
    fn cmp(&self, other: &Self) -> Ordering {
        let exp = self.exp.max(other.exp);
        self.numer_over(exp).cmp(&other.numer_over(exp))
    }
}

impl fmt::Display for DyadicProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

/// `C(n, k)` as an exact integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Row `n` of Pascal's triangle.
pub fn binomial_row(n: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for k in 0..n {
        c *= n - k;
        c /= k + 1;
        row.push(c.clone());
    }
    row
}

/// Stirling numbers of the second kind `S(s, k)` for `0 <= k <= s <= s_max`.
pub fn stirling2_table(s_max: usize) -> Vec<Vec<BigUint>> {
    let mut table: Vec<Vec<BigUint>> = Vec::with_capacity(s_max + 1);
    table.push(vec![BigUint::one()]);
    for s in 1..=s_max {
        let prev = &table[s - 1];
        let mut row = vec![BigUint::zero(); s + 1];
        for k in 1..=s {
            let mut v = BigUint::zero();
            if k < s {
                v += &prev[k] * k;
            }
            v += &prev[k - 1];
            row[k] = v;
        }
        table.push(row);
    }
    table
}

/// `num / den` rounded to `f64` with relative error below 2^-62 before the final rounding.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    assert!(!den.is_zero(), "division by zero");
    if num.is_zero() {
        return 0.0;
    }
    let shift = 64 + den.bits() as i64 - num.bits() as i64;
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let q = q.to_f64().unwrap_or(f64::INFINITY);
    let exp = (-shift).clamp(i64::from(i32::MIN), i64::from(i32::MAX)) as i32;
    libm::ldexp(q, exp)
}

/// Signed variant of [`ratio_to_f64`].
pub fn signed_ratio_to_f64(num: &BigInt, den: &BigUint) -> f64 {
    let v = ratio_to_f64(num.magnitude(), den);
    if num.sign() == Sign::Minus {
        -v
    } else {
        v
    }
}

/// `BigRational` to `f64` through [`signed_ratio_to_f64`].
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let (n, d) = (r.numer(), r.denom());
    let v = signed_ratio_to_f64(n, d.magnitude());
    if d.sign() == Sign::Minus {
        -v
    } else {
        v
    }
}

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}
