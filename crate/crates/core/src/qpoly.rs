//! Polynomials in the counting variable `q` with arbitrary-precision integer
//! coefficients.
//!
//! Coefficients are signed so the same type can carry intermediate series
//! algebra (factors like `q - 1`); the weighted path polynomials themselves
//! always end up with nonnegative coefficients, see
//! [`QPolynomial::is_nonnegative`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use crate::arith::binomial_row;

/// `coeffs[k]` is the coefficient of `q^k`. No trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_unsigned(coeffs: Vec<BigUint>) -> Self {
        Self::new(coeffs.into_iter().map(BigInt::from).collect())
    }

    /// `c * q^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    /// The polynomial `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| c.sign() != Sign::Minus)
    }

    /// Value at `q = 1`, i.e. the sum of coefficients.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * q + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPolynomial { coeffs }
    }

    /// Coefficients of `w^0..=w^s_max` in `p(1 + w)`.
    pub fn expand_at_one(&self, s_max: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); s_max + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = binomial_row(k);
            for (s, slot) in out.iter_mut().enumerate().take(k.min(s_max) + 1) {
                *slot += c * BigInt::from(row[s].clone());
            }
        }
        out
    }

    /// Coefficients as unsigned integers; `None` if any is negative.
    pub fn to_unsigned(&self) -> Option<Vec<BigUint>> {
        self.coeffs.iter().map(|c| c.to_biguint()).collect()
    }
}

impl Zero for QPolynomial {
    fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for QPolynomial {
    fn one() -> Self {
        QPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }
}

impl From<BigInt> for QPolynomial {
    fn from(c: BigInt) -> Self {
        QPolynomial::new(vec![c])
    }
}

impl From<i64> for QPolynomial {
    fn from(c: i64) -> Self {
        QPolynomial::new(vec![BigInt::from(c)])
    }
}

impl AddAssign<&QPolynomial> for QPolynomial {
    fn add_assign(&mut self, rhs: &QPolynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Add<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;

    fn add(mut self, rhs: QPolynomial) -> QPolynomial {
        self += &rhs;
        self
    }
}

impl Neg for QPolynomial {
    type Output = QPolynomial;

    fn neg(self) -> QPolynomial {
        QPolynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;

    fn neg(self) -> QPolynomial {
        -self.clone()
    }
}

impl Sub<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self + &(-rhs)
    }
}

impl Sub for QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: QPolynomial) -> QPolynomial {
        &self - &rhs
    }
}

impl Mul<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPolynomial::new(coeffs)
    }
}

impl Mul for QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: QPolynomial) -> QPolynomial {
        &self * &rhs
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{mag}q^{k}")?,
            }
        }
        Ok(())
    }
}
