//! Power series in `z` truncated at a fixed order, over an exact coefficient ring.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qpoly::QPolynomial;

/// Exact commutative ring used for series coefficients.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn add_assign(&mut self, other: &Self);
    /// Inverse of `+1` or `-1`; `None` for anything else.
    fn unit_inverse(&self) -> Option<Self>;
}

impl Coefficient for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn unit_inverse(&self) -> Option<Self> {
        (self.abs() == One::one()).then(|| self.clone())
    }
}

impl Coefficient for QPolynomial {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn unit_inverse(&self) -> Option<Self> {
        match self.degree() {
            Some(0) => self.coeff(0).unit_inverse().map(QPolynomial::from),
            _ => None,
        }
    }
}

/// `sum_{k=0}^{order} c_k z^k`; every operation is exact up to `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

const PAR_MUL_MIN: usize = 64;

impl<C: Coefficient> TruncatedSeries<C> {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(C::one(), 0, order)
    }

    /// `c z^k`, truncated.
    pub fn monomial(c: C, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Pads with zeros or truncates to `order`.
    pub fn from_coeffs(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncatedSeries { coeffs }
    }

    /// The polynomial `sum c_k z^k` viewed as a series.
    pub fn from_polynomial(coeffs: &[C], order: usize) -> Self {
        Self::from_coeffs(coeffs.iter().take(order + 1).cloned().collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// `[z^k]`, zero beyond the order.
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// Drops terms above `order` (which must not exceed the current order).
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise the order by truncation");
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.common_order(other);
        TruncatedSeries {
            coeffs: (0..=order).map(|k| self.coeffs[k].add(&other.coeffs[k])).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.common_order(other);
        TruncatedSeries {
            coeffs: (0..=order).map(|k| self.coeffs[k].sub(&other.coeffs[k])).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(C::neg)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.mul(c))
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.common_order(other);
        let term = |n: usize| {
            let mut acc = C::zero();
            for k in 0..=n {
                let (a, b) = (&self.coeffs[k], &other.coeffs[n - k]);
                if !a.is_zero() && !b.is_zero() {
                    acc.add_assign(&a.mul(b));
                }
            }
            acc
        };
        let coeffs = if order >= PAR_MUL_MIN {
            (0..=order).into_par_iter().map(term).collect()
        } else {
            (0..=order).map(term).collect()
        };
        TruncatedSeries { coeffs }
    }

    pub fn pow(&self, r: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..r {
            acc = acc.mul(self);
        }
        acc
    }

    /// `1 / self`; the constant term must be a unit (`+1` or `-1`).
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].unit_inverse().ok_or_else(|| {
            Error::SeriesInvariant("series inverse needs a unit constant term".into())
        })?;
        let mut out: Vec<C> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let mut acc = C::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc.add_assign(&self.coeffs[k].mul(&out[n - k]));
                }
            }
            out.push(acc.mul(&inv0).neg());
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `self * z^k`, keeping the order.
    pub fn mul_z_pow(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![C::zero(); k.min(order + 1)];
        coeffs.extend(self.coeffs.iter().take((order + 1).saturating_sub(k)).cloned());
        TruncatedSeries { coeffs }
    }

    /// `self / z^k`; the low `k` coefficients must vanish. The order drops by `k`.
    pub fn div_z_pow(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::SeriesInvariant("division by z beyond the order".into()));
        }
        if let Some(j) = (0..k).find(|&j| !self.coeffs[j].is_zero()) {
            return Err(Error::SeriesInvariant(format!(
                "series not divisible by z^{k}: nonzero coefficient at z^{j}"
            )));
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// `self / (1 - c z)`, by `y_n = x_n + c y_{n-1}`.
    pub fn div_one_minus(&self, c: &C) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            let y = match coeffs.last() {
                Some(prev) => x.add(&c.mul(prev)),
                None => x.clone(),
            };
            coeffs.push(y);
        }
        TruncatedSeries { coeffs }
    }

    /// `f(z) -> f(z^2)`; the order doubles.
    pub fn in_z_squared(&self) -> Self {
        let order = 2 * self.order();
        let mut coeffs = vec![C::zero(); order + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * k] = c.clone();
        }
        TruncatedSeries { coeffs }
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl TruncatedSeries<BigInt> {
    /// Lifts an integer series to constant `q`-polynomial coefficients.
    pub fn to_q(&self) -> TruncatedSeries<QPolynomial> {
        self.map(|c| QPolynomial::from(c.clone()))
    }
}
