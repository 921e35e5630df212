//! Brute-force lattice-path oracles. A path has `m1` down steps and `m2` up
//! steps in some order, starts at altitude 0 and ends at `m2 - m1`.

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::arith::{binomial, rational_to_f64};
use crate::error::{check_capacity, invalid, Result};
use crate::pmf::ExactPmf;

/// Longest path the oracles enumerate.
pub const MAX_PATH_LEN: usize = 22;

/// A sequence of `+1` / `-1` steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyckPath {
    steps: Vec<i8>,
}

impl DyckPath {
    pub fn new(steps: Vec<i8>) -> Result<Self> {
        if steps.iter().any(|&s| s != 1 && s != -1) {
            return Err(invalid("path steps must be +1 or -1"));
        }
        Ok(DyckPath { steps })
    }

    /// Bit `k` of `word` set means step `k + 1` goes down.
    pub fn from_word(word: u64, len: usize) -> Self {
        DyckPath {
            steps: (0..len).map(|k| if word >> k & 1 == 1 { -1 } else { 1 }).collect(),
        }
    }

    pub fn steps(&self) -> &[i8] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `y_0 = 0, y_1, ..., y_len`.
    pub fn altitudes(&self) -> Vec<i64> {
        let mut y = vec![0i64];
        for &s in &self.steps {
            y.push(y.last().unwrap() + i64::from(s));
        }
        y
    }

    pub fn final_altitude(&self) -> i64 {
        self.steps.iter().map(|&s| i64::from(s)).sum()
    }

    /// Number of `k` with `step_k = -1` and `y_k` in {-1, -2}.
    pub fn low_down_visits(&self) -> usize {
        let mut y = 0i64;
        let mut count = 0;
        for &s in &self.steps {
            y += i64::from(s);
            if s == -1 && (y == -1 || y == -2) {
                count += 1;
            }
        }
        count
    }

    /// Number of `k >= 1` with `y_k = 0`.
    pub fn returns_to_zero(&self) -> usize {
        let mut y = 0i64;
        let mut count = 0;
        for &s in &self.steps {
            y += i64::from(s);
            if y == 0 {
                count += 1;
            }
        }
        count
    }
}

/// All `len`-bit words with exactly `ones` bits set, in increasing order (Gosper's hack).
fn words(len: usize, ones: usize) -> impl Iterator<Item = u64> {
    let first = if ones == 0 { 0 } else { (1u64 << ones) - 1 };
    let limit = 1u64 << len;
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let w = next?;
        next = if w == 0 {
            None
        } else {
            let c = w & w.wrapping_neg();
            let r = w + c;
            let n = (((r ^ w) >> 2) / c) | r;
            (n < limit).then_some(n)
        };
        Some(w)
    })
}

fn low_down_visits(word: u64, len: usize) -> usize {
    let (mut y, mut count) = (0i64, 0);
    for k in 0..len {
        if word >> k & 1 == 1 {
            y -= 1;
            if y == -1 || y == -2 {
                count += 1;
            }
        } else {
            y += 1;
        }
    }
    count
}

fn returns_to_zero(word: u64, len: usize) -> usize {
    let (mut y, mut count) = (0i64, 0);
    for k in 0..len {
        y += if word >> k & 1 == 1 { -1 } else { 1 };
        if y == 0 {
            count += 1;
        }
    }
    count
}

fn oracle(m1: usize, m2: usize, stat: fn(u64, usize) -> usize) -> Result<ExactPmf> {
    let len = m1 + m2;
    check_capacity("path length", len, MAX_PATH_LEN)?;
    let mut counts = vec![0u64; len + 1];
    for w in words(len, m1) {
        counts[stat(w, len)] += 1;
    }
    let total = binomial(len as u64, m1 as u64);
    ExactPmf::new(counts.into_iter().map(BigUint::from).collect(), total)
}

/// Law of the number of down steps that land on level -1 or -2, over all
/// `C(m1 + m2, m1)` paths from 0 to `m2 - m1`.
pub fn y_oracle_pmf(m1: usize, m2: usize) -> Result<ExactPmf> {
    oracle(m1, m2, low_down_visits)
}

/// Law of the number of returns to altitude 0 over the same paths.
pub fn w_oracle_pmf(m1: usize, m2: usize) -> Result<ExactPmf> {
    oracle(m1, m2, returns_to_zero)
}

/// The `Y` oracle at `(m1, m2)` against the `W` oracle at `(m1 - 1, m2)` shifted by 2.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftReport {
    pub m1: usize,
    pub m2: usize,
    pub y: ExactPmf,
    pub w_shifted: ExactPmf,
    pub total_variation: BigRational,
}

impl ShiftReport {
    pub fn total_variation_f64(&self) -> f64 {
        rational_to_f64(&self.total_variation)
    }

    pub fn is_exact(&self) -> bool {
        self.total_variation == BigRational::from_integer(0.into())
    }
}

/// Diagnostic only: reports the distance, asserts nothing about its size.
pub fn shift_relation_check(m1: usize, m2: usize) -> Result<ShiftReport> {
    if m1 < m2 + 2 {
        return Err(invalid("shift relation needs m1 >= m2 + 2"));
    }
    let y = y_oracle_pmf(m1, m2)?;
    let w_shifted = w_oracle_pmf(m1 - 1, m2)?.shifted(2);
    let total_variation = y.total_variation(&w_shifted);
    Ok(ShiftReport {
        m1,
        m2,
        y,
        w_shifted,
        total_variation,
    })
}
