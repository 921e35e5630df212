//! Sweeps over the `(m1, m2)` grid of the weighted Pascal recurrence
//!
//! ```text
//! g[m1][m2] = q^[m1 == floor((m1+m2)/2) + 1] * g[m1-1][m2] + g[m1][m2-1],  g[0][0] = 1
//! ```
//!
//! generic over what a cell stores: full coefficient vectors, a Taylor window
//! around `q = 1`, or normalised floating weights.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

/// Whether the step from `(m1 - 1, m2)` into `(m1, m2)` carries a factor `q`.
#[inline]
pub(crate) fn weighted(m1: usize, m2: usize) -> bool {
    m1 == (m1 + m2) / 2 + 1
}

pub(crate) trait Cell: Clone + Send + Sync {
    fn zero_like(&self) -> Self;
    fn add_assign(&mut self, other: &Self);
    /// `self += q * other`.
    fn add_assign_q(&mut self, other: &Self);
}

/// Coefficients of a polynomial in `q`, index = power.
#[derive(Clone, Debug, Default)]
pub(crate) struct FullPoly(pub Vec<BigUint>);

impl FullPoly {
    pub fn one() -> Self {
        FullPoly(vec![BigUint::one()])
    }
}

impl Cell for FullPoly {
    fn zero_like(&self) -> Self {
        FullPoly(Vec::new())
    }

    fn add_assign(&mut self, other: &Self) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), BigUint::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }

    fn add_assign_q(&mut self, other: &Self) {
        if self.0.len() < other.0.len() + 1 {
            self.0.resize(other.0.len() + 1, BigUint::zero());
        }
        for (a, b) in self.0[1..].iter_mut().zip(&other.0) {
            *a += b;
        }
    }
}

/// `[w^0..=w^s] p(1 + w)`; multiplying by `q = 1 + w` is `c[s] += c[s-1]`.
#[derive(Clone, Debug)]
pub(crate) struct Taylor(pub Vec<BigUint>);

impl Taylor {
    pub fn one(s_max: usize) -> Self {
        let mut v = vec![BigUint::zero(); s_max + 1];
        v[0] = BigUint::one();
        Taylor(v)
    }
}

impl Cell for Taylor {
    fn zero_like(&self) -> Self {
        Taylor(vec![BigUint::zero(); self.0.len()])
    }

    fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }

    fn add_assign_q(&mut self, other: &Self) {
        for s in 0..self.0.len() {
            self.0[s] += &other.0[s];
            if s > 0 {
                self.0[s] += &other.0[s - 1];
            }
        }
    }
}

const PAR_CHUNK: usize = 48;

/// Walks the anti-diagonals `M = m1 + m2 = 0..=upto`, calling `visit(M, cells)`
/// where `cells[m1] = g[m1][M - m1]`. Memory is one diagonal.
///
/// Within a diagonal the cells are updated in parallel chunks; each chunk reads
/// a snapshot of its left neighbour, so the result does not depend on scheduling.
pub(crate) fn sweep_diagonals<C: Cell>(one: C, upto: usize, mut visit: impl FnMut(usize, &[C])) {
    let mut cells = vec![one];
    visit(0, &cells);
    for m in 1..=upto {
        let zero = cells[0].zero_like();
        cells.push(zero);
        let c = m / 2 + 1;
        // cells[k] holds g[k][m-1-k] before the update and g[k][m-k] after:
        // g[k][m-k] = q^[k == c] g[k-1][m-k] + g[k][m-k-1].
        let boundaries: Vec<Option<C>> = (0..cells.len())
            .step_by(PAR_CHUNK)
            .map(|start| start.checked_sub(1).map(|i| cells[i].clone()))
            .collect();
        let update = |(chunk_idx, chunk): (usize, &mut [C])| {
            let start = chunk_idx * PAR_CHUNK;
            for local in (0..chunk.len()).rev() {
                let k = start + local;
                if k == 0 {
                    continue;
                }
                let (head, tail) = chunk.split_at_mut(local);
                let pred = if local > 0 {
                    &head[local - 1]
                } else {
                    boundaries[chunk_idx].as_ref().expect("boundary snapshot")
                };
                if k == c {
                    tail[0].add_assign_q(pred);
                } else {
                    tail[0].add_assign(pred);
                }
            }
        };
        if cells.len() > 2 * PAR_CHUNK {
            cells.par_chunks_mut(PAR_CHUNK).enumerate().for_each(update);
        } else {
            cells.chunks_mut(PAR_CHUNK).enumerate().for_each(update);
        }
        visit(m, &cells);
    }
}

/// `g[m1][m2]` by a row sweep over the rectangle `[0, m1] x [0, m2]`.
pub(crate) fn rectangle<C: Cell>(one: C, m1: usize, m2: usize) -> C {
    // row[b] = g[a][b] for the current a.
    let mut row = vec![one; m2 + 1];
    for a in 1..=m1 {
        for b in 0..=m2 {
            let zero = row[b].zero_like();
            let up = std::mem::replace(&mut row[b], zero);
            let (left, right) = row.split_at_mut(b);
            let cell = &mut right[0];
            if weighted(a, b) {
                cell.add_assign_q(&up);
            } else {
                cell.add_assign(&up);
            }
            if let Some(prev) = left.last() {
                cell.add_assign(prev);
            }
        }
    }
    row.swap_remove(m2)
}

/// Normalised floating version of [`rectangle`]: returns the law of the
/// weighted-step count, `g[m1][m2](q) / C(m1 + m2, m1)`, as a probability vector.
///
/// Working with probabilities (`a / (a+b)` and `b / (a+b)` transition weights)
/// keeps every entry in `[0, 1]`, so nothing overflows at any size.
pub(crate) fn rectangle_float(m1: usize, m2: usize) -> Vec<f64> {
    let mut row: Vec<Vec<f64>> = vec![vec![1.0]; m2 + 1];
    let mut scratch = Vec::new();
    for a in 1..=m1 {
        for b in 0..=m2 {
            let total = (a + b) as f64;
            let (pa, pb) = (a as f64 / total, b as f64 / total);
            let shift = usize::from(weighted(a, b));
            scratch.clear();
            let up = &row[b];
            let left_len = if b > 0 { row[b - 1].len() } else { 0 };
            scratch.resize((up.len() + shift).max(left_len), 0.0);
            for (k, &v) in up.iter().enumerate() {
                scratch[k + shift] = pa * v;
            }
            if b > 0 {
                for (k, &v) in row[b - 1].iter().enumerate() {
                    scratch[k] += pb * v;
                }
            }
            while scratch.len() > 1 && *scratch.last().unwrap() < f64::MIN_POSITIVE {
                scratch.pop();
            }
            std::mem::swap(&mut row[b], &mut scratch);
        }
    }
    row.swap_remove(m2)
}
