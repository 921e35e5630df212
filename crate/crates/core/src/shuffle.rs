//! Gilbert–Shannon–Reeds riffle shuffle: cut law, sampler and exhaustive
//! enumerator.
//!
//! Each of the `2^n` equally likely outcomes is encoded by an `n`-bit word: bit
//! `p` (0-based, position `p + 1` counted from the top) says whether the card at
//! that position comes from the first packet. The number of set bits is the cut,
//! and for a fixed cut `k` the `C(n, k)` words with `k` set bits are exactly the
//! interleavings, so every word carries weight `1 / 2^n`.

use std::ops::Range;

use num_bigint::BigUint;
use num_traits::One;
use rand_core::RngCore;

use crate::arith::{binomial_row, DyadicProb};
use crate::error::{check_capacity, invalid, Result};
use crate::pmf::ExactPmf;
use crate::rng::below;

/// Largest deck size accepted by [`enumerate_shuffles`] by default.
pub const DEFAULT_MAX_ENUM: usize = 20;

/// Hard ceiling for the word encoding.
pub const WORD_BITS_LIMIT: usize = 40;

/// A deck arrangement: `labels[p]` is the card at position `p + 1` (top first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(labels: Vec<u32>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(invalid("empty permutation"));
        }
        let mut seen = vec![false; n];
        for &l in &labels {
            let idx = (l as usize)
                .checked_sub(1)
                .filter(|&i| i < n)
                .ok_or_else(|| invalid(format!("label {l} outside 1..={n}")))?;
            if std::mem::replace(&mut seen[idx], true) {
                return Err(invalid(format!("label {l} repeated")));
            }
        }
        Ok(Permutation(labels))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn labels(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(p, &l)| l as usize == p + 1)
    }

    /// Number of rising sequences: maximal runs of consecutive labels
    /// `i, i+1, ...` that appear in increasing positions. A single riffle
    /// produces at most two.
    pub fn rising_sequences(&self) -> usize {
        let mut pos = vec![0usize; self.0.len() + 1];
        for (p, &l) in self.0.iter().enumerate() {
            pos[l as usize] = p;
        }
        1 + (1..self.0.len()).filter(|&i| pos[i + 1] < pos[i]).count()
    }
}

/// One `(cut, interleaving)` pair and its probability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleOutcome {
    pub cut: usize,
    pub permutation: Permutation,
    pub weight: DyadicProb,
}

/// `P{Cut = k} = C(n, k) / 2^n` for `k = 0..=n`.
pub fn cut_pmf(n: usize) -> Result<ExactPmf> {
    if n == 0 {
        return Err(invalid("deck size must be at least 1"));
    }
    ExactPmf::new(binomial_row(n), BigUint::one() << n)
}

/// Writes the deck encoded by `word` into `out` and returns the cut.
pub fn interleave_into(n: usize, word: u64, out: &mut Vec<u32>) -> usize {
    debug_assert!(n <= 64);
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let cut = (word & mask).count_ones() as usize;
    out.clear();
    let (mut first, mut second) = (1u32, cut as u32 + 1);
    for p in 0..n {
        if word >> p & 1 == 1 {
            out.push(first);
            first += 1;
        } else {
            out.push(second);
            second += 1;
        }
    }
    cut
}

/// Decodes one outcome word.
pub fn outcome_from_word(n: usize, word: u64) -> ShuffleOutcome {
    let mut labels = Vec::with_capacity(n);
    let cut = interleave_into(n, word, &mut labels);
    ShuffleOutcome {
        cut,
        permutation: Permutation(labels),
        weight: DyadicProb::new(1u32, n as u32),
    }
}

/// Iterator over all `2^n` outcomes (or a sub-range of words).
#[derive(Clone, Debug)]
pub struct ShuffleOutcomes {
    n: usize,
    words: Range<u64>,
}

impl ShuffleOutcomes {
    /// The outcomes whose words lie in `range`, for range-partitioned workers.
    pub fn range(n: usize, range: Range<u64>) -> Result<Self> {
        check_capacity("enumeration deck size", n, WORD_BITS_LIMIT)?;
        if range.end > 1u64 << n {
            return Err(invalid("word range beyond 2^n"));
        }
        Ok(ShuffleOutcomes { n, words: range })
    }
}

impl Iterator for ShuffleOutcomes {
    type Item = ShuffleOutcome;

    fn next(&mut self) -> Option<ShuffleOutcome> {
        self.words.next().map(|w| outcome_from_word(self.n, w))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.words.size_hint()
    }
}

impl ExactSizeIterator for ShuffleOutcomes {}

/// All `2^n` equally likely outcomes, `1 <= n <= DEFAULT_MAX_ENUM`.
pub fn enumerate_shuffles(n: usize) -> Result<ShuffleOutcomes> {
    enumerate_shuffles_with_limit(n, DEFAULT_MAX_ENUM)
}

pub fn enumerate_shuffles_with_limit(n: usize, limit: usize) -> Result<ShuffleOutcomes> {
    if n == 0 {
        return Err(invalid("deck size must be at least 1"));
    }
    check_capacity("enumeration deck size", n, limit.min(WORD_BITS_LIMIT))?;
    ShuffleOutcomes::range(n, 0..1u64 << n)
}

/// Draws one riffle shuffle of an `n`-card deck.
///
/// Draw plan (fixed, so streams stay aligned): `ceil(n / 64)` words whose low
/// `n` bits are fair coins for the cut, then one word per card for the
/// interleaving. The interleaving moves cards from the bottoms of the packets
/// onto the new pile, choosing packet one with probability `m1 / (m1 + m2)`.
pub fn sample_shuffle<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Result<Permutation> {
    if n == 0 {
        return Err(invalid("deck size must be at least 1"));
    }
    let mut labels = Vec::with_capacity(n);
    sample_shuffle_into(n, rng, &mut labels);
    Ok(Permutation(labels))
}

/// Allocation-free form of [`sample_shuffle`]; `n` must be positive.
pub fn sample_shuffle_into<R: RngCore + ?Sized>(n: usize, rng: &mut R, out: &mut Vec<u32>) {
    let mut cut = 0usize;
    let mut remaining = n;
    while remaining > 0 {
        let take = remaining.min(64);
        let word = rng.next_u64();
        let bits = if take == 64 { word } else { word & ((1u64 << take) - 1) };
        cut += bits.count_ones() as usize;
        remaining -= take;
    }

    out.clear();
    out.resize(n, 0);
    let (mut m1, mut m2) = (cut, n - cut);
    for slot in (0..n).rev() {
        if below(rng, (m1 + m2) as u64) < m1 as u64 {
            out[slot] = m1 as u32;
            m1 -= 1;
        } else {
            out[slot] = (cut + m2) as u32;
            m2 -= 1;
        }
    }
}
