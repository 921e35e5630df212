//! Position probabilities after one riffle, the canonical optimal guess
//! sequence and scoring.

use num_bigint::BigUint;
use num_traits::One;

use crate::arith::{binomial, binomial_row, DyadicProb};
use crate::error::{invalid, Error, Result};
use crate::shuffle::Permutation;

/// Probability that card `i` ends at position `j` in an `n`-card riffle.
pub fn transition_prob(n: usize, i: usize, j: usize) -> Result<DyadicProb> {
    if n == 0 || !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(invalid(format!("card {i}, position {j} outside 1..={n}")));
    }
    Ok(transition_unchecked(n, i, j))
}

fn transition_unchecked(n: usize, i: usize, j: usize) -> DyadicProb {
    use std::cmp::Ordering::*;
    match j.cmp(&i) {
        Equal => {
            let num = (BigUint::one() << (i - 1)) + (BigUint::one() << (n - i));
            DyadicProb::new(num, n as u32)
        }
        Less => DyadicProb::new(binomial((n - j) as u64, (i - j) as u64), (n - j + 1) as u32),
        Greater => transition_unchecked(n, n - i + 1, n - j + 1),
    }
}

/// Column `j` of the transition matrix: entry `i - 1` is `m[i][j]`.
pub fn transition_column(n: usize, j: usize) -> Result<Vec<DyadicProb>> {
    if n == 0 || !(1..=n).contains(&j) {
        return Err(invalid(format!("position {j} outside 1..={n}")));
    }
    // Above the diagonal the symmetry gives m[i][j] = C(j-1, j-i) / 2^j.
    let above = binomial_row(j - 1);
    let below = binomial_row(n - j);
    Ok((1..=n)
        .map(|i| {
            if i < j {
                DyadicProb::new(above[j - i].clone(), j as u32)
            } else if i == j {
                transition_unchecked(n, i, j)
            } else {
                DyadicProb::new(below[i - j].clone(), (n - j + 1) as u32)
            }
        })
        .collect())
}

/// Dense `n x n` matrix of exact position probabilities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    n: usize,
    // column-major: columns[j - 1][i - 1]
    columns: Vec<Vec<DyadicProb>>,
}

impl TransitionMatrix {
    pub fn new(n: usize) -> Result<Self> {
        let columns = (1..=n.max(1))
            .map(|j| transition_column(n, j))
            .collect::<Result<_>>()?;
        Ok(TransitionMatrix { n, columns })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `m[i][j]`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &DyadicProb {
        &self.columns[j - 1][i - 1]
    }

    pub fn column(&self, j: usize) -> &[DyadicProb] {
        &self.columns[j - 1]
    }

    pub fn row_sum(&self, i: usize) -> DyadicProb {
        self.columns.iter().map(|c| c[i - 1].clone()).sum()
    }

    pub fn column_sum(&self, j: usize) -> DyadicProb {
        self.columns[j - 1].iter().cloned().sum()
    }
}

/// A fixed, feedback-free guess for every position, with the sets of equally
/// optimal guesses when they have been computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuessSequence {
    guesses: Vec<u32>,
    optimal_sets: Vec<Vec<u32>>,
    off_argmax: Vec<usize>,
}

impl GuessSequence {
    /// Wraps an arbitrary guess sequence; no optimality information attached.
    pub fn from_guesses(guesses: Vec<u32>) -> Self {
        GuessSequence {
            guesses,
            optimal_sets: Vec::new(),
            off_argmax: Vec::new(),
        }
    }

    /// The canonical optimal sequence: `1, 2, 2, 3, 3, ...` over the top
    /// `ceil(n/2)` positions, mirrored as `..., n-1, n-1, n` over the rest.
    pub fn canonical(n: usize) -> Self {
        Self::from_guesses(canonical_guesses(n))
    }

    pub fn guesses(&self) -> &[u32] {
        &self.guesses
    }

    pub fn len(&self) -> usize {
        self.guesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.guesses.is_empty()
    }

    /// `S_j`: every label attaining `max_i m[i][j]` (empty if not computed).
    pub fn optimal_sets(&self) -> &[Vec<u32>] {
        &self.optimal_sets
    }

    /// Positions (1-based) whose guess is not in the argmax set. Empty means
    /// the sequence is optimal position by position.
    pub fn off_argmax(&self) -> &[usize] {
        &self.off_argmax
    }
}

pub fn canonical_guesses(n: usize) -> Vec<u32> {
    let h = n.div_ceil(2);
    let top = (1..=h).map(|j| (j / 2 + 1) as u32);
    let bottom = (h + 1..=n).map(|j| (n + 1 - ((n + 1 - j) / 2 + 1)) as u32);
    top.chain(bottom).collect()
}

/// The canonical optimal strategy together with the exact argmax sets `S_j`.
///
/// The canonical guess is checked against every column of the transition
/// matrix; positions where it is not a maximiser are reported through
/// [`GuessSequence::off_argmax`] rather than silently accepted.
pub fn optimal_strategy(n: usize) -> Result<GuessSequence> {
    if n == 0 {
        return Err(invalid("deck size must be at least 1"));
    }
    let guesses = canonical_guesses(n);
    let mut optimal_sets = Vec::with_capacity(n);
    let mut off_argmax = Vec::new();
    for j in 1..=n {
        let column = transition_column(n, j)?;
        let best = column.iter().max().expect("nonempty column");
        let set: Vec<u32> = column
            .iter()
            .enumerate()
            .filter(|(_, p)| *p == best)
            .map(|(i, _)| i as u32 + 1)
            .collect();
        if !set.contains(&guesses[j - 1]) {
            off_argmax.push(j);
        }
        optimal_sets.push(set);
    }
    Ok(GuessSequence {
        guesses,
        optimal_sets,
        off_argmax,
    })
}

/// Number of positions where the guess equals the card.
pub fn score(strategy: &GuessSequence, deck: &Permutation) -> Result<usize> {
    if strategy.len() != deck.len() {
        return Err(Error::LengthMismatch {
            expected: strategy.len(),
            actual: deck.len(),
        });
    }
    Ok(count_matches(strategy.guesses(), deck.labels()))
}

#[inline]
pub(crate) fn count_matches(guesses: &[u32], labels: &[u32]) -> usize {
    guesses.iter().zip(labels).filter(|(g, l)| g == l).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transition_examples() {
        assert_eq!(transition_prob(4, 1, 1).unwrap(), DyadicProb::new(9u32, 4));
        assert_eq!(transition_prob(4, 3, 1).unwrap(), DyadicProb::new(3u32, 4));
        assert!(transition_prob(4, 0, 1).is_err());
        assert!(transition_prob(4, 1, 5).is_err());
        for n in 1..=9 {
            let s: DyadicProb = (1..=n).map(|i| transition_prob(n, i, 1).unwrap()).sum();
            assert_eq!(s, DyadicProb::one());
        }
    }

    #[test]
    fn column_matches_pointwise_formula() {
        for n in 1..=12 {
            for j in 1..=n {
                let col = transition_column(n, j).unwrap();
                for i in 1..=n {
                    assert_eq!(col[i - 1], transition_prob(n, i, j).unwrap(), "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn canonical_sequences() {
        assert_eq!(canonical_guesses(1), vec![1]);
        assert_eq!(canonical_guesses(3), vec![1, 2, 3]);
        assert_eq!(canonical_guesses(4), vec![1, 2, 3, 4]);
        assert_eq!(canonical_guesses(7), vec![1, 2, 2, 3, 6, 6, 7]);
        assert_eq!(canonical_guesses(8), vec![1, 2, 2, 3, 6, 7, 7, 8]);
    }

    #[test]
    fn optimal_strategy_small_decks() {
        assert_eq!(optimal_strategy(3).unwrap().guesses(), &[1, 2, 3]);
        assert_eq!(optimal_strategy(4).unwrap().guesses(), &[1, 2, 3, 4]);
        let s8 = optimal_strategy(8).unwrap();
        assert_eq!(s8.guesses(), &[1, 2, 2, 3, 6, 7, 7, 8]);
        assert!(s8.off_argmax().is_empty());
        assert_eq!(s8.optimal_sets()[3], vec![2, 3, 6]);
        assert!(optimal_strategy(0).is_err());
    }

    #[test]
    fn scoring() {
        let g3 = GuessSequence::canonical(3);
        let g4 = GuessSequence::canonical(4);
        assert_eq!(score(&g3, &Permutation::new(vec![2, 3, 1]).unwrap()).unwrap(), 0);
        assert_eq!(score(&g4, &Permutation::new(vec![1, 3, 2, 4]).unwrap()).unwrap(), 2);
        for n in 1..=4 {
            let g = GuessSequence::canonical(n);
            assert_eq!(score(&g, &Permutation::identity(n)).unwrap(), n);
        }
        assert!(matches!(
            score(&g3, &Permutation::identity(4)),
            Err(Error::LengthMismatch { expected: 3, actual: 4 })
        ));
    }
}
