use std::collections::HashMap;

use riffle_core::rng::StreamFactory;
use riffle_core::shuffle::{enumerate_shuffles, interleave_into, sample_shuffle};
use riffle_core::strategy::{optimal_strategy, transition_prob, TransitionMatrix};
use riffle_core::DyadicProb;

#[test]
fn enumeration_structure() {
    for (n, distinct) in [(1usize, 1usize), (3, 5), (4, 12)] {
        let outcomes: Vec<_> = enumerate_shuffles(n).unwrap().collect();
        assert_eq!(outcomes.len(), 1 << n);
        let mut by_perm: HashMap<Vec<u32>, usize> = HashMap::new();
        for o in &outcomes {
            *by_perm.entry(o.permutation.labels().to_vec()).or_default() += 1;
        }
        assert_eq!(by_perm.len(), distinct, "n = {n}");
        let identity: Vec<u32> = (1..=n as u32).collect();
        assert_eq!(by_perm[&identity], n + 1);
        let total: DyadicProb = outcomes.iter().map(|o| o.weight.clone()).sum();
        assert_eq!(total, DyadicProb::one());
    }
}

#[test]
fn identity_multiplicity_up_to_enumeration_limit() {
    let mut deck = Vec::new();
    for n in 1..=20usize {
        let identity = (0..1u64 << n)
            .filter(|&w| {
                interleave_into(n, w, &mut deck);
                deck.iter().enumerate().all(|(p, &c)| c as usize == p + 1)
            })
            .count();
        assert_eq!(identity, n + 1, "n = {n}");
    }
}

#[test]
fn transition_probabilities_equal_enumeration_frequencies() {
    let mut deck = Vec::new();
    for n in 1..=20usize {
        // counts[i][j]: words placing card i + 1 at position j + 1
        let mut counts = vec![vec![0u64; n]; n];
        for w in 0..1u64 << n {
            interleave_into(n, w, &mut deck);
            for (p, &c) in deck.iter().enumerate() {
                counts[c as usize - 1][p] += 1;
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                let freq = DyadicProb::new(counts[i - 1][j - 1], n as u32);
                assert_eq!(transition_prob(n, i, j).unwrap(), freq, "n={n} i={i} j={j}");
            }
        }
    }
}

#[test]
fn transition_matrix_is_doubly_stochastic_and_symmetric() {
    for n in 1..=64usize {
        let m = TransitionMatrix::new(n).unwrap();
        for k in 1..=n {
            assert_eq!(m.row_sum(k), DyadicProb::one(), "n={n} row {k}");
            assert_eq!(m.column_sum(k), DyadicProb::one(), "n={n} column {k}");
        }
        for i in 1..=n {
            for j in 1..=n {
                assert_eq!(m.get(i, j), m.get(n + 1 - i, n + 1 - j));
            }
        }
    }
}

#[test]
fn canonical_strategy_is_positionwise_optimal() {
    for n in 1..=64usize {
        let g = optimal_strategy(n).unwrap();
        assert!(g.off_argmax().is_empty(), "n = {n}: {:?}", g.off_argmax());
        let m = TransitionMatrix::new(n).unwrap();
        for j in 1..=n {
            let best = (1..=n).map(|i| m.get(i, j)).max().unwrap();
            assert_eq!(m.get(g.guesses()[j - 1] as usize, j), best);
        }
    }
}

fn within(count: u64, total: u64, p: f64, k_sigma: f64) -> bool {
    let se = (p * (1.0 - p) / total as f64).sqrt();
    (count as f64 / total as f64 - p).abs() <= k_sigma * se
}

#[test]
fn sampler_matches_enumeration() {
    let samples = 1_000_000u64;
    for n in 1..=6usize {
        let factory = StreamFactory::new(90 + n as u64);
        let mut freq: HashMap<Vec<u32>, u64> = HashMap::new();
        for i in 0..samples {
            let p = sample_shuffle(n, &mut factory.stream(i)).unwrap();
            *freq.entry(p.labels().to_vec()).or_default() += 1;
        }
        let mut exact: HashMap<Vec<u32>, u64> = HashMap::new();
        for o in enumerate_shuffles(n).unwrap() {
            *exact.entry(o.permutation.labels().to_vec()).or_default() += 1;
        }
        assert!(freq.keys().all(|k| exact.contains_key(k)));
        for (perm, mult) in &exact {
            let p = *mult as f64 / (1u64 << n) as f64;
            let c = freq.get(perm).copied().unwrap_or(0);
            assert!(within(c, samples, p, 4.0), "n={n} {perm:?}: {c} vs p={p}");
        }
        if n == 3 {
            assert!(within(freq[&vec![2, 1, 3]], samples, 0.125, 3.0));
            assert!(within(freq[&vec![1, 2, 3]], samples, 0.5, 3.0));
        }
    }
}

#[test]
fn sampled_decks_have_at_most_two_rising_sequences() {
    let factory = StreamFactory::new(5);
    for i in 0..2000u64 {
        let n = 1 + (i as usize % 97);
        let p = sample_shuffle(n, &mut factory.stream(i)).unwrap();
        assert!(p.rising_sequences() <= 2);
    }
}
