use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use riffle_core::arith::binomial;
use riffle_core::exactdist::{self, ExactEngine};
use riffle_core::paths::y_oracle_pmf;

#[test]
fn g_at_one_is_binomial_up_to_400() {
    let diagonals = ExactEngine::default().g_diagonals(400).unwrap();
    for (m, cells) in diagonals.iter().enumerate() {
        for (m1, g) in cells.iter().enumerate() {
            assert!(g.is_nonnegative());
            assert_eq!(g.eval_one(), BigInt::from(binomial(m as u64, m1 as u64)), "({m1}, {})", m - m1);
        }
    }
}

#[test]
fn deck_polynomial_is_a_pmf_numerator_for_4_to_200() {
    for n in 4..=200usize {
        let f = exactdist::f_poly(n).unwrap();
        assert!(f.is_nonnegative(), "n = {n}");
        assert_eq!(f.eval_one(), BigInt::one() << n);
    }
}

#[test]
fn closed_form_equals_enumeration_for_4_to_16() {
    for n in 4..=16 {
        assert_eq!(exactdist::pmf_x(n).unwrap(), exactdist::pmf_x_enumerated(n).unwrap(), "n = {n}");
    }
}

#[test]
fn small_deck_routes_and_n8() {
    // n <= 3 goes through enumeration, and the closed form refuses it.
    assert!(exactdist::f_poly(3).is_err());
    let p8 = exactdist::pmf_x(8).unwrap();
    let e8 = exactdist::pmf_x_enumerated(8).unwrap();
    assert_eq!(p8, e8);
    assert_eq!(p8.denominator(), &BigUint::from(256u32));
}

#[test]
fn recurrence_equals_dyck_oracle() {
    for total in 1..=14usize {
        for m1 in 0..=total {
            let m2 = total - m1;
            let a = exactdist::pmf_y(m1, m2).unwrap().with_len(total + 1);
            let b = y_oracle_pmf(m1, m2).unwrap().with_len(total + 1);
            assert_eq!(a, b, "({m1}, {m2})");
        }
    }
}

#[test]
fn first_moment_is_the_mean() {
    for n in [1usize, 2, 3, 4, 7, 20, 99, 150] {
        let raw = exactdist::raw_moments(n, 1).unwrap();
        assert_eq!(raw[1], exactdist::pmf_x(n).unwrap().mean(), "n = {n}");
        assert_eq!(raw[0], BigRational::one());
    }
}

#[test]
fn second_moment_at_2000() {
    // Limit value 1 + 2/pi for E(X_n^2) / n.
    let m = exactdist::moments(2000, 2).unwrap();
    let target = 1.0 + 2.0 / std::f64::consts::PI;
    let ratio = m.normalized_raw(2);
    assert!((ratio / target - 1.0).abs() <= 0.10, "{ratio}");
}

#[test]
fn floating_law_agrees_with_exact_law() {
    for (m1, m2) in [(1, 0), (0, 1), (13, 2), (50, 50), (120, 80), (80, 120), (300, 260)] {
        let exact = exactdist::pmf_y(m1, m2).unwrap().to_f64();
        let float = exactdist::pmf_y_float(m1, m2).unwrap();
        let gap = riffle_core::pmf::sup_distance(&exact, &float);
        assert!(gap <= 1e-12, "({m1}, {m2}): {gap}");
    }
}
