use num_bigint::BigInt;
use num_traits::One;

use riffle_core::arith::binomial;
use riffle_core::exactdist::ExactEngine;
use riffle_core::genfunc::{
    catalan_series, fixed_difference_gf, kernel_identity_check, singular_coefficient_asymptotics,
    tilde_G_series, tilde_g_series,
};
use riffle_core::paths::y_oracle_pmf;
use riffle_core::QPolynomial;

#[test]
fn tilde_g_matches_taylor_coefficients_of_the_recurrence() {
    let g = tilde_g_series(30, 5).unwrap();
    let dp = ExactEngine::default().diagonal_taylor_sums(30, 5).unwrap();
    for (m, row) in dp.iter().enumerate() {
        for (s, c) in row.iter().enumerate() {
            assert_eq!(g.coeff(s, m), BigInt::from(c.clone()), "[w^{s} z^{m}]");
        }
        assert_eq!(g.coeff(0, m), BigInt::one() << m);
    }
    // Same thing via full polynomials expanded at q = 1.
    let sums = ExactEngine::default().diagonal_sums(30).unwrap();
    for (m, p) in sums.iter().enumerate() {
        let expanded = p.expand_at_one(5);
        for (s, c) in expanded.iter().enumerate() {
            assert_eq!(&g.coeff(s, m), c);
        }
    }
}

#[test]
fn total_mass_term() {
    let g = tilde_g_series(101, 0).unwrap();
    for n in [4usize, 9, 50, 101] {
        let h = n.div_ceil(2);
        assert_eq!(g.coeff(0, h) * g.coeff(0, n - h), BigInt::one() << n);
    }
}

#[test]
fn resolved_series_matches_recurrence_on_the_triangle() {
    let order = 24;
    let g = tilde_G_series(order).unwrap();
    let diagonals = ExactEngine::default().g_diagonals(order).unwrap();
    for m in 0..=order {
        for d in -(m as i64) - 2..=m as i64 + 2 {
            let expected = if d.abs() <= m as i64 && (m as i64 - d) % 2 == 0 {
                diagonals[m][((m as i64 - d) / 2) as usize].clone()
            } else {
                QPolynomial::default()
            };
            assert_eq!(g.coeff(m, d), expected, "[z^{m} u^{d}]");
        }
    }
}

#[test]
fn fixed_difference_matches_oracle_and_path_counts() {
    for d in 2..=5usize {
        let gf = fixed_difference_gf(d, 16).unwrap();
        for len in 0..=16usize {
            let c = gf.coeff(len);
            if len < d || (len - d) % 2 == 1 {
                assert_eq!(c, QPolynomial::default());
                continue;
            }
            let (m1, m2) = ((len + d) / 2, (len - d) / 2);
            let oracle = y_oracle_pmf(m1, m2).unwrap();
            assert_eq!(c, QPolynomial::from_unsigned(oracle.numerators().to_vec()));
            assert_eq!(c.eval_one(), BigInt::from(binomial(len as u64, m1 as u64)));
        }
    }
    // d = 3 at z^5 is (4, 1)
    let gf = fixed_difference_gf(3, 5).unwrap();
    assert_eq!(gf.coeff(5).eval_one(), BigInt::from(5));
}

#[test]
fn catalan_and_kernel_identities_to_order_200() {
    assert!(catalan_series(100).unwrap().satisfies_defining_equation());
    assert!(kernel_identity_check(200).unwrap().all_hold());
    assert_eq!(catalan_series(3).unwrap().coeff(3), BigInt::from(2));
}

#[test]
fn singular_main_term_tracks_exact_coefficients() {
    let g = tilde_g_series(1000, 2).unwrap();
    let r2 = g.singular_ratio(2, 1000);
    assert!((r2 - 1.0).abs() <= 0.10, "{r2}");
    let (a, b) = (g.singular_ratio(1, 400), g.singular_ratio(1, 800));
    assert!((0.9..=1.1).contains(&a) && (b - 1.0).abs() < (a - 1.0).abs(), "{a} {b}");
    assert_eq!(singular_coefficient_asymptotics(0, 20), 1_048_576.0);
    assert_eq!(g.singular_ratio(0, 777), 1.0);
}
