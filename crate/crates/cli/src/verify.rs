//! Cross-route equivalence suites.

use riffle_core::exactdist::{self, linexp_fit, linexp_pair};
use riffle_core::genfunc::{fixed_difference_gf, kernel_identity_check, tilde_G_series};
use riffle_core::limitlaw::{limit_moment, limit_moment_closed_form};
use riffle_core::paths::y_oracle_pmf;
use riffle_core::{ExactEngine, QPolynomial, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    EnumVsLemma,
    DyckVsDp,
    KernelVsDp,
    MomentsVsLimit,
    Linexp,
    All,
}

#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    pub n_max: usize,
    pub size_max: usize,
    pub order: usize,
    pub n: usize,
    pub s_max: usize,
    pub total: usize,
}

pub struct Outcome {
    pub suite: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub fn run(suite: Suite, b: &Bounds) -> Result<Vec<Outcome>> {
    let all = [
        Suite::EnumVsLemma,
        Suite::DyckVsDp,
        Suite::KernelVsDp,
        Suite::MomentsVsLimit,
        Suite::Linexp,
    ];
    let selected: Vec<Suite> = if suite == Suite::All { all.to_vec() } else { vec![suite] };
    selected.into_iter().map(|s| run_one(s, b)).collect()
}

fn run_one(suite: Suite, b: &Bounds) -> Result<Outcome> {
    match suite {
        Suite::EnumVsLemma => enum_vs_lemma(b.n_max),
        Suite::DyckVsDp => dyck_vs_dp(b.size_max),
        Suite::KernelVsDp => kernel_vs_dp(b.order, b.size_max),
        Suite::MomentsVsLimit => moments_vs_limit(b.n, b.s_max),
        Suite::Linexp => linexp(b.total),
        Suite::All => unreachable!("expanded by run"),
    }
}

fn enum_vs_lemma(n_max: usize) -> Result<Outcome> {
    let mut bad = Vec::new();
    for n in 4..=n_max {
        if exactdist::pmf_x(n)? != exactdist::pmf_x_enumerated(n)? {
            bad.push(n);
        }
    }
    Ok(Outcome {
        suite: "enum-vs-lemma",
        passed: bad.is_empty(),
        detail: format!("n in 4..={n_max}, mismatches {bad:?}"),
    })
}

fn dyck_vs_dp(size_max: usize) -> Result<Outcome> {
    let mut checked = 0;
    let mut bad = Vec::new();
    for total in 1..=size_max {
        for m1 in 0..=total {
            let m2 = total - m1;
            let oracle = y_oracle_pmf(m1, m2)?.with_len(total + 1);
            let dp = exactdist::pmf_y(m1, m2)?.with_len(total + 1);
            checked += 1;
            if oracle != dp {
                bad.push((m1, m2));
            }
        }
    }
    Ok(Outcome {
        suite: "dyck-vs-dp",
        passed: bad.is_empty(),
        detail: format!("{checked} pairs with m1+m2 <= {size_max}, mismatches {bad:?}"),
    })
}

fn kernel_vs_dp(order: usize, size_max: usize) -> Result<Outcome> {
    let resolved = tilde_G_series(order)?;
    let diagonals = ExactEngine::default().g_diagonals(order.max(size_max))?;
    let mut bad = Vec::new();
    for (m, cells) in diagonals.iter().enumerate().take(order + 1) {
        for d in -(m as i64)..=m as i64 {
            let expected = if (m as i64 - d) % 2 == 0 {
                cells[((m as i64 - d) / 2) as usize].clone()
            } else {
                QPolynomial::default()
            };
            if resolved.coeff(m, d) != expected {
                bad.push(format!("G~[{m},{d}]"));
            }
        }
    }
    for d in 2..=4usize {
        let gf = fixed_difference_gf(d, size_max)?;
        for len in (d..=size_max).step_by(2) {
            let (m1, m2) = ((len + d) / 2, (len - d) / 2);
            let oracle = y_oracle_pmf(m1, m2)?;
            let counts = QPolynomial::from_unsigned(oracle.numerators().to_vec());
            if gf.coeff(len) != counts || counts != diagonals[len][m1] {
                bad.push(format!("G_{d}[{len}]"));
            }
        }
    }
    let kernel = kernel_identity_check(order)?;
    if !kernel.all_hold() {
        bad.push(format!("{kernel:?}"));
    }
    Ok(Outcome {
        suite: "kernel-vs-dp",
        passed: bad.is_empty(),
        detail: format!("order {order}, fixed differences 2..=4 up to length {size_max}, mismatches {bad:?}"),
    })
}

fn moments_vs_limit(n: usize, s_max: usize) -> Result<Outcome> {
    let sizes = [n / 16, n / 4, n];
    let tables = sizes
        .iter()
        .map(|&m| exactdist::moments(m.max(4), s_max))
        .collect::<Result<Vec<_>>>()?;
    let mut passed = true;
    let mut parts = Vec::new();
    for s in 1..=s_max {
        let mu = limit_moment(s as u32);
        if let Some(c) = limit_moment_closed_form(s as u32) {
            passed &= (c - mu).abs() <= 1e-12 * mu;
        }
        let errs: Vec<f64> = tables.iter().map(|t| (t.normalized_raw(s) - mu).abs() / mu).collect();
        passed &= errs.windows(2).all(|w| w[1] < w[0]);
        parts.push(format!("s={s}: {:.4}/{:.4}/{:.4}", errs[0], errs[1], errs[2]));
    }
    Ok(Outcome {
        suite: "moments-vs-limit",
        passed,
        detail: format!("relative errors at n = {sizes:?}: {}", parts.join(", ")),
    })
}

fn linexp(total: usize) -> Result<Outcome> {
    let mut passed = true;
    let mut parts = Vec::new();
    for t in [0.5, 1.0, 2.0] {
        let small = linexp_pair(total / 4, t);
        let large = linexp_pair(total, t);
        let a = linexp_fit(small.0, small.1)?.sup_distance;
        let b = linexp_fit(large.0, large.1)?.sup_distance;
        passed &= b < a;
        parts.push(format!("t={t}: {a:.4} -> {b:.4}"));
    }
    Ok(Outcome {
        suite: "linexp",
        passed,
        detail: format!("sup distance at m1+m2 ~ {} and {total}: {}", total / 4, parts.join(", ")),
    })
}
