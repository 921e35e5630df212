//! Acceptance criteria, one test each. Every test prints a single
//! `ACCEPTANCE <id> PASS|FAIL <title>: <measurements>` line before asserting.
//! Run with `cargo test -p riffle-oracle --test acceptance -- --nocapture --test-threads 1`.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use riffle_core::exactdist::{self, linexp_fit_at, linexp_pair};
use riffle_core::genfunc::{fixed_difference_gf, tilde_G_series, tilde_g_series};
use riffle_core::limitlaw::{
    limit_cdf, limit_density, limit_density_erf, limit_moment, limit_moment_closed_form,
    moment_form_4l, quad::integrate,
};
use riffle_core::paths::y_oracle_pmf;
use riffle_core::{ExactEngine, ExactPmf, QPolynomial};

fn verdict(id: u32, title: &str, pass: bool, started: Instant, detail: &str) {
    println!(
        "ACCEPTANCE {id:>2} {} {title} [{:.1}s]: {detail}",
        if pass { "PASS" } else { "FAIL" },
        started.elapsed().as_secs_f64()
    );
    assert!(pass, "acceptance {id} failed: {detail}");
}

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_riffle-oracle")
}

fn simulate(dir: &Path, n: usize, samples: u64, seed: u64, workers: usize) -> (String, String) {
    let status = Command::new(exe())
        .args(["simulate", "--quiet", "--n", &n.to_string(), "--samples", &samples.to_string()])
        .args(["--seed", &seed.to_string(), "--workers", &workers.to_string()])
        .arg("--out")
        .arg(dir)
        .status()
        .expect("run riffle-oracle");
    assert!(status.success(), "simulate exited with {status}");
    (
        std::fs::read_to_string(dir.join("hist.csv")).unwrap(),
        std::fs::read_to_string(dir.join("fit.csv")).unwrap(),
    )
}

fn fit_value(fit: &str, name: &str) -> f64 {
    fit.lines()
        .find_map(|l| l.strip_prefix(&format!("{name},")))
        .unwrap_or_else(|| panic!("{name} missing from fit.csv"))
        .parse()
        .unwrap()
}

fn rat(a: u32, b: u32) -> String {
    if a == 0 {
        "0".into()
    } else {
        format!("{a}/{b}")
    }
}

#[test]
fn acceptance_01_small_tables() {
    let t = Instant::now();
    let p3 = exactdist::pmf_x(3).unwrap();
    let p4 = exactdist::pmf_x(4).unwrap();
    let want3 = [rat(1, 4), rat(1, 4), rat(0, 1), rat(1, 2)];
    let want4 = [rat(1, 4), rat(1, 4), rat(3, 16), rat(0, 1), rat(5, 16)];
    let got3: Vec<String> = (0..=3).map(|k| p3.prob(k).to_string()).collect();
    let got4: Vec<String> = (0..=4).map(|k| p4.prob(k).to_string()).collect();
    let pass = got3 == want3 && got4 == want4;
    verdict(1, "exact small-n tables", pass, t, &format!("X_3 (k=0..3) {got3:?}; X_4 (k=0..4) {got4:?}"));
}

#[test]
fn acceptance_02_enumeration_vs_lemma() {
    let t = Instant::now();
    let bad: Vec<usize> = (4..=16)
        .filter(|&n| exactdist::pmf_x(n).unwrap() != exactdist::pmf_x_enumerated(n).unwrap())
        .collect();
    verdict(2, "route equivalence enumeration vs closed form", bad.is_empty(), t, &format!("n = 4..=16, mismatching n: {bad:?}"));
}

#[test]
fn acceptance_03_bijection_oracle() {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut pairs = 0;
    for total in 1..=14usize {
        for m1 in 0..=total {
            let m2 = total - m1;
            let oracle = y_oracle_pmf(m1, m2).unwrap().with_len(total + 1);
            let dp = exactdist::pmf_y(m1, m2).unwrap().with_len(total + 1);
            pairs += 1;
            if oracle != dp {
                bad.push((m1, m2));
            }
        }
    }
    verdict(3, "Dyck-path oracle vs recurrence", bad.is_empty(), t, &format!("{pairs} pairs, mismatches {bad:?}"));
}

#[test]
fn acceptance_04_kernel_closed_form() {
    let t = Instant::now();
    let order = 20;
    let resolved = tilde_G_series(order).unwrap();
    let diagonals = ExactEngine::default().g_diagonals(order).unwrap();
    let mut bad = Vec::new();
    let mut cells = 0;
    for m in 0..=order {
        for d in -(m as i64)..=m as i64 {
            let expected = if (m as i64 - d) % 2 == 0 {
                diagonals[m][((m as i64 - d) / 2) as usize].clone()
            } else {
                QPolynomial::default()
            };
            cells += 1;
            if resolved.coeff(m, d) != expected {
                bad.push(format!("[z^{m} u^{d}]"));
            }
        }
    }
    let mut fixed = 0;
    for d in 2..=4usize {
        let gf = fixed_difference_gf(d, 14).unwrap();
        for len in 0..=14usize {
            let expected = if len >= d && (len - d) % 2 == 0 {
                let oracle: ExactPmf = y_oracle_pmf((len + d) / 2, (len - d) / 2).unwrap();
                QPolynomial::from_unsigned(oracle.numerators().to_vec())
            } else {
                QPolynomial::default()
            };
            fixed += 1;
            if gf.coeff(len) != expected {
                bad.push(format!("G_{d}[z^{len}]"));
            }
        }
    }
    verdict(
        4,
        "kernel-method closed forms",
        bad.is_empty(),
        t,
        &format!("{cells} u-resolved cells at order {order}, {fixed} fixed-difference coefficients, mismatches {bad:?}"),
    );
}

#[test]
fn acceptance_05_singular_asymptotics() {
    let t = Instant::now();
    let g = tilde_g_series(2000, 4).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for s in 0..=4usize {
        let r1 = g.singular_ratio(s, 1000);
        let r2 = g.singular_ratio(s, 2000);
        let ok = (0.9..=1.1).contains(&r1) && (r2 - 1.0).abs() <= (r1 - 1.0).abs();
        pass &= ok;
        parts.push(format!("s={s}: {r1:.4} -> {r2:.4}{}", if ok { "" } else { " (out)" }));
    }
    verdict(5, "singular coefficient asymptotics, ratio at n=1000 in [0.9,1.1], closer at 2000", pass, t, &parts.join(", "));
}

#[test]
fn acceptance_06_moment_convergence() {
    let t = Instant::now();
    let sizes = [256usize, 1024, 4096];
    let tables: Vec<_> = sizes.iter().map(|&n| exactdist::moments(n, 5).unwrap()).collect();
    let mut pass = true;
    let mut parts = Vec::new();
    for s in 1..=5usize {
        let mu = limit_moment(s as u32);
        let closed = limit_moment_closed_form(s as u32).unwrap();
        let closed_ok = (mu - closed).abs() <= 1e-12 * closed;
        let errs: Vec<f64> = tables.iter().map(|m| (m.normalized_raw(s) - mu).abs()).collect();
        let scaled: Vec<f64> = errs.iter().zip(sizes).map(|(e, n)| e / ((n as f64).powf(-0.5) * mu)).collect();
        let within = scaled.iter().all(|&x| x <= 3.0);
        let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
        pass &= closed_ok && within && decreasing;
        parts.push(format!(
            "s={s}: err/(mu n^-1/2) = {:.2}/{:.2}/{:.2}{}{}",
            scaled[0],
            scaled[1],
            scaled[2],
            if decreasing { "" } else { " (not decreasing)" },
            if closed_ok { "" } else { " (closed form mismatch)" }
        ));
    }
    let printed_mu2 = 2.0 / PI.sqrt() + 1.0;
    parts.push(format!(
        "diagnostic: printed mu~_2 = 2/sqrt(pi)+1 = {printed_mu2:.6} vs sum formula {:.6}",
        limit_moment(2)
    ));
    verdict(6, "moment convergence at n = 256, 1024, 4096 (bound 3 mu n^-1/2)", pass, t, &parts.join("; "));
}

#[test]
fn acceptance_07_four_l_forms() {
    let t = Instant::now();
    let l = 500;
    let m = exactdist::moments(4 * l, 5).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for s in 1..=5usize {
        let ratio = m.raw_f64(s) / moment_form_4l(l, s as u32).unwrap();
        let ok = if s == 1 { (0.98..=1.02).contains(&ratio) } else { (ratio - 1.0).abs() <= 0.05 };
        pass &= ok;
        parts.push(format!("s={s}: {ratio:.5}{}", if ok { "" } else { " (out)" }));
    }
    verdict(7, "n=4L leading forms at L=500 (s=1 within 2%, s=2..5 within 5%)", pass, t, &parts.join(", "));
}

#[test]
fn acceptance_08_limit_law_analytics() {
    let t = Instant::now();
    let total = integrate(limit_density, 0.0, 12.0, 1e-12);
    let peak = limit_density(2.0 / PI.sqrt());
    let mut worst_moment = 0.0f64;
    for s in 0..=8u32 {
        let upper = 8.0 + (2.0 * s as f64).sqrt();
        let m = integrate(|x| x.powi(s as i32) * limit_density(x), 0.0, upper, 1e-10);
        worst_moment = worst_moment.max((m - limit_moment(s)).abs());
    }
    let worst_forms = (0..10_000)
        .map(|i| {
            let x = i as f64 * 1e-3;
            (limit_density(x) - limit_density_erf(x)).abs()
        })
        .fold(0.0f64, f64::max);
    let cdf_gap = (limit_cdf(3.0) - integrate(limit_density, 0.0, 3.0, 1e-13)).abs();
    let pass = (total - 1.0).abs() <= 1e-10
        && (peak - 0.62548).abs() <= 5e-5
        && worst_moment <= 1e-6
        && worst_forms <= 1e-12;
    verdict(
        8,
        "limit-law analytics",
        pass,
        t,
        &format!(
            "|int f - 1| = {:.1e}, f(2/sqrt pi) = {peak:.7}, max moment error {worst_moment:.1e}, max form gap {worst_forms:.1e}, cdf vs integral at 3: {cdf_gap:.1e}",
            (total - 1.0).abs()
        ),
    );
}

#[test]
fn acceptance_09_linexp_convergence() {
    let t = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for drift in [0.5, 1.0, 2.0] {
        let (m1, m2) = linexp_pair(1800, drift);
        let fit = linexp_fit_at(m1, m2, drift).unwrap();
        let ok = fit.sup_distance <= 0.06;
        pass &= ok;
        parts.push(format!(
            "t={drift} (m1={m1}, m2={m2}): {:.4}{}",
            fit.sup_distance,
            if ok { "" } else { " (out)" }
        ));
    }
    verdict(9, "LinExp convergence, sup distance <= 0.06", pass, t, &parts.join(", "));
}

#[test]
fn acceptance_10_monte_carlo_vs_limit() {
    let t = Instant::now();
    let dirs: Vec<_> = (0..4).map(|_| tempfile::tempdir().unwrap()).collect();
    let (hist_a, fit_a) = simulate(dirs[0].path(), 5000, 100_000, 2024, 1);
    let (hist_b, fit_b) = simulate(dirs[1].path(), 5000, 100_000, 2024, 4);
    let (hist_c, fit_c) = simulate(dirs[2].path(), 8, 1_000_000, 7, 1);
    let (hist_d, fit_d) = simulate(dirs[3].path(), 8, 1_000_000, 7, 3);
    let ks = fit_value(&fit_a, "ks_to_limit");
    let tv = fit_value(&fit_c, "tv_to_exact");
    let identical = hist_a == hist_b && fit_a == fit_b && hist_c == hist_d && fit_c == fit_d;
    let pass = ks <= 0.02 && tv <= 0.01 && identical;
    verdict(
        10,
        "Monte Carlo vs limit and exact laws, worker-count determinism",
        pass,
        t,
        &format!("n=5000 N=1e5 KS = {ks:.5}; n=8 N=1e6 TV = {tv:.5}; byte-identical across workers: {identical}"),
    );
}

#[test]
fn acceptance_11_paper_scale_figures() {
    let t = Instant::now();
    let d200 = tempfile::tempdir().unwrap();
    let d1000 = tempfile::tempdir().unwrap();
    let (hist200, fit200) = simulate(d200.path(), 200, 50_000, 1, 0);
    let (_, fit1000) = simulate(d1000.path(), 1000, 50_000, 1, 0);
    let total: u64 = hist200.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap()).sum();
    let ks200 = fit_value(&fit200, "ks_to_limit");
    let ks1000 = fit_value(&fit1000, "ks_to_limit");
    let pass = total == 50_000 && ks200 <= 0.08 && ks1000 <= 0.04;
    verdict(
        11,
        "simulated histograms vs limit law at n=200, 1000 (N=50000)",
        pass,
        t,
        &format!("KS n=200: {ks200:.4} (<= 0.08), n=1000: {ks1000:.4} (<= 0.04), counts sum {total}"),
    );
}
