//! The limit law of `X_n / sqrt(n)`: the sum `H1 + H2` of two independent
//! half-normal variables with density `(2/sqrt(pi)) e^{-x^2}`; the
//! linear-exponential law of the half-deck statistic; asymptotic moment forms.

pub mod quad;

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

/// A continuous law on `[0, inf)` given by its distribution function.
pub trait Cdf {
    fn cdf(&self, x: f64) -> f64;
}

/// `Gamma(k / 2)` for `k >= 1`, from `Gamma(1/2) = sqrt(pi)`, `Gamma(1) = 1`
/// and `Gamma(x + 1) = x Gamma(x)`.
pub fn gamma_half(k: u32) -> f64 {
    assert!(k >= 1, "Gamma(0) is undefined");
    let (mut value, mut x) = if k % 2 == 1 { (PI.sqrt(), 0.5) } else { (1.0, 1.0) };
    while 2.0 * x < k as f64 {
        value *= x;
        x += 1.0;
    }
    value
}

/// `E(H^s) = Gamma((s+1)/2) / sqrt(pi)`.
pub fn half_normal_moment(s: u32) -> f64 {
    gamma_half(s + 1) / PI.sqrt()
}

/// `E((H1 + H2)^s) = sum_k C(s, k) E(H^k) E(H^{s-k})`.
pub fn limit_moment(s: u32) -> f64 {
    let mut binom = 1.0;
    let mut total = 0.0;
    for k in 0..=s {
        total += binom * half_normal_moment(k) * half_normal_moment(s - k);
        binom = binom * (s - k) as f64 / (k + 1) as f64;
    }
    total
}

/// Closed forms of the first five limit moments.
pub fn limit_moment_closed_form(s: u32) -> Option<f64> {
    let rp = PI.sqrt();
    match s {
        0 => Some(1.0),
        1 => Some(2.0 / rp),
        2 => Some(1.0 + 2.0 / PI),
        3 => Some(5.0 / rp),
        4 => Some(8.0 / PI + 3.0),
        5 => Some(43.0 / (2.0 * rp)),
        _ => None,
    }
}

/// Standard normal density.
pub fn phi(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Standard normal distribution function, `erfc(-x / sqrt 2) / 2`.
pub fn big_phi(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

/// `f(x) = 4 phi(x) (2 Phi(x) - 1)` on `x >= 0`, zero below.
pub fn limit_density(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    4.0 * phi(x) * (2.0 * big_phi(x) - 1.0)
}

/// The same density as `(2 sqrt 2 / sqrt pi) e^{-x^2/2} erf(x / sqrt 2)`.
pub fn limit_density_erf(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    2.0 * SQRT_2 / PI.sqrt() * (-0.5 * x * x).exp() * libm::erf(x * FRAC_1_SQRT_2)
}

/// `F(x) = erf(x / sqrt 2)^2`, the antiderivative of [`limit_density`].
pub fn limit_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let e = libm::erf(x * FRAC_1_SQRT_2);
    e * e
}

/// `F^{-1}(p)` for `p` in `[0, 1)`: `x = sqrt 2 erf^{-1}(sqrt p)`, solved by bisection.
pub fn limit_quantile(p: f64) -> f64 {
    assert!((0.0..1.0).contains(&p), "quantile level must lie in [0, 1)");
    if p == 0.0 {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while limit_cdf(hi) < p {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if limit_cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The law of `H1 + H2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LimitLaw;

impl LimitLaw {
    pub fn density(&self, x: f64) -> f64 {
        limit_density(x)
    }

    pub fn quantile(&self, p: f64) -> f64 {
        limit_quantile(p)
    }

    pub fn moment(&self, s: u32) -> f64 {
        limit_moment(s)
    }
}

impl Cdf for LimitLaw {
    fn cdf(&self, x: f64) -> f64 {
        limit_cdf(x)
    }
}

/// `F(z) = 1 - exp(-z (2t + z) / 4)` for `z >= 0`.
pub fn linexp_cdf(z: f64, t: f64) -> f64 {
    if z <= 0.0 {
        return 0.0;
    }
    -(-z * (2.0 * t + z) / 4.0).exp_m1()
}

/// Linear-exponential law with drift parameter `t >= 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinExpLaw {
    t: f64,
}

impl LinExpLaw {
    pub fn new(t: f64) -> Self {
        assert!(t >= 0.0 && t.is_finite(), "drift must be finite and nonnegative");
        LinExpLaw { t }
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn density(&self, z: f64) -> f64 {
        if z < 0.0 {
            return 0.0;
        }
        (self.t + z) / 2.0 * (-z * (2.0 * self.t + z) / 4.0).exp()
    }

    /// Positive root of `z^2 + 2tz + 4 ln(1 - p) = 0`.
    pub fn quantile(&self, p: f64) -> f64 {
        assert!((0.0..1.0).contains(&p), "quantile level must lie in [0, 1)");
        let t = self.t;
        -t + (t * t - 4.0 * (-p).ln_1p()).sqrt()
    }
}

impl Cdf for LinExpLaw {
    fn cdf(&self, z: f64) -> f64 {
        linexp_cdf(z, self.t)
    }
}

/// `mu~_s n^{s/2}`, the leading term of `E(X_n^s)` (and of the falling factorial moment).
pub fn moment_asymptotic_main_term(n: usize, s: u32) -> f64 {
    limit_moment(s) * (n as f64).powf(s as f64 / 2.0)
}

/// `C(2L, L) / 4^L` in floating point, by `c_L = c_{L-1} (2L - 1) / (2L)`.
pub fn central_binomial_ratio(l: usize) -> f64 {
    (1..=l).fold(1.0, |c, k| c * (2 * k - 1) as f64 / (2 * k) as f64)
}

/// Leading terms of `E(X_n^s)` at `n = 4L`, `s = 1..=5`, written with
/// `c = C(2L, L) / 4^L`:
/// `4Lc`, `(4L)^2 c^2 / 2 + 4L`, `40 L^2 c`, `256 L^3 c^2 / 2 + 48 L^2`, `688 L^3 c`.
pub fn moment_form_4l(l: usize, s: u32) -> Option<f64> {
    let c = central_binomial_ratio(l);
    let l = l as f64;
    match s {
        1 => Some(4.0 * l * c),
        2 => Some((4.0 * l).powi(2) * c * c / 2.0 + 4.0 * l),
        3 => Some(40.0 * l * l * c),
        4 => Some(256.0 * l.powi(3) * c * c / 2.0 + 48.0 * l * l),
        5 => Some(688.0 * l.powi(3) * c),
        _ => None,
    }
}

/// `(2L / 4^L) C(2L, L)` against `sqrt(n / pi)` at `n = 4L`: returns their ratio.
pub fn central_binomial_bridge_ratio(l: usize) -> f64 {
    let n = (4 * l) as f64;
    2.0 * l as f64 * central_binomial_ratio(l) / (n / PI).sqrt()
}
