//! Modified Bessel function of the second kind, order one.
//!
//! Power series for `x ≤ 2`, Steed's continued fraction (CF2) for `x > 2`.
//! Both branches are accurate to a few ulps; the scaled form `eˣ·K₁(x)` is
//! available for large arguments where `K₁` itself underflows.

use std::f64::consts::PI;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 2.0;
const MAX_ITER: usize = 10_000;

/// Returns `Σ_k t_k·[ln(x/2) − h_k]` with `t_k = (x²/4)^k / (k!(k+1)!)` and
/// `h_k = (ψ(k+1) + ψ(k+2))/2`, so that `x·K₁(x) = 1 + (x²/2)·sum`.
fn small_series(x: f64) -> f64 {
    let ln_half = (0.5 * x).ln();
    let q = 0.25 * x * x;
    let mut term = 1.0;
    // harmonic numbers H_k and H_{k+1}
    let mut h_k = 0.0;
    let mut h_k1 = 1.0;
    let mut sum = 0.0;
    for k in 0..MAX_ITER {
        let psi_mean = -EULER_GAMMA + 0.5 * (h_k + h_k1);
        let contrib = term * (ln_half - psi_mean);
        sum += contrib;
        if contrib.abs() <= f64::EPSILON * 0.25 * sum.abs() {
            break;
        }
        let kf = k as f64;
        term *= q / ((kf + 1.0) * (kf + 2.0));
        h_k = h_k1;
        h_k1 += 1.0 / (kf + 2.0);
    }
    sum
}

/// Steed's CF2 for order zero; returns `(eˣK₀(x), eˣK₁(x))`.
fn steed_scaled(x: f64) -> (f64, f64) {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < f64::EPSILON {
            break;
        }
    }
    h *= a1;
    let k0e = (PI / (2.0 * x)).sqrt() / s;
    let k1e = k0e * (x + 0.5 - h) / x;
    (k0e, k1e)
}

/// `K₁(x)` for `x > 0`. Returns `+∞` at zero and NaN for negative input.
pub fn bessel_k1(x: f64) -> f64 {
    if x.is_nan() || x < 0.0 {
        return f64::NAN;
    }
    if x == 0.0 {
        return f64::INFINITY;
    }
    if x <= SERIES_LIMIT {
        (1.0 + 0.5 * x * x * small_series(x)) / x
    } else if x.is_infinite() {
        0.0
    } else {
        steed_scaled(x).1 * (-x).exp()
    }
}

/// Exponentially scaled `eˣ·K₁(x)`.
pub fn bessel_k1e(x: f64) -> f64 {
    if x.is_nan() || x < 0.0 {
        return f64::NAN;
    }
    if x == 0.0 {
        return f64::INFINITY;
    }
    if x <= SERIES_LIMIT {
        bessel_k1(x) * x.exp()
    } else if x.is_infinite() {
        0.0
    } else {
        steed_scaled(x).1
    }
}

/// `1 − x·K₁(x)` without the cancellation of the naive form at small `x`.
///
/// Increases monotonically from 0 at `x = 0` towards 1.
pub fn one_minus_x_k1(x: f64) -> f64 {
    if x.is_nan() || x < 0.0 {
        return f64::NAN;
    }
    if x == 0.0 {
        return 0.0;
    }
    if x <= SERIES_LIMIT {
        -0.5 * x * x * small_series(x)
    } else {
        1.0 - x * bessel_k1(x)
    }
}
