//! Oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use xizeros::profiles::CoefficientSequence;
use xizeros::xi::EvalContext;

pub const F4: [f64; 5] = [1.0, -12.0, 54.0, -88.0, -99.0];

/// The four shipped test sequences with their labels.
pub fn test_sequences() -> Vec<(&'static str, Vec<f64>)> {
    vec![
        ("(1)", vec![1.0]),
        ("(1,-1)", vec![1.0, -1.0]),
        ("(1,-2,1)", vec![1.0, -2.0, 1.0]),
        ("F4", F4.to_vec()),
    ]
}

pub fn ctx(c: &[f64]) -> EvalContext {
    EvalContext::with_defaults(CoefficientSequence::from_real(c).unwrap())
}

/// 2 K_{iτ}(2π) = 2 ∫_0^∞ e^{−2π cosh t} cos(τ t) dt by the plain trapezoid
/// rule on [0, 6]. The integrand is even and decays doubly exponentially, so
/// the rule converges geometrically in the step.
pub fn bessel_2k(tau: f64) -> f64 {
    let h = 1e-3;
    let n = 6000;
    let f = |t: f64| (-2.0 * PI * t.cosh()).exp() * (tau * t).cos();
    let mut sum = 0.5 * f(0.0);
    for j in 1..=n {
        sum += f(j as f64 * h);
    }
    2.0 * h * sum
}

/// 2 K_{iτ}(2π) from the trapezoid rule along Im t = θ: with t ↦ t + iθ
/// the integrand loses its e^{πτ/2}-fold cancellation, so the value keeps
/// its relative precision for large τ where [`bessel_2k`] does not.
pub fn bessel_2k_shifted(tau: f64) -> f64 {
    let theta: f64 = 1.2;
    let x = 2.0 * PI;
    let h = 1e-3;
    let n = 8000;
    let f = |t: f64| {
        let phase = tau * t - x * t.sinh() * theta.sin();
        (-x * t.cosh() * theta.cos()).exp() * phase.cos()
    };
    // The imaginary parts cancel between ±t.
    let mut sum = 0.5 * f(0.0);
    for j in 1..=n {
        sum += f(j as f64 * h);
    }
    2.0 * h * sum * (-tau * theta).exp()
}

/// Ordinates in (0, t) where 2 K_{iτ}(2π) changes sign, by bisection on a
/// 0.01 grid.
pub fn bessel_zeros(t: f64) -> Vec<f64> {
    let step = 0.01;
    let mut out = Vec::new();
    let mut a = step;
    let mut fa = bessel_2k_shifted(a);
    while a + step < t {
        let b = a + step;
        let fb = bessel_2k_shifted(b);
        if fa * fb < 0.0 {
            let (mut lo, mut hi, mut flo) = (a, b, fa);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let fm = bessel_2k_shifted(mid);
                if (fm < 0.0) == (flo < 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    out
}
