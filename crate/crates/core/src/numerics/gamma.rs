use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Stirling coefficients B_{2k} / (2k (2k-1)), k = 1..8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// Below this modulus the argument is shifted upward before the asymptotic
/// series is summed.
const SHIFT_RADIUS: f64 = 15.0;

/// Principal branch of log Γ(z), analytic on ℂ minus the half-line (-∞, 0].
///
/// The asymptotic Stirling series is summed at w = z + N with Re w ≥ 0 and
/// |w| ≥ 15, and the recurrence log Γ(z) = log Γ(z+N) − Σ log(z+j) brings the
/// result back. Summing principal logarithms keeps the branch cut on the
/// negative real axis.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidArgument(format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole(z));
    }

    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < 0.0 || w.norm() < SHIFT_RADIUS {
        shift += w.ln();
        w += 1.0;
    }

    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    let stirling = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series;
    Ok(stirling - shift)
}
