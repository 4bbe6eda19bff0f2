use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Principal value of arg(b / a), in (-π, π].
pub fn principal_step(a: Complex64, b: Complex64) -> f64 {
    (b * a.conj()).arg()
}

/// Total unwrapped argument change along an ordered list of nonzero samples.
///
/// Consecutive samples must differ in phase by less than π/2; a larger step
/// means the path was undersampled and the unwrapping is ambiguous.
pub fn continuous_argument(samples: &[Complex64]) -> Result<f64> {
    if let Some(i) = samples.iter().position(|z| z.norm() == 0.0 || !z.norm().is_finite()) {
        return Err(Error::ZeroSample(i));
    }
    let mut total = 0.0;
    for (i, pair) in samples.windows(2).enumerate() {
        let step = principal_step(pair[0], pair[1]);
        if step.abs() >= FRAC_PI_2 {
            return Err(Error::PhaseStepTooLarge { index: i + 1, step });
        }
        total += step;
    }
    debug_assert!(total.abs() < PI * samples.len() as f64);
    Ok(total)
}
