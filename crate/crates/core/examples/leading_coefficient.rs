//! The leading coefficient b_k of h(s) ~ b_k Γ(s−k) ψ_{F,k}(s): raw ratios
//! settle slowly in τ, the fitted limit does much better. For F = (1) the
//! limit is 1.

use xizeros::profiles::CoefficientSequence;
use xizeros::xi::{estimate_b_k, EvalContext};

fn main() -> xizeros::Result<()> {
    let ctx = EvalContext::with_defaults(CoefficientSequence::from_real(&[1.0])?);
    let taus: Vec<f64> = (0..16).map(|j| 10.0 + 2.0 * j as f64).collect();
    let est = estimate_b_k(&ctx, 3.0, &taus)?;
    for (t, s) in est.taus.iter().zip(&est.samples) {
        println!("tau {t:>5.1}: ratio {:.6} {:+.6}i", s.re, s.im);
    }
    println!("mean {:.6}, relative dispersion {:.3}", est.mean, est.relative_dispersion());
    if let Some(b) = est.extrapolated {
        println!("extrapolated b_k = {:.6} {:+.6}i", b.re, b.im);
    }
    Ok(())
}
