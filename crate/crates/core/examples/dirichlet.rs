//! The Dirichlet polynomial ψ_{F,k}: zero-free strip, zero ladder, density
//! bound and an almost period of the zero set.

use xizeros::dirichlet::{almost_period, density_check, dirichlet_zeros_in_rect, translate_check, zero_free_strip_bound};
use xizeros::numerics::PrecisionBudget;
use xizeros::profiles::CoefficientSequence;
use xizeros::zerocount::Rectangle;

fn main() -> xizeros::Result<()> {
    let ladder = CoefficientSequence::from_real(&[1.0, -1.0])?;
    let zeros = dirichlet_zeros_in_rect(&ladder, &Rectangle::new(0.0, 2.0, -1.0, 18.0)?, &PrecisionBudget::default())?;
    println!("psi zeros for (1,-1), expected at 1 + 2 pi i j / ln 3:");
    for z in &zeros {
        println!("  {:.12} {:+.12}i", z.position.re, z.position.im);
    }

    let f = CoefficientSequence::from_real(&[1.0, -1.0, 1.0])?;
    let strip = zero_free_strip_bound(&f);
    println!("(1,-1,1): zeros confined to |Re s| < {:.4}", strip.c0);
    let d = density_check(&f, 0.0, 20.0, strip.c0)?;
    println!("  {} zeros in (0, 20), bound {:.3}", d.count, d.bound);
    println!("  almost period (eps 0.02): {:.6}", almost_period(&f, 0.02, 1e4)?);
    let t = translate_check(&f, 0.02, 0.0, 20.0, 1e4)?;
    println!("  translated zeros land within {:.2e} of zeros", t.max_distance);
    Ok(())
}
