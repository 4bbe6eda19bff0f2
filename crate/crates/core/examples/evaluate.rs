//! Ξ_F along the real axis for the truncations F^(N), converging to the
//! Ramanujan Ξ-function as N grows.

use num_complex::Complex64;
use xizeros::numerics::PrecisionBudget;
use xizeros::profiles::CoefficientSequence;
use xizeros::xi::{xi_f, xi_r, EvalContext};

fn main() -> xizeros::Result<()> {
    let budget = PrecisionBudget::default();
    let points = [0.0, 3.0, 6.0, 9.0];
    println!("{:>4} {}", "N", points.map(|t| format!("{:>24}", format!("Xi_F({t})"))).join(""));
    for n in [1, 2, 4, 8] {
        let ctx = EvalContext::new(CoefficientSequence::delta_truncation(n)?, budget)?;
        let row: Vec<String> = points
            .iter()
            .map(|&t| xi_f(&ctx, Complex64::new(t, 0.0)).map(|r| format!("{:>24.15e}", r.value.re)))
            .collect::<xizeros::Result<_>>()?;
        println!("{n:>4} {}", row.join(""));
    }
    let row: Vec<String> = points
        .iter()
        .map(|&t| xi_r(Complex64::new(t, 0.0), 12, &budget).map(|r| format!("{:>24.15e}", r.value.re)))
        .collect::<xizeros::Result<_>>()?;
    println!("{:>4} {}", "Xi_R", row.join(""));
    Ok(())
}
