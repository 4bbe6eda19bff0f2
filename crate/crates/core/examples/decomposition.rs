//! C_F(s) = h(s) + h*(−s), with h built from W_F. Prints both sides and the
//! quadrature error bound on a small grid.

use xizeros::profiles::CoefficientSequence;
use xizeros::theorems::rect_grid;
use xizeros::xi::{c_f, h, h_star_neg, EvalContext};

fn main() -> xizeros::Result<()> {
    let ctx = EvalContext::with_defaults(CoefficientSequence::delta_truncation(4)?);
    for s in rect_grid((-1.0, 1.0), (0.0, 8.0), 3, 3) {
        let lhs = c_f(&ctx, s)?;
        let (a, b) = (h(&ctx, s)?, h_star_neg(&ctx, s)?);
        let dev = (lhs.value - a.value - b.value).norm();
        println!(
            "s = {:>5.2}{:+6.2}i  C_F = {:>23.15e}{:+.15e}i  |C_F - h - h*| = {dev:.1e}  err {:.1e}",
            s.re, s.im, lhs.value.re, lhs.value.im, lhs.err_estimate
        );
    }
    Ok(())
}
