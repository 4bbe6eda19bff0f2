//! Counting report for F = (1, -1): zeros on and off the line up to T = 30,
//! with the strip half-width justified by the β₀ estimate.

use xizeros::profiles::CoefficientSequence;
use xizeros::theorems::{beta0_estimate, theorem_1_1_from_report};
use xizeros::xi::EvalContext;
use xizeros::zerocount::{count_report, CountOptions};

fn main() -> xizeros::Result<()> {
    let ctx = EvalContext::with_defaults(CoefficientSequence::from_real(&[1.0, -1.0])?);
    let beta0 = beta0_estimate(&ctx, 30.0)?;
    let beta = beta0.max(3.0);
    println!("beta0 estimate {beta0}, counting with beta = {beta}");

    let report = count_report(&ctx, 30.0, beta, &CountOptions::default())?;
    println!(
        "T = {:.6}: N_bar = {}, N1_bar = {}, N0' = {}, N_ki = {}, histogram {:?}",
        report.t, report.n_bar, report.n1_bar, report.n0_prime, report.n_ki, report.histogram
    );
    for z in &report.off_line {
        println!("off the line: {:.10} {:+.10}i (multiplicity {})", z.position.re, z.position.im, z.multiplicity);
    }
    let thm = theorem_1_1_from_report(&ctx, &report);
    println!("N_bar - N1_bar = {} <= {:.1}: {}", thm.lhs, thm.rhs, thm.pass);
    Ok(())
}
