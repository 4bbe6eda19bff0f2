//! The full verification suite for one sequence, as a table of margins.

use xizeros::profiles::CoefficientSequence;
use xizeros::theorems::{run_suite, Suite, SuiteParams};
use xizeros::xi::EvalContext;

fn main() -> xizeros::Result<()> {
    let coeffs: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("coefficients must be numbers"))
        .collect();
    let coeffs = if coeffs.is_empty() { vec![1.0, -2.0, 1.0] } else { coeffs };
    let ctx = EvalContext::with_defaults(CoefficientSequence::from_real(&coeffs)?);
    let reports = run_suite(&ctx, Suite::All, &SuiteParams::default())?;
    println!("F = {coeffs:?}");
    for r in &reports {
        let status = match (r.applicable, r.pass) {
            (false, _) => "n/a ",
            (true, true) => "pass",
            (true, false) => "FAIL",
        };
        println!("{:<11} {status}  lhs {:>12.4e}  rhs {:>12.4e}", r.theorem_id.as_str(), r.lhs, r.rhs);
    }
    Ok(())
}
