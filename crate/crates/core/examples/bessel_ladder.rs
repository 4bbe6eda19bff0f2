//! F = (1) gives C_F(iτ) = 2K_{iτ}(2π). Scan the line Re s = 0 for sign
//! changes and confirm each zero is simple.

use xizeros::profiles::CoefficientSequence;
use xizeros::xi::EvalContext;
use xizeros::zerocount::{classify_multiplicity, line_scan_zeros};

fn main() -> xizeros::Result<()> {
    let ctx = EvalContext::with_defaults(CoefficientSequence::from_real(&[1.0])?);
    let zeros = line_scan_zeros(&ctx, 30.0, 0.05)?;
    let positions: Vec<_> = zeros.iter().map(|z| z.position).collect();
    for z in zeros.iter().filter(|z| z.position.im > 0.0) {
        let m = classify_multiplicity(&ctx, z.position, &positions)?;
        println!("tau = {:.12}  multiplicity {m}  residual {:.1e}", z.position.im, z.residual);
    }
    Ok(())
}
