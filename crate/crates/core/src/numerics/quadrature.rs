use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_T_CUTOFF: f64 = 6.0;

/// Distance kept between the shifted integration line and Im t = ±π/2, where
/// the e^{-2π cosh t} envelope stops decaying.
pub const SHIFT_MARGIN: f64 = 0.2;

/// Largest half-width the shifted rule will extend to.
const MAX_CUTOFF: f64 = 40.0;

/// Error targets and sample caps for one quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionBudget {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evals: usize,
    pub t_cutoff: f64,
}

impl Default for PrecisionBudget {
    fn default() -> Self {
        Self {
            abs_tol: 0.0,
            rel_tol: 1e-12,
            max_evals: 16384,
            t_cutoff: DEFAULT_T_CUTOFF,
        }
    }
}

impl PrecisionBudget {
    pub fn new(abs_tol: f64, rel_tol: f64, max_evals: usize, t_cutoff: f64) -> Result<Self> {
        let budget = Self {
            abs_tol,
            rel_tol,
            max_evals,
            t_cutoff,
        };
        budget.validate()?;
        Ok(budget)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol >= 0.0 && self.rel_tol >= 0.0) {
            return Err(Error::InvalidBudget("tolerances must be non-negative".into()));
        }
        if self.abs_tol == 0.0 && self.rel_tol == 0.0 {
            return Err(Error::InvalidBudget("abs_tol or rel_tol must be positive".into()));
        }
        if self.max_evals < 64 {
            return Err(Error::InvalidBudget(format!("max_evals = {} < 64", self.max_evals)));
        }
        if !(self.t_cutoff > 0.0 && self.t_cutoff.is_finite()) {
            return Err(Error::InvalidBudget(format!("t_cutoff = {}", self.t_cutoff)));
        }
        Ok(())
    }

    /// Tolerance for a result of modulus `magnitude`, never tighter than the
    /// round-off floor `noise` of the summation.
    fn target(&self, magnitude: f64, noise: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * magnitude).max(noise)
    }
}

/// Output of a quadrature. `noise_floor` is the round-off level of the sum
/// (a few ulps of the integral of |integrand|); near a zero of the transform
/// no budget can push the error below it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub err_estimate: f64,
    pub evals_used: usize,
    pub converged: bool,
    pub noise_floor: f64,
}

/// A weight on the real line together with a bound for its tails.
pub trait Profile {
    fn value(&self, t: f64) -> Complex64;

    /// Upper bound for ∫_{|t| > cutoff} |w(t)| e^{growth |t|} dt.
    fn tail_bound(&self, cutoff: f64, growth: f64) -> f64;
}

/// Wraps a callback `w` known to satisfy |w(t)| ≤ scale · e^{-2π cosh t}.
pub struct CoshEnvelope<W> {
    pub scale: f64,
    pub w: W,
}

impl<W> CoshEnvelope<W> {
    pub fn new(scale: f64, w: W) -> Self {
        Self { scale, w }
    }
}

/// Bound for 2 ∫_{cutoff}^∞ exp(-a cosh t + g t) dt, valid when a sinh(cutoff) > g.
fn cosh_tail(a: f64, g: f64, cutoff: f64) -> f64 {
    let slope = a * cutoff.sinh() - g;
    if slope <= 0.0 {
        return f64::INFINITY;
    }
    2.0 * (-a * cutoff.cosh() + g * cutoff).exp() / slope
}

impl<W: Fn(f64) -> Complex64> Profile for CoshEnvelope<W> {
    fn value(&self, t: f64) -> Complex64 {
        (self.w)(t)
    }

    fn tail_bound(&self, cutoff: f64, growth: f64) -> f64 {
        self.scale * cosh_tail(2.0 * PI, growth, cutoff)
    }
}

/// A weight that continues analytically into the strip |Im t| < π/2.
///
/// `kernel(t, z)` returns w(t)·e^{zt}; implementations combine the exponents
/// before exponentiating so neither factor overflows on its own.
pub trait AnalyticProfile: Sync {
    fn kernel(&self, t: Complex64, z: Complex64) -> Complex64;

    /// A constant A with |w(x + iy)| ≤ A·exp(-2π cos(y) cosh(x)) for |y| ≤ π/2 - SHIFT_MARGIN.
    fn envelope(&self) -> f64;
}

struct Trapezoid {
    value: Complex64,
    diff: f64,
    noise: f64,
    evals: usize,
    converged: bool,
}

/// Trapezoid sums on [-half, half], halving the step until two successive
/// levels agree to the target.
fn nested_trapezoid<G>(g: G, half: f64, h_max: f64, tail: f64, budget: &PrecisionBudget) -> Trapezoid
where
    G: Fn(f64) -> Complex64,
{
    let mut intervals = ((2.0 * half / h_max).ceil() as usize)
        .max(16)
        .min((budget.max_evals - 1) / 2);
    let mut h = 2.0 * half / intervals as f64;

    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    for j in 0..=intervals {
        let weight = if j == 0 || j == intervals { 0.5 } else { 1.0 };
        let v = g(-half + j as f64 * h) * weight;
        sum += v;
        abs_sum += v.norm();
    }
    let mut evals = intervals + 1;
    let mut value = sum * h;

    loop {
        if evals + intervals > budget.max_evals {
            let noise = 64.0 * f64::EPSILON * abs_sum * h;
            return Trapezoid {
                value,
                diff: f64::INFINITY,
                noise,
                evals,
                converged: false,
            };
        }
        for j in 0..intervals {
            let v = g(-half + (2 * j + 1) as f64 * (h / 2.0));
            sum += v;
            abs_sum += v.norm();
        }
        evals += intervals;
        intervals *= 2;
        h /= 2.0;
        let refined = sum * h;
        let diff = (refined - value).norm();
        value = refined;

        let noise = 64.0 * f64::EPSILON * abs_sum * h;
        let target = budget.target(value.norm(), noise);
        if diff.max(noise) + tail <= target {
            return Trapezoid {
                value,
                diff,
                noise,
                evals,
                converged: true,
            };
        }
        if !value.re.is_finite() || !value.im.is_finite() {
            return Trapezoid {
                value,
                diff,
                noise,
                evals,
                converged: false,
            };
        }
    }
}

fn finish(t: Trapezoid, tail: f64) -> QuadratureResult {
    let diff = if t.diff.is_finite() { t.diff } else { t.value.norm() };
    QuadratureResult {
        value: t.value,
        err_estimate: diff.max(t.noise) + tail,
        evals_used: t.evals,
        converged: t.converged,
        noise_floor: t.noise,
    }
}

/// ∫ w(t) e^{ist} dt over [-t_cutoff, t_cutoff] on the real line.
///
/// The step starts at no more than a quarter of the oscillation period of
/// e^{i Re(s) t} (at least 8 samples per period after the first halving) and
/// is halved until two levels agree. Fails with `InvalidCutoff` when the
/// profile's tail beyond t_cutoff is larger than the tolerance the result can
/// meet.
pub fn fourier_integral<P: Profile + ?Sized>(
    w: &P,
    s: Complex64,
    budget: &PrecisionBudget,
) -> Result<QuadratureResult> {
    budget.validate()?;
    let cutoff = budget.t_cutoff;
    let tail = w.tail_bound(cutoff, s.im.abs());
    let h_max = (2.0 * PI / (4.0 * s.re.abs().max(1.0))).min(0.25);
    let is = Complex64::i() * s;
    let t = nested_trapezoid(|x| w.value(x) * (is * x).exp(), cutoff, h_max, tail, budget);
    let tol = budget.target(t.value.norm(), t.noise);
    if tail > tol {
        return Err(Error::InvalidCutoff { cutoff, tail, tol });
    }
    Ok(finish(t, tail))
}

/// Imaginary offset of the integration line for the Laplace variable z.
///
/// Follows the saddle of e^{-2π cosh t + zt}, clamped away from ±π/2.
pub fn contour_shift(z: Complex64) -> f64 {
    let saddle = (z / (2.0 * PI)).asinh();
    saddle.im.clamp(-(FRAC_PI_2 - SHIFT_MARGIN), FRAC_PI_2 - SHIFT_MARGIN)
}

/// Two-sided Laplace transform ∫ t^moment w(t) e^{zt} dt.
///
/// The integration line is moved to Im t = θ (see [`contour_shift`]), which
/// is exact for profiles analytic in the strip and keeps the relative
/// precision of the result when |Im z| is large and the real-line integrand
/// would cancel to many orders of magnitude below its own size. The cutoff
/// grows beyond `t_cutoff` until the envelope tail is negligible.
pub fn laplace_transform<P: AnalyticProfile + ?Sized>(
    w: &P,
    z: Complex64,
    moment: u32,
    budget: &PrecisionBudget,
) -> Result<QuadratureResult> {
    budget.validate()?;
    let theta = contour_shift(z);
    let decay = 2.0 * PI * theta.cos();
    let growth = z.re.abs();
    let scale = w.envelope() * (-z.im * theta).exp();

    // Peak of exp(-decay cosh x + growth x) is at sinh x = growth / decay.
    let x_peak = (growth / decay).asinh();
    let log_peak = -decay * x_peak.cosh() + growth * x_peak;
    let mut cutoff = budget.t_cutoff;
    let tail_at = |c: f64| {
        let poly = (c + FRAC_PI_2).powi(moment as i32);
        scale * poly * cosh_tail(decay, growth, c)
    };
    while cutoff < MAX_CUTOFF {
        let log_tail = -decay * cutoff.cosh() + growth * cutoff;
        if cutoff > x_peak && log_tail < log_peak - 50.0 {
            break;
        }
        cutoff += 0.5;
    }

    let shift = Complex64::new(0.0, theta);
    let h_max = (2.0 * PI / (4.0 * z.norm().max(1.0))).min(0.25);
    let eval = |x: f64| {
        let t = Complex64::new(x, 0.0) + shift;
        let k = w.kernel(t, z);
        match moment {
            0 => k,
            m => k * t.powu(m),
        }
    };
    let mut tail = tail_at(cutoff);
    let mut t = nested_trapezoid(eval, cutoff, h_max, tail, budget);
    while tail > budget.target(t.value.norm(), t.noise) && cutoff < MAX_CUTOFF {
        cutoff += 1.0;
        tail = tail_at(cutoff);
        t = nested_trapezoid(eval, cutoff, h_max, tail, budget);
    }
    Ok(finish(t, tail))
}
