//! Ξ_F and the functions built from it.
//!
//! Everything here is a two-sided Laplace transform of φ_F or φ̃_F:
//!
//! | function   | profile | Laplace variable |
//! |------------|---------|------------------|
//! | Ξ_F(s)     | φ_F     | i s              |
//! | C_F(s)     | φ_F     | s                |
//! | W_F(u)     | φ̃_F     | i u              |
//! | h(s)       | φ̃_F     | s + 1/2          |
//! | h*(−s)     | φ̃_F     | s − 1/2          |

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dirichlet::psi_f;
use crate::error::{Error, Result};
use crate::numerics::{fourier_integral, laplace_transform, log_gamma, PrecisionBudget, QuadratureResult};
use crate::profiles::{CoefficientSequence, Phi, PhiF, PhiTildeF};
use crate::zerocount::{ComplexFunction, Sample};

/// Largest |Re z| of the Laplace variable the quadrature is trusted for.
pub const MAX_GROWTH: f64 = 21.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalContext {
    pub f: CoefficientSequence,
    pub budget: PrecisionBudget,
}

impl EvalContext {
    pub fn new(f: CoefficientSequence, budget: PrecisionBudget) -> Result<Self> {
        budget.validate()?;
        Ok(Self { f, budget })
    }

    pub fn with_defaults(f: CoefficientSequence) -> Self {
        Self {
            f,
            budget: PrecisionBudget::default(),
        }
    }

    fn laplace(&self, tilde: bool, z: Complex64, moment: u32) -> Result<QuadratureResult> {
        if z.re.abs() > MAX_GROWTH {
            return Err(Error::InvalidArgument(format!(
                "growth rate |Re z| = {} exceeds the quadrature envelope {MAX_GROWTH}",
                z.re.abs()
            )));
        }
        if tilde {
            laplace_transform(&PhiTildeF(&self.f), z, moment, &self.budget)
        } else {
            laplace_transform(&PhiF(&self.f), z, moment, &self.budget)
        }
    }
}

/// Ξ_F(s) = ∫ φ_F(t) e^{ist} dt.
pub fn xi_f(ctx: &EvalContext, s: Complex64) -> Result<QuadratureResult> {
    ctx.laplace(false, Complex64::i() * s, 0)
}

/// C_F(s) = Ξ_F(−is).
pub fn c_f(ctx: &EvalContext, s: Complex64) -> Result<QuadratureResult> {
    ctx.laplace(false, s, 0)
}

/// C_F′(s) = ∫ t φ_F(t) e^{st} dt.
pub fn c_f_derivative(ctx: &EvalContext, s: Complex64) -> Result<QuadratureResult> {
    ctx.laplace(false, s, 1)
}

/// W_F(u) = ∫ φ̃_F(t) e^{iut} dt.
pub fn w_f(ctx: &EvalContext, u: Complex64) -> Result<QuadratureResult> {
    ctx.laplace(true, Complex64::i() * u, 0)
}

/// h(s) = W_F(−is − i/2).
pub fn h(ctx: &EvalContext, s: Complex64) -> Result<QuadratureResult> {
    ctx.laplace(true, s + 0.5, 0)
}

/// h*(−s) = W_F(−is + i/2).
pub fn h_star_neg(ctx: &EvalContext, s: Complex64) -> Result<QuadratureResult> {
    ctx.laplace(true, s - 0.5, 0)
}

/// h*(−s) by its definition conj(h(−conj s)); a cross-check of [`h_star_neg`].
pub fn h_star_neg_by_conjugation(ctx: &EvalContext, s: Complex64) -> Result<QuadratureResult> {
    let mut r = h(ctx, -s.conj())?;
    r.value = r.value.conj();
    Ok(r)
}

/// F(s) = h*(−s)/h(s), refused when |h(s)| ≤ 10·err(h).
pub fn f_ratio(ctx: &EvalContext, s: Complex64) -> Result<Complex64> {
    let den = h(ctx, s)?;
    if den.value.norm() <= 10.0 * den.err_estimate {
        return Err(Error::DenominatorUncertified {
            modulus: den.value.norm(),
            err: den.err_estimate,
        });
    }
    Ok(h_star_neg(ctx, s)?.value / den.value)
}

/// Ξ_R(s) = ∫ φ(t) e^{ist} dt with the product in φ truncated at `terms`.
pub fn xi_r(s: Complex64, terms: usize, budget: &PrecisionBudget) -> Result<QuadratureResult> {
    fourier_integral(&Phi { terms }, s, budget)
}

/// C_F as a [`ComplexFunction`] for the zero-counting engine; the derivative
/// comes from quadrature rather than differencing.
#[derive(Debug, Clone, Copy)]
pub struct CfFunction<'a>(pub &'a EvalContext);

impl ComplexFunction for CfFunction<'_> {
    fn eval(&self, s: Complex64) -> Result<Sample> {
        let r = c_f(self.0, s)?;
        Ok(Sample {
            value: r.value,
            err: r.err_estimate,
        })
    }

    fn derivative(&self, s: Complex64) -> Result<Complex64> {
        Ok(c_f_derivative(self.0, s)?.value)
    }
}

/// h as a [`ComplexFunction`].
#[derive(Debug, Clone, Copy)]
pub struct HFunction<'a>(pub &'a EvalContext);

impl ComplexFunction for HFunction<'_> {
    fn eval(&self, s: Complex64) -> Result<Sample> {
        let r = h(self.0, s)?;
        Ok(Sample {
            value: r.value,
            err: r.err_estimate,
        })
    }
}

/// One sample of h(s)/(Γ(s−order) ψ_F(s−order)) on s = σ + iτ, with the
/// next `basis.len() − 1` expansion terms relative to the leading one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioSample {
    pub tau: f64,
    pub ratio: Complex64,
    pub basis: Vec<Complex64>,
}

/// The ratio at σ + iτ, or `None` when ψ_F(s − order) is too close to a
/// zero for the ratio to mean anything.
pub fn b_k_ratio(ctx: &EvalContext, sigma: f64, tau: f64, order: usize, terms: usize) -> Result<Option<RatioSample>> {
    let shift = order as f64;
    let s = Complex64::new(sigma, tau);
    let psi = psi_f(&ctx.f, s - shift);
    let scale: f64 = ctx
        .f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, a)| a.norm() * (std::f64::consts::PI * (2 * m + 1) as f64).powf(shift - sigma))
        .sum();
    if psi.norm() < 1e-3 * scale {
        return Ok(None);
    }
    let hv = h(ctx, s)?;
    let gamma = log_gamma(s - shift)?.exp();
    // Γ(s−k−j)/Γ(s−k) = 1/((s−k−1)⋯(s−k−j))
    let mut basis = vec![Complex64::new(1.0, 0.0)];
    let mut gamma_ratio = Complex64::new(1.0, 0.0);
    for j in 1..=terms {
        let w = s - shift - j as f64;
        gamma_ratio /= w;
        basis.push(gamma_ratio * psi_f(&ctx.f, w) / psi);
    }
    Ok(Some(RatioSample {
        tau,
        ratio: hv.value / (gamma * psi),
        basis,
    }))
}

/// Least-squares leading coefficient from ratio samples (see [`BkEstimate`]).
pub fn extrapolate_b(samples: &[RatioSample]) -> Option<Complex64> {
    let p = samples.first()?.basis.len();
    if p < 2 || samples.len() < p + 1 {
        return None;
    }
    let columns: Vec<Vec<Complex64>> = (0..p).map(|j| samples.iter().map(|r| r.basis[j]).collect()).collect();
    let y: Vec<Complex64> = samples.iter().map(|r| r.ratio).collect();
    least_squares(&columns, &y).map(|x| x[0])
}

/// Samples of h(s)/(Γ(s − order) ψ_F(s − order)) along Re s = σ.
///
/// `mean` is the trimmed mean of the samples. `extrapolated` fits the
/// samples to b + Σ_{j=1}^{J} c_j Γ(s−order−j)ψ_F(s−order−j)/(Γ(s−order)ψ_F(s−order))
/// — the shape of the following terms of the expansion — by least squares
/// with J = min(3, samples − 2), and reports b; it is absent with fewer than
/// three samples. The raw samples converge only like 1/|τ| with a constant
/// near π², so at |τ| ≤ 40 the fitted value is far more accurate than the mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BkEstimate {
    pub mean: Complex64,
    pub dispersion: f64,
    pub extrapolated: Option<Complex64>,
    pub order: usize,
    pub sigma: f64,
    pub taus: Vec<f64>,
    pub samples: Vec<Complex64>,
}

impl BkEstimate {
    /// dispersion / |mean|.
    pub fn relative_dispersion(&self) -> f64 {
        self.dispersion / self.mean.norm()
    }
}

/// Mean after dropping the top and bottom 10% of each coordinate.
fn trimmed_mean(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let drop = v.len() / 10;
    let kept = &v[drop..v.len() - drop];
    kept.iter().sum::<f64>() / kept.len() as f64
}

/// Least squares for the complex system A x ≈ y (columns of A given),
/// by modified Gram–Schmidt.
fn least_squares(columns: &[Vec<Complex64>], y: &[Complex64]) -> Option<Vec<Complex64>> {
    let p = columns.len();
    let mut q: Vec<Vec<Complex64>> = columns.to_vec();
    let mut r = vec![vec![Complex64::new(0.0, 0.0); p]; p];
    for j in 0..p {
        for i in 0..j {
            let d: Complex64 = q[i].iter().zip(&q[j]).map(|(a, b)| a.conj() * b).sum();
            r[i][j] = d;
            let qi = q[i].clone();
            for (x, a) in q[j].iter_mut().zip(&qi) {
                *x -= d * a;
            }
        }
        let norm = q[j].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        let scale = columns[j].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 1e-10 * scale {
            return None;
        }
        r[j][j] = Complex64::new(norm, 0.0);
        q[j].iter_mut().for_each(|x| *x /= norm);
    }
    let qty: Vec<Complex64> = q
        .iter()
        .map(|col| col.iter().zip(y).map(|(a, b)| a.conj() * b).sum())
        .collect();
    let mut x = vec![Complex64::new(0.0, 0.0); p];
    for i in (0..p).rev() {
        let acc: Complex64 = (i + 1..p).map(|j| r[i][j] * x[j]).sum();
        x[i] = (qty[i] - acc) / r[i][i];
    }
    Some(x)
}

/// Estimates the leading expansion coefficient b_k from
/// h(s) = Γ(s−k)(b_k ψ_{F,k}(s) + O(|s|^{−1/2})).
pub fn estimate_b_k(ctx: &EvalContext, sigma: f64, tau_samples: &[f64]) -> Result<BkEstimate> {
    estimate_b_k_with_order(ctx, sigma, tau_samples, ctx.f.k())
}

/// [`estimate_b_k`] with the order forced; a wrong order makes the samples
/// grow or decay like a power of |τ| instead of settling.
pub fn estimate_b_k_with_order(
    ctx: &EvalContext,
    sigma: f64,
    tau_samples: &[f64],
    order: usize,
) -> Result<BkEstimate> {
    if sigma <= -0.25 {
        return Err(Error::InvalidArgument(format!("sigma = {sigma} must exceed -1/4")));
    }
    if tau_samples.is_empty() {
        return Err(Error::InvalidArgument("no tau samples".into()));
    }
    if let Some(t) = tau_samples.iter().find(|t| t.abs() < 5.0) {
        return Err(Error::InvalidArgument(format!("|tau| = {} is below 5", t.abs())));
    }
    let terms = tau_samples.len().saturating_sub(2).min(3);
    let mut ratios = Vec::with_capacity(tau_samples.len());
    for &tau in tau_samples {
        match b_k_ratio(ctx, sigma, tau, order, terms)? {
            Some(r) => ratios.push(r),
            None => {
                return Err(Error::InvalidArgument(format!(
                    "psi_F,k is too close to a zero at {sigma}+{tau}i"
                )))
            }
        }
    }
    let extrapolated = extrapolate_b(&ratios);
    let samples: Vec<Complex64> = ratios.iter().map(|r| r.ratio).collect();
    let re: Vec<f64> = samples.iter().map(|z| z.re).collect();
    let im: Vec<f64> = samples.iter().map(|z| z.im).collect();
    let mean = Complex64::new(trimmed_mean(&re), trimmed_mean(&im));
    let dispersion =
        (samples.iter().map(|z| (z - mean).norm_sqr()).sum::<f64>() / samples.len() as f64).sqrt();
    if dispersion > mean.norm() {
        return Err(Error::UnstableEstimate {
            dispersion,
            mean: mean.norm(),
        });
    }
    Ok(BkEstimate {
        mean,
        dispersion,
        extrapolated,
        order,
        sigma,
        taus: tau_samples.to_vec(),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ctx(a: &[f64]) -> EvalContext {
        EvalContext::with_defaults(CoefficientSequence::from_real(a).unwrap())
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// 2∫₀^∞ e^{−2π cosh t} cos(τt) dt by composite Simpson on a fixed grid.
    fn bessel_oracle(tau: f64) -> f64 {
        let n = 12_000;
        let b = 6.0;
        let dt = b / n as f64;
        let g = |t: f64| (-2.0 * PI * t.cosh()).exp() * (tau * t).cos();
        let mut acc = g(0.0) + g(b);
        for j in 1..n {
            acc += if j % 2 == 1 { 4.0 } else { 2.0 } * g(j as f64 * dt);
        }
        2.0 * acc * dt / 3.0
    }

    #[test]
    fn bessel_equivalence() {
        let x = ctx(&[1.0]);
        for tau in [0.0, 1.0, 2.0, 5.0, 10.0] {
            let v = c_f(&x, c(0.0, tau)).unwrap();
            assert!((v.value - bessel_oracle(tau)).norm() <= 1e-8, "tau={tau}");
            let v = xi_f(&x, c(tau, 0.0)).unwrap();
            assert!((v.value - bessel_oracle(tau)).norm() <= 1e-8, "tau={tau}");
        }
    }

    #[test]
    fn conjugate_symmetries() {
        for a in [vec![1.0], vec![1.0, -1.0], vec![1.0, -2.0, 1.0]] {
            let x = ctx(&a);
            for tau in [0.3, 4.0, 17.0, 29.0] {
                let v = c_f(&x, c(0.0, tau)).unwrap();
                assert!(v.value.im.abs() <= 2.0 * v.err_estimate, "{a:?} {tau}");
                let v = xi_f(&x, c(tau, 0.0)).unwrap();
                assert!(v.value.im.abs() <= 2.0 * v.err_estimate);
                let v = w_f(&x, c(tau, 0.0)).unwrap();
                assert!(v.value.im.abs() <= 2.0 * v.err_estimate);
            }
            let s = c(0.7, 3.1);
            let a1 = c_f(&x, s).unwrap();
            let a2 = c_f(&x, -s.conj()).unwrap();
            assert!((a1.value - a2.value.conj()).norm() <= 2.0 * (a1.err_estimate + a2.err_estimate));
        }
    }

    #[test]
    fn w_f_at_zero() {
        let x = ctx(&[1.0]);
        let n = 24_000;
        let dt = 12.0 / n as f64;
        let g = |t: f64| (-2.0 * PI * t.cosh()).exp() / (2.0 * (t / 2.0).cosh());
        let oracle: f64 = (0..=n).map(|j| g(-6.0 + j as f64 * dt)).sum::<f64>() * dt;
        let v = w_f(&x, c(0.0, 0.0)).unwrap();
        assert!((v.value.re - oracle).abs() < 1e-14);
    }

    #[test]
    fn decomposition() {
        for a in [vec![1.0], vec![1.0, -1.0], vec![1.0, -2.0, 1.0], vec![1.0, -12.0, 54.0, -88.0, -99.0]] {
            let x = ctx(&a);
            // the W_F instance at s = i
            let lhs = w_f(&x, c(1.0, -0.5)).unwrap().value + w_f(&x, c(1.0, 0.5)).unwrap().value;
            let rhs = c_f(&x, c(0.0, 1.0)).unwrap();
            assert!((lhs - rhs.value).norm() <= 4.0 * rhs.err_estimate.max(1e-300) + 1e-15 * rhs.value.norm());
            for i in 0..5 {
                for j in 0..5 {
                    let s = c(-1.0 + 0.5 * i as f64, -5.0 + 2.5 * j as f64);
                    let cf = c_f(&x, s).unwrap();
                    let hv = h(&x, s).unwrap();
                    let hs = h_star_neg(&x, s).unwrap();
                    let err = cf.err_estimate.max(hv.err_estimate).max(hs.err_estimate);
                    let gap = (cf.value - hv.value - hs.value).norm();
                    assert!(gap <= 4.0 * err, "{a:?} s={s} gap={gap:e} err={err:e}");
                }
            }
        }
    }

    #[test]
    fn star_routes_agree() {
        let x = ctx(&[1.0]);
        for s in [c(0.0, 0.0), c(1.0, 1.0), c(-0.4, 7.0)] {
            let a = h_star_neg(&x, s).unwrap();
            let b = h_star_neg_by_conjugation(&x, s).unwrap();
            assert!((a.value - b.value).norm() <= 2.0 * a.err_estimate.max(b.err_estimate));
        }
        let h0 = h(&x, c(0.0, 0.0)).unwrap().value;
        let hs0 = h_star_neg(&x, c(0.0, 0.0)).unwrap().value;
        assert!((hs0 - h0.conj()).norm() < 1e-15);
    }

    #[test]
    fn ratio_examples() {
        let x = ctx(&[1.0]);
        assert!((f_ratio(&x, c(0.0, 0.0)).unwrap().norm() - 1.0).abs() < 1e-12);
        for tau in [2.0, 9.0, 21.0] {
            assert!((f_ratio(&x, c(0.0, tau)).unwrap().norm() - 1.0).abs() < 1e-9);
        }
        assert!(f_ratio(&x, c(3.0, 10.0)).unwrap().norm() < 1.0);
    }

    #[test]
    fn ratio_refuses_uncertified_denominator() {
        // h vanishes identically for F = (0) — not constructible — so use a
        // budget too coarse to certify anything
        let mut x = ctx(&[1.0]);
        x.budget = PrecisionBudget::new(1.0, 0.0, 64, 6.0).unwrap();
        assert!(matches!(
            f_ratio(&x, c(0.0, 30.0)),
            Err(Error::DenominatorUncertified { .. })
        ));
    }

    #[test]
    fn derivative_matches_difference() {
        let x = ctx(&[1.0, -2.0, 1.0]);
        let s = c(0.4, 6.0);
        let d = c_f_derivative(&x, s).unwrap().value;
        let e = 1e-5;
        let fd = (c_f(&x, s + e).unwrap().value - c_f(&x, s - e).unwrap().value) / (2.0 * e);
        assert!((d - fd).norm() < 1e-7 * d.norm());
    }

    #[test]
    fn envelope_is_enforced() {
        let x = ctx(&[1.0]);
        assert!(c_f(&x, c(25.0, 0.0)).is_err());
        assert!(xi_f(&x, c(0.0, 25.0)).is_err());
    }

    #[test]
    fn delta_family_approaches_ramanujan() {
        let budget = PrecisionBudget::default();
        let s = c(3.0, 0.0);
        let target = xi_r(s, 20, &budget).unwrap().value;
        let mut prev = f64::INFINITY;
        for n in [1, 2, 4, 8] {
            let x = EvalContext::with_defaults(CoefficientSequence::delta_truncation(n).unwrap());
            let gap = (xi_f(&x, s).unwrap().value - target).norm();
            assert!(gap < prev, "N={n}");
            prev = gap;
        }
        assert!(prev < 1e-6 * target.norm());
    }

    /// b_k = (−2π)^k conj(Σ m^k a_m) / k!, from expanding the
    /// e^{−2πm e^{−t}} factors of φ̃_F to order k at t → +∞.
    fn b_k_oracle(a: &[Complex64], k: usize) -> Complex64 {
        let moment: Complex64 = a.iter().enumerate().map(|(m, am)| am * (m as f64).powi(k as i32)).sum();
        let fact: f64 = (1..=k).map(|j| j as f64).product();
        (-2.0 * PI).powi(k as i32) * moment.conj() / fact
    }

    #[test]
    fn b_k_extrapolation_beats_the_mean() {
        let taus = [10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0];
        for (a, tol) in [
            (vec![1.0], 0.05),
            (vec![2.0, 1.0], 0.2),
            (vec![1.0, -1.0], 0.5),
            (vec![1.0, -2.0, 1.0], 1.0),
        ] {
            let x = ctx(&a);
            let est = estimate_b_k(&x, 3.0 + x.f.k() as f64, &taus).unwrap();
            let oracle = b_k_oracle(x.f.coeffs(), x.f.k());
            let b = est.extrapolated.unwrap();
            assert!((b - oracle).norm() < tol * oracle.norm(), "{a:?}: {b} vs {oracle}");
            assert!((b - oracle).norm() < (est.mean - oracle).norm(), "{a:?}");
        }
    }

    #[test]
    fn b_zero_samples_settle_slowly() {
        // the first correction is about (π² + π)/s, so the raw samples spread
        // by about a third of their mean over τ ∈ [10, 25] and tighten only
        // like 1/τ
        let x = ctx(&[1.0]);
        let near = estimate_b_k(&x, 1.0, &[10.0, 15.0, 20.0, 25.0]).unwrap();
        let far = estimate_b_k(&x, 1.0, &[25.0, 30.0, 35.0, 40.0]).unwrap();
        assert!(near.relative_dispersion() > 0.1);
        assert!(far.relative_dispersion() < near.relative_dispersion());
        let distance = |e: &BkEstimate| e.samples.iter().map(|z| (z - 1.0).norm()).collect::<Vec<_>>();
        let d = distance(&near);
        assert!(d.windows(2).all(|w| w[1] < w[0]), "{d:?}");
    }

    #[test]
    fn b_k_scales_with_conjugate() {
        let taus = [10.0, 15.0, 20.0, 25.0];
        let base = estimate_b_k(&ctx(&[1.0]), 0.5, &taus).unwrap();
        let two = estimate_b_k(&ctx(&[2.0]), 0.5, &taus).unwrap();
        assert!((two.mean - 2.0 * base.mean).norm() <= two.dispersion + 1e-9 * two.mean.norm());
        let fi = EvalContext::with_defaults(
            CoefficientSequence::new(vec![c(0.0, 1.0)]).unwrap(),
        );
        let rot = estimate_b_k(&fi, 0.5, &taus).unwrap();
        assert!((rot.mean - c(0.0, -1.0) * base.mean).norm() <= rot.dispersion + 1e-9 * rot.mean.norm());
    }

    #[test]
    fn wrong_order_drifts() {
        let x = ctx(&[1.0, -1.0]);
        let taus = [10.0, 20.0, 40.0];
        let est = estimate_b_k_with_order(&x, 0.5, &taus, 2);
        if let Ok(e) = est {
            let growth = e.samples[2].norm() / e.samples[0].norm();
            assert!(growth > 3.0, "{growth}");
        }
    }
}
