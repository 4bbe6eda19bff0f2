//! The Dirichlet polynomial ψ_F(s) = π^{-s} Σ a_m (2m+1)^{-s}, its shift
//! ψ_{F,k}(s) = ψ_F(s − k), the equivalent exponential polynomial, and the
//! geometry of its zero set.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::defaults::LINE_TOL;
use crate::error::{Error, Result};
use crate::numerics::PrecisionBudget;
use crate::profiles::CoefficientSequence;
use crate::zerocount::{
    boundary_winding, isolate_in, records_from_clusters, ComplexFunction, IsolateOptions,
    Rectangle, Sample, WindingOptions, ZeroRecord,
};

/// ψ_F(s) = Σ a_m (π(2m+1))^{-s}.
pub fn psi_f(f: &CoefficientSequence, s: Complex64) -> Complex64 {
    f.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() != 0.0)
        .map(|(m, a)| a * (-s * (PI * (2 * m + 1) as f64).ln()).exp())
        .sum()
}

/// ψ_{F,k}(s) = ψ_F(s − k) with k the vanishing order of F.
pub fn psi_f_k(f: &CoefficientSequence, s: Complex64) -> Complex64 {
    psi_f(f, s - f.k() as f64)
}

/// ψ_F(s − shift) as a [`ComplexFunction`] with an analytic derivative.
#[derive(Debug, Clone, Copy)]
pub struct PsiShifted<'a> {
    pub f: &'a CoefficientSequence,
    pub shift: f64,
    pub abs_tol: f64,
}

impl<'a> PsiShifted<'a> {
    /// ψ_{F,k}.
    pub fn new(f: &'a CoefficientSequence) -> Self {
        Self {
            f,
            shift: f.k() as f64,
            abs_tol: 0.0,
        }
    }

    pub fn with_shift(f: &'a CoefficientSequence, shift: f64) -> Self {
        Self {
            f,
            shift,
            abs_tol: 0.0,
        }
    }
}

impl ComplexFunction for PsiShifted<'_> {
    fn eval(&self, s: Complex64) -> Result<Sample> {
        let w = s - self.shift;
        let mut value = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        let mut max_log = 0.0f64;
        for (m, a) in self.f.coeffs().iter().enumerate() {
            if a.norm() == 0.0 {
                continue;
            }
            let log_base = (PI * (2 * m + 1) as f64).ln();
            let term = a * (-w * log_base).exp();
            value += term;
            scale += term.norm();
            max_log = max_log.max(log_base);
        }
        // argument reduction of e^{-i τ log b} loses about |τ log b| ulps
        let err = 16.0 * f64::EPSILON * (1.0 + w.norm() * max_log) * scale + self.abs_tol;
        Ok(Sample { value, err })
    }

    fn derivative(&self, s: Complex64) -> Result<Complex64> {
        let w = s - self.shift;
        Ok(self
            .f
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() != 0.0)
            .map(|(m, a)| {
                let log_base = (PI * (2 * m + 1) as f64).ln();
                -a * log_base * (-w * log_base).exp()
            })
            .sum())
    }
}

/// One term p e^{βs}; `index` is m in β_m = ln((2n+1)/(2(n−m)+1)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpTerm {
    pub p: Complex64,
    pub beta: f64,
    pub index: usize,
}

/// ψ_{F,k}(s) = e^{-rate (s − shift)} Σ p_m e^{β_m s}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentialPolynomial {
    pub terms: Vec<ExpTerm>,
    pub rate: f64,
    pub shift: f64,
    pub n: usize,
}

impl ExponentialPolynomial {
    /// Σ p_m e^{β_m s} without the prefactor; same zeros as ψ_{F,k}.
    pub fn sum(&self, s: Complex64) -> Complex64 {
        self.terms.iter().map(|t| t.p * (s * t.beta).exp()).sum()
    }

    pub fn prefactor(&self, s: Complex64) -> Complex64 {
        (-(s - self.shift) * self.rate).exp()
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.prefactor(s) * self.sum(s)
    }

    pub fn betas(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.beta).collect()
    }
}

/// β_m = ln((2n+1)/(2(n−m)+1)).
pub fn beta_m(n: usize, m: usize) -> f64 {
    ((2 * n + 1) as f64 / (2 * (n - m) + 1) as f64).ln()
}

/// The exponential-polynomial form of ψ_{F,k}: p_m = a_{n−m} e^{−β_m k}.
pub fn to_exponential_polynomial(f: &CoefficientSequence) -> ExponentialPolynomial {
    let n = f.n();
    let k = f.k() as f64;
    let a = f.coeffs();
    let mut terms: Vec<ExpTerm> = Vec::new();
    for m in 0..=n {
        let coeff = a[n - m];
        if coeff.norm() == 0.0 {
            continue;
        }
        let beta = beta_m(n, m);
        let p = coeff * (-beta * k).exp();
        match terms.last_mut() {
            Some(last) if last.beta == beta => last.p += p,
            _ => terms.push(ExpTerm { p, beta, index: m }),
        }
    }
    terms.retain(|t| t.p.norm() != 0.0);
    ExponentialPolynomial {
        terms,
        rate: ((2 * n + 1) as f64 * PI).ln(),
        shift: k,
        n,
    }
}

/// Vertical strip σ₋ ≤ Re s ≤ σ₊ containing every zero of ψ_{F,k}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StripBound {
    pub c0: f64,
    /// To the right of this abscissa the largest-β term dominates the rest.
    pub side_plus: f64,
    /// To the left of this abscissa the smallest-β term dominates the rest.
    pub side_minus: f64,
    /// Set when ψ_{F,k} is a single exponential and has no zeros at all.
    pub empty: bool,
}

pub const STRIP_MARGIN: f64 = 0.1;

/// Root of a monotone function by bracketing and bisection.
fn bisect_monotone(g: impl Fn(f64) -> f64) -> f64 {
    let (mut lo, mut hi) = (-1.0, 1.0);
    // g is decreasing; widen until g(lo) > 0 > g(hi)
    while g(lo) <= 0.0 {
        lo *= 2.0;
    }
    while g(hi) >= 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 * (1.0 + mid.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Term-dominance bound on the real parts of the zeros of ψ_{F,k}.
pub fn zero_free_strip_bound(f: &CoefficientSequence) -> StripBound {
    let ep = to_exponential_polynomial(f);
    if ep.terms.len() < 2 {
        return StripBound {
            c0: STRIP_MARGIN,
            side_plus: 0.0,
            side_minus: 0.0,
            empty: true,
        };
    }
    let top = *ep.terms.last().unwrap();
    let bottom = ep.terms[0];
    // Σ_{others} |p_m| e^{(β_m − β_top) σ} − |p_top|: decreasing in σ
    let right = |sigma: f64| {
        ep.terms[..ep.terms.len() - 1]
            .iter()
            .map(|t| t.p.norm() * ((t.beta - top.beta) * sigma).exp())
            .sum::<f64>()
            - top.p.norm()
    };
    // |p_bottom| − Σ_{others} |p_m| e^{(β_m − β_bottom) σ}: decreasing in σ
    let left = |sigma: f64| {
        bottom.p.norm()
            - ep.terms[1..]
                .iter()
                .map(|t| t.p.norm() * ((t.beta - bottom.beta) * sigma).exp())
                .sum::<f64>()
    };
    let side_plus = bisect_monotone(right);
    let side_minus = bisect_monotone(left);
    StripBound {
        c0: side_plus.abs().max(side_minus.abs()) + STRIP_MARGIN,
        side_plus,
        side_minus,
        empty: false,
    }
}

/// Zeros of ψ_{F,k} in a rectangle, together with the rectangle actually
/// used. When a zero sits on the edge the rectangle is jittered by up to
/// 1/(4(2n+1)), shrinking first: zeros on the edge of an open rectangle are
/// outside it.
pub fn dirichlet_zeros_with_rect(
    f: &CoefficientSequence,
    rect: &Rectangle,
    budget: &PrecisionBudget,
) -> Result<(Vec<ZeroRecord>, Rectangle)> {
    let psi = PsiShifted {
        abs_tol: budget.abs_tol,
        ..PsiShifted::new(f)
    };
    let opts = IsolateOptions {
        winding: WindingOptions {
            max_step: 0.5,
            ..WindingOptions::default()
        },
        ..IsolateOptions::default()
    };
    let jitter = 1.0 / (4.0 * (2 * f.n() + 1) as f64);
    let mut last = None;
    for attempt in 0..=8usize {
        let d = jitter * attempt.div_ceil(2) as f64 / 4.0;
        let d = if attempt % 2 == 1 { -d } else { d };
        if 2.0 * d <= -rect.width().min(rect.height()) {
            continue;
        }
        let r = rect.dilated(d);
        match boundary_winding(&psi, &r, &opts.winding) {
            Ok(w) if w.count >= 0 => {
                let clusters = isolate_in(&psi, &r, w.count as usize, &opts)?;
                return Ok((records_from_clusters(&clusters, LINE_TOL), r));
            }
            Ok(w) => {
                last = Some(Error::BoundaryUnresolvable {
                    rect: format!("negative winding {} on {r}", w.count),
                })
            }
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or(Error::BoundaryUnresolvable {
        rect: rect.to_string(),
    }))
}

/// All zeros of ψ_{F,k} in `rect`, with multiplicity, sorted by Im then Re.
pub fn dirichlet_zeros_in_rect(
    f: &CoefficientSequence,
    rect: &Rectangle,
    budget: &PrecisionBudget,
) -> Result<Vec<ZeroRecord>> {
    dirichlet_zeros_with_rect(f, rect, budget).map(|(z, _)| z)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub t1: f64,
    pub t2: f64,
    pub c: f64,
    pub n: usize,
    pub count: usize,
    pub bound: f64,
    pub pass: bool,
}

/// Counts zeros of ψ_{F,k} in (−c, c) × (t1, t2) against n + ln(2n+1)/(2π)·(t2 − t1).
pub fn density_check(f: &CoefficientSequence, t1: f64, t2: f64, c: f64) -> Result<DensityReport> {
    if t1 >= t2 {
        return Err(Error::InvalidArgument(format!("window ({t1}, {t2}) is empty")));
    }
    let strip = zero_free_strip_bound(f);
    if c < strip.c0 && !strip.empty {
        return Err(Error::InvalidArgument(format!(
            "half-width {c} is below the strip bound {}",
            strip.c0
        )));
    }
    let rect = Rectangle::new(-c, c, t1, t2)?;
    let (zeros, used) = dirichlet_zeros_with_rect(f, &rect, &PrecisionBudget::default())?;
    let count: usize = zeros.iter().map(|z| z.multiplicity).sum();
    let n = f.n();
    let bound = n as f64 + ((2 * n + 1) as f64).ln() / (2.0 * PI) * used.height();
    Ok(DensityReport {
        t1: used.t1,
        t2: used.t2,
        c,
        n,
        count,
        bound,
        pass: count as f64 <= bound,
    })
}

/// max_m distance(β_m Π, 2πℤ).
fn period_defect(betas: &[f64], period: f64) -> f64 {
    betas
        .iter()
        .map(|b| {
            let x = b * period / (2.0 * PI);
            (x - x.round()).abs() * 2.0 * PI
        })
        .fold(0.0, f64::max)
}

/// An almost period Π ∈ (1, search_limit] of the zero set of ψ_{F,k}: every
/// β_m Π lies within `eps` of 2πℤ.
///
/// The grid scan (step eps / (2 max β)) stops in the first run of admissible
/// grid points; the returned Π is the minimiser of the defect inside that
/// run, refined by golden-section search, so a single-frequency sequence
/// returns its exact period.
pub fn almost_period(f: &CoefficientSequence, eps: f64, search_limit: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!("eps = {eps} must lie in (0, 1)")));
    }
    let betas: Vec<f64> = to_exponential_polynomial(f)
        .terms
        .iter()
        .map(|t| t.beta)
        .filter(|&b| b > 0.0)
        .collect();
    if betas.is_empty() {
        return Err(Error::InvalidArgument(
            "almost periods need at least two nonzero coefficients".into(),
        ));
    }
    let max_beta = betas.iter().cloned().fold(0.0, f64::max);
    let step = eps / (2.0 * max_beta);
    let mut j = 1usize;
    let mut run: Option<(f64, f64)> = None; // (argmin, defect)
    loop {
        let period = 1.0 + j as f64 * step;
        if period > search_limit {
            break;
        }
        let d = period_defect(&betas, period);
        if d <= eps {
            match run {
                Some((_, best)) if d >= best => {}
                _ => run = Some((period, d)),
            }
        } else if run.is_some() {
            break;
        }
        j += 1;
    }
    let (centre, _) = run.ok_or(Error::NoPeriodFound(search_limit))?;

    let (mut lo, mut hi) = ((centre - step).max(1.0), (centre + step).min(search_limit));
    let golden = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..100 {
        let x1 = hi - golden * (hi - lo);
        let x2 = lo + golden * (hi - lo);
        if period_defect(&betas, x1) <= period_defect(&betas, x2) {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    let refined = 0.5 * (lo + hi);
    if period_defect(&betas, refined) <= period_defect(&betas, centre) {
        Ok(refined)
    } else {
        Ok(centre)
    }
}

/// Zeros of ψ_{F,k} in (−c₀, c₀) × (t1, t2) and how far their iΠ-translates
/// land from the zero set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TranslateReport {
    pub period: f64,
    pub eps: f64,
    pub zeros: Vec<Complex64>,
    /// Per zero: distance from z + iΠ to the nearest zero.
    pub distances: Vec<f64>,
    pub max_distance: f64,
}

/// Checks quasi-periodicity empirically: every zero z with t1 < Im z < t2 is
/// shifted by iΠ, Π = [`almost_period`]`(f, eps)`, and matched against the
/// zeros near the shifted window.
pub fn translate_check(f: &CoefficientSequence, eps: f64, t1: f64, t2: f64, search_limit: f64) -> Result<TranslateReport> {
    let period = almost_period(f, eps, search_limit)?;
    let c0 = zero_free_strip_bound(f).c0;
    let budget = PrecisionBudget::default();
    let base = dirichlet_zeros_in_rect(f, &Rectangle::new(-c0, c0, t1, t2)?, &budget)?;
    let shifted = dirichlet_zeros_in_rect(f, &Rectangle::new(-c0, c0, t1 + period - 1.0, t2 + period + 1.0)?, &budget)?;
    let zeros: Vec<Complex64> = base.iter().map(|z| z.position).collect();
    let distances: Vec<f64> = zeros
        .iter()
        .map(|z| {
            let target = z + Complex64::new(0.0, period);
            shifted
                .iter()
                .map(|w| (w.position - target).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let max_distance = distances.iter().cloned().fold(0.0, f64::max);
    Ok(TranslateReport {
        period,
        eps,
        zeros,
        distances,
        max_distance,
    })
}

/// min |ψ_{F,k}| over a set of points.
pub fn min_modulus_on_set(f: &CoefficientSequence, grid: &[Complex64]) -> f64 {
    grid.iter()
        .map(|&s| psi_f_k(f, s).norm())
        .fold(f64::INFINITY, f64::min)
}
