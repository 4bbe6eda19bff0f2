use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::isolate::{isolate_in, IsolateOptions};
use super::record::{records_from_clusters, sort_records, Method, ZeroRecord};
use super::rect::Rectangle;
use super::winding::{boundary_winding, ComplexFunction, WindingOptions, WindingResult};
use crate::defaults;
use crate::error::{Error, Result};
use crate::xi::{c_f, CfFunction, EvalContext};

/// Tuning of the C_F counting pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountOptions {
    pub line_step: f64,
    pub line_tol: f64,
    pub dedup_distance: f64,
    pub bisect_width: f64,
    pub classify_radius: f64,
    pub isolate: IsolateOptions,
}

impl Default for CountOptions {
    fn default() -> Self {
        Self {
            line_step: defaults::LINE_STEP,
            line_tol: defaults::LINE_TOL,
            dedup_distance: defaults::DEDUP_DISTANCE,
            bisect_width: defaults::BISECT_WIDTH,
            classify_radius: defaults::CLASSIFY_RADIUS,
            isolate: IsolateOptions::default(),
        }
    }
}

impl CountOptions {
    fn winding(&self) -> &WindingOptions {
        &self.isolate.winding
    }
}

/// Output of the sign-change scan of g(τ) = Re C_F(iτ).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineScan {
    pub zeros: Vec<ZeroRecord>,
    /// Grid ordinates where g comes close to zero without changing sign:
    /// candidates for an even-order zero or a pair just off the line.
    pub tangencies: Vec<f64>,
    pub evals: usize,
}

fn g(ctx: &EvalContext, tau: f64) -> Result<(f64, f64)> {
    let r = c_f(ctx, Complex64::new(0.0, tau))?;
    Ok((r.value.re, r.err_estimate))
}

/// Scan ordinates: multiples of `step` strictly inside (−t, t), plus ±t.
/// Symmetric about 0 so that real F give mirror-image output.
fn scan_grid(t: f64, step: f64) -> Vec<f64> {
    let j_max = (t / step).ceil() as i64 - 1;
    let mut grid = vec![-t];
    grid.extend((-j_max..=j_max).map(|j| j as f64 * step).filter(|x| x.abs() < t));
    grid.push(t);
    grid
}

/// Sign-change bisection on [a, b] with g(a) g(b) < 0.
fn bisect(ctx: &EvalContext, mut a: (f64, f64), mut b: (f64, f64), width: f64) -> Result<(f64, f64, usize)> {
    let mut evals = 0;
    while b.0 - a.0 > width {
        let mid = 0.5 * (a.0 + b.0);
        if mid <= a.0 || mid >= b.0 {
            break;
        }
        let (v, _) = g(ctx, mid)?;
        evals += 1;
        if v == 0.0 {
            return Ok((mid, 0.0, evals));
        }
        if (v < 0.0) == (a.1 < 0.0) {
            a = (mid, v);
        } else {
            b = (mid, v);
        }
    }
    let (tau, v) = if a.1.abs() <= b.1.abs() { a } else { b };
    Ok((tau, v.abs(), evals))
}

/// Zeros of C_F on the segment {iτ : −t < τ < t} from sign changes of
/// g(τ) = Re C_F(iτ) (real there by symmetry), with near-tangencies
/// reported for confirmation by winding.
pub fn line_scan(ctx: &EvalContext, t: f64, step: f64, bisect_width: f64, line_tol: f64) -> Result<LineScan> {
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("T = {t} must be positive")));
    }
    if !(step > 0.0 && step <= 0.1) {
        return Err(Error::InvalidArgument(format!("scan step {step} must lie in (0, 0.1]")));
    }
    let grid = scan_grid(t, step);
    let values: Vec<(f64, f64)> = grid.par_iter().map(|&tau| g(ctx, tau)).collect::<Result<_>>()?;
    let mut evals = grid.len();

    let mut brackets = Vec::new();
    let mut exact = Vec::new();
    for j in 0..grid.len() {
        if values[j].0 == 0.0 && j > 0 && j + 1 < grid.len() {
            exact.push(j);
        }
        if j + 1 < grid.len() && values[j].0 * values[j + 1].0 < 0.0 {
            brackets.push(j);
        }
    }

    let found: Vec<(f64, f64, bool, usize)> = brackets
        .par_iter()
        .map(|&j| {
            let (ga, ea) = values[j];
            let (gb, eb) = values[j + 1];
            let (tau, residual, n) = bisect(ctx, (grid[j], ga), (grid[j + 1], gb), bisect_width)?;
            let trusted = ga.abs() >= 3.0 * ea && gb.abs() >= 3.0 * eb;
            Ok((tau, residual, trusted, n))
        })
        .collect::<Result<_>>()?;

    let mut zeros: Vec<ZeroRecord> = found
        .into_iter()
        .map(|(tau, residual, trusted, n)| {
            evals += n;
            let mut z = ZeroRecord::new(Complex64::new(0.0, tau), 1, Method::LineScan, residual, line_tol);
            z.trusted = trusted;
            z
        })
        .collect();
    zeros.extend(exact.iter().map(|&j| {
        ZeroRecord::new(Complex64::new(0.0, grid[j]), 1, Method::LineScan, 0.0, line_tol)
    }));
    sort_records(&mut zeros);

    let mut tangencies = Vec::new();
    for j in 1..grid.len().saturating_sub(1) {
        let (gl, gm, gr) = (values[j - 1].0, values[j].0, values[j + 1].0);
        if gm == 0.0 || gl * gm <= 0.0 || gm * gr <= 0.0 {
            continue;
        }
        if gm.abs() > gl.abs() || gm.abs() > gr.abs() {
            continue;
        }
        // the parabola through the three samples dips through zero
        let (hl, hr) = (grid[j] - grid[j - 1], grid[j + 1] - grid[j]);
        let d1 = (gr - gm) / hr;
        let d0 = (gm - gl) / hl;
        let curv = 2.0 * (d1 - d0) / (hl + hr);
        let slope = (d0 * hr + d1 * hl) / (hl + hr);
        let extremum = if curv != 0.0 { gm - slope * slope / (2.0 * curv) } else { gm };
        let below_noise = gm.abs() < 3.0 * values[j].1;
        if below_noise || extremum * gm <= 0.0 {
            tangencies.push(grid[j]);
        }
    }
    Ok(LineScan {
        zeros,
        tangencies,
        evals,
    })
}

/// The on-line zeros of C_F with |Im s| < t (sign-change scan only).
pub fn line_scan_zeros(ctx: &EvalContext, t: f64, step: f64) -> Result<Vec<ZeroRecord>> {
    Ok(line_scan(ctx, t, step, defaults::BISECT_WIDTH, defaults::LINE_TOL)?.zeros)
}

/// Multiplicity of the zero of `f` at `z` by winding on a square of
/// half-side r, grown from `radius` by ×4 until the boundary certifies.
/// `others` are the other known zeros; none may lie within 2r.
pub fn classify_multiplicity_with<F: ComplexFunction + ?Sized>(
    f: &F,
    z: Complex64,
    others: &[Complex64],
    radius: f64,
    opts: &WindingOptions,
) -> Result<usize> {
    let nearest = others
        .iter()
        .map(|o| (o - z).norm())
        .filter(|&d| d > 0.0)
        .fold(f64::INFINITY, f64::min);
    if nearest < 4.0 * radius {
        return Err(Error::CrowdedNeighborhood(nearest));
    }
    let mut r = radius;
    let mut last = None;
    while 2.0 * r < nearest && r < 0.1 {
        match boundary_winding(f, &Rectangle::square(z, r), opts) {
            Ok(w) if w.count >= 1 => return Ok(w.count as usize),
            Ok(w) => {
                last = Some(Error::BoundaryUnresolvable {
                    rect: format!("square of half-side {r:e} around {z} winds {}", w.count),
                })
            }
            Err(e) => last = Some(e),
        }
        r *= 4.0;
    }
    Err(last.unwrap_or(Error::CrowdedNeighborhood(nearest)))
}

/// Multiplicity of a located zero of C_F.
pub fn classify_multiplicity(ctx: &EvalContext, z: Complex64, others: &[Complex64]) -> Result<usize> {
    classify_multiplicity_with(
        &CfFunction(ctx),
        z,
        others,
        defaults::CLASSIFY_RADIUS,
        &WindingOptions::default(),
    )
}

/// The counting functions over a window, with the zeros behind them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    /// Zeros with |Im s| < T and |Re s| < β, with multiplicity.
    #[serde(rename = "N_bar")]
    pub n_bar: usize,
    /// Simple zeros on Re s = 0.
    #[serde(rename = "N1_bar")]
    pub n1_bar: usize,
    /// Distinct zeros on Re s = 0.
    #[serde(rename = "N0_prime")]
    pub n0_prime: usize,
    /// Zeros with 1 ≤ Im s < T (lower edge at `ki_lower`), with multiplicity.
    #[serde(rename = "N_ki")]
    pub n_ki: usize,
    /// Multiplicity → number of distinct on-line zeros of that multiplicity.
    pub histogram: BTreeMap<usize, usize>,
    /// The height actually used (the request, jittered off any zero).
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "T_requested")]
    pub t_requested: f64,
    pub beta: f64,
    pub ki_lower: f64,
    pub on_line: Vec<ZeroRecord>,
    pub off_line: Vec<ZeroRecord>,
    /// True when the located multiplicities add up to `n_bar`.
    pub consistent: bool,
}

impl CountReport {
    /// Counts rebuilt from a zero list alone (all zeros with |Im| < t are
    /// assumed present, as in a list written by [`count_report`]).
    pub fn from_zero_records(records: &[ZeroRecord], t: f64, beta: f64, ki_lower: f64) -> Self {
        let inside: Vec<ZeroRecord> = records
            .iter()
            .filter(|z| z.position.im.abs() < t && z.position.re.abs() < beta)
            .copied()
            .collect();
        let (mut on_line, mut off_line): (Vec<_>, Vec<_>) = inside.iter().partition(|z| z.on_line);
        sort_records(&mut on_line);
        sort_records(&mut off_line);
        let mut histogram = BTreeMap::new();
        for z in &on_line {
            *histogram.entry(z.multiplicity).or_insert(0) += 1;
        }
        let n_bar = inside.iter().map(|z| z.multiplicity).sum();
        let n_ki = inside
            .iter()
            .filter(|z| z.position.im >= ki_lower)
            .map(|z| z.multiplicity)
            .sum();
        Self {
            n_bar,
            n1_bar: histogram.get(&1).copied().unwrap_or(0),
            n0_prime: on_line.len(),
            n_ki,
            histogram,
            t,
            t_requested: t,
            beta,
            ki_lower,
            on_line,
            off_line,
            consistent: true,
        }
    }

    /// Every located zero, on-line first.
    pub fn zeros(&self) -> Vec<ZeroRecord> {
        let mut all = self.on_line.clone();
        all.extend_from_slice(&self.off_line);
        sort_records(&mut all);
        all
    }

    /// N̄ − N̄₁: zeros that are off the line or multiple, with multiplicity.
    pub fn surplus(&self) -> usize {
        self.n_bar - self.n1_bar
    }
}

/// Winding count of C_F, moving one horizontal edge by up to ±half_range
/// (in eighths) until the boundary certifies. `edge` picks the edge.
fn jittered_winding(
    f: &CfFunction,
    make: impl Fn(f64) -> Result<Rectangle>,
    base: f64,
    half_range: f64,
    opts: &WindingOptions,
) -> Result<(WindingResult, f64)> {
    let mut last = None;
    for attempt in 0..=8usize {
        let d = half_range * attempt.div_ceil(2) as f64 / 4.0;
        let y = if attempt % 2 == 1 { base + d } else { base - d };
        let rect = make(y)?;
        match boundary_winding(f, &rect, opts) {
            Ok(w) => return Ok((w, y)),
            Err(e @ (Error::BoundaryUnresolvable { .. } | Error::PhaseStepTooLarge { .. } | Error::SnapFailure { .. })) => {
                last = Some(e)
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap())
}

/// Zero count of C_F over (−β, β) × (−t, t), jittering t by up to
/// step/2; returns the winding and the height used.
pub fn strip_count(ctx: &EvalContext, t: f64, beta: f64, step: f64) -> Result<(usize, f64)> {
    let f = CfFunction(ctx);
    let (w, t_used) = jittered_winding(
        &f,
        |y| Rectangle::new(-beta, beta, -y, y),
        t,
        step / 2.0,
        &WindingOptions::default(),
    )?;
    nonnegative(w).map(|n| (n, t_used))
}

/// N(T, C_F): zeros with 1 ≤ Im s < t in (−β, β), both horizontal edges
/// jittered by up to step/2. Returns the count and the edges used.
pub fn ki_count(ctx: &EvalContext, t: f64, beta: f64, step: f64) -> Result<(usize, f64, f64)> {
    let f = CfFunction(ctx);
    let opts = WindingOptions::default();
    let mut last = None;
    for attempt in 0..=8usize {
        let d = step / 2.0 * attempt.div_ceil(2) as f64 / 4.0;
        let lower = if attempt % 2 == 1 { 1.0 - d } else { 1.0 + d };
        match jittered_winding(&f, |y| Rectangle::new(-beta, beta, lower, y), t, step / 2.0, &opts) {
            Ok((w, top)) => return nonnegative(w).map(|n| (n, lower, top)),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap())
}

fn nonnegative(w: WindingResult) -> Result<usize> {
    usize::try_from(w.count).map_err(|_| Error::BoundaryUnresolvable {
        rect: format!("negative winding {} on {}", w.count, w.rect),
    })
}

/// Locates the zeros of C_F in `rect`, which must have a certified winding.
fn locate(ctx: &EvalContext, rect: &Rectangle, count: usize, opts: &CountOptions) -> Result<Vec<ZeroRecord>> {
    let clusters = isolate_in(&CfFunction(ctx), rect, count, &opts.isolate)?;
    let mut out = records_from_clusters(&clusters, opts.line_tol);
    for z in &mut out {
        // the mirror image −conj(z) of a zero this close to the line is the
        // zero itself
        if z.position.re.abs() < opts.dedup_distance {
            z.position.re = 0.0;
            z.on_line = true;
        }
    }
    Ok(out)
}

/// Builds the [`CountReport`] of C_F on (−β, β) × (−T, T).
///
/// N̄ comes from the boundary winding; on-line zeros from the sign-change
/// scan, each classified by a small winding; near-tangencies are resolved by
/// winding on a square around them. If the located multiplicities fall
/// short of N̄, the strips ε < |Re s| < β and then |Re s| < ε are
/// searched and the missing zeros attached to the report.
pub fn count_report(ctx: &EvalContext, t: f64, beta: f64, opts: &CountOptions) -> Result<CountReport> {
    if !(t >= 2.0) {
        return Err(Error::InvalidArgument(format!("T = {t} must be at least 2")));
    }
    if !(beta > 0.0) {
        return Err(Error::InvalidArgument(format!("beta = {beta} must be positive")));
    }
    let f = CfFunction(ctx);
    let (n_bar, t_used) = strip_count(ctx, t, beta, opts.line_step)?;
    let scan = line_scan(ctx, t_used, opts.line_step, opts.bisect_width, opts.line_tol)?;

    let mut on_line = scan.zeros;
    let mut extra: Vec<ZeroRecord> = Vec::new();
    let half = opts.line_step;
    for &tau in &scan.tangencies {
        let sq = Rectangle::new(-half, half, tau - half, tau + half)?;
        if let Ok(w) = boundary_winding(&f, &sq, opts.winding()) {
            if w.count > 0 {
                extra.extend(locate(ctx, &sq, w.count as usize, opts)?);
            }
        }
    }

    let positions: Vec<Complex64> = on_line.iter().map(|z| z.position).collect();
    let multiplicities: Vec<usize> = positions
        .par_iter()
        .map(|&z| {
            classify_multiplicity_with(&f, z, &positions, opts.classify_radius, opts.winding())
        })
        .collect::<Result<_>>()?;
    for (z, m) in on_line.iter_mut().zip(multiplicities) {
        z.multiplicity = m;
    }
    merge_new(&mut on_line, extra, opts.dedup_distance);

    let mut off_line: Vec<ZeroRecord> = Vec::new();
    let located = |on: &[ZeroRecord], off: &[ZeroRecord]| -> usize {
        on.iter().chain(off).map(|z| z.multiplicity).sum()
    };
    if located(&on_line, &off_line) < n_bar {
        let line_total: usize = on_line.iter().filter(|z| z.on_line).map(|z| z.multiplicity).sum();
        let mut mid_count = None;
        for eps in [1e-3, 1.37e-3, 0.71e-3, 2.3e-3, 0.43e-3] {
            let right = Rectangle::new(eps, beta, -t_used, t_used)?;
            let left = Rectangle::new(-beta, -eps, -t_used, t_used)?;
            let (wr, wl) = rayon::join(
                || boundary_winding(&f, &right, opts.winding()),
                || boundary_winding(&f, &left, opts.winding()),
            );
            let (Ok(wr), Ok(wl)) = (wr, wl) else { continue };
            let (nr, nl) = (nonnegative(wr)?, nonnegative(wl)?);
            let (zr, zl) = rayon::join(
                || locate(ctx, &right, nr, opts),
                || locate(ctx, &left, nl, opts),
            );
            off_line.extend(zr?);
            off_line.extend(zl?);
            mid_count = Some((eps, n_bar.saturating_sub(nr + nl)));
            break;
        }
        let (eps, mid) = mid_count.ok_or_else(|| Error::BoundaryUnresolvable {
            rect: format!("strips ε < |Re s| < {beta}, |Im s| < {t_used}"),
        })?;
        if mid != line_total {
            let strip = Rectangle::new(-eps, eps, -t_used, t_used)?;
            let found = locate(ctx, &strip, mid, opts)?;
            merge_new(&mut on_line, found, opts.dedup_distance);
        }
        // zeros found near the line but not on it belong to the off-line list
        let (on, off): (Vec<_>, Vec<_>) = on_line.into_iter().partition(|z| z.on_line);
        on_line = on;
        off_line.extend(off);
    } else {
        let (on, off): (Vec<_>, Vec<_>) = on_line.into_iter().partition(|z| z.on_line);
        on_line = on;
        off_line.extend(off);
    }
    sort_records(&mut on_line);
    sort_records(&mut off_line);

    let (n_ki, ki_lower, _) = ki_count(ctx, t_used, beta, opts.line_step)?;
    let mut histogram = BTreeMap::new();
    for z in &on_line {
        *histogram.entry(z.multiplicity).or_insert(0) += 1;
    }
    let consistent = located(&on_line, &off_line) == n_bar;
    Ok(CountReport {
        n_bar,
        n1_bar: histogram.get(&1).copied().unwrap_or(0),
        n0_prime: on_line.len(),
        n_ki,
        histogram,
        t: t_used,
        t_requested: t,
        beta,
        ki_lower,
        on_line,
        off_line,
        consistent,
    })
}

/// Adds the zeros of `found` that are not already in `list`.
fn merge_new(list: &mut Vec<ZeroRecord>, found: Vec<ZeroRecord>, distance: f64) {
    for z in found {
        if !list.iter().any(|o| (o.position - z.position).norm() < distance) {
            list.push(z);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::CoefficientSequence;
    use crate::zerocount::Exact;
    use std::f64::consts::PI;

    fn ctx(a: &[f64]) -> EvalContext {
        EvalContext::with_defaults(CoefficientSequence::from_real(a).unwrap())
    }

    /// Ordinates in (0, t) where 2∫₀^∞ e^{−2π cosh u} cos(τu) du changes
    /// sign, on a fixed Simpson grid independent of the library quadrature.
    fn bessel_sign_changes(t: f64) -> Vec<f64> {
        let k = |tau: f64| {
            let n = 12_000;
            let dt = 6.0 / n as f64;
            let g = |u: f64| (-2.0 * PI * u.cosh()).exp() * (tau * u).cos();
            let mut acc = g(0.0) + g(6.0);
            for j in 1..n {
                acc += if j % 2 == 1 { 4.0 } else { 2.0 } * g(j as f64 * dt);
            }
            2.0 * acc * dt / 3.0
        };
        let step = 0.01;
        let mut out = Vec::new();
        let mut prev = (step, k(step));
        let mut tau = 2.0 * step;
        while tau < t {
            let v = k(tau);
            if v * prev.1 < 0.0 {
                out.push(0.5 * (tau + prev.0));
            }
            prev = (tau, v);
            tau += step;
        }
        out
    }

    #[test]
    fn scan_matches_bessel_oracle() {
        let x = ctx(&[1.0]);
        let oracle = bessel_sign_changes(10.0);
        assert!(!oracle.is_empty());
        let zeros = line_scan_zeros(&x, 10.0, 0.05).unwrap();
        let positive: Vec<f64> = zeros.iter().map(|z| z.position.im).filter(|&t| t > 0.0).collect();
        assert_eq!(positive.len(), oracle.len());
        for (a, b) in positive.iter().zip(&oracle) {
            assert!((a - b).abs() < 0.01, "{a} vs {b}");
        }
        assert!(zeros.iter().all(|z| z.on_line && z.trusted && z.method == Method::LineScan));
    }

    #[test]
    fn scan_is_symmetric_for_real_f() {
        let zeros = line_scan_zeros(&ctx(&[1.0, -2.0, 1.0]), 20.0, 0.05).unwrap();
        let n = zeros.len();
        assert!(n.is_multiple_of(2));
        for j in 0..n / 2 {
            assert_eq!(zeros[j].position.im, -zeros[n - 1 - j].position.im);
        }
        // g(0) = 2K_0(2π) > 0 for F = (1): nothing at the origin
        let zeros = line_scan_zeros(&ctx(&[1.0]), 5.0, 0.05).unwrap();
        assert!(zeros.is_empty());
    }

    #[test]
    fn scan_rejects_coarse_step() {
        assert!(line_scan_zeros(&ctx(&[1.0]), 5.0, 0.2).is_err());
    }

    #[test]
    fn classification() {
        let z0 = Complex64::new(0.2, 0.1);
        let f = Exact(move |s: Complex64| (s - z0) * (s - z0) * (s + 1.0));
        let m = classify_multiplicity_with(&f, z0, &[z0, Complex64::new(-1.0, 0.0)], 1e-6, &WindingOptions::default());
        assert_eq!(m.unwrap(), 2);
        let crowded = classify_multiplicity_with(&f, z0, &[z0 + 1e-6], 1e-6, &WindingOptions::default());
        assert!(matches!(crowded, Err(Error::CrowdedNeighborhood(_))));

        let x = ctx(&[1.0]);
        let zeros = line_scan_zeros(&x, 12.0, 0.05).unwrap();
        let positions: Vec<Complex64> = zeros.iter().map(|z| z.position).collect();
        for z in &positions {
            assert_eq!(classify_multiplicity(&x, *z, &positions).unwrap(), 1);
        }
    }

    #[test]
    fn report_for_single_term() {
        let x = ctx(&[1.0]);
        let r = count_report(&x, 10.0, 2.0, &CountOptions::default()).unwrap();
        let oracle = bessel_sign_changes(r.t).len();
        assert_eq!(r.n_bar, 2 * oracle);
        assert_eq!(r.n_bar, r.n1_bar);
        assert_eq!(r.n_bar, r.n0_prime);
        assert_eq!(r.histogram, BTreeMap::from([(1, r.n_bar)]));
        assert!(r.off_line.is_empty() && r.consistent);
        assert_eq!(r.n_ki, bessel_sign_changes(r.t).iter().filter(|&&t| t >= 1.0).count());
    }

    #[test]
    fn report_below_first_zero() {
        let r = count_report(&ctx(&[1.0]), 3.0, 2.0, &CountOptions::default()).unwrap();
        assert_eq!((r.n_bar, r.n1_bar, r.n0_prime, r.n_ki), (0, 0, 0, 0));
        assert!(r.histogram.is_empty());
        assert!(count_report(&ctx(&[1.0]), 1.5, 2.0, &CountOptions::default()).is_err());
    }

    #[test]
    fn off_line_zeros_are_located_and_mirrored() {
        let x = ctx(&[1.0, -1.0]);
        let r = count_report(&x, 30.0, 3.0, &CountOptions::default()).unwrap();
        assert!(r.consistent);
        assert!(!r.off_line.is_empty());
        let all = r.zeros();
        let located: usize = all.iter().map(|z| z.multiplicity).sum();
        assert_eq!(located, r.n_bar);
        for z in &all {
            let mirror = -z.position.conj();
            assert!(all.iter().any(|w| (w.position - mirror).norm() < 1e-8), "{}", z.position);
        }
        // a 2×4 tiling adds up to the strip count; the cuts avoid the line,
        // where every on-line zero would sit on a tile edge
        let xs = [-r.beta, 0.3137, r.beta];
        let ys = [-r.t, -15.1, 0.13, 15.2, r.t];
        let mut tiles = 0;
        for i in 0..2 {
            for j in 0..4 {
                let tile = Rectangle::new(xs[i], xs[i + 1], ys[j], ys[j + 1]).unwrap();
                tiles += boundary_winding(&CfFunction(&x), &tile, &WindingOptions::default()).unwrap().count;
            }
        }
        assert_eq!(tiles as usize, r.n_bar);
    }

    #[test]
    fn report_rebuilds_from_its_zero_list() {
        let x = ctx(&[1.0, -2.0, 1.0]);
        let r = count_report(&x, 20.0, 3.0, &CountOptions::default()).unwrap();
        let again = CountReport::from_zero_records(&r.zeros(), r.t, r.beta, r.ki_lower);
        assert_eq!(again.n_bar, r.n_bar);
        assert_eq!(again.n1_bar, r.n1_bar);
        assert_eq!(again.n0_prime, r.n0_prime);
        assert_eq!(again.n_ki, r.n_ki);
        assert_eq!(again.histogram, r.histogram);
    }
}
