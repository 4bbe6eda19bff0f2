use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rect::Rectangle;
use crate::error::{Error, Result};
use crate::numerics::{continuous_argument, principal_step};

/// A sample whose modulus falls this far below both neighbours is treated as
/// sitting on a zero, even when its own error estimate is tiny.
const DIP_RATIO: f64 = 1e-7;

/// A function value together with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub value: Complex64,
    pub err: f64,
}

/// An analytic function the counting engine can sample.
pub trait ComplexFunction: Sync {
    fn eval(&self, s: Complex64) -> Result<Sample>;

    /// f'(s); the default is a central difference along the real direction.
    fn derivative(&self, s: Complex64) -> Result<Complex64> {
        let h = 1e-6 * s.norm().max(1.0);
        let plus = self.eval(s + h)?.value;
        let minus = self.eval(s - h)?.value;
        Ok((plus - minus) / (2.0 * h))
    }
}

/// Wraps a closure whose values are exact up to round-off.
pub struct Exact<F>(pub F);

impl<F: Fn(Complex64) -> Complex64 + Sync> ComplexFunction for Exact<F> {
    fn eval(&self, s: Complex64) -> Result<Sample> {
        let value = (self.0)(s);
        Ok(Sample {
            value,
            err: 4.0 * f64::EPSILON * value.norm(),
        })
    }
}

impl<T: ComplexFunction + ?Sized> ComplexFunction for &T {
    fn eval(&self, s: Complex64) -> Result<Sample> {
        (**self).eval(s)
    }
    fn derivative(&self, s: Complex64) -> Result<Complex64> {
        (**self).derivative(s)
    }
}

/// Sampling controls for boundary argument tracking.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindingOptions {
    /// Longest edge piece before adaptive refinement starts.
    pub max_step: f64,
    /// Largest phase change accepted between neighbouring samples.
    pub accept: f64,
    pub max_depth: u32,
    /// A boundary sample is certified when |f| > noise_factor · err.
    pub noise_factor: f64,
    pub min_pieces: usize,
}

impl Default for WindingOptions {
    fn default() -> Self {
        Self {
            max_step: 0.25,
            accept: FRAC_PI_4,
            max_depth: 28,
            noise_factor: 10.0,
            min_pieces: 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindingResult {
    pub count: i64,
    pub raw: f64,
    /// The rectangle actually traversed (after any dilation).
    pub rect: Rectangle,
    pub evals: usize,
    pub min_modulus: f64,
}

fn certified<F: ComplexFunction + ?Sized>(f: &F, s: Complex64, opts: &WindingOptions) -> Result<Sample> {
    let sample = f.eval(s)?;
    let m = sample.value.norm();
    if !m.is_finite() || m <= opts.noise_factor * sample.err || m == 0.0 {
        return Err(Error::BoundaryUnresolvable {
            rect: format!("sample at {s} has |f| = {m:e}, err = {:e}", sample.err),
        });
    }
    Ok(sample)
}

struct Path {
    values: Vec<Complex64>,
    evals: usize,
    min_modulus: f64,
}

/// Values strictly after `a` up to and including `b`, refined until every
/// phase step is below `opts.accept`.
fn refine<F: ComplexFunction + ?Sized>(
    f: &F,
    a: (Complex64, Complex64),
    b: (Complex64, Complex64),
    depth: u32,
    opts: &WindingOptions,
) -> Result<Path> {
    let mid = 0.5 * (a.0 + b.0);
    let fm = certified(f, mid, opts)?.value;
    if fm.norm() < DIP_RATIO * a.1.norm().max(b.1.norm()) {
        return Err(Error::BoundaryUnresolvable {
            rect: format!("modulus dips to {:e} at {mid}", fm.norm()),
        });
    }
    let d1 = principal_step(a.1, fm);
    let d2 = principal_step(fm, b.1);
    if d1.abs() < opts.accept && d2.abs() < opts.accept {
        return Ok(Path {
            values: vec![fm, b.1],
            evals: 1,
            min_modulus: fm.norm().min(b.1.norm()),
        });
    }
    if depth >= opts.max_depth {
        return Err(Error::BoundaryUnresolvable {
            rect: format!("phase not resolved between {} and {}", a.0, b.0),
        });
    }
    let (left, right) = rayon::join(
        || refine(f, a, (mid, fm), depth + 1, opts),
        || refine(f, (mid, fm), b, depth + 1, opts),
    );
    let (mut left, right) = (left?, right?);
    left.values.extend(right.values);
    left.evals += right.evals + 1;
    left.min_modulus = left.min_modulus.min(right.min_modulus);
    Ok(left)
}

/// Samples one edge from `a` to `b`, both ends included.
fn edge_path<F: ComplexFunction + ?Sized>(
    f: &F,
    a: Complex64,
    b: Complex64,
    opts: &WindingOptions,
) -> Result<Path> {
    let pieces = ((b - a).norm() / opts.max_step).ceil().max(opts.min_pieces as f64) as usize;
    let points: Vec<Complex64> = (0..=pieces)
        .map(|j| a + (b - a) * (j as f64 / pieces as f64))
        .collect();
    let values: Vec<Complex64> = points
        .par_iter()
        .map(|&s| certified(f, s, opts).map(|x| x.value))
        .collect::<Result<_>>()?;
    let segments: Vec<Path> = (0..pieces)
        .into_par_iter()
        .map(|j| refine(f, (points[j], values[j]), (points[j + 1], values[j + 1]), 0, opts))
        .collect::<Result<_>>()?;

    let mut path = Path {
        values: vec![values[0]],
        evals: pieces + 1,
        min_modulus: values[0].norm(),
    };
    for seg in segments {
        path.values.extend(seg.values);
        path.evals += seg.evals;
        path.min_modulus = path.min_modulus.min(seg.min_modulus);
    }
    Ok(path)
}

/// Argument change of f around the boundary of `rect`, counter-clockwise,
/// divided by 2π and snapped to the nearest integer. The rectangle is not
/// moved; a boundary sample that fails certification is an error.
pub fn boundary_winding<F: ComplexFunction + ?Sized>(
    f: &F,
    rect: &Rectangle,
    opts: &WindingOptions,
) -> Result<WindingResult> {
    let mut opts = *opts;
    for _ in 0..3 {
        let c = rect.corners();
        let edges: Vec<Path> = (0..4)
            .into_par_iter()
            .map(|i| edge_path(f, c[i], c[(i + 1) % 4], &opts))
            .collect::<Result<_>>()?;
        let mut values = Vec::new();
        let mut evals = 0;
        let mut min_modulus = f64::INFINITY;
        for (i, e) in edges.into_iter().enumerate() {
            let skip = usize::from(i > 0);
            values.extend_from_slice(&e.values[skip..]);
            evals += e.evals;
            min_modulus = min_modulus.min(e.min_modulus);
        }
        let raw = continuous_argument(&values)? / (2.0 * PI);
        let count = raw.round();
        if (raw - count).abs() <= 0.15 {
            return Ok(WindingResult {
                count: count as i64,
                raw,
                rect: *rect,
                evals,
                min_modulus,
            });
        }
        opts.accept *= 0.5;
        opts.max_step *= 0.5;
    }
    Err(Error::SnapFailure { raw: f64::NAN })
}

/// Number of zeros of f inside `rect`, with multiplicity.
///
/// When the boundary passes too close to a zero the rectangle is dilated by
/// up to 1% of its half-perimeter (eight attempts); the returned
/// `WindingResult::rect` records the rectangle that was actually used.
pub fn winding_count<F: ComplexFunction + ?Sized>(
    f: &F,
    rect: &Rectangle,
    opts: &WindingOptions,
) -> Result<WindingResult> {
    let unit = 0.01 * (rect.width() + rect.height()) / 8.0;
    let mut last = None;
    for attempt in 0..=8 {
        let r = rect.dilated(unit * attempt as f64);
        match boundary_winding(f, &r, opts) {
            Ok(w) => return Ok(w),
            Err(e @ (Error::BoundaryUnresolvable { .. } | Error::PhaseStepTooLarge { .. })) => {
                last = Some(e)
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or(Error::BoundaryUnresolvable {
        rect: rect.to_string(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_has_two() {
        let f = Exact(|s: Complex64| s * s);
        let r = Rectangle::new(-1.0, 1.0, -1.0, 1.0).unwrap();
        assert_eq!(winding_count(&f, &r, &WindingOptions::default()).unwrap().count, 2);
    }

    #[test]
    fn shifted_linear() {
        let f = Exact(|s: Complex64| s - c(0.5, 0.5));
        let r = Rectangle::new(0.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(winding_count(&f, &r, &WindingOptions::default()).unwrap().count, 1);
    }

    #[test]
    fn no_zero_outside() {
        let f = Exact(|s: Complex64| (s - c(3.0, 0.0)) * (s + c(0.0, 5.0)));
        let r = Rectangle::new(-1.0, 1.0, -1.0, 1.0).unwrap();
        assert_eq!(winding_count(&f, &r, &WindingOptions::default()).unwrap().count, 0);
    }

    #[test]
    fn fast_oscillation_is_resolved() {
        // sin(20 s) has 13 zeros k·π/20 in (-1, 1) on the real axis
        let f = Exact(|s: Complex64| (s * 20.0).sin());
        let r = Rectangle::new(-1.0, 1.0, -0.5, 0.5).unwrap();
        assert_eq!(winding_count(&f, &r, &WindingOptions::default()).unwrap().count, 13);
    }

    #[test]
    fn boundary_zero_triggers_dilation() {
        let f = Exact(|s: Complex64| s - c(1.0, 0.25));
        let r = Rectangle::new(0.0, 1.0, 0.0, 1.0).unwrap();
        assert!(boundary_winding(&f, &r, &WindingOptions::default()).is_err());
        let w = winding_count(&f, &r, &WindingOptions::default()).unwrap();
        assert_eq!(w.count, 1);
        assert!(w.rect.sigma1 > 1.0);
    }
}
