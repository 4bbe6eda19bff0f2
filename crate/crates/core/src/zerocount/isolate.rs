use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::rect::Rectangle;
use super::winding::{boundary_winding, ComplexFunction, WindingOptions};
use crate::error::{Error, Result};

/// Split positions tried in turn when a cut passes too close to a zero.
const SPLIT_FRACTIONS: [f64; 7] = [0.5, 0.4637, 0.5371, 0.4219, 0.5813, 0.3791, 0.6187];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsolateOptions {
    /// Subdivision stops at this diameter and reports a cluster.
    pub cluster_diameter: f64,
    /// Below this diameter Newton polishing is attempted.
    pub polish_diameter: f64,
    /// Clusters closer than this (relative to max(1, |z|)) are one zero.
    pub merge_distance: f64,
    pub winding: WindingOptions,
}

impl Default for IsolateOptions {
    fn default() -> Self {
        Self {
            cluster_diameter: 1e-8,
            polish_diameter: 0.6,
            merge_distance: 1e-7,
            winding: WindingOptions::default(),
        }
    }
}

/// A group of zeros isolated inside `rect`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub rect: Rectangle,
    pub position: Complex64,
    pub count: usize,
    pub residual: f64,
    /// True when `position` came from Newton iteration rather than the
    /// centre of a minimal rectangle.
    pub polished: bool,
}

/// Modified Newton iteration s ← s − m f/f', kept inside `rect`.
pub fn newton_polish<F: ComplexFunction + ?Sized>(
    f: &F,
    start: Complex64,
    rect: &Rectangle,
    multiplicity: usize,
) -> Option<Complex64> {
    let m = multiplicity as f64;
    let mut s = start;
    for _ in 0..60 {
        let sample = f.eval(s).ok()?;
        if sample.value.norm() == 0.0 {
            return Some(s);
        }
        let d = f.derivative(s).ok()?;
        if d.norm() == 0.0 || !d.re.is_finite() {
            return None;
        }
        let step = sample.value * m / d;
        s -= step;
        if !rect.contains(s) {
            return None;
        }
        // an m-fold root is only determined to about ε^{1/m}
        let floor = if multiplicity > 1 { 1e-9 } else { 1e-13 };
        let resolution = (floor * s.norm().max(1.0)).max(4.0 * m * sample.err / d.norm());
        if step.norm() <= resolution {
            return Some(s);
        }
    }
    None
}

/// Every zero of f in `rect`, grouped into clusters, by recursive
/// subdivision on winding counts. `count` is the known winding count of
/// `rect` itself. Output is sorted by imaginary then real part.
pub fn isolate_in<F: ComplexFunction + ?Sized>(
    f: &F,
    rect: &Rectangle,
    count: usize,
    opts: &IsolateOptions,
) -> Result<Vec<Cluster>> {
    let mut out = subdivide(f, rect, count, opts)?;
    out.sort_by(|a, b| {
        a.position
            .im
            .total_cmp(&b.position.im)
            .then(a.position.re.total_cmp(&b.position.re))
    });
    Ok(merge_coincident(out, opts.merge_distance))
}

/// A cut through a multiple zero can hand one piece of it to each side;
/// clusters closer than `distance` are joined back together.
fn merge_coincident(clusters: Vec<Cluster>, distance: f64) -> Vec<Cluster> {
    let mut merged: Vec<Cluster> = Vec::with_capacity(clusters.len());
    for c in clusters {
        let near = merged
            .iter_mut()
            .find(|m| (m.position - c.position).norm() <= distance * m.position.norm().max(1.0));
        match near {
            Some(m) => {
                if c.polished && !m.polished {
                    m.position = c.position;
                    m.residual = c.residual;
                    m.polished = true;
                }
                m.count += c.count;
            }
            None => merged.push(c),
        }
    }
    merged
}

/// Like [`isolate_in`] but computes the count of `rect` first.
pub fn isolate_zeros<F: ComplexFunction + ?Sized>(
    f: &F,
    rect: &Rectangle,
    opts: &IsolateOptions,
) -> Result<Vec<Cluster>> {
    let n = boundary_winding(f, rect, &opts.winding)?.count;
    if n < 0 {
        return Err(Error::BoundaryUnresolvable {
            rect: format!("negative winding {n} on {rect}"),
        });
    }
    isolate_in(f, rect, n as usize, opts)
}

fn cluster_at<F: ComplexFunction + ?Sized>(
    f: &F,
    rect: &Rectangle,
    position: Complex64,
    count: usize,
    polished: bool,
) -> Result<Cluster> {
    Ok(Cluster {
        rect: *rect,
        position,
        count,
        residual: f.eval(position)?.value.norm(),
        polished,
    })
}

fn subdivide<F: ComplexFunction + ?Sized>(
    f: &F,
    rect: &Rectangle,
    count: usize,
    opts: &IsolateOptions,
) -> Result<Vec<Cluster>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    if rect.diameter() <= opts.polish_diameter {
        if let Some(z) = newton_polish(f, rect.center(), rect, count) {
            if count == 1 {
                return Ok(vec![cluster_at(f, rect, z, 1, true)?]);
            }
            // a genuine m-fold zero shows winding m on a tiny square
            let r = (1e-6 * z.norm().max(1.0)).min(0.25 * rect.width().min(rect.height()));
            let sq = Rectangle::square(z, r);
            let inside = rect.contains(Complex64::new(sq.sigma0, sq.t1))
                && rect.contains(Complex64::new(sq.sigma1, sq.t2));
            if inside {
                if let Ok(w) = boundary_winding(f, &sq, &opts.winding) {
                    if w.count == count as i64 {
                        return Ok(vec![cluster_at(f, rect, z, count, true)?]);
                    }
                }
            }
        }
    }
    if rect.diameter() < opts.cluster_diameter {
        return Ok(vec![cluster_at(f, rect, rect.center(), count, false)?]);
    }

    let mut last_err = None;
    for fraction in SPLIT_FRACTIONS {
        let (a, b) = rect.split(fraction);
        let (wa, wb) = rayon::join(
            || boundary_winding(f, &a, &opts.winding),
            || boundary_winding(f, &b, &opts.winding),
        );
        let (wa, wb) = match (wa, wb) {
            (Ok(wa), Ok(wb)) => (wa, wb),
            (Err(e), _) | (_, Err(e)) => {
                last_err = Some(e);
                continue;
            }
        };
        if wa.count < 0 || wb.count < 0 || (wa.count + wb.count) as usize != count {
            last_err = Some(Error::BoundaryUnresolvable {
                rect: format!(
                    "children of {rect} count {} + {} != {count}",
                    wa.count, wb.count
                ),
            });
            continue;
        }
        let (ra, rb) = rayon::join(
            || subdivide(f, &a, wa.count as usize, opts),
            || subdivide(f, &b, wb.count as usize, opts),
        );
        let mut out = ra?;
        out.extend(rb?);
        return Ok(out);
    }
    Err(last_err.unwrap_or(Error::BoundaryUnresolvable {
        rect: rect.to_string(),
    }))
}
