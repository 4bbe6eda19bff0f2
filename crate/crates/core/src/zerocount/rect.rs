use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Open axis-aligned rectangle (sigma0, sigma1) × (t1, t2) in the s-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub sigma0: f64,
    pub sigma1: f64,
    pub t1: f64,
    pub t2: f64,
}

impl Rectangle {
    pub fn new(sigma0: f64, sigma1: f64, t1: f64, t2: f64) -> Result<Self> {
        let all_finite = [sigma0, sigma1, t1, t2].iter().all(|x| x.is_finite());
        if !all_finite || sigma0 >= sigma1 || t1 >= t2 {
            return Err(Error::InvalidRectangle(format!(
                "({sigma0}, {sigma1}) x ({t1}, {t2})"
            )));
        }
        Ok(Self {
            sigma0,
            sigma1,
            t1,
            t2,
        })
    }

    /// Square of half-side `r` centred at `c`.
    pub fn square(c: Complex64, r: f64) -> Self {
        Self {
            sigma0: c.re - r,
            sigma1: c.re + r,
            t1: c.im - r,
            t2: c.im + r,
        }
    }

    pub fn width(&self) -> f64 {
        self.sigma1 - self.sigma0
    }

    pub fn height(&self) -> f64 {
        self.t2 - self.t1
    }

    pub fn diameter(&self) -> f64 {
        self.width().hypot(self.height())
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.sigma0 + self.sigma1), 0.5 * (self.t1 + self.t2))
    }

    /// Counter-clockwise corners starting at the lower left.
    pub fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.sigma0, self.t1),
            Complex64::new(self.sigma1, self.t1),
            Complex64::new(self.sigma1, self.t2),
            Complex64::new(self.sigma0, self.t2),
        ]
    }

    pub fn contains(&self, s: Complex64) -> bool {
        s.re > self.sigma0 && s.re < self.sigma1 && s.im > self.t1 && s.im < self.t2
    }

    /// The rectangle grown by `d` on every side.
    pub fn dilated(&self, d: f64) -> Self {
        Self {
            sigma0: self.sigma0 - d,
            sigma1: self.sigma1 + d,
            t1: self.t1 - d,
            t2: self.t2 + d,
        }
    }

    /// Splits across the longer side at `fraction` of its length.
    pub fn split(&self, fraction: f64) -> (Self, Self) {
        if self.width() >= self.height() {
            let cut = self.sigma0 + fraction * self.width();
            (
                Self {
                    sigma1: cut,
                    ..*self
                },
                Self {
                    sigma0: cut,
                    ..*self
                },
            )
        } else {
            let cut = self.t1 + fraction * self.height();
            (Self { t2: cut, ..*self }, Self { t1: cut, ..*self })
        }
    }

    /// Tiles into `cols` × `rows` equal pieces, ordered by row then column.
    pub fn tiles(&self, cols: usize, rows: usize) -> Vec<Self> {
        let dw = self.width() / cols as f64;
        let dh = self.height() / rows as f64;
        let mut out = Vec::with_capacity(cols * rows);
        for r in 0..rows {
            for c in 0..cols {
                let sigma1 = if c + 1 == cols { self.sigma1 } else { self.sigma0 + (c + 1) as f64 * dw };
                let t2 = if r + 1 == rows { self.t2 } else { self.t1 + (r + 1) as f64 * dh };
                out.push(Self {
                    sigma0: self.sigma0 + c as f64 * dw,
                    sigma1,
                    t1: self.t1 + r as f64 * dh,
                    t2,
                });
            }
        }
        out
    }
}

impl fmt::Display for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) x ({}, {})", self.sigma0, self.sigma1, self.t1, self.t2)
    }
}
