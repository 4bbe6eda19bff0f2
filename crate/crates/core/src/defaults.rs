//! Every tunable default in one place. `xizeros --print-defaults` prints
//! [`Defaults::current`] as JSON.

use serde::Serialize;

use crate::numerics::PrecisionBudget;

/// Half-width of the vertical strip in which C_F zeros are counted.
pub const BETA: f64 = 3.0;
/// Grid step of the sign-change scan along Re s = 0.
pub const LINE_STEP: f64 = 0.05;
/// |Re s| at or below this counts as "on the line".
pub const LINE_TOL: f64 = 1e-9;
/// Two zeros closer than this are the same zero.
pub const DEDUP_DISTANCE: f64 = 1e-8;
/// Bisection stops when the bracket is shorter than this.
pub const BISECT_WIDTH: f64 = 1e-10;
/// Additive slack standing in for O(1) terms in the counting inequalities.
pub const C_SLACK: f64 = 64.0;
/// Largest admissible constant in |N(T) − main term| ≤ C log T.
pub const KI_C_MAX: f64 = 10.0;
/// Zeros of C_F off the line or multiple are tolerated below this height.
pub const T_EXCEPT: f64 = 5.0;
/// Truncation index of the product in φ.
pub const PRODUCT_TERMS: usize = crate::profiles::DEFAULT_PRODUCT_TERMS;
/// Starting half-side of the multiplicity-classification square.
pub const CLASSIFY_RADIUS: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct Defaults {
    pub budget: PrecisionBudget,
    pub beta: f64,
    pub line_step: f64,
    pub line_tol: f64,
    pub dedup_distance: f64,
    pub bisect_width: f64,
    pub c_slack: f64,
    pub ki_c_max: f64,
    pub t_except: f64,
    pub product_terms: usize,
    pub classify_radius: f64,
    pub contour_shift_margin: f64,
}

impl Defaults {
    pub fn current() -> Self {
        Self {
            budget: PrecisionBudget::default(),
            beta: BETA,
            line_step: LINE_STEP,
            line_tol: LINE_TOL,
            dedup_distance: DEDUP_DISTANCE,
            bisect_width: BISECT_WIDTH,
            c_slack: C_SLACK,
            ki_c_max: KI_C_MAX,
            t_except: T_EXCEPT,
            product_terms: PRODUCT_TERMS,
            classify_radius: CLASSIFY_RADIUS,
            contour_shift_margin: crate::numerics::SHIFT_MARGIN,
        }
    }
}
