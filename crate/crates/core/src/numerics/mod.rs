//! Precision-aware kernels shared by every other module: complex log-Gamma,
//! Fourier/Laplace quadrature of doubly-exponentially decaying profiles, and
//! phase unwrapping along sampled paths.

mod argument;
mod gamma;
mod quadrature;

pub use argument::{continuous_argument, principal_step};
pub use gamma::log_gamma;
pub use quadrature::{
    fourier_integral, laplace_transform, AnalyticProfile, CoshEnvelope, PrecisionBudget, Profile,
    QuadratureResult, DEFAULT_T_CUTOFF, SHIFT_MARGIN,
};
