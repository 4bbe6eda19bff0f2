//! Approximations Ξ_F to the Ramanujan Ξ-function: evaluation by contour
//! quadrature, zero location and counting by the argument principle, the
//! companion Dirichlet polynomials, and numerical checks of the zero
//! distribution statements at desk scale (|Im s| ≤ 40).

pub mod cli;
pub mod defaults;
pub mod dirichlet;
pub mod error;
pub mod numerics;
pub mod profiles;
pub mod theorems;
pub mod xi;
pub mod zerocount;

pub use error::{Error, Result};
