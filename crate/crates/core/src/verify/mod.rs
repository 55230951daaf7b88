//! Numeric oracles: quadrature of the Björling integral, mean curvature by
//! finite differences, and Fresnel integrals.

pub mod curvature;
pub mod fresnel;
pub mod quadrature;

use num_complex::Complex64;
use thiserror::Error;

use crate::bjorling::SurfaceError;
use crate::polyexp::PolyExpError;

pub use curvature::mean_curvature_numeric;
pub use fresnel::fresnel;
pub use quadrature::{bjorling_quadrature, gauss_legendre, QuadratureOutcome, QuadratureSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("|z| = {0} is outside the supported Fresnel domain")]
    DomainTooLarge(f64),
    #[error("surface is singular at {0}")]
    SingularPoint(Complex64),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    PolyExp(#[from] PolyExpError),
}
