//! Numeric tolerances used across the crate.
//!
//! Every threshold lives here so that a failing check can be traced back to a
//! single named constant. Oracle tolerances sit one to two orders of magnitude
//! above the arithmetic noise floor measured on the circular helicoid.

/// Two exponential rates closer than this are the same rate.
pub const RATE_MERGE: f64 = 1e-12;

/// A merged coefficient is dropped when it is this small relative to the sum
/// of the magnitudes that produced it.
pub const CANCELLATION: f64 = 1e-11;

/// Coefficient-wise agreement for symbolic identities that pass through
/// irrational constants.
pub const COEFF_IDENTITY: f64 = 1e-12;

/// Real-on-axis pairing tolerance (relative).
pub const REAL_ON_AXIS: f64 = 1e-10;

/// Singular point threshold: `|Xu x Xv| < SINGULAR * scale^2`.
pub const SINGULAR: f64 = 1e-14;

/// Relative tolerance when matching roots of two polynomials.
pub const ROOT_MATCH: f64 = 1e-8;

/// Radius (relative) inside which roots count as one multiple root.
pub const ROOT_CLUSTER: f64 = 1e-6;

/// Largest substitution denominator searched for `w = exp(i t / d)`.
pub const MAX_SUBSTITUTION_DENOMINATOR: i64 = 64;

/// Weierstrass consistency check on the unit circle (relative).
pub const WEIERSTRASS_CONSISTENCY: f64 = 1e-9;

/// Closed form against quadrature, absolute after scaling by the largest
/// position norm on the grid.
pub const QUADRATURE_AGREEMENT: f64 = 1e-8;

/// Straight against L-shaped integration path.
pub const PATH_INDEPENDENCE: f64 = 1e-9;

/// Mean curvature residual from fourth-order finite differences.
pub const MEAN_CURVATURE: f64 = 1e-5;

/// Conformality residual for closed-form tangents.
pub const CONFORMALITY: f64 = 1e-9;

/// Position interpolation along the core curve (relative to `1 + |c|`).
pub const INTERPOLATION_POSITION: f64 = 1e-12;

/// Angle between surface normal and prescribed normal along the core curve.
pub const INTERPOLATION_NORMAL_RAD: f64 = 1e-8;

/// Fresnel series against quadrature.
pub const FRESNEL_AGREEMENT: f64 = 1e-10;

/// Closing parameter values.
pub const CLOSING_LAMBDA: f64 = 1e-12;
