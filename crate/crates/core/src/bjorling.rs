//! Björling surfaces from a frame and a spinning normal.
//!
//! With core curve `c` and unit normal `n` the surface is
//! `X(z) = Re(c(z) - i F(z))` where `F' = n x c'`. When the normal spins
//! inside a scaled rotation frame, `n x c'` is itself an exponential
//! polynomial, so `F` and therefore `X` are closed form on all of `C`.

use nalgebra::Vector3;
use num_complex::Complex64;
use thiserror::Error;

use crate::frames::FrameCurve;
use crate::polyexp::{PolyExp, PolyExpError, PolyExpVec3, Rate};
use crate::tolerances;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    PolyExp(#[from] PolyExpError),
    #[error("{0}")]
    Domain(String),
}

/// Normal `cos(a t + b) e_p + sin(a t + b) e_q`, over `mu`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinSpec {
    pub a: f64,
    pub b: f64,
}

impl SpinSpec {
    pub fn new(a: f64, b: f64) -> SpinSpec {
        SpinSpec { a, b }
    }

    fn rate(&self) -> Rate {
        Rate::imaginary_f64(self.a)
    }

    pub fn cos(&self) -> PolyExp {
        PolyExp::cos_rate(self.rate(), self.b)
    }

    pub fn sin(&self) -> PolyExp {
        PolyExp::sin_rate(self.rate(), self.b)
    }
}

/// Numerator and denominator of the unit normal along the core curve.
pub fn spin_normal(frame: &FrameCurve, spin: SpinSpec) -> (PolyExpVec3, PolyExp) {
    let (ep, eq) = frame.normal_pair();
    let num = ep.mul_scalar(&spin.cos()).add(&eq.mul_scalar(&spin.sin()));
    (num, frame.mu().clone())
}

/// `n x c'`, which is `sin(at+b) e_p - cos(at+b) e_q` for a right-handed frame.
pub fn spin_integrand(frame: &FrameCurve, spin: SpinSpec) -> PolyExpVec3 {
    let (ep, eq) = frame.normal_pair();
    ep.mul_scalar(&spin.sin()).sub(&eq.mul_scalar(&spin.cos()))
}

/// Closed-form surface data.
#[derive(Clone, Debug, PartialEq)]
pub struct BjorlingSurface {
    /// Core curve, `c(t0) = offset`.
    pub c: PolyExpVec3,
    /// Antiderivative of `n x c'` with `F(t0) = 0`.
    pub f: PolyExpVec3,
    pub t0: f64,
    pub offset: [f64; 3],
    velocity: PolyExpVec3,
    integrand: PolyExpVec3,
}

/// Position, tangents and normal at one parameter value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfacePoint {
    pub position: Vector3<f64>,
    /// Zero at singular points.
    pub unit_normal: Vector3<f64>,
    /// `|X_u|`; zero at singular points.
    pub conformal_factor: f64,
    pub xu: Vector3<f64>,
    pub xv: Vector3<f64>,
    pub singular: bool,
}

impl SurfacePoint {
    /// `scale` is the magnitude the tangents are built from; the point is
    /// singular when `|X_u x X_v|` drops below `SINGULAR * scale^2`.
    pub fn from_tangents(position: Vector3<f64>, xu: Vector3<f64>, xv: Vector3<f64>, scale: f64) -> SurfacePoint {
        let cross = xu.cross(&xv);
        let area = cross.norm();
        let singular = !(area >= tolerances::SINGULAR * scale * scale) || area == 0.0;
        SurfacePoint {
            position,
            unit_normal: if singular { Vector3::zeros() } else { cross / area },
            conformal_factor: if singular { 0.0 } else { xu.norm() },
            xu,
            xv,
            singular,
        }
    }
}

/// Anything that can be sampled as a surface over the `z = u + i v` plane.
pub trait Surface: Sync {
    fn eval_point(&self, z: Complex64) -> Result<SurfacePoint, SurfaceError>;

    fn position(&self, z: Complex64) -> Result<Vector3<f64>, SurfaceError> {
        Ok(self.eval_point(z)?.position)
    }
}

/// Integrates the frame's velocity column and the spin integrand from `t0`.
pub fn build_surface(frame: &FrameCurve, spin: SpinSpec, t0: f64, offset: [f64; 3]) -> BjorlingSurface {
    let velocity = frame.tangent().clone();
    let integrand = spin_integrand(frame, spin);
    BjorlingSurface::from_parts(velocity, integrand, t0, offset)
}

impl BjorlingSurface {
    /// Surface from `c'` and `n x c'` given directly.
    pub fn from_parts(velocity: PolyExpVec3, integrand: PolyExpVec3, t0: f64, offset: [f64; 3]) -> BjorlingSurface {
        let c = velocity.antideriv(t0).add(&PolyExpVec3::constant(offset));
        let f = integrand.antideriv(t0);
        BjorlingSurface { c, f, t0, offset, velocity, integrand }
    }

    pub fn velocity(&self) -> &PolyExpVec3 {
        &self.velocity
    }

    pub fn integrand(&self) -> &PolyExpVec3 {
        &self.integrand
    }

    /// Holomorphic derivative `c' - i (n x c')`.
    pub fn phi(&self) -> PolyExpVec3 {
        self.velocity.sub(&self.integrand.scale(Complex64::new(0.0, 1.0)))
    }

    /// All six component functions pair into conjugates.
    pub fn is_real(&self) -> bool {
        self.c.is_real_on_axis(tolerances::REAL_ON_AXIS) && self.f.is_real_on_axis(tolerances::REAL_ON_AXIS)
    }

    pub fn core_point(&self, t: f64) -> Result<Vector3<f64>, PolyExpError> {
        let c = self.c.eval(Complex64::new(t, 0.0))?;
        Ok(Vector3::new(c[0].re, c[1].re, c[2].re))
    }
}

impl Surface for BjorlingSurface {
    fn eval_point(&self, z: Complex64) -> Result<SurfacePoint, SurfaceError> {
        let i = Complex64::new(0.0, 1.0);
        let c = self.c.eval(z)?;
        let f = self.f.eval(z)?;
        let dc = self.velocity.eval(z)?;
        let df = self.integrand.eval(z)?;
        let position = Vector3::from_fn(|k, _| (c[k] - i * f[k]).re);
        // X = Re Psi with Psi' = phi, so X_u = Re phi and X_v = Re(i phi) = -Im phi.
        let phi: [Complex64; 3] = std::array::from_fn(|k| dc[k] - i * df[k]);
        let xu = Vector3::from_fn(|k, _| phi[k].re);
        let xv = Vector3::from_fn(|k, _| -phi[k].im);
        let mut scale = 0.0;
        for p in self.velocity.components().into_iter().chain(self.integrand.components()) {
            scale += p.eval_magnitude(z)?;
        }
        Ok(SurfacePoint::from_tangents(position, xu, xv, scale))
    }
}
