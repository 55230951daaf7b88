//! Surface through the lifted clothoid, in terms of Fresnel integrals.
//!
//! With `G = ((1 + l)/(1 - l)) e^{i z^2}` and `dh = ((l^2 - 1)/(2 l)) dz` the
//! Weierstrass integrand is
//! `(1/(2l)) (2l cos z^2 + i(l^2+1) sin z^2, 2l sin z^2 - i(l^2+1) cos z^2, l^2 - 1)`.

use nalgebra::Vector3;
use num_complex::Complex64;

use super::CurveError;
use crate::bjorling::{Surface, SurfaceError, SurfacePoint};
use crate::verify::fresnel;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClothoidSurface {
    lambda: f64,
}

impl ClothoidSurface {
    pub fn new(lambda: f64) -> Result<ClothoidSurface, CurveError> {
        if !lambda.is_finite() || lambda == 0.0 || lambda.abs() == 1.0 {
            return Err(CurveError::InvalidLambda(lambda));
        }
        Ok(ClothoidSurface { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn gauss_map_text(&self) -> String {
        let l = self.lambda;
        format!("{}*exp(i*z^2)", (1.0 + l) / (1.0 - l))
    }

    pub fn height_differential_text(&self) -> String {
        let l = self.lambda;
        format!("{}*dz", (l * l - 1.0) / (2.0 * l))
    }

    fn coefficients(&self) -> (f64, f64, f64) {
        let l = self.lambda;
        (1.0, (l * l + 1.0) / (2.0 * l), (l * l - 1.0) / (2.0 * l))
    }

    /// Holomorphic derivative of the surface.
    pub fn phi(&self, z: Complex64) -> [Complex64; 3] {
        let (one, k, h) = self.coefficients();
        let i = Complex64::new(0.0, 1.0);
        let (c, s) = ((z * z).cos(), (z * z).sin());
        [c * one + i * k * s, s * one - i * k * c, Complex64::new(h, 0.0)]
    }

    /// `(C(t), S(t), t (l^2 - 1)/(2 l))`.
    pub fn core_point(&self, t: f64) -> Result<Vector3<f64>, SurfaceError> {
        let (c, s) = fresnel(Complex64::new(t, 0.0)).map_err(|e| SurfaceError::Domain(e.to_string()))?;
        Ok(Vector3::new(c.re, s.re, t * self.coefficients().2))
    }

    /// Prescribed unit normal along the core curve.
    pub fn core_normal(&self, t: f64) -> Vector3<f64> {
        let l = self.lambda;
        let (s, c) = (t * t).sin_cos();
        Vector3::new((1.0 - l * l) * c, (1.0 - l * l) * s, 2.0 * l) / (l * l + 1.0)
    }
}

impl Surface for ClothoidSurface {
    fn eval_point(&self, z: Complex64) -> Result<SurfacePoint, SurfaceError> {
        let (c, s) = fresnel(z).map_err(|e| SurfaceError::Domain(e.to_string()))?;
        let (one, k, h) = self.coefficients();
        let i = Complex64::new(0.0, 1.0);
        let f = [c * one + i * k * s, s * one - i * k * c, z * h];
        let phi = self.phi(z);
        let position = Vector3::from_fn(|r, _| f[r].re);
        let xu = Vector3::from_fn(|r, _| phi[r].re);
        let xv = Vector3::from_fn(|r, _| -phi[r].im);
        let scale: f64 = phi.iter().map(|p| p.norm()).sum();
        Ok(SurfacePoint::from_tangents(position, xu, xv, scale))
    }
}
