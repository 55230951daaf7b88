//! Fresnel integrals `C(z) = int_0^z cos(s^2) ds`, `S(z) = int_0^z sin(s^2) ds`
//! for complex `z`, unnormalised.

use num_complex::Complex64;

use super::quadrature::{integrate_segment, QuadratureSpec};
use super::VerifyError;

/// Radius up to which the power series is used.
pub const SERIES_RADIUS: f64 = 4.0;
/// Largest supported `|z|`.
pub const MAX_RADIUS: f64 = 8.0;

/// `(C(z), S(z))`.
pub fn fresnel(z: Complex64) -> Result<(Complex64, Complex64), VerifyError> {
    let r = z.norm();
    if !(r <= MAX_RADIUS) {
        return Err(VerifyError::DomainTooLarge(r));
    }
    if r <= SERIES_RADIUS {
        Ok(fresnel_series(z))
    } else {
        Ok(fresnel_quadrature(z))
    }
}

/// `C = sum (-1)^m z^(4m+1) / ((2m)! (4m+1))`, `S = sum (-1)^m z^(4m+3) / ((2m+1)! (4m+3))`.
pub fn fresnel_series(z: Complex64) -> (Complex64, Complex64) {
    let z2 = z * z;
    let z4 = z2 * z2;
    // power = (-1)^m z^(4m+1)/(2m)!; the S term shares it times z^2/(2m+1)
    let mut power = z;
    let mut c = Complex64::new(0.0, 0.0);
    let mut s = Complex64::new(0.0, 0.0);
    for m in 0..200 {
        let mf = m as f64;
        let cterm = power / (4.0 * mf + 1.0);
        let spow = power * z2 / (2.0 * mf + 1.0);
        let sterm = spow / (4.0 * mf + 3.0);
        let (c_new, s_new) = (c + cterm, s + sterm);
        if m > 2 && c_new == c && s_new == s {
            break;
        }
        c = c_new;
        s = s_new;
        power = -power * z4 / ((2.0 * mf + 1.0) * (2.0 * mf + 2.0));
    }
    (c, s)
}

/// Composite Gauss-Legendre along the segment `0 -> z`.
pub fn fresnel_quadrature(z: Complex64) -> (Complex64, Complex64) {
    let spec = QuadratureSpec { order: 20, panels: 8 + (8.0 * z.norm()).ceil() as usize };
    let zero = Complex64::new(0.0, 0.0);
    let c = integrate_segment(|s| Ok((s * s).cos()), zero, z, spec).expect("no overflow on a bounded segment");
    let s = integrate_segment(|s| Ok((s * s).sin()), zero, z, spec).expect("no overflow on a bounded segment");
    (c, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_zero_and_one() {
        let (c, s) = fresnel(Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!((c, s), (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)));
        let (c, s) = fresnel(Complex64::new(1.0, 0.0)).unwrap();
        assert!((c.re - 0.904_524_237_900_272).abs() < 1e-13);
        assert!((s.re - 0.310_268_301_723_381).abs() < 1e-13);
    }

    #[test]
    fn derivative_is_cos_of_square() {
        let h = 1e-5;
        let z = Complex64::new(1.0, 0.0);
        let (cp, _) = fresnel(z + h).unwrap();
        let (cm, _) = fresnel(z - h).unwrap();
        assert!(((cp - cm) / (2.0 * h) - (z * z).cos()).norm() < 1e-8);
    }

    #[test]
    fn outside_domain() {
        assert!(matches!(fresnel(Complex64::new(9.0, 0.0)), Err(VerifyError::DomainTooLarge(_))));
    }
}
