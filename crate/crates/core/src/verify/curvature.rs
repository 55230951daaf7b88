//! Mean curvature from finite differences of the position map.

use nalgebra::Vector3;
use num_complex::Complex64;

use super::VerifyError;
use crate::bjorling::Surface;

fn pos(s: &dyn Surface, z: Complex64) -> Result<Vector3<f64>, VerifyError> {
    Ok(s.position(z)?)
}

/// Fourth-order first and second differences along direction `dir`.
fn derivatives(s: &dyn Surface, z: Complex64, dir: Complex64, h: f64) -> Result<(Vector3<f64>, Vector3<f64>), VerifyError> {
    let p = |k: f64| pos(s, z + dir * (k * h));
    let (m2, m1, c, p1, p2) = (p(-2.0)?, p(-1.0)?, p(0.0)?, p(1.0)?, p(2.0)?);
    let first = (m2 - p2 + (p1 - m1) * 8.0) / (12.0 * h);
    let second = (-m2 - p2 + (p1 + m1) * 16.0 - c * 30.0) / (12.0 * h * h);
    Ok((first, second))
}

/// `|H| * |X_u|` at `z`, which is scale free and zero on minimal surfaces.
pub fn mean_curvature_numeric(s: &dyn Surface, z: Complex64, h: f64) -> Result<f64, VerifyError> {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let (xu, xuu) = derivatives(s, z, one, h)?;
    let (xv, xvv) = derivatives(s, z, i, h)?;
    // mixed derivative from the two diagonals
    let (_, xdd) = derivatives(s, z, (one + i) / 2f64.sqrt(), h)?;
    let (_, xdd2) = derivatives(s, z, (one - i) / 2f64.sqrt(), h)?;
    let xuv = (xdd - xdd2) / 2.0;
    let (e_, f_, g_) = (xu.dot(&xu), xu.dot(&xv), xv.dot(&xv));
    let det = e_ * g_ - f_ * f_;
    let cross = xu.cross(&xv);
    if !(det > 1e-20 * (e_ * g_).max(f64::MIN_POSITIVE)) || cross.norm() == 0.0 {
        return Err(VerifyError::SingularPoint(z));
    }
    let n = cross / cross.norm();
    let (l, m, nn) = (n.dot(&xuu), n.dot(&xuv), n.dot(&xvv));
    let h_mean = (l * g_ - 2.0 * m * f_ + nn * e_) / (2.0 * det);
    Ok(h_mean.abs() * e_.sqrt())
}
