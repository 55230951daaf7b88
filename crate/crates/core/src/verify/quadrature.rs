//! Composite Gauss-Legendre integration of the Björling integrand along
//! complex paths, used as an oracle for the closed-form surfaces.

use nalgebra::{DMatrix, SymmetricEigen, Vector3};
use num_complex::Complex64;

use crate::polyexp::{PolyExpError, PolyExpVec3};

/// Nodes per panel and number of panels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub order: usize,
    pub panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { order: 16, panels: 24 }
    }
}

/// Gauss-Legendre rule on `[-1, 1]`, nodes ascending.
///
/// Golub-Welsch: the nodes are the eigenvalues of the Jacobi matrix of the
/// Legendre recurrence and the weights are `2 v_0^2` from the eigenvectors.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order.max(1);
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let k_f = k as f64;
        let beta = k_f / (4.0 * k_f * k_f - 1.0).sqrt();
        jacobi[(k, k - 1)] = beta;
        jacobi[(k - 1, k)] = beta;
    }
    let eig = SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> =
        (0..n).map(|k| (eig.eigenvalues[k], 2.0 * eig.eigenvectors[(0, k)].powi(2))).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    // symmetrise so the rule is exact on odd functions
    for k in 0..n / 2 {
        let (x, w) = (pairs[n - 1 - k].0 - pairs[k].0, pairs[k].1 + pairs[n - 1 - k].1);
        pairs[k] = (-x / 2.0, w / 2.0);
        pairs[n - 1 - k] = (x / 2.0, w / 2.0);
    }
    if n % 2 == 1 {
        pairs[n / 2].0 = 0.0;
    }
    pairs.into_iter().unzip()
}

/// Integral of a scalar function along the segment `a -> b`.
pub fn integrate_segment<F>(f: F, a: Complex64, b: Complex64, spec: QuadratureSpec) -> Result<Complex64, PolyExpError>
where
    F: Fn(Complex64) -> Result<Complex64, PolyExpError>,
{
    let (nodes, weights) = gauss_legendre(spec.order);
    let panels = spec.panels.max(1);
    let step = (b - a) / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = a + step * (p as f64 + 0.5);
        for (x, w) in nodes.iter().zip(&weights) {
            total += f(mid + step * (0.5 * x))? * (w * 0.5);
        }
    }
    Ok(total * step)
}

fn integrate_vec(v: &PolyExpVec3, a: Complex64, b: Complex64, spec: QuadratureSpec) -> Result<[Complex64; 3], PolyExpError> {
    let [x, y, z] = v.components();
    Ok([
        integrate_segment(|s| x.eval(s), a, b, spec)?,
        integrate_segment(|s| y.eval(s), a, b, spec)?,
        integrate_segment(|s| z.eval(s), a, b, spec)?,
    ])
}

/// Positions from the straight and the L-shaped path, and their distance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureOutcome {
    pub straight: Vector3<f64>,
    /// Along the real axis to `Re z`, then vertically.
    pub l_path: Vector3<f64>,
    pub path_residual: f64,
}

/// `Re(c(z) - i * integral of integrand from t0 to z)` by quadrature.
pub fn bjorling_quadrature(
    c: &PolyExpVec3,
    integrand: &PolyExpVec3,
    t0: f64,
    z: Complex64,
    spec: QuadratureSpec,
) -> Result<QuadratureOutcome, PolyExpError> {
    let i = Complex64::new(0.0, 1.0);
    let start = Complex64::new(t0, 0.0);
    let corner = Complex64::new(z.re, 0.0);
    let cz = c.eval(z)?;
    let straight = integrate_vec(integrand, start, z, spec)?;
    let first = integrate_vec(integrand, start, corner, spec)?;
    let second = integrate_vec(integrand, corner, z, spec)?;
    let position = |f: [Complex64; 3]| Vector3::from_fn(|k, _| (cz[k] - i * f[k]).re);
    let straight = position(straight);
    let l_path = position(std::array::from_fn(|k| first[k] + second[k]));
    Ok(QuadratureOutcome { straight, l_path, path_residual: (straight - l_path).norm() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let (x, w) = gauss_legendre(8);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // exact through degree 15
        let m14: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert!((m14 - 2.0 / 15.0).abs() < 1e-14);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn segment_integral_of_exponential() {
        let a = Complex64::new(0.0, 0.0);
        let b = Complex64::new(1.0, 2.0);
        let got = integrate_segment(|s| Ok(s.exp()), a, b, QuadratureSpec::default()).unwrap();
        assert!((got - (b.exp() - 1.0)).norm() < 1e-13);
    }
}
