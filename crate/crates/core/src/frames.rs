//! Scaled rotation frames along a curve.
//!
//! A [`FrameCurve`] is a 3x3 matrix `M(t)` of exponential polynomials with a
//! scalar `mu(t)` such that `M / mu` is a rotation for every real `t`. One
//! column is the velocity of the core curve, the other two span its normal
//! plane. Frames come from quaternion curves ([`phi_of_quaternion`]) or from
//! lifting a plane curve ([`lift_plane_curve`]).

use num_complex::Complex64;
use thiserror::Error;

use crate::polyexp::{PolyExp, PolyExpError, PolyExpVec3};
use crate::tolerances;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("quaternion curve vanishes identically")]
    DegenerateQuaternion,
    #[error("{0} is not real on the real axis")]
    NotRealOnAxis(&'static str),
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("quotient times lambda does not equal x'^2 + y'^2")]
    QuotientMismatch,
    #[error("lambda vanishes at t = {0}")]
    LambdaVanishes(f64),
    #[error("plane curve has zero speed")]
    DegenerateCurve,
    #[error("frame identity fails: {0}")]
    InvalidFrame(String),
    #[error(transparent)]
    PolyExp(#[from] PolyExpError),
}

/// Quaternion-valued curve `q1 + q2 i + q3 j + q4 k`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionCurve {
    pub q: [PolyExp; 4],
}

impl QuaternionCurve {
    pub fn new(q1: PolyExp, q2: PolyExp, q3: PolyExp, q4: PolyExp) -> QuaternionCurve {
        QuaternionCurve { q: [q1, q2, q3, q4] }
    }

    pub fn constant(v: [f64; 4]) -> QuaternionCurve {
        QuaternionCurve { q: v.map(PolyExp::constant) }
    }

    pub fn norm_squared(&self) -> PolyExp {
        PolyExp::from_terms(self.q.iter().flat_map(|c| (c * c).terms().to_vec()))
    }

    pub fn scale(&self, c: f64) -> QuaternionCurve {
        QuaternionCurve { q: self.q.clone().map(|p| p.scale(c)) }
    }
}

/// Hamilton product, component-wise in exponential polynomials.
pub fn quat_mul(p: &QuaternionCurve, q: &QuaternionCurve) -> QuaternionCurve {
    let [a1, b1, c1, d1] = &p.q;
    let [a2, b2, c2, d2] = &q.q;
    let sum = |parts: [(f64, &PolyExp, &PolyExp); 4]| {
        PolyExp::from_terms(parts.iter().flat_map(|(s, x, y)| (*x * *y).scale(*s).terms().to_vec()))
    };
    QuaternionCurve::new(
        sum([(1.0, a1, a2), (-1.0, b1, b2), (-1.0, c1, c2), (-1.0, d1, d2)]),
        sum([(1.0, a1, b2), (1.0, b1, a2), (1.0, c1, d2), (-1.0, d1, c2)]),
        sum([(1.0, a1, c2), (-1.0, b1, d2), (1.0, c1, a2), (1.0, d1, b2)]),
        sum([(1.0, a1, d2), (1.0, b1, c2), (-1.0, c1, b2), (1.0, d1, a2)]),
    )
}

/// Matrix of exponential polynomials, `m[row][col]`.
pub type PolyMat3 = [[PolyExp; 3]; 3];

/// `R(v) = 2 v v^T - |v|^2 I`: half-turn about `v` scaled by `|v|^2`.
pub fn rotation_scaling(v: &PolyExpVec3) -> PolyMat3 {
    let c = v.components();
    let norm2 = v.dot(v);
    std::array::from_fn(|r| {
        std::array::from_fn(|k| {
            let outer = (c[r] * c[k]).scale(2.0);
            if r == k {
                &outer - &norm2
            } else {
                outer
            }
        })
    })
}

/// Columns of a frame with scale `mu`, validated at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameCurve {
    cols: [PolyExpVec3; 3],
    mu: PolyExp,
    tangent: usize,
    normals: (usize, usize),
}

impl FrameCurve {
    /// Checks `M^T M = mu^2 I`, `det M = mu^3`, that `mu` is real and does
    /// not vanish on samples, and that `(tangent, normals)` is a cyclic
    /// ordering of the column indices (0-based).
    pub fn new(
        cols: [PolyExpVec3; 3],
        mu: PolyExp,
        tangent: usize,
        normals: (usize, usize),
    ) -> Result<FrameCurve, FrameError> {
        let cyclic = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];
        if !cyclic.contains(&(tangent, normals.0, normals.1)) {
            return Err(FrameError::InvalidFrame(format!(
                "columns ({tangent}, {}, {}) are not a cyclic ordering",
                normals.0, normals.1
            )));
        }
        if !mu.is_real_on_axis(tolerances::REAL_ON_AXIS) {
            return Err(FrameError::NotRealOnAxis("mu"));
        }
        for k in 0..64 {
            let t = -10.0 + 20.0 * k as f64 / 63.0;
            let m = mu.eval_real(t)?;
            if m.norm() <= tolerances::SINGULAR * (1.0 + mu.eval_magnitude(Complex64::new(t, 0.0))?) {
                return Err(FrameError::InvalidFrame(format!("mu vanishes near t = {t}")));
            }
        }
        let frame = FrameCurve { cols, mu, tangent, normals };
        frame.check_identities()?;
        Ok(frame)
    }

    fn check_identities(&self) -> Result<(), FrameError> {
        let mu2 = &self.mu * &self.mu;
        for r in 0..3 {
            for k in r..3 {
                let gram = self.cols[r].dot(&self.cols[k]);
                let diff = if r == k { &gram - &mu2 } else { gram };
                if !identity_holds(&diff, &mu2) {
                    return Err(FrameError::InvalidFrame(format!(
                        "column product ({r}, {k}) leaves {diff}"
                    )));
                }
            }
        }
        let det = self.cols[0].dot(&self.cols[1].cross(&self.cols[2]));
        let mu3 = &mu2 * &self.mu;
        let diff = &det - &mu3;
        if !identity_holds(&diff, &mu3) {
            return Err(FrameError::InvalidFrame(format!("det - mu^3 leaves {diff}")));
        }
        Ok(())
    }

    pub fn column(&self, k: usize) -> &PolyExpVec3 {
        &self.cols[k]
    }

    pub fn columns(&self) -> &[PolyExpVec3; 3] {
        &self.cols
    }

    pub fn mu(&self) -> &PolyExp {
        &self.mu
    }

    /// Index (0-based) of the velocity column.
    pub fn tangent_index(&self) -> usize {
        self.tangent
    }

    /// Indices (0-based) of the two normal columns, in spin order.
    pub fn normal_indices(&self) -> (usize, usize) {
        self.normals
    }

    pub fn tangent(&self) -> &PolyExpVec3 {
        &self.cols[self.tangent]
    }

    pub fn normal_pair(&self) -> (&PolyExpVec3, &PolyExpVec3) {
        (&self.cols[self.normals.0], &self.cols[self.normals.1])
    }

    pub fn entry(&self, row: usize, col: usize) -> &PolyExp {
        self.cols[col].components()[row]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|r| (0..3).all(|k| self.entry(r, k) == self.entry(k, r)))
    }

    /// Numeric matrix at `t`, `m[row][col]`.
    pub fn eval(&self, t: Complex64) -> Result<[[Complex64; 3]; 3], PolyExpError> {
        let cols = [self.cols[0].eval(t)?, self.cols[1].eval(t)?, self.cols[2].eval(t)?];
        Ok(std::array::from_fn(|r| std::array::from_fn(|k| cols[k][r])))
    }

    /// Largest entry of `|M^T M / mu^2 - I|` over the given real samples.
    pub fn sampled_residual(&self, samples: &[f64]) -> Result<f64, PolyExpError> {
        let mut worst: f64 = 0.0;
        for &t in samples {
            let z = Complex64::new(t, 0.0);
            let m = self.eval(z)?;
            let mu2 = self.mu.eval(z)?.powu(2);
            for r in 0..3 {
                for k in 0..3 {
                    let g: Complex64 = (0..3).map(|i| m[i][r] * m[i][k]).sum();
                    let want = if r == k { 1.0 } else { 0.0 };
                    worst = worst.max((g / mu2 - want).norm());
                }
            }
        }
        Ok(worst)
    }
}

/// Zero after normalization, or negligible against the scale polynomial when
/// irrational constants leave rounding residue.
fn identity_holds(diff: &PolyExp, scale: &PolyExp) -> bool {
    diff.is_zero() || diff.max_coeff() <= tolerances::COEFF_IDENTITY * scale.max_coeff().max(1.0)
}

/// Frame of the scaled rotation `v -> q v conj(q)`; velocity is column 0.
pub fn phi_of_quaternion(q: &QuaternionCurve) -> Result<FrameCurve, FrameError> {
    for c in &q.q {
        if !c.is_real_on_axis(tolerances::REAL_ON_AXIS) {
            return Err(FrameError::NotRealOnAxis("quaternion component"));
        }
    }
    let mu = q.norm_squared();
    let degenerate = (0..16).all(|k| {
        let t = -7.5 + k as f64;
        mu.eval_real(t).map(|v| v.norm() <= tolerances::SINGULAR).unwrap_or(false)
    });
    if mu.is_zero() || degenerate {
        return Err(FrameError::DegenerateQuaternion);
    }
    let [q1, q2, q3, q4] = &q.q;
    let sq = |a: &PolyExp| a * a;
    let two = |a: &PolyExp, b: &PolyExp| (a * b).scale(2.0);
    let col0 = PolyExpVec3::new(
        &(&sq(q1) + &sq(q2)) - &(&sq(q3) + &sq(q4)),
        &two(q1, q4) + &two(q2, q3),
        &two(q2, q4) - &two(q1, q3),
    );
    let col1 = PolyExpVec3::new(
        &two(q2, q3) - &two(q1, q4),
        &(&sq(q1) - &sq(q2)) + &(&sq(q3) - &sq(q4)),
        &two(q1, q2) + &two(q3, q4),
    );
    let col2 = PolyExpVec3::new(
        &two(q1, q3) + &two(q2, q4),
        &two(q3, q4) - &two(q1, q2),
        &(&sq(q1) - &sq(q2)) - &(&sq(q3) - &sq(q4)),
    );
    FrameCurve::new([col0, col1, col2], mu, 0, (1, 2))
}

/// Lift parameter: a constant, or a function of `t`.
#[derive(Clone, Debug, PartialEq)]
pub enum LiftLambda {
    Constant(f64),
    Varying(PolyExp),
}

/// A plane curve lifted to space.
///
/// For a constant lambda `frame` is `R(x', y', lambda) / (2 lambda)` and its
/// velocity column equals `velocity`. For a varying lambda the normal
/// columns of that matrix are not exponential polynomials, so `frame` holds
/// `R / 2 = lambda * Psi` instead and `velocity` is the true `c'`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftResult {
    pub frame: FrameCurve,
    pub velocity: PolyExpVec3,
    pub z_coord: PolyExp,
    pub lambda: LiftLambda,
}

fn check_plane(xp: &PolyExp, yp: &PolyExp) -> Result<(), FrameError> {
    if !xp.is_real_on_axis(tolerances::REAL_ON_AXIS) || !yp.is_real_on_axis(tolerances::REAL_ON_AXIS) {
        return Err(FrameError::NotRealOnAxis("plane curve derivative"));
    }
    Ok(())
}

/// Lift of the plane curve with derivatives `(xp, yp)`; velocity is the
/// third column, normals the first two, and `z(0) = 0`.
pub fn lift_plane_curve(xp: &PolyExp, yp: &PolyExp, lambda: f64) -> Result<LiftResult, FrameError> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(FrameError::ZeroLambda);
    }
    check_plane(xp, yp)?;
    let v = PolyExpVec3::new(xp.clone(), yp.clone(), PolyExp::constant(lambda));
    let r = rotation_scaling(&v);
    let s = 1.0 / (2.0 * lambda);
    let cols: [PolyExpVec3; 3] = std::array::from_fn(|k| {
        PolyExpVec3::new(r[0][k].scale(s), r[1][k].scale(s), r[2][k].scale(s))
    });
    let speed2 = &(xp * xp) + &(yp * yp);
    let mu = (&speed2 + &PolyExp::constant(lambda * lambda)).scale(s);
    let frame = FrameCurve::new(cols, mu, 2, (0, 1))?;
    let velocity = frame.tangent().clone();
    let z_coord = velocity.z.antideriv(0.0);
    Ok(LiftResult { frame, velocity, z_coord, lambda: LiftLambda::Constant(lambda) })
}

/// Lift with a varying `lambda(t)`; `quotient` must equal `(x'^2 + y'^2) / lambda`.
pub fn lift_plane_curve_varlambda(
    xp: &PolyExp,
    yp: &PolyExp,
    lambda: &PolyExp,
    quotient: &PolyExp,
) -> Result<LiftResult, FrameError> {
    check_plane(xp, yp)?;
    if !lambda.is_real_on_axis(tolerances::REAL_ON_AXIS) {
        return Err(FrameError::NotRealOnAxis("lambda"));
    }
    let speed2 = &(xp * xp) + &(yp * yp);
    if !(quotient * lambda).approx_eq(&speed2, tolerances::COEFF_IDENTITY) {
        return Err(FrameError::QuotientMismatch);
    }
    if let Some(c) = lambda.constant_value() {
        if c.re == 0.0 {
            return Err(FrameError::ZeroLambda);
        }
        return lift_plane_curve(xp, yp, c.re);
    }
    for k in 0..64 {
        let t = -10.0 + 20.0 * k as f64 / 63.0;
        let l = lambda.eval_real(t)?;
        if l.norm() <= tolerances::SINGULAR * (1.0 + lambda.eval_magnitude(Complex64::new(t, 0.0))?) {
            return Err(FrameError::LambdaVanishes(t));
        }
    }
    let v = PolyExpVec3::new(xp.clone(), yp.clone(), lambda.clone());
    let r = rotation_scaling(&v);
    let cols: [PolyExpVec3; 3] = std::array::from_fn(|k| {
        PolyExpVec3::new(r[0][k].scale(0.5), r[1][k].scale(0.5), r[2][k].scale(0.5))
    });
    let mu = (&speed2 + &(lambda * lambda)).scale(0.5);
    let frame = FrameCurve::new(cols, mu, 2, (0, 1))?;
    let zp = (lambda - quotient).scale(0.5);
    let velocity = PolyExpVec3::new(xp.clone(), yp.clone(), zp.clone());
    Ok(LiftResult { frame, velocity, z_coord: zp.antideriv(0.0), lambda: LiftLambda::Varying(lambda.clone()) })
}

fn speed_integral(xp: &PolyExp, yp: &PolyExp, t0: f64, t1: f64) -> Result<f64, FrameError> {
    let speed2 = &(xp * xp) + &(yp * yp);
    if speed2.is_zero() {
        return Err(FrameError::DegenerateCurve);
    }
    Ok(speed2.antideriv(t0).eval_real(t1)?.re)
}

/// Vertical translation of the lift over `[t0, t1]`.
pub fn period_z(xp: &PolyExp, yp: &PolyExp, lambda: f64, t0: f64, t1: f64) -> Result<f64, FrameError> {
    if lambda == 0.0 {
        return Err(FrameError::ZeroLambda);
    }
    let integral = match speed_integral(xp, yp, t0, t1) {
        Ok(v) => v,
        Err(FrameError::DegenerateCurve) => 0.0,
        Err(e) => return Err(e),
    };
    Ok(0.5 * lambda * (t1 - t0) - integral / (2.0 * lambda))
}

/// Positive lambda that makes the lift over `[t0, t1]` close up.
pub fn closing_lambda(xp: &PolyExp, yp: &PolyExp, t0: f64, t1: f64) -> Result<f64, FrameError> {
    let integral = speed_integral(xp, yp, t0, t1)?;
    if integral <= 0.0 || t1 <= t0 {
        return Err(FrameError::DegenerateCurve);
    }
    Ok((integral / (t1 - t0)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyexp::parse;
    use std::f64::consts::PI;

    fn p(s: &str) -> PolyExp {
        parse(s).unwrap()
    }

    #[test]
    fn great_circle_is_planar_rotation() {
        let q = QuaternionCurve::new(p("cos(t/2)"), PolyExp::zero(), PolyExp::zero(), p("-sin(t/2)"));
        let f = phi_of_quaternion(&q).unwrap();
        assert_eq!(f.mu(), &PolyExp::one());
        let want = [["cos(t)", "sin(t)", "0"], ["-sin(t)", "cos(t)", "0"], ["0", "0", "1"]];
        for r in 0..3 {
            for k in 0..3 {
                assert!(f.entry(r, k).approx_eq(&p(want[r][k]), 1e-15), "({r},{k}) = {}", f.entry(r, k));
            }
        }
    }

    #[test]
    fn identity_quaternion() {
        let f = phi_of_quaternion(&QuaternionCurve::constant([1.0, 0.0, 0.0, 0.0])).unwrap();
        for r in 0..3 {
            for k in 0..3 {
                let want = if r == k { PolyExp::one() } else { PolyExp::zero() };
                assert_eq!(f.entry(r, k), &want);
            }
        }
    }

    #[test]
    fn hamilton_units() {
        let i = QuaternionCurve::constant([0.0, 1.0, 0.0, 0.0]);
        let j = QuaternionCurve::constant([0.0, 0.0, 1.0, 0.0]);
        assert_eq!(quat_mul(&i, &j), QuaternionCurve::constant([0.0, 0.0, 0.0, 1.0]));
        assert_eq!(quat_mul(&j, &i), QuaternionCurve::constant([0.0, 0.0, 0.0, -1.0]));
        let one = QuaternionCurve::constant([1.0, 0.0, 0.0, 0.0]);
        let q = QuaternionCurve::new(p("cos(t)"), p("t"), p("exp(t)"), p("2"));
        assert_eq!(quat_mul(&one, &q), q);
    }

    #[test]
    fn zero_quaternion_is_rejected() {
        let z = QuaternionCurve::constant([0.0; 4]);
        assert_eq!(phi_of_quaternion(&z), Err(FrameError::DegenerateQuaternion));
        let c = QuaternionCurve::new(p("i*t"), PolyExp::zero(), PolyExp::zero(), PolyExp::zero());
        assert!(matches!(phi_of_quaternion(&c), Err(FrameError::NotRealOnAxis(_))));
    }

    #[test]
    fn half_turn_matrices() {
        let r = rotation_scaling(&PolyExpVec3::constant([1.0, 0.0, 0.0]));
        assert_eq!(r[0][0], PolyExp::one());
        assert_eq!(r[1][1], PolyExp::constant(-1.0));
        assert_eq!(r[2][2], PolyExp::constant(-1.0));
        let l = 1.7;
        let r = rotation_scaling(&PolyExpVec3::constant([0.0, 0.0, l]));
        assert_eq!(r[0][0], PolyExp::constant(-l * l));
        assert_eq!(r[2][2], PolyExp::constant(l * l));
        let v = PolyExpVec3::new(p("-sin(t)"), p("cos(t)"), PolyExp::constant(l));
        let r = rotation_scaling(&v);
        let want = &(&p("sin(t)^2") - &p("cos(t)^2")) - &PolyExp::constant(l * l);
        assert!(r[0][0].approx_eq(&want, 1e-15));
    }

    #[test]
    fn lift_frames_are_symmetric_and_consistent() {
        for (x, y) in [("-sin(t)", "cos(t)"), ("-sin(t)", "3*cos(t)"), ("exp(t)", "t^2")] {
            let lift = lift_plane_curve(&p(x), &p(y), 1.3).unwrap();
            assert!(lift.frame.is_symmetric());
            assert_eq!(lift.z_coord.diff(), lift.frame.tangent().z);
            assert_eq!(lift.frame.tangent_index(), 2);
        }
    }

    #[test]
    fn circle_lift_is_helix() {
        let l = 2.5;
        let lift = lift_plane_curve(&p("-sin(t)"), &p("cos(t)"), l).unwrap();
        assert!(lift.z_coord.approx_eq(&PolyExp::t().scale((l * l - 1.0) / (2.0 * l)), 1e-15));
        assert_eq!(lift_plane_curve(&p("1"), &p("0"), 0.0), Err(FrameError::ZeroLambda));
    }

    #[test]
    fn varying_lambda_reproduces_quaternion_curve() {
        let xp = p("-cos(t)");
        let yp = p("-cos(t)*sin(t)");
        let lambda = p("-(sin(t)^2 + 1)");
        let quotient = p("-cos(t)^2");
        let lift = lift_plane_curve_varlambda(&xp, &yp, &lambda, &quotient).unwrap();
        assert!(lift.z_coord.approx_eq(&p("sin(2*t)/4 - t/2"), 1e-15));
        assert_eq!(lift.z_coord.diff(), lift.velocity.z);
        let wrong = &quotient + &PolyExp::one();
        assert_eq!(
            lift_plane_curve_varlambda(&xp, &yp, &lambda, &wrong),
            Err(FrameError::QuotientMismatch)
        );
        let l = PolyExp::constant(2.0);
        let q = (&(&xp * &xp) + &(&yp * &yp)).scale(0.5);
        let a = lift_plane_curve_varlambda(&xp, &yp, &l, &q).unwrap();
        assert_eq!(a, lift_plane_curve(&xp, &yp, 2.0).unwrap());
    }

    #[test]
    fn periods_and_closing() {
        let (cx, cy) = (p("-sin(t)"), p("cos(t)"));
        assert!(period_z(&cx, &cy, 1.0, 0.0, 2.0 * PI).unwrap().abs() < 1e-14);
        let (ex, ey) = (p("-sin(t)"), p("3*cos(t)"));
        let t = period_z(&ex, &ey, 1.0, 0.0, 2.0 * PI).unwrap();
        assert!((t + 4.0 * PI).abs() < 1e-12);
        let l = closing_lambda(&ex, &ey, 0.0, 2.0 * PI).unwrap();
        assert!((l - 5f64.sqrt()).abs() < 1e-12);
        assert!(period_z(&ex, &ey, l, 0.0, 2.0 * PI).unwrap().abs() < 1e-12);
        assert_eq!(
            closing_lambda(&PolyExp::zero(), &PolyExp::zero(), 0.0, 1.0),
            Err(FrameError::DegenerateCurve)
        );
    }

    #[test]
    fn sampled_residual_is_tiny() {
        let lift = lift_plane_curve(&p("-sin(t)"), &p("3*cos(t)"), 5f64.sqrt()).unwrap();
        let samples: Vec<f64> = (0..16).map(|k| k as f64 * 0.4).collect();
        assert!(lift.frame.sampled_residual(&samples).unwrap() < 1e-14);
    }
}
