//! Quaternion curves whose frames give closed-form surfaces.

use std::f64::consts::FRAC_PI_2;

use super::{param, CurveError, Params};
use crate::bjorling::SpinSpec;
use crate::frames::{quat_mul, QuaternionCurve};
use crate::polyexp::PolyExp;

pub const QUATERNION_CURVES: [&str; 4] = ["great_circle", "torus_knot", "circle_product", "small_circle"];

#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionPreset {
    pub name: String,
    pub params: Params,
    pub q: QuaternionCurve,
    pub spin_defaults: SpinSpec,
}

fn half_angle() -> (PolyExp, PolyExp) {
    (PolyExp::cos(0.5, 0.0), PolyExp::sin(0.5, 0.0))
}

/// Quaternion curve `name`; `torus_knot` reads `A` and `B`, `small_circle` reads `sigma`.
pub fn catalog_quaternion(name: &str, params: &Params) -> Result<QuaternionPreset, CurveError> {
    let zero = PolyExp::zero;
    let (q, spin) = match name {
        "great_circle" => {
            let (c, s) = half_angle();
            (QuaternionCurve::new(c, zero(), zero(), -s), SpinSpec::new(2.0, 0.0))
        }
        "torus_knot" => {
            let a = param(name, params, "A")?;
            let b = param(name, params, "B")?;
            let q0 = QuaternionCurve::new(
                PolyExp::cos(a, 0.0),
                PolyExp::cos(b, 0.0),
                PolyExp::sin(b, 0.0),
                PolyExp::sin(a, 0.0),
            );
            (quat_mul(&q0, &QuaternionCurve::constant([0.5; 4])), SpinSpec::new(0.0, 0.0))
        }
        "circle_product" => {
            let (c, s) = half_angle();
            let q1 = QuaternionCurve::new(zero(), zero(), c.clone(), s.clone());
            let q2 = QuaternionCurve::new(-c, zero(), zero(), s);
            (quat_mul(&q1, &q2), SpinSpec::new(0.0, FRAC_PI_2))
        }
        "small_circle" => {
            let sigma = param(name, params, "sigma")?;
            let (ss, cs) = sigma.sin_cos();
            let q = QuaternionCurve::new(
                PolyExp::constant(ss),
                zero(),
                PolyExp::cos(1.0, 0.0).scale(cs),
                PolyExp::sin(1.0, 0.0).scale(cs),
            );
            (q, SpinSpec::new(0.0, 0.0))
        }
        _ => return Err(CurveError::UnknownCurve(name.to_string())),
    };
    Ok(QuaternionPreset { name: name.to_string(), params: params.clone(), q, spin_defaults: spin })
}
