//! Catalog of plane curves and quaternion curves with their known lift data.

pub mod clothoid;
pub mod quaternion;

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::frames::{self, FrameError, LiftResult};
use crate::polyexp::{snap_ratio, PolyExp, Rate};

pub use clothoid::ClothoidSurface;
pub use quaternion::{catalog_quaternion, QuaternionPreset};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("unknown curve '{0}'")]
    UnknownCurve(String),
    #[error("curve '{curve}' needs parameter '{param}'")]
    MissingParam { curve: String, param: String },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("lambda = {0} is not allowed here")]
    InvalidLambda(f64),
}

/// Named real parameters.
pub type Params = BTreeMap<String, f64>;

pub const PLANE_CURVES: [&str; 9] =
    ["circle", "ellipse", "lissajous", "cycloid", "deltoid", "trefoil", "log_spiral", "archimedean", "circle_spiral"];

type GoldenZ = Arc<dyn Fn(f64) -> PolyExp + Send + Sync>;

/// A plane curve with exact derivatives and, when known, the height of its lift.
#[derive(Clone)]
pub struct PlaneCurveSpec {
    pub name: String,
    pub params: Params,
    pub x: PolyExp,
    pub y: PolyExp,
    pub xp: PolyExp,
    pub yp: PolyExp,
    pub natural_interval: (f64, f64),
    golden_z: Option<GoldenZ>,
}

impl fmt::Debug for PlaneCurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PlaneCurveSpec")
            .field("name", &self.name)
            .field("params", &self.params)
            .field("x", &self.x.to_string())
            .field("y", &self.y.to_string())
            .field("natural_interval", &self.natural_interval)
            .field("golden_z", &self.golden_z.is_some())
            .finish()
    }
}

impl PlaneCurveSpec {
    fn new(name: &str, params: Params, x: PolyExp, y: PolyExp, natural_interval: (f64, f64)) -> PlaneCurveSpec {
        let (xp, yp) = (x.diff(), y.diff());
        PlaneCurveSpec { name: name.to_string(), params, x, y, xp, yp, natural_interval, golden_z: None }
    }

    fn with_golden(mut self, f: impl Fn(f64) -> PolyExp + Send + Sync + 'static) -> PlaneCurveSpec {
        self.golden_z = Some(Arc::new(f));
        self
    }

    /// Curve from explicit position functions.
    pub fn inline(x: PolyExp, y: PolyExp, natural_interval: (f64, f64)) -> PlaneCurveSpec {
        PlaneCurveSpec::new("inline", Params::new(), x, y, natural_interval)
    }

    pub fn has_golden_z(&self) -> bool {
        self.golden_z.is_some()
    }

    /// Recorded height of the lift, shifted so that `z(0) = 0`.
    pub fn golden_z(&self, lambda: f64) -> Option<PolyExp> {
        let z = (self.golden_z.as_ref()?)(lambda);
        let at0 = z.eval(Complex64::new(0.0, 0.0)).ok()?;
        Some(&z - &PolyExp::constant(at0))
    }

    pub fn lift(&self, lambda: f64) -> Result<LiftResult, FrameError> {
        frames::lift_plane_curve(&self.xp, &self.yp, lambda)
    }

    /// Lambda closing the lift over the natural interval.
    pub fn closing_lambda(&self) -> Result<f64, FrameError> {
        frames::closing_lambda(&self.xp, &self.yp, self.natural_interval.0, self.natural_interval.1)
    }
}

fn param(curve: &str, params: &Params, key: &str) -> Result<f64, CurveError> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| CurveError::MissingParam { curve: curve.to_string(), param: key.to_string() })
}

fn param_or(params: &Params, key: &str, default: f64) -> f64 {
    params.get(key).copied().unwrap_or(default)
}

fn t() -> PolyExp {
    PolyExp::t()
}

fn cos(w: f64) -> PolyExp {
    PolyExp::cos(w, 0.0)
}

fn sin(w: f64) -> PolyExp {
    PolyExp::sin(w, 0.0)
}

/// `rho^t = e^{t log rho}`.
fn power_of(rho: f64, k: f64) -> PolyExp {
    PolyExp::exp(1.0, Rate::real(k * rho.ln()))
}

/// Interval covering one period of every frequency.
fn trig_period(freqs: &[f64]) -> f64 {
    let mut den: i64 = 1;
    for &w in freqs {
        if let Some(r) = snap_ratio(w) {
            den = num_integer::lcm(den, *r.denom());
        }
    }
    TAU * den as f64
}

fn spiral_rho(curve: &str, params: &Params) -> Result<f64, CurveError> {
    let rho = param(curve, params, "rho")?;
    if !(rho > 0.0) || rho == 1.0 {
        return Err(CurveError::InvalidParam(format!("{curve} needs rho > 0 and rho != 1, got {rho}")));
    }
    Ok(rho)
}

/// Plane curve `name` with the given parameters.
pub fn catalog_plane(name: &str, params: &Params) -> Result<PlaneCurveSpec, CurveError> {
    let p = params.clone();
    let spec = match name {
        "circle" => PlaneCurveSpec::new(name, p, cos(1.0), sin(1.0), (0.0, TAU))
            .with_golden(|l| t().scale((l * l - 1.0) / (2.0 * l))),
        "ellipse" => {
            let (a, b) = (param_or(params, "p", 1.0), param_or(params, "q", 3.0));
            let spec = PlaneCurveSpec::new(name, p, cos(1.0).scale(a), sin(1.0).scale(b), (0.0, TAU));
            if (a, b) == (1.0, 3.0) {
                spec.with_golden(|l| (&t().scale(l * l - 5.0) - &sin(2.0).scale(2.0)).scale(1.0 / (2.0 * l)))
            } else {
                spec
            }
        }
        "lissajous" => {
            let xi = param(name, params, "xi")?;
            let eta = param(name, params, "eta")?;
            PlaneCurveSpec::new(name, p, cos(xi), sin(eta), (0.0, trig_period(&[xi, eta]))).with_golden(move |l| {
                let lin = t().scale(-2.0 * (xi * xi + eta * eta - 2.0 * l * l));
                (&(&lin + &sin(2.0 * xi).scale(xi)) - &sin(2.0 * eta).scale(eta)).scale(1.0 / (8.0 * l))
            })
        }
        "cycloid" => {
            let big = param(name, params, "R")?;
            let small = param(name, params, "r")?;
            let s = param(name, params, "s")?;
            cycloid(name, p, big, small, s)?
        }
        "deltoid" => {
            let mut p = p;
            for (k, v) in [("R", -3.0), ("r", 1.0), ("s", 1.0)] {
                p.insert(k.to_string(), v);
            }
            cycloid(name, p, -3.0, 1.0, 1.0)?
        }
        "trefoil" => {
            let xi = param(name, params, "xi")?;
            let x = &(&cos(1.0) - &PolyExp::constant(xi)) * &cos(1.0);
            let y = &(&cos(1.0) + &PolyExp::constant(xi)) * &sin(1.0);
            PlaneCurveSpec::new(name, p, x, y, (0.0, TAU)).with_golden(move |l| {
                (&t().scale(3.0 * (xi * xi + 1.0 - l * l)) + &sin(3.0).scale(2.0 * xi)).scale(1.0 / (6.0 * l))
            })
        }
        "log_spiral" => {
            let rho = spiral_rho(name, params)?;
            let x = &power_of(rho, 1.0) * &cos(1.0);
            let y = &power_of(rho, 1.0) * &sin(1.0);
            PlaneCurveSpec::new(name, p, x, y, (-6.0, 6.0)).with_golden(move |l| {
                let lr = rho.ln();
                &t().scale(l / 2.0) - &power_of(rho, 2.0).scale((lr * lr + 1.0) / (4.0 * l * lr))
            })
        }
        "archimedean" => PlaneCurveSpec::new(name, p, &t() * &cos(1.0), &t() * &sin(1.0), (-6.0, 6.0))
            .with_golden(|l| (&t().powu(3) + &t().scale(3.0 - 3.0 * l * l)).scale(-1.0 / (6.0 * l))),
        "circle_spiral" => {
            let rho = spiral_rho(name, params)?;
            let radius = &power_of(rho, 1.0) + &PolyExp::one();
            let x = &radius * &cos(1.0);
            let y = &radius * &sin(1.0);
            PlaneCurveSpec::new(name, p, x, y, (-6.0, 6.0)).with_golden(move |l| {
                let lr = rho.ln();
                let inner = &(&power_of(rho, 2.0).scale(1.0 + lr * lr) + &power_of(rho, 1.0).scale(4.0))
                    - &t().scale(l * l - 1.0);
                inner.scale(-1.0 / (4.0 * l * lr))
            })
        }
        _ => return Err(CurveError::UnknownCurve(name.to_string())),
    };
    Ok(spec)
}

/// Point at distance `s` from the centre of a circle of radius `r` rolling
/// on a fixed circle of radius `R`.
fn cycloid(name: &str, p: Params, big: f64, small: f64, s: f64) -> Result<PlaneCurveSpec, CurveError> {
    if small == 0.0 {
        return Err(CurveError::InvalidParam("rolling radius r must be nonzero".into()));
    }
    let k = 1.0 + big / small;
    let x = &cos(1.0).scale(big + small) - &cos(k).scale(s);
    let y = &sin(1.0).scale(big + small) - &sin(k).scale(s);
    let spec = PlaneCurveSpec::new(name, p, x, y, (0.0, trig_period(&[1.0, k])));
    Ok(match (big, small, s) {
        (2.0, 1.0, 2.0) => spec.with_golden(|l| (&t().scale(l * l - 45.0) + &sin(2.0).scale(18.0)).scale(1.0 / (2.0 * l))),
        (-3.0, 1.0, 1.0) => {
            spec.with_golden(|l| (&t().scale(3.0 * (l * l - 8.0)) + &sin(3.0).scale(8.0)).scale(1.0 / (6.0 * l)))
        }
        _ => spec,
    })
}
