//! Job configuration files and the surfaces they describe.

use std::f64::consts::TAU;
use std::path::PathBuf;

use bjorling::bjorling::{build_surface, spin_normal, BjorlingSurface, SpinSpec, Surface};
use bjorling::curves::quaternion::QUATERNION_CURVES;
use bjorling::curves::{catalog_plane, catalog_quaternion, ClothoidSurface, CurveError, Params, PlaneCurveSpec};
use bjorling::frames::{phi_of_quaternion, FrameCurve, FrameError};
use bjorling::meshio::GridDomain;
use bjorling::polyexp::{parse, PolyExp, PolyExpVec3};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Lift,
    Quaternion,
    Clothoid,
}

/// A number, or an expression such as `"1/2"`, `"pi/2"` or `"sqrt(17)/4"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Number(f64),
    Text(String),
}

impl Scalar {
    pub fn value(&self) -> Result<f64, CliError> {
        match self {
            Scalar::Number(x) => Ok(*x),
            Scalar::Text(s) => {
                let p = parse(s).map_err(|e| CliError::Config(format!("'{s}': {e}")))?;
                match p.constant_value() {
                    Some(c) if c.im == 0.0 && c.re.is_finite() => Ok(c.re),
                    _ => Err(CliError::Config(format!("'{s}' is not a real constant"))),
                }
            }
        }
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Scalar {
        Scalar::Number(x)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineCurve {
    pub x: String,
    pub y: String,
    /// Parameter interval used for the closing lambda and the default domain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurveConfig {
    Inline { inline: InlineCurve },
    Named {
        name: String,
        #[serde(default, skip_serializing_if = "Params::is_empty")]
        params: Params,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinConfig {
    pub a: Scalar,
    pub b: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainConfig {
    pub u: [Scalar; 2],
    pub v: [Scalar; 2],
    pub nu: usize,
    pub nv: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mesh_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report_path: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveConfig>,
    /// A value or `"closing"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spin: Option<SpinConfig>,
    #[serde(default)]
    pub t0: f64,
    #[serde(default)]
    pub offset: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainConfig>,
    #[serde(default)]
    pub outputs: Outputs,
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<JobConfig, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("malformed config: {e}")))
    }
}

/// The surface a job samples.
pub enum JobSurface {
    Bjorling {
        surface: BjorlingSurface,
        /// Prescribed normal along the core curve, as numerator over scale.
        normal: (PolyExpVec3, PolyExp),
    },
    Clothoid(ClothoidSurface),
}

impl JobSurface {
    pub fn as_surface(&self) -> &dyn Surface {
        match self {
            JobSurface::Bjorling { surface, .. } => surface,
            JobSurface::Clothoid(s) => s,
        }
    }
}

/// A validated configuration with its surface built.
pub struct Job {
    pub config: JobConfig,
    pub surface: JobSurface,
    pub lambda: Option<f64>,
    pub lambda_is_closing: bool,
    pub spin: Option<SpinSpec>,
    pub domain: GridDomain,
}

fn curve_error(e: CurveError) -> CliError {
    CliError::Config(e.to_string())
}

fn frame_error(e: FrameError) -> CliError {
    CliError::Math(e.to_string())
}

fn spin_from(config: &Option<SpinConfig>, default: Option<SpinSpec>) -> Result<SpinSpec, CliError> {
    match (config, default) {
        (Some(s), _) => Ok(SpinSpec::new(s.a.value()?, s.b.value()?)),
        (None, Some(d)) => Ok(d),
        (None, None) => Err(CliError::Config("spin {a, b} is required".into())),
    }
}

fn plane_curve(curve: &CurveConfig) -> Result<PlaneCurveSpec, CliError> {
    match curve {
        CurveConfig::Inline { inline } => {
            let expr = |s: &str| parse(s).map_err(|e| CliError::Config(format!("curve expression '{s}': {e}")));
            let interval = inline.interval.unwrap_or([0.0, TAU]);
            if !(interval[1] > interval[0]) {
                return Err(CliError::Config(format!("empty curve interval {interval:?}")));
            }
            Ok(PlaneCurveSpec::inline(expr(&inline.x)?, expr(&inline.y)?, (interval[0], interval[1])))
        }
        CurveConfig::Named { name, params } => catalog_plane(name, params).map_err(curve_error),
    }
}

/// Samples per unit of `u` grow with the spin so fast twists stay resolved.
fn default_domain(interval: (f64, f64), a: f64) -> GridDomain {
    let turns = (interval.1 - interval.0) / TAU;
    let nu = (48.0 * (a.abs() + 2.0) * turns).ceil().clamp(64.0, 4096.0) as usize;
    GridDomain { u0: interval.0, u1: interval.1, v0: -1.0, v1: 1.0, nu, nv: 32 }
}

fn domain_from(config: &Option<DomainConfig>, fallback: GridDomain) -> Result<GridDomain, CliError> {
    let Some(d) = config else { return Ok(fallback) };
    let dom = GridDomain { u0: d.u[0].value()?, u1: d.u[1].value()?, v0: d.v[0].value()?, v1: d.v[1].value()?, nu: d.nu, nv: d.nv };
    dom.validate().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(dom)
}

/// Interval long enough to close a frame spinning at rate `a`.
fn spin_interval(base: (f64, f64), a: f64) -> (f64, f64) {
    let half = (2.0 * a).round() == 2.0 * a && a.fract() != 0.0;
    if half {
        (base.0, base.0 + 2.0 * (base.1 - base.0))
    } else {
        base
    }
}

fn finish(config: &JobConfig, frame: &FrameCurve, spin: SpinSpec, interval: (f64, f64)) -> Result<(JobSurface, GridDomain), CliError> {
    let surface = build_surface(frame, spin, config.t0, config.offset);
    let normal = spin_normal(frame, spin);
    let domain = domain_from(&config.domain, default_domain(spin_interval(interval, spin.a), spin.a))?;
    Ok((JobSurface::Bjorling { surface, normal }, domain))
}

impl Job {
    pub fn build(config: JobConfig) -> Result<Job, CliError> {
        if !config.t0.is_finite() || config.offset.iter().any(|x| !x.is_finite()) {
            return Err(CliError::Config("t0 and offset must be finite".into()));
        }
        let mut lambda_is_closing = false;
        let (surface, lambda, spin, domain) = match config.method {
            Method::Lift => {
                let curve = config.curve.as_ref().ok_or_else(|| CliError::Config("lift needs a curve".into()))?;
                let spec = plane_curve(curve)?;
                let lambda = match &config.lambda {
                    Some(Scalar::Text(s)) if s == "closing" => {
                        lambda_is_closing = true;
                        spec.closing_lambda().map_err(frame_error)?
                    }
                    Some(s) => s.value()?,
                    None => return Err(CliError::Config("lift needs lambda (a number or \"closing\")".into())),
                };
                let spin = spin_from(&config.spin, None)?;
                let lift = spec.lift(lambda).map_err(frame_error)?;
                let (surface, domain) = finish(&config, &lift.frame, spin, spec.natural_interval)?;
                (surface, Some(lambda), Some(spin), domain)
            }
            Method::Quaternion => {
                let (name, params) = match &config.curve {
                    Some(CurveConfig::Named { name, params }) => (name, params),
                    _ => {
                        return Err(CliError::Config(format!(
                            "quaternion needs a named curve, one of {}",
                            QUATERNION_CURVES.join(", ")
                        )))
                    }
                };
                if config.lambda.is_some() {
                    return Err(CliError::Config("quaternion jobs take no lambda".into()));
                }
                let preset = catalog_quaternion(name, params).map_err(curve_error)?;
                let spin = spin_from(&config.spin, Some(preset.spin_defaults))?;
                let frame = phi_of_quaternion(&preset.q).map_err(frame_error)?;
                let (surface, domain) = finish(&config, &frame, spin, (0.0, TAU))?;
                (surface, None, Some(spin), domain)
            }
            Method::Clothoid => {
                if config.curve.is_some() || config.spin.is_some() {
                    return Err(CliError::Config("clothoid jobs take only lambda and domain".into()));
                }
                let lambda = match &config.lambda {
                    Some(Scalar::Text(s)) if s == "closing" => {
                        return Err(CliError::Config("the clothoid lift never closes".into()))
                    }
                    Some(s) => s.value()?,
                    None => return Err(CliError::Config("clothoid needs lambda".into())),
                };
                let s = ClothoidSurface::new(lambda).map_err(|e| CliError::Math(e.to_string()))?;
                let fallback = GridDomain { u0: -2.5, u1: 2.5, v0: -1.0, v1: 1.0, nu: 128, nv: 48 };
                (JobSurface::Clothoid(s), Some(lambda), None, domain_from(&config.domain, fallback)?)
            }
        };
        Ok(Job { config, surface, lambda, lambda_is_closing, spin, domain })
    }
}
