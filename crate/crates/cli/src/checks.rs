//! Numbered acceptance checks shared by `verify` and the acceptance tests.
//!
//! Every check measures an error and compares it with a tolerance from
//! [`Tolerances`], so a suite run with all tolerances at zero must fail.

use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use bjorling::bjorling::{SpinSpec, Surface};
use bjorling::curves::{catalog_plane, Params};
use bjorling::laurent::{resultant, LaurentPoly};
use bjorling::polyexp::{PolyExp, PolyExpVec3};
use bjorling::tolerances;
use bjorling::verify::{bjorling_quadrature, mean_curvature_numeric, QuadratureSpec, VerifyError};
use bjorling::weierstrass::{regularity_report, singular_lambda_locus, weierstrass_data, SearchBox, WeierstrassData, WeierstrassError};
use nalgebra::Vector3;
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::commands::render;
use crate::config::{Job, JobSurface};
use crate::registry::EXAMPLES;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub golden_lift: f64,
    pub closing_lambda: f64,
    pub weierstrass: f64,
    pub resultant: f64,
    pub common_root: f64,
    /// Numeric null-curve residual where no closed form exists.
    pub null_numeric: f64,
    pub oracle: f64,
    pub mean_curvature: f64,
    pub interpolation_position: f64,
    pub interpolation_normal_rad: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            golden_lift: tolerances::COEFF_IDENTITY,
            closing_lambda: tolerances::CLOSING_LAMBDA,
            weierstrass: 1e-10,
            resultant: 1e-8,
            common_root: tolerances::ROOT_MATCH,
            null_numeric: 1e-12,
            oracle: tolerances::QUADRATURE_AGREEMENT,
            mean_curvature: tolerances::MEAN_CURVATURE,
            interpolation_position: tolerances::INTERPOLATION_POSITION,
            interpolation_normal_rad: tolerances::INTERPOLATION_NORMAL_RAD,
        }
    }
}

impl Tolerances {
    /// Every tolerance set to `x`.
    pub fn uniform(x: f64) -> Tolerances {
        Tolerances {
            golden_lift: x,
            closing_lambda: x,
            weierstrass: x,
            resultant: x,
            common_root: x,
            null_numeric: x,
            oracle: x,
            mean_curvature: x,
            interpolation_position: x,
            interpolation_normal_rad: x,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn measured(criterion: u8, name: impl Into<String>, err: f64, tol: f64) -> Check {
        Check { criterion, name: name.into(), passed: err <= tol, detail: format!("err {err:.3e}, tol {tol:.0e}") }
    }

    fn exact(criterion: u8, name: impl Into<String>, got: impl fmt::Debug, want: impl fmt::Debug) -> Check {
        let (got, want) = (format!("{got:?}"), format!("{want:?}"));
        Check { criterion, name: name.into(), passed: got == want, detail: format!("got {got}, want {want}") }
    }

    fn failed(criterion: u8, name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check { criterion, name: name.into(), passed: false, detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{mark}] {:>2} {:<44} {}", self.criterion, self.name, self.detail)
    }
}

fn params(kv: &[(&str, f64)]) -> Params {
    kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn job(config: Value) -> Job {
    Job::build(serde_json::from_value(config).expect("check configs are valid")).expect("check jobs build")
}

fn bjorling_surface(job: &Job) -> &bjorling::bjorling::BjorlingSurface {
    match &job.surface {
        JobSurface::Bjorling { surface, .. } => surface,
        JobSurface::Clothoid(_) => panic!("closed-form Bjorling surface expected"),
    }
}

fn weierstrass(config: Value) -> Result<WeierstrassData, WeierstrassError> {
    weierstrass_data(bjorling_surface(&job(config)))
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Lifted heights against the recorded closed forms.
pub fn golden_lifts(tol: &Tolerances) -> Vec<Check> {
    let curves = [
        ("ellipse", params(&[])),
        ("lissajous", params(&[("xi", 1.0), ("eta", 2.0)])),
        ("cycloid", params(&[("R", 2.0), ("r", 1.0), ("s", 2.0)])),
        ("deltoid", params(&[])),
        ("trefoil", params(&[("xi", 0.25)])),
        ("archimedean", params(&[])),
        ("log_spiral", params(&[("rho", E)])),
        ("circle_spiral", params(&[("rho", E)])),
    ];
    let lambdas = [0.6, 1.7, 3.1];
    curves
        .iter()
        .map(|(name, p)| {
            let spec = catalog_plane(name, p).expect("catalog curve");
            let mut worst: f64 = 0.0;
            for l in lambdas {
                let got = spec.lift(l).expect("lift").z_coord;
                let want = spec.golden_z(l).expect("recorded height");
                let err = (&got - &want).max_coeff() / want.max_coeff().max(1.0);
                worst = worst.max(if err.is_nan() { f64::INFINITY } else { err });
            }
            Check::measured(1, format!("lift height {name}"), worst, tol.golden_lift)
        })
        .collect()
}

pub fn closing_lambdas(tol: &Tolerances) -> Vec<Check> {
    let (xi, eta) = (0.25, 2.0);
    let cases = [
        ("ellipse", params(&[]), 5f64.sqrt()),
        ("cycloid", params(&[("R", 2.0), ("r", 1.0), ("s", 2.0)]), 3.0 * 5f64.sqrt()),
        ("deltoid", params(&[]), 2.0 * 2f64.sqrt()),
        ("trefoil", params(&[("xi", xi)]), (xi * xi + 1.0).sqrt()),
        ("lissajous", params(&[("xi", 1.0), ("eta", eta)]), ((1.0 + eta * eta) / 2.0).sqrt()),
    ];
    cases
        .iter()
        .map(|(name, p, want)| {
            let label = format!("closing lambda {name}");
            match catalog_plane(name, p).map(|s| s.closing_lambda()) {
                Ok(Ok(l)) => Check::measured(2, label, (l - want).abs() / want, tol.closing_lambda),
                other => Check::failed(2, label, format!("{other:?}")),
            }
        })
        .collect()
}

/// Largest relative coefficient error of `lhs = k * rhs` with the best
/// constant `k`, and how far `|k|` is from one.
fn unit_multiple(lhs: &LaurentPoly, rhs: &LaurentPoly) -> (f64, Complex64) {
    let Some((&k, &r)) = rhs.coeffs().iter().max_by(|a, b| a.1.norm().total_cmp(&b.1.norm())) else {
        return (f64::INFINITY, c(0.0, 0.0));
    };
    let kappa = lhs.coeff(k) / r;
    let scale = lhs.max_coeff().max(rhs.max_coeff() * kappa.norm());
    let err = lhs.sub(&rhs.scale(kappa)).max_coeff() / scale;
    (err.max((kappa.norm() - 1.0).abs()), kappa)
}

fn mono(k: i64, re: f64, im: f64) -> LaurentPoly {
    LaurentPoly::monomial(c(re, im), k)
}

/// Circular helicoid data in `W = w^(1/d)` with `m = d a`:
/// `G = (W^m + i) / (W^(m+d) - i W^d)` and
/// `dh = (d/2) (W^(2m) + 1) W^(d-1) / W^(m+d) dW`.
fn circular_expected(m: i64, d: i64) -> [LaurentPoly; 4] {
    let one = |k| mono(k, 1.0, 0.0);
    [
        one(m).add(&mono(0, 0.0, 1.0)),
        one(m + d).sub(&mono(d, 0.0, 1.0)),
        one(2 * m).add(&one(0)).shift(d - 1).scale(c(d as f64 / 2.0, 0.0)),
        one(m + d),
    ]
}

pub fn circular_weierstrass(tol: &Tolerances) -> Vec<Check> {
    let cases: [(&str, Value, i64, i64); 5] = [
        ("a = 1", json!(1), 1, 1),
        ("a = 2", json!(2), 2, 1),
        ("a = 3", json!(3), 3, 1),
        ("a = 7", json!(7), 7, 1),
        ("a = 7/2", json!("7/2"), 7, 2),
    ];
    cases
        .into_iter()
        .map(|(label, a, m, d)| {
            let name = format!("circular helicoid G, dh {label}");
            let config = json!({"method": "quaternion", "curve": {"name": "great_circle"}, "spin": {"a": a, "b": 0}});
            let data = match weierstrass(config) {
                Ok(data) => data,
                Err(e) => return Check::failed(3, name, e.to_string()),
            };
            if data.substitution_denominator as i64 != d {
                return Check::failed(3, name, format!("substitution denominator {}", data.substitution_denominator));
            }
            let [gn, gd, hn, hd] = circular_expected(m, d);
            let (g_err, g_k) = unit_multiple(&data.gauss.num.mul(&gd), &gn.mul(&data.gauss.den));
            let (h_err, h_k) = unit_multiple(&data.dh_coeff.num.mul(&hd), &hn.mul(&data.dh_coeff.den));
            let mut check = Check::measured(3, name, g_err.max(h_err), tol.weierstrass);
            check.detail += &format!(" (constants {:.4}, {:.4})", g_k, h_k);
            check
        })
        .collect()
}

/// `P = e^(ib) (w^2 + 1) w^a - i (w + 2) w + i`,
/// `Q = e^(ib) ((w - 2) w - 1) w^a - i (w^2 + 1)`.
fn periodic_factors(a: i64, b: f64) -> (LaurentPoly, LaurentPoly) {
    let e = Complex64::from_polar(1.0, b);
    let i = c(0.0, 1.0);
    let p = LaurentPoly::from_pairs([(a + 2, e), (a, e)]).add(&LaurentPoly::from_pairs([(2, -i), (1, -2.0 * i), (0, i)]));
    let q = LaurentPoly::from_pairs([(a + 2, e), (a + 1, -2.0 * e), (a, -e)]).add(&LaurentPoly::from_pairs([(2, -i), (0, -i)]));
    (p, q)
}

pub fn periodic_resultants(tol: &Tolerances) -> Vec<Check> {
    let mut out = Vec::new();
    for a in 0..=4i64 {
        for (b_label, b) in [("0", 0.0), ("pi/4", FRAC_PI_4), ("pi/2", FRAC_PI_2)] {
            let (p, q) = periodic_factors(a, b);
            let got = resultant(&q, &p);
            let want = Complex64::new(-(8f64.powi(a as i32 + 1)), 0.0)
                * c(0.0, 1.0).powi(a as i32)
                * Complex64::from_polar(1.0, (a + 2) as f64 * b);
            let mut check = Check::measured(4, format!("resultant a = {a}, b = {b_label}"), (got - want).norm() / want.norm(), tol.resultant);
            if !check.passed {
                check.detail += &format!(" (got {got:.4}, want {want:.4}, ratio {:.4})", got / want);
            }
            out.push(check);
        }
    }
    out
}

fn degree(config: Value) -> Result<usize, String> {
    weierstrass(config).map(|d| regularity_report(&d).gauss_degree).map_err(|e| e.to_string())
}

pub fn degree_table() -> Vec<Check> {
    let mut out = Vec::new();
    let mut row = |name: String, config: Value, want: usize| match degree(config) {
        Ok(got) => out.push(Check::exact(5, name, got, want)),
        Err(e) => out.push(Check::failed(5, name, e)),
    };
    for a in 1..=6usize {
        row(
            format!("degree circular a = {a}"),
            json!({"method": "quaternion", "curve": {"name": "great_circle"}, "spin": {"a": a, "b": 0}}),
            a + 1,
        );
    }
    for a in 0..=5usize {
        row(
            format!("degree Enneper a = {a}"),
            json!({"method": "quaternion", "curve": {"name": "torus_knot", "params": {"A": -0.5, "B": 1.5}}, "spin": {"a": a, "b": 0}}),
            if a == 0 { 1 } else { a + 3 },
        );
    }
    for (a, b) in [(1usize, 0.0), (2, 0.0), (3, 0.0), (4, 0.0), (5, 0.0), (0, 0.0), (0, FRAC_PI_2)] {
        row(
            format!("degree periodic a = {a}, b = {b:.3}"),
            json!({"method": "quaternion", "curve": {"name": "circle_product"}, "spin": {"a": a, "b": b}}),
            if b == FRAC_PI_2 { 1 } else { a + 2 },
        );
    }
    for a in 1..=6usize {
        row(
            format!("degree helix a = {a}"),
            json!({"method": "lift", "curve": {"name": "circle"}, "lambda": 2, "spin": {"a": a, "b": 0}}),
            a,
        );
    }
    out
}

pub fn singular_cases(tol: &Tolerances) -> Vec<Check> {
    let mut out = Vec::new();

    let ellipse = json!({"method": "lift", "curve": {"name": "ellipse"}, "lambda": 1, "spin": {"a": 2, "b": 0}});
    let name = "ellipse lambda = 1, a = 2 common roots";
    match weierstrass(ellipse) {
        Ok(data) => {
            let r = regularity_report(&data);
            let s5 = 5f64.sqrt();
            let want = [c(0.0, (s5 - 1.0) / 2.0), c(0.0, -(s5 + 1.0) / 2.0)];
            let err = want
                .iter()
                .map(|w| r.common_roots.iter().map(|z| (z - w).norm()).fold(f64::INFINITY, f64::min))
                .fold(0.0, f64::max);
            let mut check = Check::measured(6, name, err, tol.common_root);
            check.passed &= r.common_roots.len() == 2 && !r.is_regular;
            check.detail += &format!(" ({} roots, regular = {})", r.common_roots.len(), r.is_regular);
            out.push(check);
        }
        Err(e) => out.push(Check::failed(6, name, e.to_string())),
    }

    let name = "deltoid a = -1/2, b = pi/2 degenerate direction";
    let deltoid = catalog_plane("deltoid", &Params::new()).expect("deltoid");
    let bx = SearchBox { re: (-PI, PI), im: (-1.0, 1.0) };
    match singular_lambda_locus(&deltoid.xp, &deltoid.yp, SpinSpec::new(-0.5, FRAC_PI_2), bx) {
        Err(WeierstrassError::DegenerateSpinDirection { r }) => {
            let want = PolyExp::sin(1.5, 0.0).scale(-4.0);
            out.push(Check::measured(6, name, (&r - &want).max_coeff() / 4.0, tol.common_root));
        }
        other => out.push(Check::failed(6, name, format!("{other:?}"))),
    }

    let name = "trefoil Moebius strip has no common roots";
    let trefoil = json!({"method": "lift", "curve": {"name": "trefoil", "params": {"xi": 0.25}}, "lambda": "closing", "spin": {"a": "1/2", "b": "pi/2"}});
    match weierstrass(trefoil) {
        Ok(data) => {
            let r = regularity_report(&data);
            out.push(Check::exact(6, name, (r.common_roots.len(), r.is_regular), (0, true)));
        }
        Err(e) => out.push(Check::failed(6, name, e.to_string())),
    }
    out
}

fn registry_jobs() -> Vec<(&'static str, Job)> {
    EXAMPLES.iter().map(|e| (e.name, Job::build(e.config()).expect("registry example builds"))).collect()
}

fn dot3(a: [Complex64; 3], b: [Complex64; 3]) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn null_curves(tol: &Tolerances) -> Vec<Check> {
    registry_jobs()
        .into_iter()
        .map(|(name, job)| {
            let name = format!("null curve {name}");
            match &job.surface {
                JobSurface::Bjorling { surface, .. } => {
                    let phi: PolyExpVec3 = surface.phi();
                    let square = phi.dot(&phi);
                    Check::exact(7, name, square.to_string(), "0")
                }
                JobSurface::Clothoid(s) => {
                    let worst = (0..64)
                        .map(|k| {
                            let z = c(-2.5 + 5.0 * k as f64 / 63.0, 0.7 * ((k % 7) as f64 - 3.0) / 3.0);
                            let phi = s.phi(z);
                            let size = phi.iter().map(|p| p.norm_sqr()).sum::<f64>();
                            dot3(phi, phi).norm() / size.max(f64::MIN_POSITIVE)
                        })
                        .fold(0.0, f64::max);
                    Check::measured(7, name, worst, tol.null_numeric)
                }
            }
        })
        .collect()
}

/// Points of a Weyl sequence in `[-w, w] x [-h, h]`.
fn scattered(n: usize, w: f64, h: f64) -> impl Iterator<Item = Complex64> {
    let (g1, g2) = (0.754_877_666_246_692_8, 0.569_840_290_998_053_2);
    (1..=n).map(move |k| {
        let k = k as f64;
        c(w * (2.0 * (k * g1).fract() - 1.0), h * (2.0 * (k * g2).fract() - 1.0))
    })
}

/// Grid size and curvature sample count for the oracle comparison.
#[derive(Clone, Copy, Debug)]
pub struct OracleScope {
    pub grid: usize,
    pub curvature_points: usize,
}

pub const ORACLE_SURFACES: [&str; 5] = ["circle-a2", "enneper-b90", "periodic-a5", "ellipse-closed", "trefoil-mobius"];

pub fn oracle_equivalence(tol: &Tolerances, scope: OracleScope) -> Vec<Check> {
    let spec = QuadratureSpec::default();
    let mut out = Vec::new();
    for (name, job) in registry_jobs().into_iter().filter(|(n, _)| ORACLE_SURFACES.contains(n)) {
        let s = bjorling_surface(&job);
        let n = scope.grid.max(2);
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let z = c(s.t0 - 1.5 + 3.0 * a as f64 / (n - 1) as f64, -1.0 + 2.0 * b as f64 / (n - 1) as f64);
                let err = match (s.position(z), bjorling_quadrature(&s.c, s.integrand(), s.t0, z, spec)) {
                    (Ok(x), Ok(q)) => (x - q.straight).norm().max(q.path_residual) / x.norm().max(1.0),
                    _ => f64::INFINITY,
                };
                worst = worst.max(if err.is_nan() { f64::INFINITY } else { err });
            }
        }
        out.push(Check::measured(8, format!("quadrature {name} {n}x{n}"), worst, tol.oracle));

        let mut curvature: f64 = 0.0;
        let mut done = 0;
        let mut errors = Vec::new();
        for z in scattered(20 * scope.curvature_points, 3.0, 1.0) {
            if done == scope.curvature_points {
                break;
            }
            match mean_curvature_numeric(s, z + s.t0, 1e-3) {
                Ok(h) => {
                    curvature = curvature.max(h);
                    done += 1;
                }
                Err(VerifyError::SingularPoint(_)) => {}
                Err(e) => errors.push(e.to_string()),
            }
        }
        let mut check = Check::measured(8, format!("mean curvature {name} ({done} points)"), curvature, tol.mean_curvature);
        if done < scope.curvature_points || !errors.is_empty() {
            check.passed = false;
            check.detail += &format!(" ({} of {} points; {:?})", done, scope.curvature_points, errors.first());
        }
        out.push(check);
    }
    out
}

fn angle(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

pub fn interpolation(tol: &Tolerances) -> Vec<Check> {
    let mut out = Vec::new();
    for (name, job) in registry_jobs() {
        let dom = job.domain;
        let surface = job.surface.as_surface();
        let (mut pos_err, mut normal_err) = (0.0f64, 0.0f64);
        let mut regular = 0;
        for k in 0..64 {
            let t = dom.u0 + (dom.u1 - dom.u0) * k as f64 / 63.0;
            let sample = match &job.surface {
                JobSurface::Bjorling { surface: s, normal } => s.core_point(t).ok().and_then(|core| {
                    let num = normal.0.eval(c(t, 0.0)).ok()?;
                    let scale = normal.1.eval_real(t).ok()?.re;
                    Some((core, Vector3::new(num[0].re, num[1].re, num[2].re) / scale))
                }),
                JobSurface::Clothoid(s) => s.core_point(t).ok().map(|core| (core, s.core_normal(t))),
            };
            let (Some((core, normal)), Ok(p)) = (sample, surface.eval_point(c(t, 0.0))) else {
                pos_err = f64::INFINITY;
                continue;
            };
            pos_err = pos_err.max((p.position - core).norm() / (1.0 + core.norm()));
            if !p.singular {
                normal_err = normal_err.max(angle(&p.unit_normal, &normal));
                regular += 1;
            }
        }
        out.push(Check::measured(9, format!("core curve {name}"), pos_err, tol.interpolation_position));
        let mut check = Check::measured(9, format!("core normal {name} ({regular} regular)"), normal_err, tol.interpolation_normal_rad);
        check.passed &= regular > 0;
        out.push(check);
    }
    out
}

/// Renders a few registry examples twice and compares the bytes.
pub fn determinism() -> Vec<Check> {
    ["circle-a2", "trefoil-mobius", "clothoid"]
        .into_iter()
        .map(|name| {
            let example = crate::registry::find(name).expect("registry example");
            let run = || Job::build(example.config()).and_then(|job| render(&job));
            let label = format!("repeat render {name}");
            match (run(), run()) {
                (Ok(x), Ok(y)) => Check::exact(10, label, (x.obj == y.obj, x.report == y.report), (true, true)),
                (x, y) => Check::failed(10, label, format!("{:?} / {:?}", x.err(), y.err())),
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Fast,
    Full,
}

pub fn run_suite(suite: Suite, tol: &Tolerances) -> Vec<Check> {
    let scope = match suite {
        Suite::Fast => OracleScope { grid: 4, curvature_points: 5 },
        Suite::Full => OracleScope { grid: 12, curvature_points: 20 },
    };
    let mut all = golden_lifts(tol);
    all.extend(closing_lambdas(tol));
    all.extend(circular_weierstrass(tol));
    all.extend(periodic_resultants(tol));
    all.extend(degree_table());
    all.extend(singular_cases(tol));
    all.extend(null_curves(tol));
    all.extend(oracle_equivalence(tol, scope));
    all.extend(interpolation(tol));
    all.extend(determinism());
    all
}
