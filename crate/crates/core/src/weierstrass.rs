//! Weierstrass data in the unit-circle coordinate `w = e^{i t / d}`.
//!
//! With `phi = c' - i (n x c')` write `A = phi1 - i phi2`, `B = -(phi1 + i phi2)`
//! and `C = phi3`. The null-curve identity reads `A B = C^2`, the Gauss map is
//! `G = C / A = B / C` and `dh = phi3 dz`. When `A` and `B` are perfect squares
//! `Q^2` and `P^2` (up to one power of `w`), `G = P / Q` and `dh` is a multiple
//! of `P Q`; singular points are then exactly the common roots of `P` and `Q`.

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::bjorling::{BjorlingSurface, SpinSpec};
use crate::laurent::{self, LaurentPoly, RationalMap, RootCluster};
use crate::polyexp::{snap_ratio, PolyExp, PolyExpError, Term};
use crate::tolerances;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeierstrassError {
    #[error("term {term} cannot be written in w = e^(it/d): {reason}{}", suggestion(*.suggested_d))]
    NotSubstitutable { term: String, reason: &'static str, suggested_d: Option<u32> },
    #[error("third component of phi vanishes identically; the surface is planar")]
    Degenerate,
    #[error("Gauss map fails the consistency check (residual {0:e})")]
    Inconsistent(f64),
    #[error("normal spins in the degenerate direction; r = {r}")]
    DegenerateSpinDirection { r: PolyExp },
    #[error(transparent)]
    PolyExp(#[from] PolyExpError),
}

fn suggestion(d: Option<u32>) -> String {
    match d {
        Some(d) => format!(" (try d = {d})"),
        None => String::new(),
    }
}

/// Smallest `d` for which a rate `i r` becomes an integer power of `w`.
fn term_denominator(term: &Term) -> Result<i64, WeierstrassError> {
    let fail = |reason, suggested_d| WeierstrassError::NotSubstitutable {
        term: PolyExp::from_terms([*term]).to_string(),
        reason,
        suggested_d,
    };
    if term.power != 0 {
        return Err(fail("polynomial factor in t", None));
    }
    if term.rate.is_zero() {
        return Ok(1);
    }
    match term.rate.imaginary_ratio() {
        Some(r) => Ok(*r.denom()),
        None => {
            let k = term.rate.value();
            let guess = (k.re == 0.0).then(|| snap_ratio(k.im)).flatten();
            Err(fail("rate is not a known rational multiple of i", guess.map(|r| *r.denom() as u32)))
        }
    }
}

/// Least common denominator of all rates, if it is at most the cap.
pub fn minimal_denominator<'a>(polys: impl IntoIterator<Item = &'a PolyExp>) -> Result<u32, WeierstrassError> {
    let mut d: i64 = 1;
    for p in polys {
        for term in p.terms() {
            d = d.lcm(&term_denominator(term)?);
            if d > tolerances::MAX_SUBSTITUTION_DENOMINATOR {
                return Err(WeierstrassError::NotSubstitutable {
                    term: PolyExp::from_terms([*term]).to_string(),
                    reason: "common denominator exceeds the search cap",
                    suggested_d: None,
                });
            }
        }
    }
    Ok(d as u32)
}

/// `c e^{i (m/d) t}` becomes `c w^m`.
pub fn substitute_unit_circle(p: &PolyExp, d: u32) -> Result<LaurentPoly, WeierstrassError> {
    let mut pairs = Vec::with_capacity(p.terms().len());
    for term in p.terms() {
        let need = term_denominator(term)?;
        let m = if term.rate.is_zero() {
            0
        } else {
            let r = term.rate.imaginary_ratio().expect("tagged");
            if (d as i64) % need != 0 {
                return Err(WeierstrassError::NotSubstitutable {
                    term: PolyExp::from_terms([*term]).to_string(),
                    reason: "frequency is not a multiple of 1/d",
                    suggested_d: Some((d as i64).lcm(&need) as u32)
                        .filter(|&s| s as i64 <= tolerances::MAX_SUBSTITUTION_DENOMINATOR),
                });
            }
            r.numer() * (d as i64 / r.denom())
        };
        pairs.push((m, term.coeff));
    }
    Ok(LaurentPoly::from_pairs(pairs))
}

/// Gauss map, height differential and, when they exist, the factors `P` and `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassData {
    /// Reduced by common factors of numerator and denominator.
    pub gauss: RationalMap,
    /// `dh = dh_coeff(w) dw`.
    pub dh_coeff: RationalMap,
    pub substitution_denominator: u32,
    pub p: Option<LaurentPoly>,
    pub q: Option<LaurentPoly>,
    /// `phi1 - i phi2`, `-(phi1 + i phi2)` and `phi3` in `w`.
    pub a: LaurentPoly,
    pub b: LaurentPoly,
    pub c: LaurentPoly,
}

/// Square roots `Q^2 = A w^-s`, `P^2 = B w^s` with `C = P Q`; returns `(P, Q, s)`.
fn split_squares(a: &LaurentPoly, b: &LaurentPoly, c: &LaurentPoly) -> Option<(LaurentPoly, LaurentPoly, i64)> {
    let s = a.min_exp()?.rem_euclid(2);
    let q = laurent::laurent_sqrt(&a.shift(-s))?;
    let p = laurent::laurent_sqrt(&b.shift(s))?;
    let pq = p.mul(&q);
    let scale = c.max_coeff().max(pq.max_coeff());
    let tol = tolerances::WEIERSTRASS_CONSISTENCY * scale;
    if pq.approx_eq(c, tol) {
        Some((p, q, s))
    } else if pq.scale(Complex64::new(-1.0, 0.0)).approx_eq(c, tol) {
        Some((p.scale(Complex64::new(-1.0, 0.0)), q, s))
    } else {
        None
    }
}

fn unit_circle(n: usize) -> impl Iterator<Item = Complex64> {
    // offset keeps samples away from roots of unity
    (0..n).map(move |k| Complex64::from_polar(1.0, (k as f64 + 0.37) * std::f64::consts::TAU / n as f64))
}

/// Largest relative residual of `G A = C` and `G C = B` on the unit circle.
fn consistency_residual(g: &RationalMap, a: &LaurentPoly, b: &LaurentPoly, c: &LaurentPoly) -> f64 {
    let mut worst: f64 = 0.0;
    for w in unit_circle(32) {
        let (n, d) = (g.num.eval(w), g.den.eval(w));
        let (av, bv, cv) = (a.eval(w), b.eval(w), c.eval(w));
        let r1 = (n * av - d * cv).norm() / (n.norm() * av.norm() + d.norm() * cv.norm()).max(f64::MIN_POSITIVE);
        let r2 = (n * cv - d * bv).norm() / (n.norm() * cv.norm() + d.norm() * bv.norm()).max(f64::MIN_POSITIVE);
        worst = worst.max(r1).max(r2);
    }
    worst
}

/// Weierstrass data of a surface whose `phi` is a sum of `e^{i r t}` terms.
pub fn weierstrass_data(surface: &BjorlingSurface) -> Result<WeierstrassData, WeierstrassError> {
    let phi = surface.phi();
    let d = minimal_denominator(phi.components())?;
    let [p1, p2, p3] = phi.components().map(|p| substitute_unit_circle(p, d));
    let (p1, p2, c) = (p1?, p2?, p3?);
    if c.is_zero() {
        return Err(WeierstrassError::Degenerate);
    }
    let i = Complex64::new(0.0, 1.0);
    let a = p1.sub(&p2.scale(i));
    let b = p1.add(&p2.scale(i)).scale(Complex64::new(-1.0, 0.0));
    let split = split_squares(&a, &b, &c);
    let raw = match &split {
        Some((p, q, s)) => RationalMap { num: p.clone(), den: q.shift(*s) },
        None => RationalMap { num: c.clone(), den: a.clone() },
    };
    let residual = consistency_residual(&raw, &a, &b, &c);
    if !(residual <= tolerances::WEIERSTRASS_CONSISTENCY) {
        return Err(WeierstrassError::Inconsistent(residual));
    }
    let reduced = laurent::reduce_and_common_roots(&raw.num, &raw.den);
    let gauss = if reduced.common.is_empty() {
        raw
    } else {
        let shift = raw.num.min_exp().unwrap_or(0).min(raw.den.min_exp().unwrap_or(0));
        RationalMap { num: reduced.p.shift(shift), den: reduced.q.shift(shift) }
    };
    let dh_coeff = RationalMap { num: c.scale(Complex64::new(0.0, -(d as f64))).shift(-1), den: LaurentPoly::monomial(Complex64::new(1.0, 0.0), 0) };
    let (p, q) = match split {
        Some((p, q, _)) => (Some(p), Some(q)),
        None => (None, None),
    };
    Ok(WeierstrassData { gauss, dh_coeff, substitution_denominator: d, p, q, a, b, c })
}

/// Outcome of the regularity analysis.
#[derive(Clone, Debug, PartialEq)]
pub struct RegularityReport {
    pub is_regular: bool,
    pub common_roots: Vec<Complex64>,
    pub gauss_degree: usize,
    pub resultant: Complex64,
    /// Zeros of the metric in `C*`.
    pub metric_zero_locus: Vec<Complex64>,
    pub substitution_denominator: u32,
    /// Zeros of `dh` whose order the Gauss map does not match.
    pub unmatched_zeros: Vec<RootCluster>,
}

#[derive(Serialize)]
struct ReportJson {
    regular: bool,
    degree: usize,
    resultant: [f64; 2],
    common_roots: Vec<[f64; 2]>,
    d: u32,
}

impl Serialize for RegularityReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ReportJson {
            regular: self.is_regular,
            degree: self.gauss_degree,
            resultant: [self.resultant.re, self.resultant.im],
            common_roots: self.common_roots.iter().map(|r| [r.re, r.im]).collect(),
            d: self.substitution_denominator,
        }
        .serialize(s)
    }
}

fn multiplicity_at(roots: &[RootCluster], r: Complex64) -> usize {
    roots
        .iter()
        .filter(|c| (c.root - r).norm() <= 1e3 * tolerances::ROOT_CLUSTER * r.norm().max(1.0))
        .map(|c| c.multiplicity)
        .sum()
}

/// Common roots, resultant, degree, and the order test at every zero of `dh`.
pub fn regularity_report(data: &WeierstrassData) -> RegularityReport {
    let (left, right) = match (&data.p, &data.q) {
        (Some(p), Some(q)) => (p, q),
        _ => (&data.a, &data.b),
    };
    let reduced = laurent::reduce_and_common_roots(left, right);
    let common: Vec<Complex64> = reduced.common.iter().map(|c| c.root).collect();
    let resultant = laurent::resultant(left, right);
    // G = C / A has order m_C - m_A at a zero of C; the metric survives
    // exactly when A does not vanish there or vanishes to twice the order.
    let a_roots = data.a.roots();
    let unmatched: Vec<RootCluster> = data
        .c
        .roots()
        .into_iter()
        .filter(|z| {
            let m_a = multiplicity_at(&a_roots, z.root);
            m_a != 0 && m_a != 2 * z.multiplicity
        })
        .collect();
    RegularityReport {
        is_regular: common.is_empty() && unmatched.is_empty(),
        metric_zero_locus: common.clone(),
        common_roots: common,
        gauss_degree: data.gauss.degree(),
        resultant,
        substitution_denominator: data.substitution_denominator,
        unmatched_zeros: unmatched,
    }
}

/// Rectangle in the `z` plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchBox {
    pub re: (f64, f64),
    pub im: (f64, f64),
}

impl SearchBox {
    pub fn contains(&self, z: Complex64) -> bool {
        (self.re.0..=self.re.1).contains(&z.re) && (self.im.0..=self.im.1).contains(&z.im)
    }
}

/// A point where some real lambda makes the lifted surface singular.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingularChoice {
    pub z: Complex64,
    /// `e^{i z}`.
    pub omega: Complex64,
    pub lambda: f64,
}

/// Zeros of `f` in the box, by roots in `w = e^{iz/d}` when possible and a
/// Newton grid otherwise.
fn zeros_in_box(f: &PolyExp, bx: SearchBox) -> Result<Vec<Complex64>, WeierstrassError> {
    let mut found: Vec<Complex64> = Vec::new();
    let push = |found: &mut Vec<Complex64>, z: Complex64| {
        if bx.contains(z) && !found.iter().any(|&y| (y - z).norm() <= 1e-7 * z.norm().max(1.0)) {
            found.push(z);
        }
    };
    if let Ok(d) = minimal_denominator([f]) {
        let lp = substitute_unit_circle(f, d)?;
        let d = d as f64;
        let period = std::f64::consts::TAU * d;
        for cluster in lp.roots() {
            let w = cluster.root;
            let base = Complex64::new(d * w.arg(), -d * w.norm().ln());
            let lo = ((bx.re.0 - base.re) / period).floor() as i64;
            let hi = ((bx.re.1 - base.re) / period).ceil() as i64;
            for k in lo..=hi {
                push(&mut found, base + period * k as f64);
            }
        }
        return Ok(found);
    }
    let df = f.diff();
    let n = 40;
    for jr in 0..=n {
        for ji in 0..=n {
            let mut z = Complex64::new(
                bx.re.0 + (bx.re.1 - bx.re.0) * jr as f64 / n as f64,
                bx.im.0 + (bx.im.1 - bx.im.0) * ji as f64 / n as f64,
            );
            let mut converged = false;
            for _ in 0..60 {
                let (v, dv) = match (f.eval(z), df.eval(z)) {
                    (Ok(v), Ok(dv)) => (v, dv),
                    _ => break,
                };
                if dv.norm() == 0.0 {
                    break;
                }
                let step = v / dv;
                z -= step;
                if step.norm() <= 1e-14 * z.norm().max(1.0) {
                    converged = true;
                    break;
                }
            }
            if converged && f.eval_magnitude(z).is_ok_and(|m| f.eval(z).is_ok_and(|v| v.norm() <= 1e-10 * m.max(1e-300))) {
                push(&mut found, z);
            }
        }
    }
    Ok(found)
}

/// Real `lambda` values making the lift of `(xp, yp)` singular, with their `z`.
pub fn singular_lambda_locus(
    xp: &PolyExp,
    yp: &PolyExp,
    spin: SpinSpec,
    bx: SearchBox,
) -> Result<Vec<SingularChoice>, WeierstrassError> {
    let (cos, sin) = (spin.cos(), spin.sin());
    let along = &(&cos * xp) + &(&sin * yp);
    if along.is_zero() {
        let r = &(&cos * yp) - &(&sin * xp);
        return Err(WeierstrassError::DegenerateSpinDirection { r });
    }
    let i = Complex64::new(0.0, 1.0);
    let lambda_of = &(&cos + &sin.scale(i)) * &(xp - &yp.scale(i));
    let mut out = Vec::new();
    for z in zeros_in_box(&along, bx)? {
        let l = lambda_of.eval(z)?;
        if l.im.abs() <= tolerances::ROOT_MATCH * l.norm().max(1.0) && l.re != 0.0 {
            out.push(SingularChoice { z, omega: (i * z).exp(), lambda: l.re });
        }
    }
    out.sort_by(|u, v| u.z.re.total_cmp(&v.z.re).then(u.z.im.total_cmp(&v.z.im)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bjorling::build_surface;
    use crate::frames::{lift_plane_curve, phi_of_quaternion, QuaternionCurve};
    use crate::polyexp::parse;

    fn p(s: &str) -> PolyExp {
        parse(s).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn substitution() {
        let l = substitute_unit_circle(&p("cos(t)"), 1).unwrap();
        assert_eq!(l, LaurentPoly::from_pairs([(1, c(0.5, 0.0)), (-1, c(0.5, 0.0))]));
        match substitute_unit_circle(&p("cos(t/2)"), 1) {
            Err(WeierstrassError::NotSubstitutable { suggested_d, .. }) => assert_eq!(suggested_d, Some(2)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            substitute_unit_circle(&p("t*exp(i*t)"), 1),
            Err(WeierstrassError::NotSubstitutable { suggested_d: None, .. })
        ));
        assert_eq!(minimal_denominator([&p("cos(t/2) + sin(t/3)")]).unwrap(), 6);
        let l = substitute_unit_circle(&p("exp(3/2*i*t) + 2"), 4).unwrap();
        assert_eq!(l, LaurentPoly::from_pairs([(6, c(1.0, 0.0)), (0, c(2.0, 0.0))]));
    }

    fn circular(a: f64) -> BjorlingSurface {
        let q = QuaternionCurve::new(p("cos(t/2)"), PolyExp::zero(), PolyExp::zero(), p("-sin(t/2)"));
        let f = phi_of_quaternion(&q).unwrap();
        build_surface(&f, SpinSpec::new(a, 0.0), 0.0, [0.0; 3])
    }

    #[test]
    fn circular_helicoid_degree_and_regularity() {
        for a in 1..=6 {
            let w = weierstrass_data(&circular(a as f64)).unwrap();
            let r = regularity_report(&w);
            assert!(r.is_regular, "a = {a}: {r:?}");
            assert_eq!(r.gauss_degree, a + 1);
            assert!(r.resultant.norm() > 1e-6);
        }
    }

    #[test]
    fn ellipse_singular_at_unit_lambda() {
        let xp = p("-sin(t)");
        let yp = p("3*cos(t)");
        let spin = SpinSpec::new(2.0, 0.0);
        let lift = lift_plane_curve(&xp, &yp, 1.0).unwrap();
        let s = build_surface(&lift.frame, spin, 0.0, [0.0; 3]);
        let r = regularity_report(&weierstrass_data(&s).unwrap());
        assert!(!r.is_regular);
        let lift = lift_plane_curve(&xp, &yp, 5f64.sqrt()).unwrap();
        let s = build_surface(&lift.frame, spin, 0.0, [0.0; 3]);
        assert!(regularity_report(&weierstrass_data(&s).unwrap()).is_regular);

        let bx = SearchBox { re: (-std::f64::consts::PI, std::f64::consts::PI), im: (-3.0, 3.0) };
        let locus = singular_lambda_locus(&xp, &yp, spin, bx).unwrap();
        let target = c(0.0, (5f64.sqrt() - 1.0) / 2.0);
        let hit = locus.iter().find(|s| (s.omega - target).norm() < 1e-8).expect("missing root");
        assert!((hit.lambda.abs() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn deltoid_direction_is_degenerate() {
        let xp = p("2*sin(t) + 2*sin(2*t)");
        let yp = p("2*cos(2*t) - 2*cos(t)");
        let bx = SearchBox { re: (-1.0, 1.0), im: (-1.0, 1.0) };
        match singular_lambda_locus(&xp, &yp, SpinSpec::new(-0.5, std::f64::consts::FRAC_PI_2), bx) {
            Err(WeierstrassError::DegenerateSpinDirection { r }) => {
                assert!(r.approx_eq(&p("-4*sin(3/2*t)"), 1e-12), "{r}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn report_json_shape() {
        let r = regularity_report(&weierstrass_data(&circular(2.0)).unwrap());
        let v = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
        assert_eq!(keys, ["common_roots", "d", "degree", "regular", "resultant"]);
    }
}
