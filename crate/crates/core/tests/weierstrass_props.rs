mod common;

use std::f64::consts::{FRAC_PI_2, TAU};

use bjorling::laurent::{reduce_and_common_roots, resultant, LaurentPoly};
use bjorling::weierstrass::{regularity_report, weierstrass_data, WeierstrassData};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn unit_samples(rng: &mut StdRng, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..TAU))).collect()
}

/// Bound for `|p(w)|` on the unit circle.
fn mag(p: &LaurentPoly) -> f64 {
    p.coeffs().values().map(|c| c.norm()).sum()
}

fn both_gauss_forms_agree(data: &WeierstrassData, rng: &mut StdRng, label: &str) {
    let (num, den) = (&data.gauss.num, &data.gauss.den);
    for w in unit_samples(rng, 64) {
        let (a, b, c) = (data.a.eval(w), data.b.eval(w), data.c.eval(w));
        // C / A = B / C, cross-multiplied
        let gap = (c * c - a * b).norm();
        assert!(gap <= 1e-9 * (mag(&data.c).powi(2) + mag(&data.a) * mag(&data.b)), "{label} at {w}: {gap}");
        let gap = (num.eval(w) * a - den.eval(w) * c).norm();
        assert!(gap <= 1e-9 * (mag(num) * mag(&data.a) + mag(den) * mag(&data.c)), "{label} at {w}: {gap}");
    }
}

#[test]
fn gauss_map_forms_agree() {
    let mut rng = StdRng::seed_from_u64(21);
    for s in common::catalog() {
        if !matches!(s.name, "log spiral" | "archimedean" | "circle spiral") {
            let data = weierstrass_data(&s.surface).unwrap_or_else(|e| panic!("{}: {e}", s.name));
            both_gauss_forms_agree(&data, &mut rng, s.name);
        }
    }
}

#[test]
fn metric_is_positive_on_regular_surfaces() {
    let mut rng = StdRng::seed_from_u64(22);
    for s in common::catalog().iter().filter(|s| matches!(s.name, "circular helicoid" | "enneper" | "periodic" | "trefoil")) {
        let data = weierstrass_data(&s.surface).unwrap();
        assert!(regularity_report(&data).is_regular, "{}", s.name);
        for _ in 0..256 {
            let w = Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..TAU));
            let g = data.gauss.eval(w).norm();
            let metric = 0.5 * (g + 1.0 / g) * data.dh_coeff.eval(w).norm();
            assert!(metric > 0.0 && metric.is_finite(), "{} at {w}: {metric}", s.name);
        }
    }
}

fn poly_from_roots(lead: Complex64, roots: &[Complex64]) -> LaurentPoly {
    roots.iter().fold(LaurentPoly::monomial(lead, 0), |acc, &r| {
        acc.mul(&LaurentPoly::from_pairs([(1, Complex64::new(1.0, 0.0)), (0, -r)]))
    })
}

#[test]
fn resultant_vanishes_exactly_with_common_roots() {
    let mut rng = StdRng::seed_from_u64(23);
    let root = |rng: &mut StdRng| Complex64::from_polar(rng.gen_range(0.3..2.0), rng.gen_range(0.0..TAU));
    for case in 0..50 {
        let shared = case % 2 == 0;
        let (m, n) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let mut rp: Vec<Complex64> = (0..m).map(|_| root(&mut rng)).collect();
        let mut rq: Vec<Complex64> = Vec::new();
        while rq.len() < n {
            let r = root(&mut rng);
            if rp.iter().all(|p| (p - r).norm() > 0.2) {
                rq.push(r);
            }
        }
        if shared {
            rq[0] = rp[0];
        }
        rp.rotate_left(case % m);
        let lead = |rng: &mut StdRng| Complex64::new(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0));
        let p = poly_from_roots(lead(&mut rng), &rp);
        let q = poly_from_roots(lead(&mut rng), &rq);
        let res = resultant(&p, &q);
        let bound = p.max_coeff().powi(n as i32) * q.max_coeff().powi(m as i32) * 2f64.powi((m + n) as i32);
        let vanishes = res.norm() <= 1e-9 * bound;
        let common = reduce_and_common_roots(&p, &q).common;
        assert_eq!(vanishes, !common.is_empty(), "case {case}: res {res}, common {common:?}");
        assert_eq!(vanishes, shared, "case {case}");
        if shared {
            assert!((common[0].root - rq[0]).norm() <= 1e-8, "case {case}");
        }
    }
}

#[test]
fn degree_table() {
    for a in 1..=6 {
        let af = a as f64;
        let deg = |s| regularity_report(&weierstrass_data(&s).unwrap()).gauss_degree;
        assert_eq!(deg(common::circular_helicoid(af)), a + 1, "circular a = {a}");
        assert_eq!(deg(common::enneper(af)), a + 3, "enneper a = {a}");
        assert_eq!(deg(common::periodic(af, 0.3)), a + 2, "periodic a = {a}");
        assert_eq!(deg(common::helix(af)), a, "helix a = {a}");
    }
}

#[test]
fn degree_drops_in_the_flagged_cases() {
    let deg = |s| regularity_report(&weierstrass_data(&s).unwrap()).gauss_degree;
    assert_eq!(deg(common::enneper(0.0)), 1);
    assert_eq!(deg(common::periodic(0.0, FRAC_PI_2)), 1);
    assert_eq!(deg(common::periodic(0.0, 0.0)), 2);
}

#[test]
fn trefoil_strip_has_degree_seven() {
    let data = weierstrass_data(&common::trefoil()).unwrap();
    let report = regularity_report(&data);
    assert_eq!(report.substitution_denominator, 2);
    assert_eq!(report.gauss_degree, 7);
    assert!(report.common_roots.is_empty());
    assert!(report.is_regular);
}
