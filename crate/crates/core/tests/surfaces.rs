mod common;

use bjorling::bjorling::{Surface, SurfaceError, SurfacePoint};
use bjorling::curves::ClothoidSurface;
use bjorling::verify::fresnel::{fresnel_quadrature, fresnel_series};
use bjorling::verify::quadrature::integrate_segment;
use bjorling::verify::{bjorling_quadrature, fresnel, mean_curvature_numeric, QuadratureSpec, VerifyError};
use nalgebra::Vector3;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn holomorphic_derivative_is_null() {
    for s in common::catalog() {
        let phi = s.surface.phi();
        let square = phi.dot(&phi);
        assert!(square.is_zero(), "{}: {square}", s.name);
        assert!(s.surface.is_real(), "{}", s.name);
    }
}

#[test]
fn surface_contains_core_curve_with_its_normal() {
    for s in common::catalog() {
        let (t0, t1) = s.interval;
        let mut checked = 0;
        for k in 0..64 {
            let t = t0 + (t1 - t0) * k as f64 / 63.0;
            let p = s.surface.eval_point(c(t, 0.0)).unwrap();
            let core = s.surface.core_point(t).unwrap();
            assert!((p.position - core).norm() <= 1e-12 * (1.0 + core.norm()), "{} at {t}", s.name);
            if p.singular {
                continue;
            }
            let num = s.normal.0.eval(c(t, 0.0)).unwrap();
            let want = Vector3::new(num[0].re, num[1].re, num[2].re) / s.normal.1.eval_real(t).unwrap().re;
            assert!((want.norm() - 1.0).abs() < 1e-12, "{} at {t}", s.name);
            let angle = p.unit_normal.cross(&want).norm().atan2(p.unit_normal.dot(&want));
            assert!(angle <= 1e-8, "{} at {t}: {angle}", s.name);
            checked += 1;
        }
        assert!(checked >= 32, "{}: only {checked} regular samples", s.name);
    }
}

#[test]
fn tangents_are_conformal() {
    for s in common::catalog() {
        for a in 0..16 {
            for b in 0..16 {
                let z = c(-3.0 + 0.4 * a as f64, -1.0 + 2.0 * b as f64 / 15.0);
                let p = s.surface.eval_point(z).unwrap();
                if p.singular {
                    continue;
                }
                let (u, v) = (p.xu.norm(), p.xv.norm());
                assert!((u - v).abs() <= 1e-9 * u, "{} at {z}", s.name);
                assert!(p.xu.dot(&p.xv).abs() <= 1e-9 * u * u, "{} at {z}", s.name);
            }
        }
    }
}

#[test]
fn closed_form_matches_quadrature() {
    let spec = QuadratureSpec::default();
    for s in common::catalog().iter().filter(|s| {
        matches!(s.name, "circular helicoid" | "enneper" | "periodic" | "ellipse" | "trefoil" | "log spiral")
    }) {
        for a in 0..8 {
            for b in 0..8 {
                let z = c(-1.4 + 0.4 * a as f64, -1.4 + 0.4 * b as f64);
                let x = s.surface.position(z).unwrap();
                let q = bjorling_quadrature(&s.surface.c, s.surface.integrand(), s.surface.t0, z, spec).unwrap();
                assert!((x - q.straight).norm() <= 1e-9, "{} at {z}: {}", s.name, (x - q.straight).norm());
                assert!(q.path_residual <= 1e-9, "{} at {z}: {}", s.name, q.path_residual);
            }
        }
    }
}

#[test]
fn catalog_surfaces_are_minimal() {
    let mut rng = StdRng::seed_from_u64(7);
    for s in common::catalog() {
        let mut done = 0;
        while done < 20 {
            let z = c(rng.gen_range(-3.0..3.0), rng.gen_range(-1.0..1.0));
            match mean_curvature_numeric(&s.surface, z, 1e-3) {
                Ok(h) => {
                    assert!(h <= 1e-5, "{} at {z}: {h}", s.name);
                    done += 1;
                }
                Err(VerifyError::SingularPoint(_)) => continue,
                Err(e) => panic!("{}: {e}", s.name),
            }
        }
    }
}

/// Pushes a surface off itself along its normal by `eps (u^2 + v^2)`.
struct Bumped<S> {
    inner: S,
    eps: f64,
}

impl<S: Surface> Surface for Bumped<S> {
    fn eval_point(&self, z: Complex64) -> Result<SurfacePoint, SurfaceError> {
        let mut p = self.inner.eval_point(z)?;
        p.position += p.unit_normal * (self.eps * z.norm_sqr());
        Ok(p)
    }
}

#[test]
fn curvature_residual_detects_perturbation() {
    let bumped = Bumped { inner: common::circular_helicoid(1.0), eps: 0.05 };
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..20 {
        let z = c(rng.gen_range(-3.0..3.0), rng.gen_range(-1.0..1.0));
        let h = mean_curvature_numeric(&bumped, z, 1e-3).unwrap();
        assert!(h > 1e-3, "{z}: {h}");
    }
}

/// Adaptive Simpson on a real interval.
fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rule(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }
    fn go(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (l, r) = (rule(f, a, m), rule(f, m, b));
        if depth == 0 || (l + r - whole).abs() <= 15.0 * tol {
            return l + r + (l + r - whole) / 15.0;
        }
        go(f, a, m, l, tol / 2.0, depth - 1) + go(f, m, b, r, tol / 2.0, depth - 1)
    }
    go(f, a, b, rule(f, a, b), tol, 40)
}

#[test]
fn fresnel_reference_values() {
    let want_c = simpson(&|s: f64| (s * s).cos(), 0.0, 1.0, 1e-14);
    let want_s = simpson(&|s: f64| (s * s).sin(), 0.0, 1.0, 1e-14);
    let (cv, sv) = fresnel(c(1.0, 0.0)).unwrap();
    assert!((cv.re - want_c).abs() <= 1e-12 && cv.im == 0.0, "{cv} vs {want_c}");
    assert!((sv.re - want_s).abs() <= 1e-12, "{sv} vs {want_s}");
    assert!((want_c - 0.904524).abs() < 1e-6);
    assert_eq!(fresnel(c(0.0, 0.0)).unwrap(), (c(0.0, 0.0), c(0.0, 0.0)));
    let h = 1e-5;
    let slope = (fresnel(c(1.0 + h, 0.0)).unwrap().0 - fresnel(c(1.0 - h, 0.0)).unwrap().0) / (2.0 * h);
    assert!((slope.re - 1f64.cos()).abs() <= 1e-8);
    assert!(matches!(fresnel(c(9.0, 0.0)), Err(VerifyError::DomainTooLarge(_))));
}

#[test]
fn fresnel_series_matches_quadrature() {
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..20 {
        let z = Complex64::from_polar(rng.gen_range(0.0..4.0), rng.gen_range(0.0..std::f64::consts::TAU));
        let (sc, ss) = fresnel_series(z);
        let (qc, qs) = fresnel_quadrature(z);
        assert!((sc - qc).norm() <= 1e-10 * sc.norm().max(1.0), "{z}: {sc} vs {qc}");
        assert!((ss - qs).norm() <= 1e-10 * ss.norm().max(1.0), "{z}: {ss} vs {qs}");
    }
}

#[test]
fn clothoid_surface_matches_quadrature() {
    let s = ClothoidSurface::new(1.4).unwrap();
    let spec = QuadratureSpec::default();
    for a in 0..12 {
        for b in 0..12 {
            let z = c(-1.5 + 3.0 * a as f64 / 11.0, -1.0 + 2.0 * b as f64 / 11.0);
            let want: [Complex64; 3] = std::array::from_fn(|k| {
                integrate_segment(|w| Ok(s.phi(w)[k]), c(0.0, 0.0), z, spec).unwrap()
            });
            let got = s.position(z).unwrap();
            let want = Vector3::new(want[0].re, want[1].re, want[2].re);
            assert!((got - want).norm() <= 1e-8 * want.norm().max(1.0), "{z}: {got} vs {want}");
            let h = mean_curvature_numeric(&s, z, 1e-3).unwrap();
            assert!(h <= 1e-5, "{z}: {h}");
        }
    }
}
