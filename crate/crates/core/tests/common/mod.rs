//! Surfaces shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::{E, FRAC_PI_2};

use bjorling::bjorling::{build_surface, spin_normal, BjorlingSurface, SpinSpec};
use bjorling::curves::{catalog_plane, catalog_quaternion, Params};
use bjorling::frames::{phi_of_quaternion, FrameCurve};
use bjorling::polyexp::{PolyExp, PolyExpVec3};

pub fn params(kv: &[(&str, f64)]) -> Params {
    kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

pub struct Named {
    pub name: &'static str,
    pub surface: BjorlingSurface,
    /// Real interval to sample the core curve on.
    pub interval: (f64, f64),
    /// Prescribed normal along the core curve, as numerator over scale.
    pub normal: (PolyExpVec3, PolyExp),
}

pub fn quaternion_frame(name: &str, p: &Params) -> FrameCurve {
    phi_of_quaternion(&catalog_quaternion(name, p).unwrap().q).unwrap()
}

pub fn lift_frame(name: &str, p: &Params, lambda: f64) -> FrameCurve {
    catalog_plane(name, p).unwrap().lift(lambda).unwrap().frame
}

pub fn quaternion_surface(name: &str, p: &Params, spin: SpinSpec, offset: [f64; 3]) -> BjorlingSurface {
    build_surface(&quaternion_frame(name, p), spin, 0.0, offset)
}

pub fn lift_surface(name: &str, p: &Params, lambda: f64, spin: SpinSpec) -> BjorlingSurface {
    build_surface(&lift_frame(name, p, lambda), spin, 0.0, [0.0; 3])
}

fn named(name: &'static str, frame: FrameCurve, spin: SpinSpec, offset: [f64; 3], interval: (f64, f64)) -> Named {
    Named { name, surface: build_surface(&frame, spin, 0.0, offset), interval, normal: spin_normal(&frame, spin) }
}

pub fn enneper_params() -> Params {
    params(&[("A", -0.5), ("B", 1.5)])
}

pub fn circular_helicoid(a: f64) -> BjorlingSurface {
    quaternion_surface("great_circle", &Params::new(), SpinSpec::new(a, 0.0), [0.0; 3])
}

pub fn enneper(a: f64) -> BjorlingSurface {
    quaternion_surface("torus_knot", &enneper_params(), SpinSpec::new(a, 0.0), [0.0; 3])
}

pub fn periodic(a: f64, b: f64) -> BjorlingSurface {
    quaternion_surface("circle_product", &Params::new(), SpinSpec::new(a, b), [0.0, 0.5, 0.0])
}

pub fn helix(a: f64) -> BjorlingSurface {
    lift_surface("circle", &Params::new(), 1.7, SpinSpec::new(a, 0.3))
}

pub fn trefoil() -> BjorlingSurface {
    let xi: f64 = 0.25;
    lift_surface("trefoil", &params(&[("xi", xi)]), (xi * xi + 1.0).sqrt(), SpinSpec::new(0.5, FRAC_PI_2))
}

pub fn catalog() -> Vec<Named> {
    let tau = std::f64::consts::TAU;
    let trig = (0.0, tau);
    let spiral = (-3.0, 3.0);
    let none = Params::new();
    let spin = SpinSpec::new;
    let xi: f64 = 0.25;
    vec![
        named("circular helicoid", quaternion_frame("great_circle", &none), spin(2.0, 0.0), [0.0; 3], trig),
        named("moebius helicoid", quaternion_frame("great_circle", &none), spin(3.5, 0.0), [0.0; 3], (0.0, 2.0 * tau)),
        named("enneper", quaternion_frame("torus_knot", &enneper_params()), spin(2.0, 0.0), [0.0; 3], trig),
        named("periodic", quaternion_frame("circle_product", &none), spin(1.0, FRAC_PI_2), [0.0, 0.5, 0.0], trig),
        named("small circle", quaternion_frame("small_circle", &params(&[("sigma", 0.4)])), spin(1.0, 0.0), [0.0; 3], trig),
        named("helix", lift_frame("circle", &none, 1.7), spin(2.0, 0.3), [0.0; 3], trig),
        named("ellipse", lift_frame("ellipse", &none, 5f64.sqrt()), spin(2.0, 0.0), [0.0; 3], trig),
        named("lissajous", lift_frame("lissajous", &params(&[("xi", 1.0), ("eta", 2.0)]), 2.5f64.sqrt()), spin(1.0, 0.0), [0.0; 3], trig),
        named("cycloid", lift_frame("cycloid", &params(&[("R", 2.0), ("r", 1.0), ("s", 2.0)]), 3.0 * 5f64.sqrt()), spin(1.0, 0.0), [0.0; 3], trig),
        named("deltoid", lift_frame("deltoid", &none, 2.0 * 2f64.sqrt()), spin(-0.5, FRAC_PI_2), [0.0; 3], (0.0, 2.0 * tau)),
        named("trefoil", lift_frame("trefoil", &params(&[("xi", xi)]), (xi * xi + 1.0).sqrt()), spin(0.5, FRAC_PI_2), [0.0; 3], (0.0, 2.0 * tau)),
        named("log spiral", lift_frame("log_spiral", &params(&[("rho", E)]), 1.0), spin(1.0, 0.0), [0.0; 3], spiral),
        named("archimedean", lift_frame("archimedean", &none, 2.0), spin(1.0, 0.0), [0.0; 3], spiral),
        named("circle spiral", lift_frame("circle_spiral", &params(&[("rho", E)]), 1.0), spin(3.0, FRAC_PI_2), [0.0; 3], spiral),
    ]
}
