//! Built-in example jobs covering the catalog curves and spin settings.

use serde_json::{json, Value};

use crate::config::JobConfig;

pub struct Example {
    pub name: &'static str,
    pub summary: &'static str,
    config: fn() -> Value,
}

impl Example {
    pub fn config(&self) -> JobConfig {
        serde_json::from_value((self.config)()).expect("registry configs are valid")
    }
}

macro_rules! example {
    ($name:literal, $summary:literal, $json:tt) => {
        Example { name: $name, summary: $summary, config: || json!($json) }
    };
}

pub const EXAMPLES: &[Example] = &[
    example!("circle-a2", "circular helicoid, a = 2", {
        "method": "quaternion", "curve": {"name": "great_circle"}, "spin": {"a": 2, "b": 0}
    }),
    example!("circle-mobius", "circular Moebius strip, a = 7/2", {
        "method": "quaternion", "curve": {"name": "great_circle"}, "spin": {"a": "7/2", "b": 0}
    }),
    example!("enneper-b0", "Enneper surface, A = -1/2, B = 3/2", {
        "method": "quaternion", "curve": {"name": "torus_knot", "params": {"A": -0.5, "B": 1.5}},
        "spin": {"a": 0, "b": 0},
        "domain": {"u": [0, "2*pi"], "v": [-0.6, 0.6], "nu": 128, "nv": 24}
    }),
    example!("enneper-b90", "Enneper core curve with the normal turned by pi/2", {
        "method": "quaternion", "curve": {"name": "torus_knot", "params": {"A": -0.5, "B": 1.5}},
        "spin": {"a": 0, "b": "pi/2"},
        "domain": {"u": [0, "2*pi"], "v": [-0.6, 0.6], "nu": 128, "nv": 24}
    }),
    example!("planar-enneper-b0", "planar Enneper surface, A = 1/2, B = 7/2", {
        "method": "quaternion", "curve": {"name": "torus_knot", "params": {"A": 0.5, "B": 3.5}},
        "spin": {"a": 0, "b": 0},
        "domain": {"u": [0, "2*pi"], "v": [-0.3, 0.3], "nu": 192, "nv": 24}
    }),
    example!("planar-enneper-b90", "planar Enneper core curve, normal turned by pi/2", {
        "method": "quaternion", "curve": {"name": "torus_knot", "params": {"A": 0.5, "B": 3.5}},
        "spin": {"a": 0, "b": "pi/2"},
        "domain": {"u": [0, "2*pi"], "v": [-0.3, 0.3], "nu": 192, "nv": 24}
    }),
    example!("enneper-a20", "Enneper core curve with a = 20", {
        "method": "quaternion", "curve": {"name": "torus_knot", "params": {"A": -0.5, "B": 1.5}},
        "spin": {"a": 20, "b": 0},
        "domain": {"u": [0, "2*pi"], "v": [-0.15, 0.15], "nu": 1024, "nv": 16}
    }),
    example!("planar-enneper-a50", "planar Enneper core curve with a = 50", {
        "method": "quaternion", "curve": {"name": "torus_knot", "params": {"A": 0.5, "B": 3.5}},
        "spin": {"a": 50, "b": 0},
        "domain": {"u": [0, "2*pi"], "v": [-0.05, 0.05], "nu": 2048, "nv": 12}
    }),
    example!("periodic-a0", "product of great circles, a = 0, b = pi/2", {
        "method": "quaternion", "curve": {"name": "circle_product"}, "spin": {"a": 0, "b": "pi/2"},
        "offset": [0, 0.5, 0]
    }),
    example!("periodic-a5", "product of great circles, a = 5, b = 0", {
        "method": "quaternion", "curve": {"name": "circle_product"}, "spin": {"a": 5, "b": 0},
        "offset": [0, 0.5, 0]
    }),
    example!("helix-a0", "helix, lambda = 2, a = 0", {
        "method": "lift", "curve": {"name": "circle"}, "lambda": 2, "spin": {"a": 0, "b": 0},
        "domain": {"u": ["-2*pi", "2*pi"], "v": [-1, 1], "nu": 128, "nv": 32}
    }),
    example!("helix-a10", "helix, lambda = 2, a = 10", {
        "method": "lift", "curve": {"name": "circle"}, "lambda": 2, "spin": {"a": 10, "b": 0},
        "domain": {"u": ["-2*pi", "2*pi"], "v": [-0.5, 0.5], "nu": 1024, "nv": 24}
    }),
    example!("ellipse-closed", "ellipse (cos t, 3 sin t), closing lambda, a = 2", {
        "method": "lift", "curve": {"name": "ellipse"}, "lambda": "closing", "spin": {"a": 2, "b": 0}
    }),
    example!("ellipse-singular", "ellipse with lambda = 1, a = 2: singular", {
        "method": "lift", "curve": {"name": "ellipse"}, "lambda": 1, "spin": {"a": 2, "b": 0}
    }),
    example!("lissajous-b0", "(1,2) Lissajous curve, lambda = 2, a = 1, b = 0", {
        "method": "lift", "curve": {"name": "lissajous", "params": {"xi": 1, "eta": 2}}, "lambda": 2,
        "spin": {"a": 1, "b": 0}
    }),
    example!("lissajous-b90", "(1,2) Lissajous curve, lambda = 2, a = 1, b = pi/2", {
        "method": "lift", "curve": {"name": "lissajous", "params": {"xi": 1, "eta": 2}}, "lambda": 2,
        "spin": {"a": 1, "b": "pi/2"}
    }),
    example!("cycloid-a2", "order 2 cycloid, lambda = 6, a = 2", {
        "method": "lift", "curve": {"name": "cycloid", "params": {"R": 2, "r": 1, "s": 2}}, "lambda": 6,
        "spin": {"a": 2, "b": 0},
        "domain": {"u": [0, "2*pi"], "v": [-0.5, 0.5], "nu": 256, "nv": 32}
    }),
    example!("cycloid-a20", "order 2 cycloid, closing lambda, a = 20", {
        "method": "lift", "curve": {"name": "cycloid", "params": {"R": 2, "r": 1, "s": 2}}, "lambda": "closing",
        "spin": {"a": 20, "b": 0},
        "domain": {"u": [0, "2*pi"], "v": [-0.1, 0.1], "nu": 1024, "nv": 16}
    }),
    example!("deltoid-a20", "deltoid, closing lambda, a = 20", {
        "method": "lift", "curve": {"name": "deltoid"}, "lambda": "closing", "spin": {"a": 20, "b": 0},
        "domain": {"u": [0, "2*pi"], "v": [-0.1, 0.1], "nu": 1024, "nv": 16}
    }),
    example!("deltoid-mobius", "deltoid, closing lambda, a = -1/2, b = pi/2", {
        "method": "lift", "curve": {"name": "deltoid"}, "lambda": "closing", "spin": {"a": "-1/2", "b": "pi/2"},
        "domain": {"u": [0, "4*pi"], "v": [-0.5, 0.5], "nu": 256, "nv": 24}
    }),
    example!("trefoil-mobius", "knotted Moebius strip on the trefoil lift, xi = 1/4", {
        "method": "lift", "curve": {"name": "trefoil", "params": {"xi": 0.25}}, "lambda": "closing",
        "spin": {"a": "1/2", "b": "pi/2"},
        "domain": {"u": [0, "4*pi"], "v": [-0.3, 0.3], "nu": 512, "nv": 24}
    }),
    example!("trefoil-a30", "trefoil lift, xi = 1/4, a = 30", {
        "method": "lift", "curve": {"name": "trefoil", "params": {"xi": 0.25}}, "lambda": "closing",
        "spin": {"a": 30, "b": 0},
        "domain": {"u": [0, "2*pi"], "v": [-0.08, 0.08], "nu": 1536, "nv": 12}
    }),
    example!("log-spiral", "logarithmic spiral, rho = 1.2, lambda = 1, a = 1", {
        "method": "lift", "curve": {"name": "log_spiral", "params": {"rho": 1.2}}, "lambda": 1,
        "spin": {"a": 1, "b": 0},
        "domain": {"u": [-6, 6], "v": [-0.5, 0.5], "nu": 256, "nv": 24}
    }),
    example!("archimedean", "Archimedean spiral, lambda = 2, a = 1", {
        "method": "lift", "curve": {"name": "archimedean"}, "lambda": 2, "spin": {"a": 1, "b": 0},
        "domain": {"u": [-6, 6], "v": [-0.5, 0.5], "nu": 256, "nv": 24}
    }),
    example!("circle-limit", "spiral about the unit circle, lambda = 1, a = 3, b = pi/2", {
        "method": "lift", "curve": {"name": "circle_spiral", "params": {"rho": 1.2}}, "lambda": 1,
        "spin": {"a": 3, "b": "pi/2"},
        "domain": {"u": [-12, 4], "v": [-0.3, 0.3], "nu": 512, "nv": 24}
    }),
    example!("clothoid", "lifted clothoid, lambda = 1.4", {
        "method": "clothoid", "lambda": 1.4,
        "domain": {"u": [-2.5, 2.5], "v": [-0.6, 0.6], "nu": 200, "nv": 32}
    }),
];

pub fn find(name: &str) -> Option<&'static Example> {
    EXAMPLES.iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Job;

    #[test]
    fn registry_builds() {
        assert!(EXAMPLES.len() >= 24);
        for e in EXAMPLES {
            Job::build(e.config()).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        }
        let mut names: Vec<_> = EXAMPLES.iter().map(|e| e.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), EXAMPLES.len());
    }

    #[test]
    fn trefoil_closes() {
        let job = Job::build(find("trefoil-mobius").unwrap().config()).unwrap();
        assert!((job.lambda.unwrap() - 17f64.sqrt() / 4.0).abs() < 1e-12);
        assert!(find("nosuch").is_none());
    }
}
