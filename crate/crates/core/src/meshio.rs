//! Grid sampling of surfaces and Wavefront OBJ output.

use std::io::{self, BufRead, Write};

use nalgebra::Vector3;
use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::bjorling::{Surface, SurfaceError};

/// Environment variable capping the sampling threads.
pub const THREADS_ENV: &str = "BJORLING_THREADS";

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("evaluation failed at {z}: {source}")]
    Evaluation { z: Complex64, source: SurfaceError },
    #[error("malformed OBJ line {line}: {text}")]
    Parse { line: usize, text: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Uniform `nu x nv` lattice over `[u0, u1] x [v0, v1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridDomain {
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
    pub nu: usize,
    pub nv: usize,
}

impl GridDomain {
    pub fn new(u0: f64, u1: f64, v0: f64, v1: f64, nu: usize, nv: usize) -> Result<GridDomain, MeshError> {
        let d = GridDomain { u0, u1, v0, v1, nu, nv };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<(), MeshError> {
        if !(self.u1 > self.u0) || !(self.v1 > self.v0) {
            return Err(MeshError::InvalidDomain(format!("need u1 > u0 and v1 > v0, got {self:?}")));
        }
        if self.nu < 2 || self.nv < 2 {
            return Err(MeshError::InvalidDomain(format!("need at least 2x2 samples, got {}x{}", self.nu, self.nv)));
        }
        Ok(())
    }

    /// Parameter of vertex `(i, j)`.
    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        let u = self.u0 + (self.u1 - self.u0) * i as f64 / (self.nu - 1) as f64;
        let v = self.v0 + (self.v1 - self.v0) * j as f64 / (self.nv - 1) as f64;
        Complex64::new(u, v)
    }
}

/// Vertices in row-major order (`v` outer, `u` inner) and triangles.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceMesh {
    pub positions: Vec<Vector3<f64>>,
    pub normals: Vec<Vector3<f64>>,
    pub faces: Vec<[usize; 3]>,
    pub singular: Vec<bool>,
    pub nu: usize,
    pub nv: usize,
}

impl SurfaceMesh {
    pub fn singular_count(&self) -> usize {
        self.singular.iter().filter(|&&s| s).count()
    }
}

fn sample_row(s: &dyn Surface, dom: &GridDomain, j: usize) -> Result<Vec<(Vector3<f64>, Vector3<f64>, bool)>, MeshError> {
    (0..dom.nu)
        .map(|i| {
            let z = dom.point(i, j);
            let p = s.eval_point(z).map_err(|source| MeshError::Evaluation { z, source })?;
            Ok((p.position, p.unit_normal, p.singular))
        })
        .collect()
}

fn assemble(dom: &GridDomain, rows: Vec<Vec<(Vector3<f64>, Vector3<f64>, bool)>>) -> SurfaceMesh {
    let (nu, nv) = (dom.nu, dom.nv);
    let mut positions = Vec::with_capacity(nu * nv);
    let mut normals = Vec::with_capacity(nu * nv);
    let mut singular = Vec::with_capacity(nu * nv);
    for (p, n, s) in rows.into_iter().flatten() {
        positions.push(p);
        normals.push(n);
        singular.push(s);
    }
    let mut faces = Vec::with_capacity(2 * (nu - 1) * (nv - 1));
    for j in 0..nv - 1 {
        for i in 0..nu - 1 {
            let a = j * nu + i;
            let (b, c, d) = (a + 1, a + nu + 1, a + nu);
            for tri in [[a, b, c], [a, c, d]] {
                if tri.iter().all(|&k| !singular[k]) {
                    faces.push(tri);
                }
            }
        }
    }
    SurfaceMesh { positions, normals, faces, singular, nu, nv }
}

/// Single-threaded sampling; the reference for [`sample_grid`].
pub fn sample_grid_serial(s: &dyn Surface, dom: &GridDomain) -> Result<SurfaceMesh, MeshError> {
    dom.validate()?;
    let rows = (0..dom.nv).map(|j| sample_row(s, dom, j)).collect::<Result<Vec<_>, _>>()?;
    Ok(assemble(dom, rows))
}

fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Samples rows in parallel; the result does not depend on the thread count.
pub fn sample_grid(s: &dyn Surface, dom: &GridDomain) -> Result<SurfaceMesh, MeshError> {
    dom.validate()?;
    let run = || (0..dom.nv).into_par_iter().map(|j| sample_row(s, dom, j)).collect::<Result<Vec<_>, _>>();
    let rows = match thread_cap() {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run)?,
            Err(_) => run()?,
        },
        None => run()?,
    };
    Ok(assemble(dom, rows))
}

/// Writes the mesh as ASCII OBJ with 17 significant digits.
pub fn export_obj(mesh: &SurfaceMesh, sink: &mut dyn Write) -> io::Result<()> {
    let mut out = io::BufWriter::new(sink);
    writeln!(out, "# bjorling {}", env!("CARGO_PKG_VERSION"))?;
    for p in &mesh.positions {
        writeln!(out, "v {:.16e} {:.16e} {:.16e}", p.x, p.y, p.z)?;
    }
    for n in &mesh.normals {
        writeln!(out, "vn {:.16e} {:.16e} {:.16e}", n.x, n.y, n.z)?;
    }
    for f in &mesh.faces {
        let [a, b, c] = f.map(|k| k + 1);
        writeln!(out, "f {a}//{a} {b}//{b} {c}//{c}")?;
    }
    out.flush()
}

/// Contents of an OBJ file as written by [`export_obj`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ObjData {
    pub positions: Vec<Vector3<f64>>,
    pub normals: Vec<Vector3<f64>>,
    /// Zero-based.
    pub faces: Vec<[usize; 3]>,
}

/// Reads `v`, `vn` and triangular `f` records; other lines are ignored.
pub fn read_obj(source: impl BufRead) -> Result<ObjData, MeshError> {
    let mut data = ObjData::default();
    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let bad = || MeshError::Parse { line: idx + 1, text: line.clone() };
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some(tag @ ("v" | "vn")) => {
                let xs: Vec<f64> = parts.map(|s| s.parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
                let [x, y, z] = xs[..] else { return Err(bad()) };
                let target = if tag == "v" { &mut data.positions } else { &mut data.normals };
                target.push(Vector3::new(x, y, z));
            }
            Some("f") => {
                let idx: Vec<usize> = parts
                    .map(|s| s.split('/').next().and_then(|k| k.parse::<usize>().ok()).filter(|&k| k > 0))
                    .collect::<Option<_>>()
                    .ok_or_else(bad)?;
                let [a, b, c] = idx[..] else { return Err(bad()) };
                data.faces.push([a - 1, b - 1, c - 1]);
            }
            _ => {}
        }
    }
    Ok(data)
}
