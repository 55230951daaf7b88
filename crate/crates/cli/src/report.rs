//! JSON report written next to each mesh.

use bjorling::laurent::RationalMap;
use bjorling::meshio::SurfaceMesh;
use bjorling::weierstrass::{regularity_report, weierstrass_data, RegularityReport, WeierstrassError};
use serde::Serialize;

use crate::config::{Job, JobConfig, JobSurface};
use crate::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct WeierstrassText {
    pub gauss_num: String,
    pub gauss_den: String,
    /// Coefficient of `dw`.
    pub dh: String,
}

fn rational_text(g: &RationalMap) -> (String, String) {
    (g.num.to_string(), g.den.to_string())
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "analysis", rename_all = "lowercase")]
pub enum Analysis {
    Available {
        #[serde(flatten)]
        regularity: RegularityReport,
        weierstrass: WeierstrassText,
    },
    Unavailable {
        reason: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        gauss_map: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        height_differential: Option<String>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct MeshSummary {
    pub vertices: usize,
    pub faces: usize,
    pub singular_vertices: usize,
    pub grid: [usize; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: JobConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(flatten)]
    pub analysis: Analysis,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mesh: Option<MeshSummary>,
}

/// Weierstrass analysis of the job. Functions outside the substitution
/// class give an unavailable analysis rather than an error.
pub fn analyze(job: &Job) -> Result<Analysis, CliError> {
    match &job.surface {
        JobSurface::Clothoid(s) => Ok(Analysis::Unavailable {
            reason: "the Gauss map is not a rational function of e^(iz/d)".into(),
            gauss_map: Some(s.gauss_map_text()),
            height_differential: Some(s.height_differential_text()),
        }),
        JobSurface::Bjorling { surface, .. } => match weierstrass_data(surface) {
            Ok(data) => {
                let (gauss_num, gauss_den) = rational_text(&data.gauss);
                let dh = data.dh_coeff.num.to_string();
                Ok(Analysis::Available { regularity: regularity_report(&data), weierstrass: WeierstrassText { gauss_num, gauss_den, dh } })
            }
            Err(e @ (WeierstrassError::NotSubstitutable { .. } | WeierstrassError::Degenerate)) => {
                Ok(Analysis::Unavailable { reason: e.to_string(), gauss_map: None, height_differential: None })
            }
            Err(e) => Err(CliError::Math(e.to_string())),
        },
    }
}

pub fn build_report(job: &Job, analysis: Analysis, mesh: Option<&SurfaceMesh>) -> Report {
    Report {
        config: job.config.clone(),
        lambda: job.lambda,
        analysis,
        mesh: mesh.map(|m| MeshSummary {
            vertices: m.positions.len(),
            faces: m.faces.len(),
            singular_vertices: m.singular_count(),
            grid: [m.nu, m.nv],
        }),
    }
}

pub fn to_json(report: &Report) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}
