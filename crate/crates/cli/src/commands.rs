//! The subcommands, separated from argument parsing so tests can call them.

use std::fs;
use std::path::{Path, PathBuf};

use bjorling::meshio::{export_obj, sample_grid};

use crate::checks::{run_suite, Check, Suite, Tolerances};
use crate::config::{Job, JobConfig};
use crate::registry::{find, EXAMPLES};
use crate::report::{analyze, build_report, to_json};
use crate::CliError;

/// OBJ bytes and report text of one job.
#[derive(Debug)]
pub struct Rendered {
    pub obj: Vec<u8>,
    pub report: String,
    pub lambda: Option<f64>,
}

pub fn render(job: &Job) -> Result<Rendered, CliError> {
    let analysis = analyze(job)?;
    let mesh = sample_grid(job.surface.as_surface(), &job.domain).map_err(|e| CliError::Math(e.to_string()))?;
    let mut obj = Vec::new();
    export_obj(&mesh, &mut obj).expect("writing to memory");
    let report = to_json(&build_report(job, analysis, Some(&mesh)));
    Ok(Rendered { obj, report, lambda: job.lambda })
}

pub fn load_config(path: &Path) -> Result<JobConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    JobConfig::from_json(&text)
}

/// Where the mesh and report go: configured paths win, otherwise
/// `<stem>.obj` and `<stem>.report.json`. Relative paths resolve under `out`.
pub fn output_paths(config: &JobConfig, stem: &str, out: Option<&Path>) -> (PathBuf, PathBuf) {
    let place = |configured: &Option<PathBuf>, fallback: String| {
        let p = configured.clone().unwrap_or_else(|| PathBuf::from(fallback));
        match out {
            Some(dir) if p.is_relative() => dir.join(p),
            _ => p,
        }
    };
    (
        place(&config.outputs.mesh_path, format!("{stem}.obj")),
        place(&config.outputs.report_path, format!("{stem}.report.json")),
    )
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io)?;
    }
    fs::write(path, bytes).map_err(io)
}

#[derive(Debug)]
pub struct Written {
    pub mesh: PathBuf,
    pub report: PathBuf,
    pub lambda: Option<f64>,
}

/// Builds and renders before touching the file system, so failures leave no files.
fn run_job(config: JobConfig, stem: &str, out: Option<&Path>) -> Result<Written, CliError> {
    let (mesh, report) = output_paths(&config, stem, out);
    let job = Job::build(config)?;
    let rendered = render(&job)?;
    write(&mesh, &rendered.obj)?;
    write(&report, rendered.report.as_bytes())?;
    Ok(Written { mesh, report, lambda: rendered.lambda })
}

pub fn generate(config_path: &Path, out: Option<&Path>) -> Result<Written, CliError> {
    let config = load_config(config_path)?;
    let stem = config_path.file_stem().and_then(|s| s.to_str()).unwrap_or("surface");
    run_job(config, stem, out)
}

/// Report without a mesh.
pub fn analyze_config(config_path: &Path) -> Result<String, CliError> {
    let job = Job::build(load_config(config_path)?)?;
    let analysis = analyze(&job)?;
    Ok(to_json(&build_report(&job, analysis, None)))
}

pub fn list_examples() -> String {
    let width = EXAMPLES.iter().map(|e| e.name.len()).max().unwrap_or(0);
    EXAMPLES.iter().map(|e| format!("{:<width$}  {}\n", e.name, e.summary)).collect()
}

pub fn run_example(name: &str, out: Option<&Path>) -> Result<Written, CliError> {
    let example = find(name).ok_or_else(|| CliError::UnknownExample(name.to_string()))?;
    run_job(example.config(), name, out)
}

/// Runs a suite; the text has one line per check and a closing tally.
pub fn verify(suite: Suite, tol: &Tolerances) -> (Vec<Check>, String) {
    let checks = run_suite(suite, tol);
    let mut text: String = checks.iter().map(|c| format!("{c}\n")).collect();
    let failed = checks.iter().filter(|c| !c.passed).count();
    text += &format!("{} checks, {} passed, {} failed\n", checks.len(), checks.len() - failed, failed);
    (checks, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn output_paths_resolve_under_out() {
        let config = JobConfig::from_json(r#"{"method": "clothoid", "lambda": 2, "outputs": {"report_path": "/tmp/r.json"}}"#).unwrap();
        let (mesh, report) = output_paths(&config, "job", Some(Path::new("out")));
        assert_eq!(mesh, Path::new("out/job.obj"));
        assert_eq!(report, Path::new("/tmp/r.json"));
    }

    #[test]
    fn unknown_example() {
        assert!(matches!(run_example("nosuch", None), Err(CliError::UnknownExample(_))));
        assert!(list_examples().lines().count() >= 24);
    }
}
