//! Companion to `thermal-core`: scenario files, CSV/JSON formats, seeded
//! verification suites and the drivers behind the `thermal` binary.

pub mod error;
pub mod formats;
pub mod scenario;
pub mod verify;

use std::fs;
use std::path::Path;

use thermal_core::qstats::{bernoulli_frequency, relative_frequency, QuantumStatement};
use thermal_core::state::DensityState;

pub use error::{LabError, LabResult};
pub use scenario::{run_simulate, Scenario, SimulateOutput};
pub use verify::{run_verify, Report, Suite};

fn write_file(dir: &Path, name: &str, contents: &str) -> LabResult<()> {
    fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| LabError::io(path, e))
}

/// Runs the requested suites and, when `out` is given, writes `report.json`
/// and `report.txt` there.
pub fn verify_to(suite: Suite, seed: u64, out: Option<&Path>) -> LabResult<Report> {
    let report = run_verify(suite, seed)?;
    if let Some(dir) = out {
        write_file(dir, "report.json", &formats::to_json_pretty(&report)?)?;
        write_file(dir, "report.txt", &report.to_text())?;
    }
    Ok(report)
}

/// Renders the CDF of `variable` in the model file as CSV.
pub fn cdf_csv(model: &Path, variable: &str) -> LabResult<String> {
    let spec: formats::ModelJson = formats::read_json(model)?;
    let (model, vars) = spec.build()?;
    let a = vars
        .get(variable)
        .ok_or_else(|| LabError::Scenario(format!("model has no variable `{variable}`")))?;
    let mut buf = Vec::new();
    formats::write_cdf_csv(&mut buf, &model, a)?;
    Ok(String::from_utf8(buf).expect("CSV output is ASCII"))
}

/// Source of the success probability for a frequency experiment.
#[derive(Debug, Clone)]
pub enum FrequencySource {
    Probability(f64),
    Amplitude { phi: formats::VectorJson, psi: formats::VectorJson },
}

pub fn frequency_json(source: &FrequencySource, trials: u64, seed: u64) -> LabResult<String> {
    let result = match source {
        FrequencySource::Probability(p) => bernoulli_frequency(*p, trials, seed)?,
        FrequencySource::Amplitude { phi, psi } => {
            let statement = QuantumStatement::from_vector(&phi.to_vector(), 1.0)?;
            let state = DensityState::from_pure(&psi.to_vector())?;
            relative_frequency(&state, &statement, trials, seed)?
        }
    };
    formats::to_json_pretty(&formats::FrequencyJson::from(&result))
}

pub fn write_output(dir: Option<&Path>, name: &str, contents: &str) -> LabResult<()> {
    match dir {
        Some(d) => write_file(d, name, contents),
        None => Ok(()),
    }
}
