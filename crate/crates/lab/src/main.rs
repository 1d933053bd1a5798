use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thermal_lab::formats::{self, VectorJson};
use thermal_lab::{FrequencySource, LabError, LabResult, Suite};

#[derive(Parser)]
#[command(name = "thermal", version, about = "Lie-product dynamics, uncertainty and probability laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a scenario and write trajectory, world tube and manifest.
    Simulate {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run seeded verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the CDF of a random variable in a model file.
    Cdf {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        variable: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded relative-frequency experiment.
    Frequency {
        #[arg(long, conflicts_with_all = ["phi", "psi"], required_unless_present_all = ["phi", "psi"])]
        p: Option<f64>,
        /// Statement vector as JSON `[[re, im], ...]`.
        #[arg(long, requires = "psi")]
        phi: Option<String>,
        /// State vector as JSON `[[re, im], ...]`.
        #[arg(long, requires = "phi")]
        psi: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> LabResult<bool> {
    match cli.command {
        Command::Simulate { scenario, out } => {
            let result = thermal_lab::run_simulate(&scenario, &out)?;
            for f in &result.files {
                println!("wrote {}", f.display());
            }
            Ok(true)
        }
        Command::Verify { suite, seed, out } => {
            let report = thermal_lab::verify_to(suite, seed, out.as_deref())?;
            print!("{}", report.to_text());
            Ok(report.pass)
        }
        Command::Cdf { model, variable, out } => {
            let csv = thermal_lab::cdf_csv(&model, &variable)?;
            print!("{csv}");
            thermal_lab::write_output(out.as_deref(), "cdf.csv", &csv)?;
            Ok(true)
        }
        Command::Frequency { p, phi, psi, trials, seed, out } => {
            let source = match (p, phi, psi) {
                (Some(p), _, _) => FrequencySource::Probability(p),
                (None, Some(phi), Some(psi)) => FrequencySource::Amplitude {
                    phi: formats::from_json_str::<VectorJson>(&phi, "--phi")?,
                    psi: formats::from_json_str::<VectorJson>(&psi, "--psi")?,
                },
                _ => return Err(LabError::Scenario("give --p or both --phi and --psi".into())),
            };
            let json = thermal_lab::frequency_json(&source, trials, seed)?;
            print!("{json}");
            thermal_lab::write_output(out.as_deref(), "frequency.json", &json)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
