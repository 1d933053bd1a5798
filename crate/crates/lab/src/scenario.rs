//! Scenario files for `thermal simulate`.
//!
//! ```json
//! {
//!   "schema": 1,
//!   "system": {"kind": "spin"},
//!   "hamiltonian": {"scaled": [0.5, {"preset": "sigma_z"}]},
//!   "state": {"preset": "plus"},
//!   "observables": [{"name": "sx", "operator": {"preset": "sigma_x"}}],
//!   "time": {"t0": 0.0, "t1": 6.0, "steps": 60}
//! }
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thermal_core::dynamics::GaugeSplit;
use thermal_core::matrix::{self, CMatrix, CVector};
use thermal_core::oscillator::{Oscillator, DEFAULT_CUTOFF};
use thermal_core::quantum::QuantumQuantity;
use thermal_core::state::DensityState;
use thermal_core::trajectory::{simulate, time_grid, Trajectory};
use thermal_core::uncertainty::{world_tube, TubeComponents, WorldTube};
use thermal_core::Complex64;

use crate::error::{LabError, LabResult};
use crate::formats::{self, ComplexJson, MatrixJson, VectorJson};

pub const SCHEMA_VERSION: u32 = 1;
const SPLIT_SUM_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: u32,
    pub system: SystemSpec,
    pub hamiltonian: OperatorSpec,
    #[serde(default)]
    pub split: SplitSpec,
    pub state: StateSpec,
    pub observables: Vec<ObservableSpec>,
    pub time: TimeSpec,
    #[serde(default = "default_kappa")]
    pub kappa: f64,
    /// Observables whose tube is written; defaults to the first observable.
    #[serde(default)]
    pub tube: Option<Vec<String>>,
}

fn default_kappa() -> f64 {
    1.0
}

fn one() -> f64 {
    1.0
}

fn default_cutoff() -> usize {
    DEFAULT_CUTOFF
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SystemSpec {
    Spin {
        #[serde(default = "one")]
        hbar: f64,
    },
    Oscillator {
        #[serde(default = "default_cutoff")]
        fock_cutoff: usize,
        #[serde(default = "one")]
        mass: f64,
        #[serde(default = "one")]
        omega: f64,
        #[serde(default = "one")]
        hbar: f64,
    },
    Custom {
        dim: usize,
        #[serde(default = "one")]
        hbar: f64,
    },
}

/// An operator: a named preset, an explicit matrix, a multiple or a sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum OperatorSpec {
    Preset(String),
    Matrix(MatrixJson),
    Scaled(f64, Box<OperatorSpec>),
    Sum(Vec<OperatorSpec>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Picture {
    #[default]
    Schrodinger,
    Heisenberg,
    Interaction,
    Custom,
}

/// `schrodinger`/`heisenberg` take no operators, `interaction` takes the
/// reference `h1`, `custom` takes both `h1` and `h2` summing to the Hamiltonian.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitSpec {
    pub picture: Picture,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1: Option<OperatorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h2: Option<OperatorSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    Preset(String),
    Coherent(ComplexJson),
    Basis(usize),
    Vector(VectorJson),
    Matrix(MatrixJson),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservableSpec {
    pub name: String,
    pub operator: OperatorSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSpec {
    pub t0: f64,
    pub t1: f64,
    pub steps: usize,
}

/// A scenario with every operator and the state built.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub dim: usize,
    pub hbar: f64,
    pub hamiltonian: QuantumQuantity,
    pub split: GaugeSplit,
    pub rho0: DensityState,
    pub observables: Vec<(String, QuantumQuantity)>,
    pub times: Vec<f64>,
    pub kappa: f64,
    pub tube: Vec<usize>,
}

fn bad(msg: impl Into<String>) -> LabError {
    LabError::Scenario(msg.into())
}

impl SystemSpec {
    pub fn dim(&self) -> usize {
        match self {
            SystemSpec::Spin { .. } => 2,
            SystemSpec::Oscillator { fock_cutoff, .. } => *fock_cutoff,
            SystemSpec::Custom { dim, .. } => *dim,
        }
    }

    pub fn hbar(&self) -> f64 {
        match self {
            SystemSpec::Spin { hbar } | SystemSpec::Oscillator { hbar, .. } | SystemSpec::Custom { hbar, .. } => *hbar,
        }
    }

    fn oscillator(&self) -> LabResult<Option<Oscillator>> {
        match self {
            SystemSpec::Oscillator {
                fock_cutoff,
                mass,
                omega,
                hbar,
            } => Ok(Some(Oscillator::new(*fock_cutoff, *mass, *omega, *hbar)?)),
            _ => Ok(None),
        }
    }
}

struct Builder {
    dim: usize,
    hbar: f64,
    osc: Option<Oscillator>,
    spin: bool,
    hamiltonian: Option<QuantumQuantity>,
}

impl Builder {
    fn quantity(&self, m: CMatrix) -> LabResult<QuantumQuantity> {
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(bad(format!(
                "operator is {}x{}, system dimension is {}",
                m.nrows(),
                m.ncols(),
                self.dim
            )));
        }
        Ok(QuantumQuantity::with_hbar(m, self.hbar)?)
    }

    fn preset(&self, name: &str) -> LabResult<QuantumQuantity> {
        let spin = |m: CMatrix| if self.spin { Some(m) } else { None };
        let matrix = match name {
            "identity" => Some(matrix::identity(self.dim)),
            "zero" => Some(CMatrix::zeros(self.dim, self.dim)),
            "hamiltonian" => {
                return self
                    .hamiltonian
                    .clone()
                    .ok_or_else(|| bad("preset `hamiltonian` cannot define the Hamiltonian itself"))
            }
            "sigma_x" => spin(matrix::pauli_x()),
            "sigma_y" => spin(matrix::pauli_y()),
            "sigma_z" => spin(matrix::pauli_z()),
            "position" | "momentum" | "number" | "annihilation" | "creation" | "oscillator" => {
                let osc = self
                    .osc
                    .as_ref()
                    .ok_or_else(|| bad(format!("preset `{name}` needs an oscillator system")))?;
                return Ok(match name {
                    "position" => osc.position(),
                    "momentum" => osc.momentum(),
                    "number" => osc.number(),
                    "annihilation" => osc.annihilation(),
                    "creation" => osc.creation(),
                    _ => osc.hamiltonian(),
                });
            }
            _ => return Err(bad(format!("unknown operator preset `{name}`"))),
        };
        let m = matrix.ok_or_else(|| bad(format!("preset `{name}` needs a spin system")))?;
        self.quantity(m)
    }

    fn operator(&self, spec: &OperatorSpec) -> LabResult<QuantumQuantity> {
        match spec {
            OperatorSpec::Preset(name) => self.preset(name),
            OperatorSpec::Matrix(m) => self.quantity(m.to_matrix()?),
            OperatorSpec::Scaled(c, inner) => Ok(self.operator(inner)?.scale(Complex64::new(*c, 0.0))),
            OperatorSpec::Sum(items) => {
                let mut acc = QuantumQuantity::zeros(self.dim, self.hbar)?;
                for item in items {
                    acc = acc.try_add(&self.operator(item)?)?;
                }
                Ok(acc)
            }
        }
    }

    fn state(&self, spec: &StateSpec) -> LabResult<DensityState> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Ok(match spec {
            StateSpec::Preset(name) => match name.as_str() {
                "maximally_mixed" => DensityState::maximally_mixed(self.dim)?,
                "ground" => match &self.osc {
                    Some(osc) => osc.ground_state(),
                    None => {
                        let h = self.hamiltonian.as_ref().ok_or_else(|| bad("no Hamiltonian"))?;
                        let eig = matrix::HermitianEigen::new(h.matrix());
                        DensityState::from_pure(&eig.vectors.column(0).into_owned())?
                    }
                },
                "up" | "down" | "plus" | "minus" if self.spin => {
                    let (a, b) = match name.as_str() {
                        "up" => (1.0, 0.0),
                        "down" => (0.0, 1.0),
                        "plus" => (s, s),
                        _ => (s, -s),
                    };
                    DensityState::from_pure(&CVector::from_vec(vec![
                        Complex64::new(a, 0.0),
                        Complex64::new(b, 0.0),
                    ]))?
                }
                "up" | "down" | "plus" | "minus" => return Err(bad(format!("state `{name}` needs a spin system"))),
                _ => return Err(bad(format!("unknown state preset `{name}`"))),
            },
            StateSpec::Coherent([re, im]) => {
                let osc = self
                    .osc
                    .as_ref()
                    .ok_or_else(|| bad("coherent states need an oscillator system"))?;
                osc.coherent_state(Complex64::new(*re, *im))?
            }
            StateSpec::Basis(k) => DensityState::basis(self.dim, *k)?,
            StateSpec::Vector(v) => {
                if v.0.len() != self.dim {
                    return Err(bad(format!("state vector has length {}, system dimension is {}", v.0.len(), self.dim)));
                }
                DensityState::from_pure(&v.to_vector())?
            }
            StateSpec::Matrix(m) => {
                let m = m.to_matrix()?;
                if m.nrows() != self.dim {
                    return Err(bad(format!("density matrix is {}x{}, system dimension is {}", m.nrows(), m.ncols(), self.dim)));
                }
                DensityState::new(m)?
            }
        })
    }
}

impl Scenario {
    pub fn from_json(text: &str, file: &str) -> LabResult<Self> {
        let s: Scenario = formats::from_json_str(text, file)?;
        if s.schema != SCHEMA_VERSION {
            return Err(LabError::Config {
                file: file.to_string(),
                field: "schema".into(),
                message: format!("unsupported schema {}, expected {SCHEMA_VERSION}", s.schema),
            });
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> LabResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn resolve(&self) -> LabResult<Resolved> {
        let dim = self.system.dim();
        let hbar = self.system.hbar();
        if dim == 0 {
            return Err(bad("system dimension must be positive"));
        }
        let mut b = Builder {
            dim,
            hbar,
            osc: self.system.oscillator()?,
            spin: matches!(self.system, SystemSpec::Spin { .. }),
            hamiltonian: None,
        };
        let h = b.operator(&self.hamiltonian)?;
        h.require_hermitian("Hamiltonian")?;
        b.hamiltonian = Some(h.clone());

        let split = match (self.split.picture, &self.split.h1, &self.split.h2) {
            (Picture::Schrodinger, None, None) => GaugeSplit::schrodinger(&h)?,
            (Picture::Heisenberg, None, None) => GaugeSplit::heisenberg(&h)?,
            (Picture::Interaction, Some(h1), None) => GaugeSplit::interaction(&h, &b.operator(h1)?)?,
            (Picture::Custom, Some(h1), Some(h2)) => {
                let split = GaugeSplit::new(b.operator(h1)?, b.operator(h2)?)?;
                let dev = matrix::max_abs_diff(split.total().matrix(), h.matrix());
                if dev > SPLIT_SUM_RTOL * matrix::max_abs(h.matrix()).max(1.0) {
                    return Err(bad(format!("split h1 + h2 differs from the Hamiltonian by {dev:e}")));
                }
                split
            }
            (Picture::Interaction, ..) => return Err(bad("interaction split takes `h1` only")),
            (Picture::Custom, ..) => return Err(bad("custom split needs both `h1` and `h2`")),
            _ => return Err(bad("schrodinger/heisenberg splits take no operators")),
        };

        let rho0 = b.state(&self.state)?;
        if self.observables.is_empty() {
            return Err(bad("at least one observable is required"));
        }
        let mut observables = Vec::with_capacity(self.observables.len());
        for o in &self.observables {
            if o.name.is_empty() || observables.iter().any(|(n, _): &(String, _)| n == &o.name) {
                return Err(bad(format!("observable names must be unique and nonempty (`{}`)", o.name)));
            }
            observables.push((o.name.clone(), b.operator(&o.operator)?));
        }
        let times = time_grid(self.time.t0, self.time.t1, self.time.steps)?;
        let tube_names = self.tube.clone().unwrap_or_else(|| vec![observables[0].0.clone()]);
        let mut tube = Vec::with_capacity(tube_names.len());
        for name in &tube_names {
            let idx = observables
                .iter()
                .position(|(n, _)| n == name)
                .ok_or_else(|| bad(format!("tube refers to unknown observable `{name}`")))?;
            observables[idx].1.require_hermitian("tube observable")?;
            tube.push(idx);
        }
        if tube.is_empty() {
            return Err(bad("tube needs at least one observable"));
        }
        Ok(Resolved {
            dim,
            hbar,
            hamiltonian: h,
            split,
            rho0,
            observables,
            times,
            kappa: self.kappa,
            tube,
        })
    }
}

impl Resolved {
    pub fn trajectory(&self) -> LabResult<Trajectory> {
        Ok(simulate(&self.rho0, &self.split, &self.observables, &self.times)?)
    }

    pub fn world_tube(&self, traj: &Trajectory) -> LabResult<WorldTube> {
        let components = match self.tube.as_slice() {
            [one] => TubeComponents::Single(*one),
            many => TubeComponents::All(many.to_vec()),
        };
        Ok(world_tube(traj, &components, self.kappa)?)
    }

    pub fn tube_labels(&self) -> Vec<String> {
        self.tube.iter().map(|&i| self.observables[i].0.clone()).collect()
    }
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    scenario: &'a Scenario,
    resolved: ResolvedEcho,
    files: [&'static str; 2],
}

#[derive(Debug, Serialize)]
struct ResolvedEcho {
    dim: usize,
    hbar: f64,
    times: usize,
    kappa: f64,
    observables: Vec<String>,
    tube: Vec<String>,
    h1: MatrixJson,
    h2: MatrixJson,
    rho0: MatrixJson,
}

/// Output of one `simulate` run.
#[derive(Debug)]
pub struct SimulateOutput {
    pub trajectory: Trajectory,
    pub tube: WorldTube,
    pub files: Vec<PathBuf>,
}

/// Simulates the scenario at `config` and writes `trajectory.csv`,
/// `worldtube.csv` and `manifest.json` into `out_dir`.
pub fn run_simulate(config: &Path, out_dir: &Path) -> LabResult<SimulateOutput> {
    let scenario = Scenario::load(config)?;
    let resolved = scenario.resolve()?;
    let trajectory = resolved.trajectory()?;
    let tube = resolved.world_tube(&trajectory)?;
    fs::create_dir_all(out_dir).map_err(|e| LabError::io(out_dir, e))?;

    let create = |name: &str| {
        let path = out_dir.join(name);
        fs::File::create(&path)
            .map(|f| (path.clone(), std::io::BufWriter::new(f)))
            .map_err(|e| LabError::io(path, e))
    };
    let (traj_path, w) = create("trajectory.csv")?;
    formats::write_trajectory_csv(w, &trajectory)?;
    let (tube_path, w) = create("worldtube.csv")?;
    formats::write_worldtube_csv(w, &tube, &resolved.tube_labels())?;

    let manifest = Manifest {
        scenario: &scenario,
        resolved: ResolvedEcho {
            dim: resolved.dim,
            hbar: resolved.hbar,
            times: resolved.times.len(),
            kappa: resolved.kappa,
            observables: resolved.observables.iter().map(|(n, _)| n.clone()).collect(),
            tube: resolved.tube_labels(),
            h1: MatrixJson::from_matrix(resolved.split.h1().matrix()),
            h2: MatrixJson::from_matrix(resolved.split.h2().matrix()),
            rho0: MatrixJson::from_matrix(resolved.rho0.matrix()),
        },
        files: ["trajectory.csv", "worldtube.csv"],
    };
    let manifest_path = out_dir.join("manifest.json");
    fs::write(&manifest_path, formats::to_json_pretty(&manifest)?).map_err(|e| LabError::io(&manifest_path, e))?;
    Ok(SimulateOutput {
        trajectory,
        tube,
        files: vec![traj_path, tube_path, manifest_path],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPIN: &str = r#"{
        "schema": 1,
        "system": {"kind": "spin"},
        "hamiltonian": {"scaled": [0.5, {"preset": "sigma_z"}]},
        "state": {"preset": "plus"},
        "observables": [{"name": "sx", "operator": {"preset": "sigma_x"}}],
        "time": {"t0": 0.0, "t1": 6.0, "steps": 60}
    }"#;

    #[test]
    fn spin_precession() {
        let r = Scenario::from_json(SPIN, "spin.json").unwrap().resolve().unwrap();
        let traj = r.trajectory().unwrap();
        for (t, row) in traj.times().iter().zip(traj.records()) {
            assert!((row[0].value.re - t.cos()).abs() <= 1e-10);
        }
    }

    #[test]
    fn unknown_keys_are_rejected_with_path() {
        let text = SPIN.replace("\"steps\": 60", "\"steps\": 60, \"stpes\": 3");
        match Scenario::from_json(&text, "s.json").unwrap_err() {
            LabError::Config { field, message, .. } => {
                assert_eq!(field, "time.stpes");
                assert!(message.contains("stpes"));
            }
            e => panic!("{e}"),
        }
        let text = SPIN.replace("{\"kind\": \"spin\"}", "{\"kind\": \"spin\", \"dim\": 3}");
        assert!(Scenario::from_json(&text, "s.json").is_err());
    }

    #[test]
    fn schema_version_is_checked() {
        let text = SPIN.replace("\"schema\": 1", "\"schema\": 2");
        assert!(matches!(Scenario::from_json(&text, "s.json"), Err(LabError::Config { .. })));
    }

    #[test]
    fn inconsistent_dimensions_are_rejected() {
        let text = SPIN.replace(
            "{\"preset\": \"sigma_x\"}",
            "{\"matrix\": [[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]}",
        );
        let s = Scenario::from_json(&text, "s.json").unwrap();
        assert!(matches!(s.resolve(), Err(LabError::Scenario(_))));
        let text = SPIN.replace("{\"preset\": \"plus\"}", "{\"coherent\": [0.5, 0.0]}");
        assert!(Scenario::from_json(&text, "s.json").unwrap().resolve().is_err());
    }

    #[test]
    fn custom_split_must_sum_to_hamiltonian() {
        let text = SPIN.replace(
            "\"state\"",
            "\"split\": {\"picture\": \"custom\", \"h1\": {\"preset\": \"sigma_z\"}, \"h2\": {\"preset\": \"zero\"}}, \"state\"",
        );
        assert!(Scenario::from_json(&text, "s.json").unwrap().resolve().is_err());
        let text = SPIN.replace(
            "\"state\"",
            "\"split\": {\"picture\": \"custom\", \"h1\": {\"scaled\": [0.25, {\"preset\": \"sigma_z\"}]}, \"h2\": {\"scaled\": [0.25, {\"preset\": \"sigma_z\"}]}}, \"state\"",
        );
        assert!(Scenario::from_json(&text, "s.json").unwrap().resolve().is_ok());
    }

    #[test]
    fn zero_window_gives_one_row() {
        let text = SPIN.replace("\"t1\": 6.0", "\"t1\": 0.0");
        let r = Scenario::from_json(&text, "s.json").unwrap().resolve().unwrap();
        let traj = r.trajectory().unwrap();
        assert_eq!(traj.len(), 1);
        assert!((traj.records()[0][0].value.re - 1.0).abs() < 1e-15);
    }
}
