//! File formats: complex matrices and vectors, polynomial records, finite
//! probability models, frequency results and the CSV tables.

use std::collections::BTreeMap;
use std::io::Write;
use std::str::FromStr;

use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thermal_core::classical::ClassicalQuantity;
use thermal_core::matrix::{CMatrix, CVector};
use thermal_core::qstats::FrequencyResult;
use thermal_core::trajectory::Trajectory;
use thermal_core::uncertainty::WorldTube;
use thermal_core::whittle::{RandomVariable, SampleSpace, StochasticModel};
use thermal_core::Complex64;

use crate::error::{LabError, LabResult};

/// Parses JSON and reports the offending field path on failure.
pub fn from_json_str<T: DeserializeOwned>(text: &str, file: &str) -> LabResult<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| LabError::Config {
        file: file.to_string(),
        field: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

pub fn read_json<T: DeserializeOwned>(path: &std::path::Path) -> LabResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
    from_json_str(&text, &path.display().to_string())
}

/// A complex number as `[re, im]`.
pub type ComplexJson = [f64; 2];

/// A complex matrix as rows of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixJson(pub Vec<Vec<ComplexJson>>);

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        Self(
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        )
    }

    pub fn to_matrix(&self) -> LabResult<CMatrix> {
        let rows = self.0.len();
        let cols = self.0.first().map_or(0, Vec::len);
        if self.0.iter().any(|r| r.len() != cols) {
            return Err(LabError::Scenario("matrix rows have unequal lengths".into()));
        }
        Ok(CMatrix::from_fn(rows, cols, |i, j| {
            Complex64::new(self.0[i][j][0], self.0[i][j][1])
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VectorJson(pub Vec<ComplexJson>);

impl VectorJson {
    pub fn from_vector(v: &CVector) -> Self {
        Self(v.iter().map(|z| [z.re, z.im]).collect())
    }

    pub fn to_vector(&self) -> CVector {
        CVector::from_iterator(self.0.len(), self.0.iter().map(|z| Complex64::new(z[0], z[1])))
    }
}

/// One monomial of a classical polynomial; `coeff` is an exact `"num/den"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialTerm {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

pub fn polynomial_to_records(p: &ClassicalQuantity) -> Vec<PolynomialTerm> {
    p.terms()
        .map(|(e, c)| PolynomialTerm {
            exponents: e.clone(),
            coeff: format!("{}/{}", c.numer(), c.denom()),
        })
        .collect()
}

pub fn polynomial_from_records(dof: usize, records: &[PolynomialTerm]) -> LabResult<ClassicalQuantity> {
    let mut terms = Vec::with_capacity(records.len());
    for r in records {
        let c = BigRational::from_str(r.coeff.trim())
            .map_err(|_| LabError::Scenario(format!("bad rational coefficient `{}`", r.coeff)))?;
        terms.push((r.exponents.clone(), c));
    }
    Ok(ClassicalQuantity::from_terms(dof, terms)?)
}

/// A finite model: weights over `Ω` and named random variables on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelJson {
    pub weights: Vec<f64>,
    #[serde(default)]
    pub variables: BTreeMap<String, Vec<f64>>,
}

impl ModelJson {
    pub fn build(&self) -> LabResult<(StochasticModel, BTreeMap<String, RandomVariable>)> {
        let space = SampleSpace::new(self.weights.len())?;
        let model = StochasticModel::new(&space, self.weights.clone())?;
        let vars = self
            .variables
            .iter()
            .map(|(k, v)| Ok((k.clone(), RandomVariable::new(&space, v.clone())?)))
            .collect::<LabResult<_>>()?;
        Ok((model, vars))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyJson {
    pub p_theory: f64,
    pub p_hat: f64,
    #[serde(rename = "N")]
    pub n: u64,
    pub seed: u64,
    pub sigma_bound: f64,
    pub within_k_sigma: bool,
}

impl From<&FrequencyResult> for FrequencyJson {
    fn from(r: &FrequencyResult) -> Self {
        Self {
            p_theory: r.p_theory,
            p_hat: r.p_hat,
            n: r.trials,
            seed: r.seed,
            sigma_bound: r.sigma_bound,
            within_k_sigma: r.within_k_sigma,
        }
    }
}

/// Round-trip-safe decimal: 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn finish<W: Write>(mut w: csv::Writer<W>) -> LabResult<()> {
    w.flush().map_err(|e| LabError::io("<csv>", e))?;
    Ok(())
}

/// Columns `t`, then `re_X, im_X, sigma_X` per observable.
pub fn write_trajectory_csv<W: Write>(out: W, traj: &Trajectory) -> LabResult<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["t".to_string()];
    for l in traj.labels() {
        header.extend([format!("re_{l}"), format!("im_{l}"), format!("sigma_{l}")]);
    }
    w.write_record(&header)?;
    for (t, row) in traj.times().iter().zip(traj.records()) {
        let mut rec = vec![num(*t)];
        for u in row {
            rec.extend([num(u.value.re), num(u.value.im), num(u.sigma)]);
        }
        w.write_record(&rec)?;
    }
    finish(w)
}

/// Columns `t`, then `center_X, lower_X, upper_X` per component, then `halfwidth`.
pub fn write_worldtube_csv<W: Write>(out: W, tube: &WorldTube, labels: &[String]) -> LabResult<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["t".to_string()];
    for l in labels {
        header.extend([format!("center_{l}"), format!("lower_{l}"), format!("upper_{l}")]);
    }
    header.push("halfwidth".into());
    w.write_record(&header)?;
    for (i, t) in tube.times.iter().enumerate() {
        let mut rec = vec![num(*t)];
        let (lo, hi) = (tube.lower(i), tube.upper(i));
        for k in 0..labels.len() {
            rec.extend([num(tube.center[i][k]), num(lo[k]), num(hi[k])]);
        }
        rec.push(num(tube.halfwidth[i]));
        w.write_record(&rec)?;
    }
    finish(w)
}

/// Columns `x, F(x)` at each distinct value of the variable.
pub fn write_cdf_csv<W: Write>(out: W, model: &StochasticModel, a: &RandomVariable) -> LabResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "F(x)"])?;
    let mut xs = a.values().to_vec();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    for x in xs {
        w.write_record([num(x), num(model.cdf(a, x)?)])?;
    }
    finish(w)
}

/// Pretty JSON with a trailing newline.
pub fn to_json_pretty<T: Serialize>(value: &T) -> LabResult<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use thermal_core::classical::rational;

    #[test]
    fn matrix_round_trip() {
        let m = CMatrix::from_fn(2, 3, |i, j| Complex64::new(i as f64, -(j as f64) / 3.0));
        let json = serde_json::to_string(&MatrixJson::from_matrix(&m)).unwrap();
        let back: MatrixJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);
        let ragged = MatrixJson(vec![vec![[1.0, 0.0]], vec![]]);
        assert!(ragged.to_matrix().is_err());
    }

    #[test]
    fn polynomial_records_are_exact() {
        let p = ClassicalQuantity::from_terms(1, [(vec![2, 1], rational(-7, 3)), (vec![0, 0], rational(5, 1))]).unwrap();
        let records = polynomial_to_records(&p);
        assert!(records.iter().any(|r| r.coeff == "-7/3"));
        assert!(records.iter().any(|r| r.coeff == "5/1"));
        assert_eq!(polynomial_from_records(1, &records).unwrap(), p);
        let bad = [PolynomialTerm { exponents: vec![1, 0], coeff: "x".into() }];
        assert!(polynomial_from_records(1, &bad).is_err());
    }

    #[test]
    fn config_errors_name_the_field() {
        let err = from_json_str::<ModelJson>(r#"{"weights": [0.5, "a"]}"#, "m.json").unwrap_err();
        match err {
            LabError::Config { field, .. } => assert_eq!(field, "weights[1]"),
            other => panic!("{other}"),
        }
        assert!(from_json_str::<ModelJson>(r#"{"weights": [1.0], "extra": 1}"#, "m.json").is_err());
    }

    #[test]
    fn cdf_table() {
        let model = ModelJson {
            weights: vec![0.25, 0.25, 0.5],
            variables: BTreeMap::from([("x".to_string(), vec![2.0, 1.0, 2.0])]),
        };
        let (m, vars) = model.build().unwrap();
        let mut buf = Vec::new();
        write_cdf_csv(&mut buf, &m, &vars["x"]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,F(x)");
        assert_eq!(lines[1], format!("{},{}", num(1.0), num(0.25)));
        assert_eq!(lines[2], format!("{},{}", num(2.0), num(1.0)));
    }

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
    }
}
