//! The JSON input schema and the validated job it turns into.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, parse_rational, Rational};
use crate::graded::{HomogPoly, HomogeneousIdeal, MuConvention, TermJson, Window};
use crate::koszul::LinearFormSet;
use crate::weight::OnePS;

/// A generator is either text (`"z0*z2 - z1^2"`) or a term list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorJson {
    Text(String),
    Terms(Vec<TermJson>),
}

/// A rational given as a JSON string `"p/q"` or a JSON integer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalJson {
    Text(String),
    Int(i64),
}

impl RationalJson {
    fn parse(&self) -> Result<Rational> {
        match self {
            RationalJson::Text(s) => parse_rational(s),
            RationalJson::Int(i) => Ok(Rational::from_integer((*i).into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilJson {
    pub a: Vec<Vec<RationalJson>>,
    pub b: Vec<Vec<RationalJson>>,
}

/// The on-disk input file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    pub num_vars: usize,
    pub generators: Vec<GeneratorJson>,
    #[serde(default)]
    pub lambdas: Vec<Vec<i64>>,
    #[serde(default)]
    pub window: Option<Window>,
    #[serde(default)]
    pub mu: Option<MuConvention>,
    #[serde(default)]
    pub order: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub allow_gl: Option<bool>,
    /// Linear forms for `chow-eval`, one row of `num_vars` rationals each.
    #[serde(default)]
    pub forms: Option<Vec<Vec<RationalJson>>>,
    /// Pencil endpoints for the vanishing-order probe.
    #[serde(default)]
    pub pencil: Option<PencilJson>,
    /// Degree `m` of the Koszul complex.
    #[serde(default)]
    pub chow_m: Option<u32>,
    /// Box bound for grid-enumerated subgroups in `scan`.
    #[serde(default)]
    pub grid_bound: Option<i64>,
    /// Bound on numerators and denominators of random rationals.
    #[serde(default)]
    pub sample_bound: Option<i64>,
}

/// Command-line values that override the input file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub m_start: Option<u32>,
    pub m_len: Option<u32>,
    pub mu: Option<MuConvention>,
    pub order: Option<usize>,
    pub seed: Option<u64>,
    pub allow_gl: bool,
    pub grid_bound: Option<i64>,
    pub use_grid: bool,
}

/// A validated job. Unset fields are filled in later from the Hilbert
/// data; see [`crate::io::run`].
#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub source: String,
    pub input_hash: String,
    pub ideal: HomogeneousIdeal,
    pub lambdas: Vec<OnePS>,
    pub window: Option<Window>,
    pub mu: MuConvention,
    pub order: usize,
    pub seed: u64,
    pub allow_gl: bool,
    pub forms: Option<LinearFormSet>,
    pub pencil: Option<(LinearFormSet, LinearFormSet)>,
    pub chow_m: Option<u32>,
    pub grid_bound: i64,
    pub use_grid: bool,
    pub sample_bound: i64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn parse_forms(rows: &[Vec<RationalJson>], num_vars: usize, what: &str) -> Result<Vec<Vec<Rational>>> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            if r.len() != num_vars {
                return Err(Error::Input(format!("{what}[{i}] has {} coefficients, expected {num_vars}", r.len())));
            }
            r.iter().map(RationalJson::parse).collect()
        })
        .collect()
}

impl JobSpec {
    /// Validates a parsed input file against the overrides.
    pub fn from_input(file: InputFile, source: String, input_hash: String, ov: &Overrides) -> Result<Self> {
        let n = file.num_vars;
        if n == 0 {
            return Err(Error::Input("num_vars must be positive".into()));
        }
        let gens = file
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                match g {
                    GeneratorJson::Text(s) => HomogPoly::parse(n, s),
                    GeneratorJson::Terms(t) => HomogPoly::from_json_terms(n, t),
                }
                .map_err(|e| Error::Input(format!("generators[{i}]: {}", strip_prefix(&e))))
            })
            .collect::<Result<Vec<_>>>()?;
        let ideal = HomogeneousIdeal::new(n, gens)?;
        let allow_gl = ov.allow_gl || file.allow_gl.unwrap_or(false);
        let lambdas = file
            .lambdas
            .into_iter()
            .enumerate()
            .map(|(i, l)| {
                if l.len() != n {
                    return Err(Error::Input(format!("lambdas[{i}] has {} weights, expected {n}", l.len())));
                }
                OnePS::new(l, allow_gl)
            })
            .collect::<Result<Vec<_>>>()?;
        let window = match (file.window, ov.m_start, ov.m_len) {
            (w, None, None) => w,
            (w, s, l) => {
                let base = w.unwrap_or(Window::new(0, 0));
                let start = s.unwrap_or(base.start);
                let len = l.or(w.map(|w| w.len)).unwrap_or(n as u32 + 3);
                Some(Window::new(start, len))
            }
        };
        let forms = file
            .forms
            .as_ref()
            .map(|f| LinearFormSet::new(parse_forms(f, n, "forms")?))
            .transpose()?;
        let pencil = file
            .pencil
            .as_ref()
            .map(|p| -> Result<_> {
                let a = LinearFormSet::unchecked(parse_forms(&p.a, n, "pencil.a")?)?;
                let b = LinearFormSet::unchecked(parse_forms(&p.b, n, "pencil.b")?)?;
                if a.count() != b.count() {
                    return Err(Error::Input("pencil endpoints have different numbers of forms".into()));
                }
                Ok((a, b))
            })
            .transpose()?;
        let grid_bound = ov.grid_bound.or(file.grid_bound).unwrap_or(1);
        if grid_bound < 0 {
            return Err(Error::Input("grid_bound must be nonnegative".into()));
        }
        let sample_bound = file.sample_bound.unwrap_or(100);
        if sample_bound < 1 {
            return Err(Error::Input("sample_bound must be at least 1".into()));
        }
        Ok(JobSpec {
            source,
            input_hash,
            ideal,
            lambdas,
            window,
            mu: ov.mu.or(file.mu).unwrap_or_default(),
            order: ov.order.or(file.order).unwrap_or(1),
            seed: ov.seed.or(file.seed).unwrap_or(0),
            allow_gl,
            forms,
            pencil,
            chow_m: file.chow_m,
            grid_bound,
            use_grid: ov.use_grid,
            sample_bound,
        })
    }

    /// Parses JSON text.
    pub fn from_json(text: &str, source: String, ov: &Overrides) -> Result<Self> {
        let file: InputFile =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("schema violation in {source}: {e}")))?;
        Self::from_input(file, source, sha256_hex(text.as_bytes()), ov)
    }

    pub fn forms_json(forms: &LinearFormSet) -> Vec<Vec<String>> {
        forms.forms().iter().map(|r| r.iter().map(format_rational).collect()).collect()
    }
}

fn strip_prefix(e: &Error) -> String {
    let s = e.to_string();
    s.strip_prefix("input error: ").map(str::to_string).unwrap_or(s)
}

/// Reads and validates an input file.
pub fn parse_input(path: &Path, ov: &Overrides) -> Result<JobSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    JobSpec::from_json(&text, path.display().to_string(), ov)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conic_parses() {
        let text = r#"{"num_vars": 3, "generators": ["z0*z2 - z1^2"], "lambdas": [[1, 1, -2], [-1, -1, 2]]}"#;
        let job = JobSpec::from_json(text, "conic".into(), &Overrides::default()).unwrap();
        assert_eq!(job.ideal.ambient_dim(), 2);
        assert_eq!(job.ideal.generators().len(), 1);
        assert_eq!(job.lambdas.len(), 2);
        assert_eq!(job.mu, MuConvention::Normalized);
    }

    #[test]
    fn inhomogeneous_generator_names_degrees() {
        let text = r#"{"num_vars": 2, "generators": ["z0^2 + z1"]}"#;
        let err = JobSpec::from_json(text, "x".into(), &Overrides::default()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("generators[0]") && msg.contains('2') && msg.contains('1'), "{msg}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn general_linear_subgroup_is_rejected() {
        let text = r#"{"num_vars": 3, "generators": [], "lambdas": [[1, 1, -1]]}"#;
        let err = JobSpec::from_json(text, "x".into(), &Overrides::default()).unwrap_err();
        assert!(err.to_string().contains("sum of weights"));
        let ov = Overrides { allow_gl: true, ..Overrides::default() };
        assert!(JobSpec::from_json(text, "x".into(), &ov).is_ok());
    }

    #[test]
    fn schema_violations_name_the_field() {
        let err = JobSpec::from_json(r#"{"generators": []}"#, "x".into(), &Overrides::default()).unwrap_err();
        assert!(err.to_string().contains("num_vars"));
        let err = JobSpec::from_json(r#"{"num_vars": 2, "generators": [], "bogus": 1}"#, "x".into(), &Overrides::default())
            .unwrap_err();
        assert!(err.to_string().contains("bogus"));
    }

    #[test]
    fn term_list_generators_and_forms() {
        let text = r#"{"num_vars": 3,
            "generators": [[{"coeff": "1", "exps": [1, 0, 1]}, {"coeff": "-1", "exps": [0, 2, 0]}]],
            "forms": [["1/2", 0, 3], [0, 1, "-2"]]}"#;
        let job = JobSpec::from_json(text, "x".into(), &Overrides::default()).unwrap();
        assert_eq!(job.ideal, HomogeneousIdeal::parse(3, &["z0*z2 - z1^2"]).unwrap());
        assert_eq!(job.forms.unwrap().count(), 2);
    }

    #[test]
    fn overrides_replace_window() {
        let text = r#"{"num_vars": 3, "generators": [], "window": {"start": 1, "len": 6}}"#;
        let ov = Overrides { m_start: Some(2), ..Overrides::default() };
        let job = JobSpec::from_json(text, "x".into(), &ov).unwrap();
        assert_eq!(job.window, Some(Window::new(2, 6)));
    }
}
