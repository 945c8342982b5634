//! JSON experiment configurations.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::mobius::MobiusMap;
use crate::shift::{ShiftModel, WeightSequence};
use crate::trace_formulas::BivariatePolynomial;

pub const DEFAULT_TRUNCATION: usize = 256;
pub const DEFAULT_GRID: usize = 400;
pub const MIN_TRUNCATION: usize = 8;
pub const MIN_GRID: usize = 16;
/// Ceiling for experiments that build dense N x N matrices.
pub const MAX_DENSE_TRUNCATION: usize = 2048;

/// Registered experiment names with a one-line description each.
pub const EXPERIMENTS: &[(&str, &str)] = &[
    ("pincus-check", "determining function vs disc integral of g vs closed form 1 - 1/(z conj w)"),
    ("helton-howe", "windowed tr[p(T,T*), q(T,T*)] vs (1/pi) int J(p,q) g dA"),
    ("theorem-inequality", "1 - c/r^2 <= (1 - 1/r^2)^c fails on a grid for every c < 1"),
    ("t-lambda-trace", "w_{N-1}(lambda)^2 -> 1 for w_n = (n+1)/(n+lambda)"),
    ("change-of-variable", "g of phi(T) at zeta equals g of T at phi^{-1}(zeta)"),
    ("constancy", "g is one integer over a point grid and a Mobius grid"),
    ("resolvent-probe", "||(T* - conj w)^{-1}|| against 1/|w| and 1/(|w|-1)"),
    ("shift-commutator", "tr[T*,T] and rank of the exact model, windowed truncation trace"),
    ("multiplicative-tripwire", "finite multiplicative commutators have determinant 1"),
    ("berger-shaw-putnam", "tr[T*,T] <= (m/pi) area and ||[T*,T]|| <= area/pi"),
    ("mobius-invariance", "[phi(T)*, phi(T)] stays positive and rank one on a window"),
    ("determinant-calculus", "eigenvalue product vs log series, det(I - x y*) = 1 - tr"),
];

const DENSE_EXPERIMENTS: &[&str] = &["pincus-check", "resolvent-probe", "multiplicative-tripwire", "mobius-invariance"];

pub fn is_registered(name: &str) -> bool {
    EXPERIMENTS.iter().any(|(n, _)| *n == name)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub n_r: usize,
    pub n_theta: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { n_r: DEFAULT_GRID, n_theta: DEFAULT_GRID }
    }
}

/// `{"a": [re, im], "beta": [re, im]}` or with `beta_arg` in radians;
/// `beta` defaults to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MobiusSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_arg: Option<f64>,
    pub a: Complex64,
}

impl MobiusSpec {
    pub fn build(&self) -> crate::Result<MobiusMap> {
        match (self.beta, self.beta_arg) {
            (Some(_), Some(_)) => Err(crate::Error::InvalidMobius("give beta or beta_arg, not both".into())),
            (Some(b), None) => MobiusMap::new(b, self.a),
            (None, Some(t)) => MobiusMap::from_angle(t, self.a),
            (None, None) => MobiusMap::new(Complex64::new(1.0, 0.0), self.a),
        }
    }

    pub fn from_map(m: &MobiusMap) -> Self {
        Self { beta: Some(m.beta()), beta_arg: None, a: m.a() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MobiusList {
    One(MobiusSpec),
    Many(Vec<MobiusSpec>),
}

impl MobiusList {
    pub fn specs(&self) -> Vec<MobiusSpec> {
        match self {
            Self::One(s) => vec![s.clone()],
            Self::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialPair {
    pub p: BivariatePolynomial,
    pub q: BivariatePolynomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolvent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub helton_howe: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<f64>,
}

fn default_model() -> WeightSequence {
    WeightSequence::Unilateral
}

fn default_truncation() -> usize {
    DEFAULT_TRUNCATION
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: String,
    #[serde(default = "default_model")]
    pub model: WeightSequence,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mobius: Option<MobiusList>,
    #[serde(default = "default_truncation")]
    pub truncation: usize,
    #[serde(default)]
    pub grid: GridSpec,
    /// `[re, im]` points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Complex64>>,
    /// `[z_re, z_im, w_re, w_im]` pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<[f64; 4]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomials: Option<Vec<PolynomialPair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_grid: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub area: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<i64>,
    #[serde(default)]
    pub tolerances: ToleranceOverrides,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
}

impl ConfigError {
    pub fn field(&self) -> &str {
        match self {
            Self::Parse { path, .. } => path,
            Self::Invalid { field, .. } => field,
        }
    }
}

fn invalid(field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { field: field.into(), message: message.into() }
}

/// Parses and validates a config, applying defaults.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let config: ExperimentConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        ConfigError::Parse {
            path: if path == "." { "<root>".into() } else { path },
            message: e.into_inner().to_string(),
        }
    })?;
    validate(&config)?;
    Ok(config)
}

fn finite_points(field: &str, values: impl IntoIterator<Item = f64>) -> Result<(), ConfigError> {
    for (i, v) in values.into_iter().enumerate() {
        if !v.is_finite() {
            return Err(invalid(&format!("{field}[{i}]"), "entries must be finite"));
        }
    }
    Ok(())
}

pub fn validate(c: &ExperimentConfig) -> Result<(), ConfigError> {
    if !is_registered(&c.experiment) {
        let names: Vec<&str> = EXPERIMENTS.iter().map(|(n, _)| *n).collect();
        return Err(invalid(
            "experiment",
            format!("unknown experiment {:?}; expected one of {}", c.experiment, names.join(", ")),
        ));
    }
    let model = ShiftModel::new(c.model.clone()).map_err(|e| invalid("model", e.to_string()))?;
    if c.truncation < MIN_TRUNCATION {
        return Err(invalid("truncation", format!("must be at least {MIN_TRUNCATION}, got {}", c.truncation)));
    }
    if DENSE_EXPERIMENTS.contains(&c.experiment.as_str()) && c.truncation > MAX_DENSE_TRUNCATION {
        return Err(invalid(
            "truncation",
            format!("dense experiments allow at most {MAX_DENSE_TRUNCATION}, got {}", c.truncation),
        ));
    }
    if c.grid.n_r < MIN_GRID {
        return Err(invalid("grid.n_r", format!("must be at least {MIN_GRID}, got {}", c.grid.n_r)));
    }
    if c.grid.n_theta < MIN_GRID {
        return Err(invalid("grid.n_theta", format!("must be at least {MIN_GRID}, got {}", c.grid.n_theta)));
    }
    if let Some(list) = &c.mobius {
        for (i, s) in list.specs().iter().enumerate() {
            s.build().map_err(|e| invalid(&format!("mobius[{i}]"), e.to_string()))?;
        }
    }
    if let Some(points) = &c.points {
        finite_points("points", points.iter().flat_map(|p| [p.re, p.im]))?;
    }
    if let Some(pairs) = &c.pairs {
        finite_points("pairs", pairs.iter().flatten().copied())?;
    }
    if let Some(cs) = &c.c_values {
        for (i, &v) in cs.iter().enumerate() {
            if !(v > 0.0 && v <= 1.0) {
                return Err(invalid(&format!("c_values[{i}]"), format!("must lie in (0, 1], got {v}")));
            }
        }
    }
    if let Some(rs) = &c.r_grid {
        if rs.is_empty() {
            return Err(invalid("r_grid", "must not be empty"));
        }
        for (i, &v) in rs.iter().enumerate() {
            if !(v > 1.0 && v.is_finite()) {
                return Err(invalid(&format!("r_grid[{i}]"), format!("must exceed 1, got {v}")));
            }
        }
    }
    if let Some(a) = c.area {
        if !(a.is_finite() && a >= 0.0) {
            return Err(invalid("area", format!("must be finite and nonnegative, got {a}")));
        }
    }
    if c.multiplicity == Some(0) {
        return Err(invalid("multiplicity", "must be at least 1"));
    }
    if c.matrix_dim == Some(0) {
        return Err(invalid("matrix_dim", "must be at least 1"));
    }
    for (name, v) in [
        ("tolerances.quadrature", c.tolerances.quadrature),
        ("tolerances.resolvent", c.tolerances.resolvent),
        ("tolerances.helton_howe", c.tolerances.helton_howe),
        ("tolerances.norm", c.tolerances.norm),
    ] {
        if let Some(t) = v {
            if !(t.is_finite() && t >= 0.0) {
                return Err(invalid(name, format!("must be finite and nonnegative, got {t}")));
            }
        }
    }
    if c.experiment == "t-lambda-trace" {
        match c.model {
            WeightSequence::Rational { lambda } if lambda > 1.0 => {}
            WeightSequence::Rational { lambda } => {
                return Err(invalid("model.lambda", format!("t-lambda-trace needs lambda > 1, got {lambda}")))
            }
            _ => return Err(invalid("model.kind", "t-lambda-trace needs a rational model")),
        }
    }
    if matches!(c.experiment.as_str(), "pincus-check" | "multiplicative-tripwire") {
        model.rank_one_vector(MIN_TRUNCATION).map_err(|e| invalid("model", e.to_string()))?;
    }
    Ok(())
}

impl ExperimentConfig {
    /// Minimal valid config for `experiment`, everything else defaulted.
    pub fn for_experiment(experiment: &str) -> Self {
        let model =
            if experiment == "t-lambda-trace" { WeightSequence::Rational { lambda: 2.0 } } else { default_model() };
        Self {
            experiment: experiment.into(),
            model,
            mobius: None,
            truncation: DEFAULT_TRUNCATION,
            grid: GridSpec::default(),
            points: None,
            pairs: None,
            polynomials: None,
            c_values: None,
            r_grid: None,
            area: None,
            multiplicity: None,
            samples: None,
            matrix_dim: None,
            seed: None,
            expected: None,
            tolerances: ToleranceOverrides::default(),
        }
    }

    pub fn shift_model(&self) -> crate::Result<ShiftModel> {
        ShiftModel::new(self.model.clone())
    }

    pub fn mobius_maps(&self) -> crate::Result<Vec<MobiusMap>> {
        match &self.mobius {
            Some(list) => list.specs().iter().map(MobiusSpec::build).collect(),
            None => Ok(MobiusMap::default_grid()),
        }
    }

    /// `pairs` when given, otherwise `(p, p)` for each of `points`.
    pub fn point_pairs(&self) -> Option<Vec<(Complex64, Complex64)>> {
        if let Some(pairs) = &self.pairs {
            return Some(pairs.iter().map(|p| (Complex64::new(p[0], p[1]), Complex64::new(p[2], p[3]))).collect());
        }
        self.points.as_ref().map(|pts| pts.iter().map(|&p| (p, p)).collect())
    }
}
