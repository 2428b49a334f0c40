use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::analysis::MIN_SCAN_SAMPLES;
use crate::models::{BasisKind, ParameterRange};
use crate::solver::DEFAULT_LATTICE_BOUND;
use crate::tolerances::Tolerances;

/// Default sample count for discrepancy scans.
pub const DEFAULT_SCAN_SAMPLES: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExperimentKind {
    Invert,
    MirrorInvert,
    MultiFrequency,
    MismatchSweep,
    DiscrepancyScan,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 5] = [
        ExperimentKind::Invert,
        ExperimentKind::MirrorInvert,
        ExperimentKind::MultiFrequency,
        ExperimentKind::MismatchSweep,
        ExperimentKind::DiscrepancyScan,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::Invert => "Invert",
            ExperimentKind::MirrorInvert => "MirrorInvert",
            ExperimentKind::MultiFrequency => "MultiFrequency",
            ExperimentKind::MismatchSweep => "MismatchSweep",
            ExperimentKind::DiscrepancyScan => "DiscrepancyScan",
        }
    }

    fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// Basis family as written in a config. The multi-frequency experiment takes
/// its wavenumbers from `wavenumbers`, so the mirror wavenumber is optional.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BasisSpec {
    Monomial,
    MirrorExponential { wavenumber: Option<f64> },
}

impl BasisSpec {
    fn name(&self) -> &'static str {
        match self {
            BasisSpec::Monomial => "monomial",
            BasisSpec::MirrorExponential { .. } => "mirror_exponential",
        }
    }

    /// Concrete basis, if fully specified.
    pub fn resolve(&self) -> Option<BasisKind> {
        match *self {
            BasisSpec::Monomial => Some(BasisKind::Monomial),
            BasisSpec::MirrorExponential { wavenumber } => {
                wavenumber.map(|wavenumber| BasisKind::MirrorExponential { wavenumber })
            }
        }
    }
}

/// A validated experiment definition with all defaults filled in.
///
/// Serializing a config yields a document that [`load_config`] accepts and
/// maps back to the same value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub basis: BasisSpec,
    /// Shared coefficients `a_0..a_K` as `[re, im]` pairs.
    pub coefficients: Vec<Complex64>,
    pub estimator_order: usize,
    pub predictor_order: usize,
    pub truth: Option<f64>,
    pub range: ParameterRange,
    pub wavenumbers: Option<Vec<f64>>,
    pub phi_grid: Option<Vec<f64>>,
    pub noise_magnitude: f64,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub lattice_bound: u32,
    pub samples: usize,
}

impl ExperimentConfig {
    /// A config of the given kind with defaults everywhere else; callers fill
    /// in the fields their kind needs and then call [`validate`](Self::validate).
    pub fn new(kind: ExperimentKind, basis: BasisSpec, coefficients: Vec<Complex64>) -> Self {
        let order = coefficients.len().saturating_sub(1);
        Self {
            kind,
            basis,
            coefficients,
            estimator_order: order,
            predictor_order: order,
            truth: None,
            range: ParameterRange::default(),
            wavenumbers: None,
            phi_grid: None,
            noise_magnitude: 0.0,
            seed: 0,
            tolerances: Tolerances::default(),
            lattice_bound: DEFAULT_LATTICE_BOUND,
            samples: DEFAULT_SCAN_SAMPLES,
        }
    }

    /// Checks that every field the kind needs is present and sane.
    pub fn validate(&self) -> Result<(), ConfigError> {
        use ExperimentKind::*;

        if self.coefficients.is_empty() {
            return Err(bad("coefficients", "at least one coefficient is required"));
        }
        if self.coefficients.iter().any(|c| !c.is_finite()) {
            return Err(bad("coefficients", "all coefficients must be finite"));
        }
        let max_order = self.coefficients.len() - 1;
        if self.estimator_order > max_order {
            return Err(bad(
                "estimator_order",
                format!("exceeds coefficient count - 1 = {max_order}"),
            ));
        }
        if self.predictor_order > max_order {
            return Err(bad(
                "predictor_order",
                format!("exceeds coefficient count - 1 = {max_order}"),
            ));
        }
        if !self.noise_magnitude.is_finite() || self.noise_magnitude < 0.0 {
            return Err(bad("noise_magnitude", "must be finite and non-negative"));
        }
        if !self.tolerances.is_valid() {
            return Err(bad(
                "tolerances",
                "all tolerances must be finite and positive",
            ));
        }
        if self.lattice_bound == 0 {
            return Err(bad("lattice_bound", "must be positive"));
        }
        if self.samples < MIN_SCAN_SAMPLES {
            return Err(bad(
                "samples",
                format!("must be at least {MIN_SCAN_SAMPLES}"),
            ));
        }
        if let BasisSpec::MirrorExponential {
            wavenumber: Some(k),
        } = self.basis
        {
            if !(k.is_finite() && k > 0.0) {
                return Err(bad("basis.wavenumber", "must be positive and finite"));
            }
        }
        if let Some(t) = self.truth {
            if !t.is_finite() {
                return Err(bad("truth", "must be finite"));
            }
        }

        let needs_truth = !matches!(self.kind, MismatchSweep);
        if needs_truth && self.truth.is_none() {
            return Err(ConfigError::MissingField("truth".into()));
        }
        match self.kind {
            Invert | MismatchSweep => self.require_basis(BasisSpec::Monomial.name())?,
            MirrorInvert | MultiFrequency => self.require_basis("mirror_exponential")?,
            DiscrepancyScan => {}
        }
        if matches!(self.basis, BasisSpec::MirrorExponential { .. }) {
            if self.coefficients.len() != 1 {
                return Err(bad(
                    "coefficients",
                    "mirror-exponential models take exactly one coefficient",
                ));
            }
            if self.kind != MultiFrequency && self.basis.resolve().is_none() {
                return Err(ConfigError::MissingField("basis.wavenumber".into()));
            }
        }

        match self.kind {
            MultiFrequency => {
                let ks = self
                    .wavenumbers
                    .as_ref()
                    .ok_or_else(|| ConfigError::MissingField("wavenumbers".into()))?;
                if ks.len() < 2 {
                    return Err(ConfigError::InsufficientFrequencies(ks.len()));
                }
                if ks.iter().any(|k| !(k.is_finite() && *k > 0.0)) {
                    return Err(bad("wavenumbers", "must be positive and finite"));
                }
                for (i, k) in ks.iter().enumerate() {
                    if ks[..i].contains(k) {
                        return Err(bad("wavenumbers", format!("{k} is repeated")));
                    }
                }
            }
            MismatchSweep => {
                let grid = self
                    .phi_grid
                    .as_ref()
                    .ok_or_else(|| ConfigError::MissingField("phi_grid".into()))?;
                if grid.is_empty() {
                    return Err(bad("phi_grid", "must not be empty"));
                }
                if let Some(p) = grid.iter().find(|p| !p.is_finite()) {
                    return Err(bad("phi_grid", format!("{p} is not finite")));
                }
                if self.estimator_order > self.predictor_order {
                    return Err(bad("estimator_order", "must not exceed predictor_order"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn require_basis(&self, name: &str) -> Result<(), ConfigError> {
        if self.basis.name() == name {
            Ok(())
        } else {
            Err(ConfigError::InvalidValue {
                field: "basis.kind".into(),
                reason: format!("{} requires a {name} basis", self.kind.name()),
            })
        }
    }
}

/// Config problems; each names the offending field.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("MissingField: `{0}` is required")]
    MissingField(String),

    #[error("BadNumber: `{field}`: {reason}")]
    BadNumber { field: String, reason: String },

    #[error("UnknownKind: `{field}` has unknown value {value:?}")]
    UnknownKind { field: String, value: String },

    #[error("UnknownField: `{0}` is not a recognised field")]
    UnknownField(String),

    #[error("InvalidValue: `{field}`: {reason}")]
    InvalidValue { field: String, reason: String },

    #[error("InsufficientFrequencies: `wavenumbers` needs at least 2 entries, got {0}")]
    InsufficientFrequencies(usize),
}

impl ConfigError {
    pub fn kind(&self) -> &'static str {
        match self {
            ConfigError::Syntax { .. } => "Syntax",
            ConfigError::MissingField(_) => "MissingField",
            ConfigError::BadNumber { .. } => "BadNumber",
            ConfigError::UnknownKind { .. } => "UnknownKind",
            ConfigError::UnknownField(_) => "UnknownField",
            ConfigError::InvalidValue { .. } => "InvalidValue",
            ConfigError::InsufficientFrequencies(_) => "InsufficientFrequencies",
        }
    }
}

fn bad(field: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::BadNumber {
        field: field.into(),
        reason: reason.into(),
    }
}

fn wrong_type(field: &str, expected: &str) -> ConfigError {
    ConfigError::InvalidValue {
        field: field.into(),
        reason: format!("expected {expected}"),
    }
}

const TOP_LEVEL_FIELDS: [&str; 14] = [
    "kind",
    "basis",
    "coefficients",
    "estimator_order",
    "predictor_order",
    "truth",
    "range",
    "wavenumbers",
    "phi_grid",
    "noise_magnitude",
    "seed",
    "tolerances",
    "lattice_bound",
    "samples",
];

/// Parses and validates a JSON experiment definition.
///
/// Only `kind` and `coefficients` are always required; `truth`,
/// `wavenumbers` and `phi_grid` are required by the kinds that use them.
/// `null` is the same as an absent field.
pub fn load_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ConfigError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let Value::Object(obj) = value else {
        return Err(wrong_type("<root>", "an object"));
    };
    if let Some(key) = obj.keys().find(|k| !TOP_LEVEL_FIELDS.contains(&k.as_str())) {
        return Err(ConfigError::UnknownField(key.clone()));
    }

    let kind_name = field(&obj, "kind")
        .ok_or_else(|| ConfigError::MissingField("kind".into()))?
        .as_str()
        .ok_or_else(|| wrong_type("kind", "a string"))?;
    let kind = ExperimentKind::parse(kind_name).ok_or_else(|| ConfigError::UnknownKind {
        field: "kind".into(),
        value: kind_name.into(),
    })?;

    let basis = match field(&obj, "basis") {
        None => BasisSpec::Monomial,
        Some(v) => parse_basis(v)?,
    };
    let coefficients = match field(&obj, "coefficients") {
        None => return Err(ConfigError::MissingField("coefficients".into())),
        Some(v) => parse_complex_list(v, "coefficients")?,
    };

    let mut config = ExperimentConfig::new(kind, basis, coefficients);
    if let Some(m) = opt_uint(&obj, "estimator_order")? {
        config.estimator_order = to_usize(m, "estimator_order")?;
    }
    if let Some(n) = opt_uint(&obj, "predictor_order")? {
        config.predictor_order = to_usize(n, "predictor_order")?;
    }
    config.truth = opt_f64(&obj, "truth")?;
    if let Some(v) = field(&obj, "range") {
        let pair = parse_f64_list(v, "range")?;
        if pair.len() != 2 {
            return Err(bad("range", "expected [lo, hi]"));
        }
        config.range = ParameterRange::new(pair[0], pair[1]).map_err(|_| {
            bad(
                "range",
                format!("require lo < hi, got [{}, {}]", pair[0], pair[1]),
            )
        })?;
    }
    config.wavenumbers = field(&obj, "wavenumbers")
        .map(|v| parse_f64_list(v, "wavenumbers"))
        .transpose()?;
    config.phi_grid = field(&obj, "phi_grid")
        .map(|v| parse_f64_list(v, "phi_grid"))
        .transpose()?;
    if let Some(x) = opt_f64(&obj, "noise_magnitude")? {
        config.noise_magnitude = x;
    }
    if let Some(s) = opt_uint(&obj, "seed")? {
        config.seed = s;
    }
    if let Some(v) = field(&obj, "tolerances") {
        config.tolerances = parse_tolerances(v)?;
    }
    if let Some(b) = opt_uint(&obj, "lattice_bound")? {
        config.lattice_bound = u32::try_from(b).map_err(|_| bad("lattice_bound", "too large"))?;
    }
    if let Some(s) = opt_uint(&obj, "samples")? {
        config.samples = to_usize(s, "samples")?;
    }

    config.validate()?;
    Ok(config)
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Option<&'a Value> {
    obj.get(name).filter(|v| !v.is_null())
}

fn as_f64(v: &Value, name: &str) -> Result<f64, ConfigError> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| bad(name, "not a finite number")),
        _ => Err(bad(name, format!("expected a number, got {v}"))),
    }
}

fn opt_f64(obj: &Map<String, Value>, name: &str) -> Result<Option<f64>, ConfigError> {
    field(obj, name).map(|v| as_f64(v, name)).transpose()
}

fn opt_uint(obj: &Map<String, Value>, name: &str) -> Result<Option<u64>, ConfigError> {
    field(obj, name)
        .map(|v| {
            v.as_u64()
                .ok_or_else(|| bad(name, format!("expected a non-negative integer, got {v}")))
        })
        .transpose()
}

fn to_usize(x: u64, name: &str) -> Result<usize, ConfigError> {
    usize::try_from(x).map_err(|_| bad(name, "too large"))
}

fn parse_f64_list(v: &Value, name: &str) -> Result<Vec<f64>, ConfigError> {
    let items = v
        .as_array()
        .ok_or_else(|| wrong_type(name, "an array of numbers"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, x)| as_f64(x, &format!("{name}[{i}]")))
        .collect()
}

fn parse_complex_list(v: &Value, name: &str) -> Result<Vec<Complex64>, ConfigError> {
    let items = v
        .as_array()
        .ok_or_else(|| wrong_type(name, "an array of [re, im] pairs"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let path = format!("{name}[{i}]");
            let pair = parse_f64_list(item, &path)?;
            match pair.as_slice() {
                [re, im] => Ok(Complex64::new(*re, *im)),
                _ => Err(bad(&path, "expected [re, im]")),
            }
        })
        .collect()
}

fn parse_basis(v: &Value) -> Result<BasisSpec, ConfigError> {
    let obj = v
        .as_object()
        .ok_or_else(|| wrong_type("basis", "an object with a `kind` field"))?;
    if let Some(key) = obj
        .keys()
        .find(|k| !["kind", "wavenumber"].contains(&k.as_str()))
    {
        return Err(ConfigError::UnknownField(format!("basis.{key}")));
    }
    let name = field(obj, "kind")
        .ok_or_else(|| ConfigError::MissingField("basis.kind".into()))?
        .as_str()
        .ok_or_else(|| wrong_type("basis.kind", "a string"))?;
    let wavenumber =
        opt_f64(obj, "wavenumber").map_err(|_| bad("basis.wavenumber", "not a finite number"))?;
    match name {
        "monomial" => Ok(BasisSpec::Monomial),
        "mirror_exponential" => Ok(BasisSpec::MirrorExponential { wavenumber }),
        other => Err(ConfigError::UnknownKind {
            field: "basis.kind".into(),
            value: other.into(),
        }),
    }
}

fn parse_tolerances(v: &Value) -> Result<Tolerances, ConfigError> {
    let obj = v
        .as_object()
        .ok_or_else(|| wrong_type("tolerances", "an object"))?;
    let mut tol = Tolerances::default();
    for (key, value) in obj {
        let path = format!("tolerances.{key}");
        let slot = match key.as_str() {
            "residual_tol" => &mut tol.residual_tol,
            "imag_tol" => &mut tol.imag_tol,
            "match_tol" => &mut tol.match_tol,
            "dedup_tol" => &mut tol.dedup_tol,
            "survivor_tol" => &mut tol.survivor_tol,
            _ => return Err(ConfigError::UnknownField(path)),
        };
        let x = as_f64(value, &path)?;
        if x <= 0.0 {
            return Err(bad(&path, "must be positive"));
        }
        *slot = x;
    }
    Ok(tol)
}
