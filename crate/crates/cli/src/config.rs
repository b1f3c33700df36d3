//! Job descriptions, either parsed from JSON or assembled from flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use superkac::algebra::SuperAlgebraSpec;
use superkac::exactmath::{format_rational, parse_rational, Rational};
use superkac::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Build,
    Verify,
    Typicality,
    Replicate,
    Twist,
    Heisenberg,
    Export,
}

/// What the `export` action writes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportWhat {
    #[default]
    Module,
    Constants,
    Fundamental,
}

/// A rational given either as a JSON string `"p/q"` or an integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalInput {
    Text(String),
    Integer(i64),
}

impl RationalInput {
    pub fn value(&self) -> Result<Rational> {
        match self {
            Self::Text(s) => parse_rational(s),
            Self::Integer(i) => Ok(Rational::from_integer((*i).into())),
        }
    }
}

impl From<&Rational> for RationalInput {
    fn from(r: &Rational) -> Self {
        Self::Text(format_rational(r))
    }
}

/// One pipeline job. Unknown fields are rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub action: Action,
    pub algebra: SuperAlgebraSpec,
    #[serde(default)]
    pub labels: Vec<i64>,
    /// `"symbolic"` (the default) or a rational.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<RationalInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<RationalInput>,
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub n_copies: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<Vec<RationalInput>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<(RationalInput, RationalInput)>,
    /// Second twist direction; the twist job then decides isomorphism.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<(RationalInput, RationalInput)>,
    #[serde(default, rename = "n", skip_serializing_if = "Option::is_none")]
    pub n_twist: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub what: Option<ExportWhat>,
    /// A module JSON to re-verify instead of building one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
}

/// A config file holds a single job or `{"jobs": [...]}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ConfigFile {
    Suite(Suite),
    Single(Box<JobConfig>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suite {
    pub jobs: Vec<JobConfig>,
}

impl ConfigFile {
    pub fn jobs(self) -> Vec<JobConfig> {
        match self {
            Self::Suite(s) => s.jobs,
            Self::Single(j) => vec![*j],
        }
    }
}

/// Parses a config, reporting the most specific error. The untagged enum
/// alone would hide which field was wrong.
pub fn parse_config(text: &str) -> Result<Vec<JobConfig>> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("jobs").is_some() {
        let suite: Suite = serde_json::from_value(value)?;
        Ok(suite.jobs)
    } else {
        Ok(vec![serde_json::from_value(value)?])
    }
}

pub fn load_config(path: &Path) -> Result<Vec<JobConfig>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

fn binding(name: &str, input: &Option<RationalInput>) -> Result<Option<Rational>> {
    match input {
        None => Ok(None),
        Some(RationalInput::Text(s)) if s == "symbolic" => Ok(None),
        Some(r) => r.value().map(Some).map_err(|e| Error::Parse(format!("{name}: {e}"))),
    }
}

fn pair(input: &(RationalInput, RationalInput)) -> Result<(Rational, Rational)> {
    Ok((input.0.value()?, input.1.value()?))
}

impl JobConfig {
    pub fn new(action: Action, algebra: SuperAlgebraSpec, labels: Vec<i64>) -> Self {
        Self {
            action,
            algebra,
            labels,
            b: None,
            c: None,
            n_copies: None,
            lambdas: None,
            nu: None,
            mu: None,
            n_twist: None,
            what: None,
            input: None,
            out: None,
            report: None,
        }
    }

    /// Bound parameters; symbolic ones are absent.
    pub fn bindings(&self) -> Result<BTreeMap<String, Rational>> {
        let mut out = BTreeMap::new();
        if let Some(b) = binding("b", &self.b)? {
            out.insert("b".to_string(), b);
        }
        if let Some(c) = binding("c", &self.c)? {
            if self.algebra.flavor == superkac::algebra::Flavor::Sl {
                return Err(Error::Precondition(format!("{} has no parameter c", self.algebra)));
            }
            out.insert("c".to_string(), c);
        }
        Ok(out)
    }

    pub fn lambda_values(&self) -> Result<Option<Vec<Rational>>> {
        self.lambdas.as_ref().map(|ls| ls.iter().map(RationalInput::value).collect()).transpose()
    }

    pub fn nu_value(&self) -> Result<Option<(Rational, Rational)>> {
        self.nu.as_ref().map(pair).transpose()
    }

    pub fn mu_value(&self) -> Result<Option<(Rational, Rational)>> {
        self.mu.as_ref().map(pair).transpose()
    }
}

/// Splits `"1,-3/5"` into rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<RationalInput>> {
    s.split(',')
        .map(|x| {
            let x = x.trim();
            parse_rational(x)?;
            Ok(RationalInput::Text(x.to_string()))
        })
        .collect()
}

/// Splits `"1,0"` into integer labels.
pub fn parse_labels(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("even label `{x}` is not an integer"))))
        .collect()
}
