//! Reports and their deterministic JSON and markdown renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{Map, Value};

use super::config::float_value;
use crate::exactnum::{Inertia, Matrix, Scalar, SymMatrix};
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    #[value(alias = "markdown")]
    Md,
}

/// A scalar as JSON: `"p/q"` strings for exact values, 17-digit numbers for floats.
pub fn num<S: Scalar>(v: &S) -> Value {
    if S::EXACT {
        Value::String(v.to_string())
    } else {
        float_value(v.to_f64())
    }
}

pub fn nums<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(num).collect())
}

pub fn matrix<S: Scalar>(m: &Matrix<S>) -> Value {
    Value::Array((0..m.rows()).map(|i| nums(m.row(i))).collect())
}

pub fn sym<S: Scalar>(m: &SymMatrix<S>) -> Value {
    matrix(m.matrix())
}

pub fn inertia(i: &Inertia) -> Value {
    let mut out = Map::new();
    out.insert("n_neg".into(), i.n_neg.into());
    out.insert("n_zero".into(), i.n_zero.into());
    out.insert("n_pos".into(), i.n_pos.into());
    Value::Object(out)
}

/// Destabilizing direction: a description and, when applicable, its coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub description: String,
    pub coefficients: Option<Value>,
    /// Value of the quadratic form along the witness.
    pub value: Option<Value>,
}

impl Witness {
    pub fn named(description: impl Into<String>) -> Self {
        Witness { description: description.into(), coefficients: None, value: None }
    }

    fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("description".into(), self.description.clone().into());
        if let Some(c) = &self.coefficients {
            out.insert("coefficients".into(), c.clone());
        }
        if let Some(v) = &self.value {
            out.insert("value".into(), v.clone());
        }
        Value::Object(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub quantities: Map<String, Value>,
    pub verdict: Option<Verdict>,
    pub witness: Option<Witness>,
    pub coindex_lower_bound: Option<usize>,
    pub checks: BTreeMap<String, bool>,
    pub provenance: Vec<String>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, input: Value) -> Self {
        Report {
            command: command.into(),
            input,
            quantities: Map::new(),
            verdict: None,
            witness: None,
            coindex_lower_bound: None,
            checks: BTreeMap::new(),
            provenance: Vec::new(),
            warnings: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn set(&mut self, name: &str, value: Value) {
        self.quantities.insert(name.to_string(), value);
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        self.checks.insert(name.to_string(), ok);
    }

    pub fn cite(&mut self, formula: &str) {
        self.provenance.push(formula.to_string());
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }

    /// 1 if an identity check failed, 2 if there are warnings, else 0.
    pub fn exit_code(&self) -> i32 {
        if !self.all_checks_pass() {
            1
        } else if !self.warnings.is_empty() {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), self.command.clone().into());
        out.insert("input".into(), self.input.clone());
        out.insert("quantities".into(), Value::Object(self.quantities.clone()));
        out.insert("verdict".into(), self.verdict.map_or(Value::Null, |v| v.as_str().into()));
        out.insert("witness".into(), self.witness.as_ref().map_or(Value::Null, Witness::to_json));
        out.insert("coindex_lower_bound".into(), self.coindex_lower_bound.map_or(Value::Null, Value::from));
        out.insert(
            "checks".into(),
            Value::Object(self.checks.iter().map(|(k, v)| (k.clone(), Value::Bool(*v))).collect()),
        );
        out.insert("provenance".into(), self.provenance.clone().into());
        out.insert("warnings".into(), self.warnings.clone().into());
        out.insert("notes".into(), self.notes.clone().into());
        Value::Object(out)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => render_json(&self.to_json()),
            Format::Md => self.to_markdown(),
        }
    }

    fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {}\n", self.command);
        s.push_str("## Verdict\n\n");
        match self.verdict {
            Some(v) => {
                let _ = write!(s, "**{v}**");
                if let Some(k) = self.coindex_lower_bound {
                    let _ = write!(s, " (coindex ≥ {k})");
                }
                s.push('\n');
            }
            None => s.push_str("No verdict for this command.\n"),
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "\nWitness: `{}`", w.description);
            if let Some(c) = &w.coefficients {
                let _ = writeln!(s, "\nCoefficients: `{c}`");
            }
            if let Some(v) = &w.value {
                let _ = writeln!(s, "\nForm value along the witness: `{v}`");
            }
        }
        s.push_str("\n## Quantities\n\n| quantity | value |\n|---|---|\n");
        for (k, v) in &self.quantities {
            let _ = writeln!(s, "| {k} | `{v}` |");
        }
        if !self.checks.is_empty() {
            s.push_str("\n## Checks\n\n");
            for (k, ok) in &self.checks {
                let _ = writeln!(s, "- {k}: {}", if *ok { "pass" } else { "FAIL" });
            }
        }
        for (title, items) in [("Warnings", &self.warnings), ("Notes", &self.notes), ("Provenance", &self.provenance)] {
            if !items.is_empty() {
                let _ = writeln!(s, "\n## {title}\n");
                for item in items {
                    let _ = writeln!(s, "- {item}");
                }
            }
        }
        let _ = write!(s, "\n## Input\n\n```json\n{}```\n", render_json(&self.input));
        s
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_default();
    s.push('\n');
    s
}

/// Structured error report for failures before or during a computation.
pub fn error_json(err: &crate::error::Error) -> Value {
    use crate::error::Error;
    let mut body = Map::new();
    let kind = match err {
        Error::Parse { location, message } => {
            body.insert("location".into(), location.clone().into());
            body.insert("detail".into(), message.clone().into());
            "ParseError"
        }
        Error::Schema(_) => "SchemaError",
        Error::ConstraintViolation { .. } => "ConstraintViolation",
        Error::NotEinstein { .. } => "NotEinstein",
        Error::NoSolutionFound { .. } => "NoSolutionFound",
        Error::MRequiresAtLeastThree(_) => "MRequiresAtLeastThree",
        Error::NotOnSimplex(_) => "NotOnSimplex",
        Error::PairingOutOfRange { .. } => "PairingOutOfRange",
        Error::MaxIterationsExceeded { .. } => "MaxIterationsExceeded",
        Error::SingularJacobian => "SingularJacobian",
        Error::SpanNotTraceFree(_) | Error::SpanDependent => "InvalidSpan",
        Error::NotSymmetric { .. } | Error::DimensionMismatch(_) | Error::IndexOutOfRange { .. } => "InvalidInput",
        Error::InvalidConfig(_) | Error::InvalidParams(_) => "InvalidInput",
    };
    body.insert("kind".into(), kind.into());
    body.insert("message".into(), err.to_string().into());
    let mut out = Map::new();
    out.insert("error".into(), Value::Object(body));
    Value::Object(out)
}

pub fn render_error(err: &crate::error::Error, format: Format) -> String {
    match format {
        Format::Json => render_json(&error_json(err)),
        Format::Md => format!("# Error\n\n{err}\n"),
    }
}
