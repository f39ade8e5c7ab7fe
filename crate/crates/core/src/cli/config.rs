//! Analysis configuration files and the typed reader used to validate payloads.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::exactnum::Scalar;

/// Default tolerance for float mode.
pub const DEFAULT_FLOAT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Submersion,
    Canonical,
    ProductBase,
    Torus,
    Qk,
    HomogSp,
    Circle,
}

impl Kind {
    pub const ALL: [Kind; 7] = [
        Kind::Submersion,
        Kind::Canonical,
        Kind::ProductBase,
        Kind::Torus,
        Kind::Qk,
        Kind::HomogSp,
        Kind::Circle,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Submersion => "submersion",
            Kind::Canonical => "canonical",
            Kind::ProductBase => "product-base",
            Kind::Torus => "torus",
            Kind::Qk => "qk",
            Kind::HomogSp => "homog-sp",
            Kind::Circle => "circle",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown kind `{s}`; expected one of {}", Kind::ALL.map(|k| k.as_str()).join(", ")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    pub gauge_einstein: f64,
    pub starts: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { gauge_einstein: 1.0, starts: 32, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisConfig {
    pub kind: Kind,
    pub mode: Mode,
    /// Float-mode tolerance; exact mode compares exactly.
    pub tolerance: f64,
    pub solver: SolverConfig,
    pub payload: Value,
}

impl AnalysisConfig {
    pub fn new(kind: Kind, payload: Value) -> Self {
        AnalysisConfig {
            kind,
            mode: Mode::Exact,
            tolerance: DEFAULT_FLOAT_TOL,
            solver: SolverConfig::default(),
            payload,
        }
    }

    /// Tolerance in the working scalar type: zero when exact.
    pub fn tol<S: Scalar>(&self) -> S {
        if S::EXACT {
            S::zero()
        } else {
            S::from_f64(self.tolerance).unwrap_or_else(S::zero)
        }
    }

    /// Normalized echo of the configuration, as embedded in reports.
    pub fn echo(&self) -> Value {
        let mut solver = Map::new();
        solver.insert("gauge_E".into(), float_value(self.solver.gauge_einstein));
        solver.insert("starts".into(), self.solver.starts.into());
        solver.insert("seed".into(), self.solver.seed.into());
        let mut out = Map::new();
        out.insert("kind".into(), self.kind.as_str().into());
        out.insert("mode".into(), self.mode.as_str().into());
        out.insert("tolerance".into(), float_value(self.tolerance));
        out.insert("solver".into(), Value::Object(solver));
        out.insert("payload".into(), self.payload.clone());
        Value::Object(out)
    }
}

/// A float as a JSON number with 17 significant digits.
pub fn float_value(v: f64) -> Value {
    if !v.is_finite() {
        return Value::String(v.to_string());
    }
    serde_json::from_str(&crate::exactnum::format_f64(v)).unwrap_or(Value::Null)
}

/// Reads and parses a configuration file. Payload validation happens in `run`.
pub fn load_config(path: impl AsRef<Path>) -> Result<AnalysisConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        location: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<AnalysisConfig> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let root = Field::root(&value);
    root.expect_keys(&["kind", "mode", "tolerance", "solver", "payload"])?;
    let kind = root.get("kind")?.string()?.parse::<Kind>().map_err(|m| root.at("kind").error(m))?;
    let mode = match root.opt("mode") {
        None => Mode::Exact,
        Some(f) => match f.string()? {
            "exact" => Mode::Exact,
            "float" => Mode::Float,
            other => return Err(f.error(format!("unknown mode `{other}`; expected exact or float"))),
        },
    };
    let tolerance = match root.opt("tolerance") {
        None => DEFAULT_FLOAT_TOL,
        Some(f) => {
            let t = f.scalar::<f64>()?;
            if !(t >= 0.0 && t.is_finite()) {
                return Err(Error::Schema(format!("tolerance must be a finite non-negative number, got {t}")));
            }
            t
        }
    };
    let mut solver = SolverConfig::default();
    if let Some(s) = root.opt("solver") {
        s.expect_keys(&["gauge_E", "starts", "seed"])?;
        if let Some(f) = s.opt("gauge_E") {
            solver.gauge_einstein = f.scalar::<f64>()?;
        }
        if let Some(f) = s.opt("starts") {
            solver.starts = f.usize()?;
        }
        if let Some(f) = s.opt("seed") {
            solver.seed = f.u64()?;
        }
    }
    let payload = root.get("payload")?;
    if !payload.value.is_object() {
        return Err(payload.error("expected an object"));
    }
    Ok(AnalysisConfig { kind, mode, tolerance, solver, payload: payload.value.clone() })
}

/// A JSON value together with its field path, for located error messages.
#[derive(Clone, Debug)]
pub struct Field<'a> {
    pub value: &'a Value,
    pub path: String,
}

impl<'a> Field<'a> {
    pub fn root(value: &'a Value) -> Self {
        Field { value, path: String::new() }
    }

    pub fn named(value: &'a Value, path: &str) -> Self {
        Field { value, path: path.to_string() }
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            location: if self.path.is_empty() { "<root>".into() } else { self.path.clone() },
            message: message.into(),
        }
    }

    fn child_path(&self, key: &str) -> String {
        if self.path.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.path)
        }
    }

    fn at(&self, key: &str) -> Field<'a> {
        Field { value: &Value::Null, path: self.child_path(key) }
    }

    fn object(&self) -> Result<&'a Map<String, Value>> {
        self.value.as_object().ok_or_else(|| self.error("expected an object"))
    }

    pub fn has(&self, key: &str) -> bool {
        self.opt(key).is_some()
    }

    /// Rejects keys outside `allowed`.
    pub fn expect_keys(&self, allowed: &[&str]) -> Result<()> {
        for key in self.object()?.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(self.at(key).error(format!("unknown field; expected one of {}", allowed.join(", "))));
            }
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Result<Field<'a>> {
        self.opt(key).ok_or_else(|| self.at(key).error("missing field"))
    }

    /// A present, non-null field.
    pub fn opt(&self, key: &str) -> Option<Field<'a>> {
        let value = self.value.as_object()?.get(key)?;
        (!value.is_null()).then(|| Field { value, path: self.child_path(key) })
    }

    pub fn items(&self) -> Result<Vec<Field<'a>>> {
        let arr = self.value.as_array().ok_or_else(|| self.error("expected an array"))?;
        Ok(arr
            .iter()
            .enumerate()
            .map(|(i, value)| Field { value, path: format!("{}[{i}]", self.path) })
            .collect())
    }

    pub fn string(&self) -> Result<&'a str> {
        self.value.as_str().ok_or_else(|| self.error("expected a string"))
    }

    /// A JSON number or a `"p/q"` / decimal string in the working scalar type.
    pub fn scalar<S: Scalar>(&self) -> Result<S> {
        let text = match self.value {
            Value::Number(n) => n.to_string(),
            Value::String(s) => s.clone(),
            _ => return Err(self.error("expected a number or a \"p/q\" string")),
        };
        S::parse(&text).ok_or_else(|| self.error(format!("cannot parse `{text}` as a number")))
    }

    pub fn scalars<S: Scalar>(&self) -> Result<Vec<S>> {
        self.items()?.iter().map(Field::scalar).collect()
    }

    /// Row-major array of arrays; rows must have equal length.
    pub fn matrix<S: Scalar>(&self) -> Result<Vec<Vec<S>>> {
        let rows: Vec<Vec<S>> = self.items()?.iter().map(Field::scalars).collect::<Result<_>>()?;
        if let Some(first) = rows.first() {
            if let Some(i) = rows.iter().position(|r| r.len() != first.len()) {
                return Err(self.error(format!("row {i} has {} entries, row 0 has {}", rows[i].len(), first.len())));
            }
        }
        Ok(rows)
    }

    pub fn int(&self) -> Result<i64> {
        self.value.as_i64().ok_or_else(|| self.error("expected an integer"))
    }

    pub fn ints(&self) -> Result<Vec<i64>> {
        self.items()?.iter().map(Field::int).collect()
    }

    pub fn int_matrix(&self) -> Result<Vec<Vec<i64>>> {
        self.items()?.iter().map(Field::ints).collect()
    }

    pub fn u64(&self) -> Result<u64> {
        self.value.as_u64().ok_or_else(|| self.error("expected a non-negative integer"))
    }

    pub fn usize(&self) -> Result<usize> {
        let v = self.u64()?;
        usize::try_from(v).map_err(|_| self.error("integer out of range"))
    }

    pub fn u32(&self) -> Result<u32> {
        let v = self.u64()?;
        u32::try_from(v).map_err(|_| self.error("integer out of range"))
    }

    pub fn usizes(&self) -> Result<Vec<usize>> {
        self.items()?.iter().map(Field::usize).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    #[test]
    fn fractions_follow_the_mode() {
        let v = serde_json::json!({"x": "4/3"});
        let f = Field::root(&v).get("x").unwrap();
        assert_eq!(f.scalar::<Rational>().unwrap(), Rational::ratio(4, 3));
        assert_eq!(f.scalar::<f64>().unwrap(), 1.3333333333333333);
    }

    #[test]
    fn json_numbers_are_read_exactly() {
        let v: Value = serde_json::from_str(r#"{"x": 0.1}"#).unwrap();
        assert_eq!(Field::root(&v).get("x").unwrap().scalar::<Rational>().unwrap(), Rational::ratio(1, 10));
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let err = parse_config("{\n  \"kind\": \"torus\",\n  oops\n}").unwrap_err();
        match err {
            Error::Parse { location, .. } => assert_eq!(location, "line 3, column 3"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn field_errors_carry_paths() {
        let err = parse_config(r#"{"kind": "torus", "payload": {}, "solver": {"starts": -1}}"#).unwrap_err();
        assert_eq!(err, Error::Parse { location: "solver.starts".into(), message: "expected a non-negative integer".into() });
        let err = parse_config(r#"{"kind": "cubes", "payload": {}}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location == "kind"), "{err:?}");
        let err = parse_config(r#"{"kind": "qk", "payload": {}, "extra": 1}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location == "extra"), "{err:?}");
    }

    #[test]
    fn defaults() {
        let cfg = parse_config(r#"{"kind": "circle", "payload": {"n": 4, "b": [1, 1]}}"#).unwrap();
        assert_eq!(cfg.mode, Mode::Exact);
        assert_eq!(cfg.tolerance, DEFAULT_FLOAT_TOL);
        assert_eq!(cfg.solver, SolverConfig::default());
    }
}
