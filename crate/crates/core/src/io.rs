//! JSON file formats and canonical rendering of results.
//!
//! Rationals travel as strings (`"p/q"` or `"p"`); object keys are emitted in
//! sorted order so output is byte-for-byte reproducible.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::{Map, Value};

use crate::endo::{EndoSpec, ToricEndo};
use crate::error::{Error, Result};
use crate::exactmath::{format_rational, Rational};
use crate::surface::{ExcDivisor, GraphSpec, ResolutionGraph};
use crate::toric::{ConeSpec, IdealSpec, MonomialIdeal, ToricCone, ToricDivisor};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
    parse_json(&text)
}

pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(format!("invalid JSON: {e}")))
}

pub fn load_graph(path: &Path) -> Result<ResolutionGraph> {
    ResolutionGraph::from_spec(&read_json::<GraphSpec>(path)?)
}

pub fn load_exc_divisor(path: &Path, graph: &ResolutionGraph) -> Result<ExcDivisor> {
    let d: ExcDivisor = read_json(path)?;
    if d.coeffs.len() != graph.len() {
        return Err(Error::DimensionMismatch(format!(
            "divisor has {} coefficients, graph has {} vertices",
            d.coeffs.len(),
            graph.len()
        )));
    }
    Ok(d)
}

pub fn load_cone(path: &Path) -> Result<ToricCone> {
    ToricCone::from_spec(&read_json::<ConeSpec>(path)?)
}

pub fn load_toric_divisor(path: &Path, cone: &ToricCone) -> Result<ToricDivisor> {
    let d: ToricDivisor = read_json(path)?;
    d.check(cone)?;
    Ok(d)
}

pub fn load_ideal(path: &Path, cone: &ToricCone) -> Result<MonomialIdeal> {
    MonomialIdeal::from_spec(cone, &read_json::<IdealSpec>(path)?)
}

pub fn load_endo(path: &Path, cone: &ToricCone) -> Result<ToricEndo> {
    ToricEndo::from_spec(cone, &read_json::<EndoSpec>(path)?)
}

/// Parses `"1,1,0"` (spaces allowed) into an integer vector.
pub fn parse_int_vector(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim().parse::<i64>().map_err(|_| {
                Error::Malformed(format!("{s:?} is not a comma-separated integer vector"))
            })
        })
        .collect()
}

pub fn rational_value(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

pub fn rational_vec_value(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rational_value).collect())
}

pub fn int_vec_value(xs: &[i64]) -> Value {
    Value::Array(xs.iter().map(|&x| Value::from(x)).collect())
}

pub fn int_matrix_value(rows: &[Vec<i64>]) -> Value {
    Value::Array(rows.iter().map(|r| int_vec_value(r)).collect())
}

/// Object builder with sorted keys.
#[derive(Clone, Debug, Default)]
pub struct Record(Map<String, Value>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.insert(key.to_owned(), value.into());
        self
    }

    pub fn insert(&mut self, key: &str, value: impl Into<Value>) {
        self.0.insert(key.to_owned(), value.into());
    }
}

impl From<Record> for Value {
    fn from(r: Record) -> Value {
        Value::Object(r.0)
    }
}

/// Compact JSON with sorted keys and a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string(&sort_keys(v)).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn sort_keys(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(&String, &Value)> = m.iter().collect();
            entries.sort_by(|a, b| a.0.cmp(b.0));
            Value::Object(
                entries
                    .into_iter()
                    .map(|(k, v)| (k.clone(), sort_keys(v)))
                    .collect(),
            )
        }
        Value::Array(xs) => Value::Array(xs.iter().map(sort_keys).collect()),
        other => other.clone(),
    }
}

/// Two aligned columns, `key  value`; nested values are written as compact
/// JSON and rationals without quotes.
pub fn render_table(v: &Value) -> String {
    let Value::Object(m) = v else {
        return render_json(v);
    };
    let mut keys: Vec<&String> = m.keys().collect();
    keys.sort();
    let width = keys.iter().map(|k| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for k in keys {
        let cell = match &m[k] {
            Value::String(s) => s.clone(),
            other => {
                serde_json::to_string(&sort_keys(other)).expect("JSON values always serialize")
            }
        };
        let _ = writeln!(out, "{k:<width$}  {cell}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{qvec, ratio};

    #[test]
    fn vectors_parse() {
        assert_eq!(parse_int_vector("1,1,0").unwrap(), vec![1, 1, 0]);
        assert_eq!(parse_int_vector(" -2, 3 ").unwrap(), vec![-2, 3]);
        assert!(parse_int_vector("1,a").is_err());
        assert!(parse_int_vector("").is_err());
    }

    #[test]
    fn json_is_sorted_and_canonical() {
        let v: Value = Record::new()
            .with("value", rational_value(&ratio(6, 4)))
            .with("optimal_m", rational_vec_value(&qvec(&[2, 1, 2])))
            .into();
        assert_eq!(
            render_json(&v),
            "{\"optimal_m\":[\"2\",\"1\",\"2\"],\"value\":\"3/2\"}\n"
        );
        assert_eq!(
            render_table(&v),
            "optimal_m  [\"2\",\"1\",\"2\"]\nvalue      3/2\n"
        );
    }

    #[test]
    fn specs_parse() {
        let g: GraphSpec = parse_json(
            r#"{"vertices":[{"self":-3,"genus":2},{"self":-2,"genus":0}],"edges":[[0,1,1]]}"#,
        )
        .unwrap();
        assert_eq!(g.vertices.len(), 2);
        let d: ToricDivisor = parse_json(r#"{"coeffs":["1","1/2","-3"]}"#).unwrap();
        assert_eq!(d.coeffs[1], ratio(1, 2));
        assert!(parse_json::<ToricDivisor>(r#"{"coeffs":[1.5]}"#).is_err());
        assert!(parse_json::<ConeSpec>(r#"{"dim":2}"#).is_err());
    }
}
