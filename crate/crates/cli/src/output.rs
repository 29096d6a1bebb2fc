//! Output records and their JSON, CSV and text renderings.
//!
//! Reals are written with 17 significant digits so that every value read
//! back parses to the same `f64`. Maps are ordered by key.

use std::collections::BTreeMap;
use std::str::FromStr;

use clap::ValueEnum;
use serde_json::{Map, Number, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Real(x)
    }
}
impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}
impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::Int(n as u64)
    }
}
impl From<u32> for Value {
    fn from(n: u32) -> Self {
        Value::Int(n.into())
    }
}
impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}
impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

/// `x` with 17 significant digits, or `nan` / `inf` / `-inf`.
pub fn real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

impl Value {
    fn plain(&self) -> String {
        match self {
            Value::Real(x) => real(*x),
            Value::Int(n) => n.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Real(x) if x.is_finite() => {
                Json::Number(Number::from_str(&real(*x)).expect("formatted real is a JSON number"))
            }
            Value::Real(_) => Json::Null,
            Value::Int(n) => Json::from(*n),
            Value::Bool(b) => Json::Bool(*b),
            Value::Text(s) => Json::String(s.clone()),
        }
    }
}

/// Result of one command invocation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub error_bounds: BTreeMap<String, f64>,
    pub pass: Option<bool>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            ..Self::default()
        }
    }

    pub fn input(&mut self, name: &str, v: impl Into<Value>) -> &mut Self {
        self.inputs.insert(name.to_string(), v.into());
        self
    }

    pub fn output(&mut self, name: &str, v: impl Into<Value>) -> &mut Self {
        self.outputs.insert(name.to_string(), v.into());
        self
    }

    pub fn bound(&mut self, name: &str, e: f64) -> &mut Self {
        self.error_bounds.insert(name.to_string(), e);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    fn to_json(&self) -> String {
        let section = |m: &BTreeMap<String, Value>| {
            Json::Object(
                m.iter()
                    .map(|(k, v)| (k.clone(), v.json()))
                    .collect::<Map<_, _>>(),
            )
        };
        let bounds = self
            .error_bounds
            .iter()
            .map(|(k, &e)| (k.clone(), Value::Real(e).json()))
            .collect::<Map<_, _>>();
        let mut root = Map::new();
        root.insert("command".into(), Json::String(self.command.clone()));
        root.insert("inputs".into(), section(&self.inputs));
        root.insert("outputs".into(), section(&self.outputs));
        root.insert("error_bounds".into(), Json::Object(bounds));
        root.insert("pass".into(), self.pass.map_or(Json::Null, Json::Bool));
        let mut s =
            serde_json::to_string_pretty(&Json::Object(root)).expect("JSON tree serialises");
        s.push('\n');
        s
    }

    fn rows(&self) -> Vec<[String; 3]> {
        let mut rows = vec![["command".into(), String::new(), self.command.clone()]];
        for (section, map) in [("input", &self.inputs), ("output", &self.outputs)] {
            for (k, v) in map {
                rows.push([section.into(), k.clone(), v.plain()]);
            }
        }
        for (k, e) in &self.error_bounds {
            rows.push(["error_bound".into(), k.clone(), real(*e)]);
        }
        if let Some(pass) = self.pass {
            rows.push(["pass".into(), String::new(), pass.to_string()]);
        }
        rows
    }

    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["section", "name", "value"])
            .expect("in-memory write");
        for row in self.rows() {
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
    }

    fn to_text(&self) -> String {
        let mut s = String::new();
        for [section, name, value] in self.rows() {
            if name.is_empty() {
                s.push_str(&format!("{section}: {value}\n"));
            } else {
                s.push_str(&format!("{section} {name} = {value}\n"));
            }
        }
        s
    }
}
