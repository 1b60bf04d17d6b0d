//! Records and their table, JSON and CSV renderings.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Number, Value as Json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
    List(Vec<Value>),
    Object(Record),
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x as i64)
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(x: Option<T>) -> Self {
        x.map_or(Value::Null, Into::into)
    }
}

impl<T: Into<Value>> From<Vec<T>> for Value {
    fn from(xs: Vec<T>) -> Self {
        Value::List(xs.into_iter().map(Into::into).collect())
    }
}

/// Ordered key/value pairs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Record(pub Vec<(String, Value)>);

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(k, _)| k.as_str())
    }
}

/// Nine significant digits, trailing zeros dropped.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..=9).contains(&magnitude) {
        return format!("{x:.8e}");
    }
    let decimals = (8 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.') } else { &s };
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::Bool(b) => b.to_string(),
        Value::Int(i) => i.to_string(),
        Value::Float(x) => format_float(*x),
        Value::Text(s) => s.clone(),
        Value::List(xs) => xs.iter().map(scalar_text).collect::<Vec<_>>().join(" "),
        Value::Object(r) => r
            .0
            .iter()
            .map(|(k, v)| format!("{k}={}", scalar_text(v)))
            .collect::<Vec<_>>()
            .join(" "),
    }
}

fn to_json(v: &Value) -> Json {
    match v {
        Value::Null => Json::Null,
        Value::Bool(b) => Json::Bool(*b),
        Value::Int(i) => Json::from(*i),
        // the same rounded digits the table shows
        Value::Float(x) => format_float(*x)
            .parse::<f64>()
            .ok()
            .and_then(Number::from_f64)
            .map_or(Json::Null, Json::Number),
        Value::Text(s) => Json::String(s.clone()),
        Value::List(xs) => Json::Array(xs.iter().map(to_json).collect()),
        Value::Object(r) => record_json(r),
    }
}

fn record_json(r: &Record) -> Json {
    let mut map = Map::new();
    for (k, v) in &r.0 {
        map.insert(k.clone(), to_json(v));
    }
    Json::Object(map)
}

/// Renders `records` as one document. Multi-line text cells (graph files)
/// are only meaningful in JSON; tables and CSV keep them verbatim.
pub fn render(format: Format, records: &[Record]) -> String {
    match format {
        Format::Json => {
            let doc = Json::Array(records.iter().map(record_json).collect());
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Csv => render_csv(records),
        Format::Table => render_table(records),
    }
}

fn header(records: &[Record]) -> Vec<String> {
    let mut keys: Vec<String> = Vec::new();
    for r in records {
        for k in r.keys() {
            if !keys.iter().any(|x| x == k) {
                keys.push(k.to_string());
            }
        }
    }
    keys
}

fn cell(r: &Record, key: &str) -> String {
    r.0.iter().find(|(k, _)| k == key).map_or(String::new(), |(_, v)| scalar_text(v))
}

fn render_csv(records: &[Record]) -> String {
    let keys = header(records);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&keys).expect("in-memory write");
    for r in records {
        w.write_record(keys.iter().map(|k| cell(r, k))).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn render_table(records: &[Record]) -> String {
    let keys = header(records);
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            keys.iter()
                .map(|k| match cell(r, k) {
                    c if c.is_empty() => "-".to_string(),
                    c => c.trim_end().replace('\n', " / "),
                })
                .collect()
        })
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| rows.iter().map(|r| r[i].chars().count()).chain([k.len()]).max().unwrap())
        .collect();
    let mut out = String::new();
    let line = |out: &mut String, cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(&mut out, &keys);
    for r in &rows {
        line(&mut out, r);
    }
    out
}
