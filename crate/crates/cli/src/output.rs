use qgvc::ir::ResourceReport;
use serde_json::{json, Value};

use crate::Format;

/// Named integer columns rendered as an aligned table, one CSV row or a JSON object.
pub struct Record {
    pub fields: Vec<(&'static str, Value)>,
}

impl Record {
    pub fn new() -> Self {
        Record { fields: Vec::new() }
    }

    pub fn with(mut self, name: &'static str, value: impl Into<Value>) -> Self {
        self.fields.push((name, value.into()));
        self
    }

    pub fn resources(self, r: &ResourceReport) -> Self {
        self.with("gcx", r.gcx)
            .with("rz", r.rz)
            .with("x", r.x)
            .with("h", r.h)
            .with("depth", r.depth)
            .with("wires", r.wires)
            .with("aux_wires", r.aux_wires)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let map: serde_json::Map<String, Value> =
                    self.fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
                format!("{}\n", Value::Object(map))
            }
            Format::Csv => {
                let head: Vec<&str> = self.fields.iter().map(|(k, _)| *k).collect();
                let row: Vec<String> = self.fields.iter().map(|(_, v)| plain(v)).collect();
                format!("{}\n{}\n", head.join(","), row.join(","))
            }
            Format::Text => {
                let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                self.fields.iter().map(|(k, v)| format!("{k:<width$}  {}\n", plain(v))).collect()
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// A (t, value) series.
pub fn series(format: Format, label: &str, times: &[f64], values: &[f64]) -> String {
    match format {
        Format::Json => format!("{}\n", json!({ "observable": label, "t": times, "value": values })),
        Format::Csv => {
            let mut s = String::from("t,value\n");
            for (t, v) in times.iter().zip(values) {
                s.push_str(&format!("{t},{v}\n"));
            }
            s
        }
        Format::Text => {
            let mut s = format!("{:>8}  {label}\n", "t");
            for (t, v) in times.iter().zip(values) {
                s.push_str(&format!("{t:>8.4}  {v:.10}\n"));
            }
            s
        }
    }
}
