//! Reports in text and JSON form.
//!
//! A report is `{schema, command, inputs, trusted_order, result}`. Object
//! keys are kept sorted, so identical inputs give byte-identical output.

use serde_json::{Map, Value};

pub const SCHEMA: &str = "moore-report/1";

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub trusted_order: Option<usize>,
    pub result: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), inputs: Map::new(), trusted_order: None, result: Map::new() }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.into(), value.into());
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.result.insert(key.into(), value.into());
    }

    pub fn to_json(&self) -> Value {
        let mut top = Map::new();
        top.insert("schema".into(), SCHEMA.into());
        top.insert("command".into(), self.command.clone().into());
        top.insert("inputs".into(), Value::Object(self.inputs.clone()));
        top.insert("trusted_order".into(), self.trusted_order.map_or(Value::Null, Value::from));
        top.insert("result".into(), Value::Object(self.result.clone()));
        Value::Object(top)
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("reports serialize")
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (k, v) in &self.inputs {
            write_entry(&mut out, 0, k, v);
        }
        if let Some(n) = self.trusted_order {
            out.push_str(&format!("trusted order: {n}\n"));
        }
        out.push_str("result:\n");
        for (k, v) in &self.result {
            write_entry(&mut out, 1, k, v);
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("none".into()),
        _ => None,
    }
}

fn write_entry(out: &mut String, depth: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(depth);
    let label = key.replace('_', " ");
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{label}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{label}:\n"));
    match v {
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}  - {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}  -\n"));
                        if let Value::Object(m) = item {
                            for (k, v) in m {
                                write_entry(out, depth + 2, k, v);
                            }
                        }
                    }
                }
            }
        }
        Value::Object(m) => {
            for (k, v) in m {
                write_entry(out, depth + 1, k, v);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
