use chevbounds::bounds::ThresholdTag;
use chevbounds::{OutputFormat, SCHEMA};
use serde_json::{json, Value};

use crate::EXIT_OK;

/// A finished subcommand result, renderable in every output format.
pub(crate) struct Report {
    command: &'static str,
    value: Value,
    text: String,
    tags: Vec<ThresholdTag>,
    pub(crate) exit: i32,
}

impl Report {
    pub(crate) fn new(command: &'static str, value: Value, text: String, tags: Vec<ThresholdTag>) -> Self {
        Report { command, value, text, tags, exit: EXIT_OK }
    }

    fn document(&self) -> Value {
        let tags: Vec<&str> = self.tags.iter().map(|t| t.as_str()).collect();
        json!({ "schema": SCHEMA, "command": self.command, "tags": tags, "result": self.value })
    }

    pub(crate) fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => {
                let tags: Vec<&str> = self.tags.iter().map(|t| t.as_str()).collect();
                let tags = if tags.is_empty() { "none".to_string() } else { tags.join(", ") };
                format!("{}tag: {tags}\n", self.text)
            }
            OutputFormat::Json => serde_json::to_string_pretty(&self.document()).expect("values serialize") + "\n",
            OutputFormat::Csv => {
                let mut rows = Vec::new();
                flatten("", &self.document(), &mut rows);
                let mut out = String::from("field,value\n");
                for (k, v) in rows {
                    out.push_str(&format!("{},{}\n", csv_field(&k), csv_field(&v)));
                }
                out
            }
        }
    }
}

/// Leaf values keyed by their dotted path; array elements use their index.
fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&join(k), v, rows);
            }
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            let sep = if items.iter().any(Value::is_string) { "; " } else { " " };
            rows.push((prefix.to_string(), parts.join(sep)));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), v, rows);
            }
        }
        other => rows.push((prefix.to_string(), scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
