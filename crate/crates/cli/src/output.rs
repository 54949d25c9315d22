//! Rendering of command results as JSON, plain text or CSV.

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// What one subcommand produced. `text` falls back to a `key: value`
/// listing of the JSON object; CSV is only offered for tabular results.
pub struct Output {
    pub json: Value,
    pub text: Option<String>,
    pub table: Option<Table>,
}

impl Output {
    pub fn json(json: Value) -> Self {
        Output {
            json,
            text: None,
            table: None,
        }
    }

    pub fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    pub fn with_table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some(Table { header, rows });
        self
    }

    pub fn render(&self, format: Format, command: &str) -> Result<String, String> {
        match format {
            Format::Json => Ok(format!("{}\n", self.json)),
            Format::Text => Ok(match &self.text {
                Some(t) => t.clone(),
                None => key_value_text(&self.json),
            }),
            Format::Csv => {
                let table = self
                    .table
                    .as_ref()
                    .ok_or_else(|| format!("--format csv is not available for `{command}`"))?;
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| e.to_string();
                w.write_record(&table.header).map_err(io)?;
                for row in &table.rows {
                    w.write_record(row).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| e.to_string())?;
                String::from_utf8(bytes).map_err(|e| e.to_string())
            }
        }
    }
}

fn key_value_text(json: &Value) -> String {
    let Value::Object(obj) = json else {
        return format!("{json}\n");
    };
    let mut out = String::new();
    for (k, v) in obj {
        let v = match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        out.push_str(&format!("{k}: {v}\n"));
    }
    out
}
