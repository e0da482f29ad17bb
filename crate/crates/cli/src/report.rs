//! Tabular reports and their CSV / JSON renderings.
//!
//! A report is a list of named sections, each a table with fixed columns.
//! CSV writes floats with 17 significant digits; JSON writes the shortest
//! decimal that round-trips. Both parse back to the same `f64`.

use serde_json::{Map, Value as Json};

use crate::config::Format;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_owned())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Float(v) => format_float(*v),
            Value::Bool(v) => v.to_string(),
            Value::Text(v) => v.clone(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Int(v) => Json::from(*v),
            // Non-finite floats become null.
            Value::Float(v) => serde_json::Number::from_f64(*v).map_or(Json::Null, Json::Number),
            Value::Bool(v) => Json::Bool(*v),
            Value::Text(v) => Json::String(v.clone()),
        }
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string().to_lowercase()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Section {
    pub fn new(name: &'static str, columns: &[&'static str]) -> Self {
        Self {
            name,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width in section {}",
            self.name
        );
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => Ok(self.to_csv()),
            Format::Json => self.to_json(),
        }
    }

    /// A single-section report is a plain CSV table. Otherwise each section
    /// is introduced by a `# name` line and sections are separated by a
    /// blank line.
    pub fn to_csv(&self) -> String {
        let titled = self.sections.len() > 1;
        let mut out = String::new();
        for (i, section) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            if titled {
                out.push_str("# ");
                out.push_str(section.name);
                out.push('\n');
            }
            out.push_str(&section.columns.join(","));
            out.push('\n');
            for row in &section.rows {
                let cells: Vec<String> = row.iter().map(Value::csv).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        out
    }

    /// `{"command": …, "<section>": [{"<column>": …}, …], …}`.
    pub fn to_json(&self) -> Result<String> {
        let mut root = Map::new();
        root.insert("command".into(), Json::String(self.command.into()));
        for section in &self.sections {
            let rows = section
                .rows
                .iter()
                .map(|row| {
                    let object: Map<String, Json> = section
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| ((*c).to_owned(), v.json()))
                        .collect();
                    Json::Object(object)
                })
                .collect();
            root.insert(section.name.into(), Json::Array(rows));
        }
        let mut text = serde_json::to_string_pretty(&Json::Object(root))?;
        text.push('\n');
        Ok(text)
    }
}
