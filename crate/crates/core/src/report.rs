//! Tabular reports rendered as JSON, CSV or markdown.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Md,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Md),
            _ => Err(Error::Invalid(format!("unknown format '{s}' (json|csv|md)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub ok: bool,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Report {
            command: command.to_string(),
            ok: true,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
            Format::Md => Ok(self.markdown()),
        }
    }

    fn json(&self) -> Result<String> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> =
                    self.columns.iter().cloned().zip(r.iter().cloned()).collect();
                Value::Object(m)
            })
            .collect();
        let mut out = Map::new();
        out.insert("command".into(), self.command.clone().into());
        out.insert("ok".into(), self.ok.into());
        out.insert("rows".into(), Value::Array(rows));
        if !self.notes.is_empty() {
            out.insert("notes".into(), self.notes.clone().into());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(out))?;
        s.push('\n');
        Ok(s)
    }

    fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
        w.write_record(&self.columns).map_err(io)?;
        for r in &self.rows {
            w.write_record(r.iter().map(plain)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    fn markdown(&self) -> String {
        let mut s = format!("## {}\n\n", self.command);
        s += &format!("| {} |\n", self.columns.join(" | "));
        s += &format!("|{}\n", "---|".repeat(self.columns.len()));
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|v| short(v).replace('|', "\\|")).collect();
            s += &format!("| {} |\n", cells.join(" | "));
        }
        for n in &self.notes {
            s += &format!("\n- {n}");
        }
        if !self.notes.is_empty() {
            s.push('\n');
        }
        s += &format!("\n**{}**\n", if self.ok { "OK" } else { "FAILED" });
        s
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Human-sized rendering of numbers for markdown.
fn short(v: &Value) -> String {
    match v.as_f64() {
        Some(x) if v.is_f64() && x != 0.0 && x.abs() < 1e-4 => format!("{x:.2e}"),
        Some(x) if v.is_f64() => {
            let s = format!("{x:.6}");
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        }
        _ => plain(v),
    }
}

/// JSON number for a float, or null when it is not finite.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        let mut r = Report::new("evaluate", &["set", "score", "note"]);
        r.push(vec![json!("A"), num(195.0), json!("a, \"quoted\" note")]);
        r.push(vec![json!("B"), num(1.0 / 3.0), Value::Null]);
        r.notes.push("two rows".into());
        r
    }

    #[test]
    fn renders_all_formats() {
        let r = sample();
        let j: Value = serde_json::from_str(&r.render(Format::Json).unwrap()).unwrap();
        assert_eq!(j["rows"][0]["score"], json!(195.0));
        let c = r.render(Format::Csv).unwrap();
        assert!(c.starts_with("set,score,note\n"));
        assert!(c.contains("\"a, \"\"quoted\"\" note\""));
        let m = r.render(Format::Md).unwrap();
        assert!(m.contains("| B | 0.333333 |  |"));
        assert!(m.contains("**OK**"));
    }

    #[test]
    fn rendering_is_deterministic() {
        assert_eq!(sample().render(Format::Json).unwrap(), sample().render(Format::Json).unwrap());
    }
}
