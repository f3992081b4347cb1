//! The output record every subcommand produces, and its three renderings.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// How a reported number was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Enumeration,
    ClosedFormula,
    Rank,
    RrChain,
    Serre,
    /// Echo of a parameter or row index.
    Input,
    /// Vanishing plurigenera of rational surfaces, assumed rather than computed.
    ScopeAxiom,
}

impl Provenance {
    fn as_str(self) -> &'static str {
        match self {
            Provenance::Enumeration => "enumeration",
            Provenance::ClosedFormula => "closed_formula",
            Provenance::Rank => "rank",
            Provenance::RrChain => "rr_chain",
            Provenance::Serre => "serre",
            Provenance::Input => "input",
            Provenance::ScopeAxiom => "scope_axiom",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    /// Keyed by result path; rows of a table share one `key[].column` entry.
    pub provenance: BTreeMap<String, Provenance>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            results: BTreeMap::new(),
            provenance: BTreeMap::new(),
            warnings: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    /// A non-numeric result (label, flag); needs no provenance.
    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn number(&mut self, key: &str, value: u64, provenance: Provenance) -> &mut Self {
        self.results.insert(key.to_string(), Value::from(value));
        self.provenance.insert(key.to_string(), provenance);
        self
    }

    /// Rows of a table. Every numeric column must be listed in `columns`.
    pub fn table(
        &mut self,
        key: &str,
        rows: Vec<Map<String, Value>>,
        columns: &[(&str, Provenance)],
    ) -> &mut Self {
        for (col, prov) in columns {
            self.provenance.insert(format!("{key}[].{col}"), *prov);
        }
        self.results
            .insert(key.to_string(), Value::Array(rows.into_iter().map(Value::Object).collect()));
        self
    }

    pub fn warn(&mut self, msg: impl Into<String>) -> &mut Self {
        self.warnings.push(msg.into());
        self
    }

    pub fn note(&mut self, msg: impl Into<String>) -> &mut Self {
        self.notes.push(msg.into());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("record serializes");
        s.push('\n');
        s
    }

    /// Flattened `key,value,provenance` lines in key order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("key,value,provenance\n");
        for (key, value) in &self.results {
            flatten(key, key, value, &mut |path, pattern, v| {
                let prov = self.provenance.get(pattern).map_or("", |p| p.as_str());
                writeln!(out, "{},{},{}", csv_field(path), csv_field(&scalar(v)), prov).unwrap();
            });
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.command).unwrap();
        for (k, v) in &self.parameters {
            writeln!(out, "  {k} = {}", scalar(v)).unwrap();
        }
        out.push('\n');

        let scalars: Vec<(&String, &Value)> =
            self.results.iter().filter(|(_, v)| !v.is_array()).collect();
        let width = scalars.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let value_width = scalars.iter().map(|(_, v)| scalar(v).len()).max().unwrap_or(0);
        for (k, v) in &scalars {
            let prov = self
                .provenance
                .get(k.as_str())
                .map(|p| format!("  [{}]", p.as_str()))
                .unwrap_or_default();
            let line = format!("{k:<width$}  {:<value_width$}{prov}", scalar(v));
            writeln!(out, "{}", line.trim_end()).unwrap();
        }
        for (k, v) in self.results.iter().filter(|(_, v)| v.is_array()) {
            out.push('\n');
            writeln!(out, "{k}:").unwrap();
            out.push_str(&render_rows(v.as_array().unwrap()));
        }
        for w in &self.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
        for n in &self.notes {
            writeln!(out, "note: {n}").unwrap();
        }
        out
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

/// Visits scalar leaves with their concrete path and their provenance
/// pattern (array indices collapsed to `[]`).
fn flatten(path: &str, pattern: &str, v: &Value, visit: &mut dyn FnMut(&str, &str, &Value)) {
    match v {
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), &format!("{pattern}[]"), item, visit);
            }
        }
        Value::Object(map) => {
            for (k, item) in map {
                flatten(&format!("{path}.{k}"), &format!("{pattern}.{k}"), item, visit);
            }
        }
        leaf => visit(path, pattern, leaf),
    }
}

/// Every numeric leaf's provenance pattern, for checking coverage.
#[cfg(test)]
pub fn numeric_paths(results: &BTreeMap<String, Value>) -> Vec<String> {
    let mut out = Vec::new();
    for (key, value) in results {
        flatten(key, key, value, &mut |_, pattern, v| {
            if v.is_number() {
                out.push(pattern.to_string());
            }
        });
    }
    out
}

fn render_rows(rows: &[Value]) -> String {
    if rows.is_empty() {
        return String::from("  (empty)\n");
    }
    let Some(first) = rows[0].as_object() else {
        return rows.iter().map(|v| format!("  {}\n", scalar(v))).collect();
    };
    let columns: Vec<&String> = first.keys().collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            columns
                .iter()
                .map(|c| r.get(c.as_str()).map(scalar).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap())
        .collect();
    let mut out = String::new();
    let line = |out: &mut String, items: Vec<&str>| {
        let parts: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect();
        writeln!(out, "  {}", parts.join("  ")).unwrap();
    };
    line(&mut out, columns.iter().map(|c| c.as_str()).collect());
    for row in &cells {
        line(&mut out, row.iter().map(String::as_str).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputRecord {
        let mut r = OutputRecord::new("demo");
        r.param("m", 4);
        r.number("big", u64::MAX, Provenance::Enumeration);
        r.put("flag", true);
        let mut row = Map::new();
        row.insert("k".into(), 1.into());
        row.insert("h".into(), 10.into());
        r.table("rows", vec![row], &[("k", Provenance::Input), ("h", Provenance::Serre)]);
        r
    }

    #[test]
    fn json_round_trips_and_keeps_full_integers() {
        let r = sample();
        let json = r.to_json();
        assert!(json.contains("18446744073709551615"));
        let back: OutputRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn csv_is_flat_and_ordered() {
        let csv = sample().to_csv();
        assert_eq!(
            csv,
            "key,value,provenance\n\
             big,18446744073709551615,enumeration\n\
             flag,true,\n\
             rows[0].k,1,input\n\
             rows[0].h,10,serre\n"
        );
    }

    #[test]
    fn numeric_paths_collapse_indices() {
        let r = sample();
        let paths = numeric_paths(&r.results);
        assert_eq!(paths, vec!["big", "rows[].k", "rows[].h"]);
        assert!(paths.iter().all(|p| r.provenance.contains_key(p)));
    }

    #[test]
    fn table_rendering_aligns_columns() {
        let t = sample().to_table();
        assert!(t.contains("big   18446744073709551615  [enumeration]"), "{t}");
        assert!(t.contains("  k   h\n"), "{t}");
    }
}
