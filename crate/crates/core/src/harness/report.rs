//! Run reports: tagged scalar outputs, tables, truncation diagnostics and warnings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::spectra::ModeSup;

/// How a number was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Oracle,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub name: String,
    pub value: f64,
    pub method: Method,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub method: Method,
}

/// Values of a sup-type quantity at both truncation levels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationDiagnostic {
    pub quantity: String,
    pub value: f64,
    pub coarse_value: f64,
    pub n_max: usize,
    pub n_coarse: usize,
    pub argmax_mode: usize,
    pub growth: f64,
    pub divergent: bool,
}

impl TruncationDiagnostic {
    pub fn from_sup(quantity: &str, sup: &ModeSup) -> Self {
        TruncationDiagnostic {
            quantity: quantity.to_string(),
            value: sup.value,
            coarse_value: sup.coarse_value,
            n_max: sup.n_max,
            n_coarse: sup.n_coarse,
            argmax_mode: sup.argmax,
            growth: sup.growth(),
            divergent: sup.is_divergent(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of the canonical JSON form of `inputs`.
    pub inputs_digest: String,
    pub inputs: Value,
    pub outputs: Vec<Quantity>,
    /// Non-numeric results (verdicts, indices, labels).
    pub facts: BTreeMap<String, Value>,
    pub tables: Vec<Table>,
    pub truncation: Vec<TruncationDiagnostic>,
    pub warnings: Vec<String>,
}

pub fn digest(inputs: &Value) -> String {
    let canonical = serde_json::to_string(inputs).expect("JSON values always serialize");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

impl RunReport {
    pub fn new(command: &str, inputs: Value) -> Self {
        RunReport { command: command.to_string(), inputs_digest: digest(&inputs), inputs, ..Default::default() }
    }

    pub fn push(&mut self, name: &str, value: f64, method: Method) -> &mut Self {
        self.outputs.push(Quantity { name: name.to_string(), value, method });
        self
    }

    pub fn fact(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.facts.insert(name.to_string(), value.into());
        self
    }

    pub fn table(&mut self, name: &str, columns: &[&str], rows: Vec<Vec<f64>>, method: Method) -> &mut Self {
        self.tables.push(Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
            method,
        });
        self
    }

    pub fn truncation(&mut self, quantity: &str, sup: &ModeSup) -> &mut Self {
        let diag = TruncationDiagnostic::from_sup(quantity, sup);
        if diag.divergent {
            self.warnings.push(format!(
                "{quantity}: value grows by a factor {} between n = {} and n = {}; treated as divergent",
                diag.growth, diag.n_coarse, diag.n_max
            ));
        }
        self.truncation.push(diag);
        self
    }

    pub fn warn(&mut self, msg: impl Into<String>) -> &mut Self {
        self.warnings.push(msg.into());
        self
    }

    /// Looks up a scalar output by name.
    pub fn get(&self, name: &str) -> Option<f64> {
        self.outputs.iter().find(|q| q.name == name).map(|q| q.value)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Tables as CSV blocks, then scalar outputs as `name,value,method` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            let _ = writeln!(out, "# {} ({})", t.name, t.method.tag());
            let _ = writeln!(out, "{}", t.columns.join(","));
            for row in &t.rows {
                let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
                let _ = writeln!(out, "{}", cells.join(","));
            }
            out.push('\n');
        }
        let _ = writeln!(out, "name,value,method");
        for q in &self.outputs {
            let _ = writeln!(out, "{},{},{}", q.name, q.value, q.method.tag());
        }
        for d in &self.truncation {
            let _ = writeln!(out, "{}@n_max={},{},closed-form", d.quantity, d.n_max, d.value);
            let _ = writeln!(out, "{}@n_coarse={},{},closed-form", d.quantity, d.n_coarse, d.coarse_value);
        }
        out
    }
}
