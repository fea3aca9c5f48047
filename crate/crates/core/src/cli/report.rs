//! Structured command output.

use serde::Serialize;
use serde_json::Value;
use std::fmt::Write;

pub const REPORT_SCHEMA: &str = "tnd-report/1";
pub const VALIDATION_SCHEMA: &str = "tnd-validation/1";

/// One computed quantity and the operation that produced it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Field {
    pub name: String,
    pub value: Value,
    pub route: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub catalog_version: u32,
    pub command: String,
    pub target: String,
    /// Absent for bare d0-calculus expressions.
    pub prime: Option<u32>,
    pub fields: Vec<Field>,
}

impl Report {
    pub fn new(catalog_version: u32, command: &str, target: &str, prime: Option<u32>) -> Self {
        Report {
            schema: REPORT_SCHEMA,
            catalog_version,
            command: command.into(),
            target: target.into(),
            prime,
            fields: Vec::new(),
        }
    }

    pub fn push(&mut self, name: &str, value: impl Serialize, route: &str) {
        let value = serde_json::to_value(value).expect("report values serialize");
        self.fields.push(Field { name: name.into(), value, route: route.into() });
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.fields.iter().find(|f| f.name == name).map(|f| &f.value)
    }

    pub fn render_text(&self) -> String {
        let prime = self.prime.map(|p| format!("p = {p}, ")).unwrap_or_default();
        let mut out = format!("{} {} ({prime}catalog v{})\n", self.command, self.target, self.catalog_version);
        let width = self.fields.iter().map(|f| f.name.len()).max().unwrap_or(0);
        for f in &self.fields {
            let _ = writeln!(out, "  {:width$}  {}  [{}]", f.name, plain(&f.value), f.route);
        }
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

/// JSON values without quotes around strings.
pub fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "n/a".into(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(plain).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryValidation {
    pub id: String,
    pub checks: Vec<Check>,
}

impl EntryValidation {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub schema: &'static str,
    pub catalog_version: u32,
    pub thorough: bool,
    pub entries: Vec<EntryValidation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(EntryValidation::passed)
    }

    pub fn failures(&self) -> Vec<(&str, &Check)> {
        self.entries
            .iter()
            .flat_map(|e| e.checks.iter().filter(|c| !c.passed).map(move |c| (e.id.as_str(), c)))
            .collect()
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("validate-catalog (catalog v{}{})\n", self.catalog_version, if self.thorough { ", thorough" } else { "" });
        for e in &self.entries {
            let _ = writeln!(out, "{}: {}", e.id, if e.passed() { "ok" } else { "FAIL" });
            for c in &e.checks {
                let _ = writeln!(out, "  {} {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
            }
        }
        let failed = self.failures().len();
        let _ = writeln!(out, "{} entries, {failed} failed checks", self.entries.len());
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}
