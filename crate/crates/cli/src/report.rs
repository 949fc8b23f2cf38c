use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use prymcheck::matrix::Matrix;
use prymcheck::pt_engine::CorrMatrix;
use serde::{Deserialize, Serialize};

use crate::config::{Command, RunConfig};

pub const SCHEMA_VERSION: &str = "1";
pub const TOOL_NAME: &str = "prymcheck";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

impl Default for Tool {
    fn default() -> Self {
        Self {
            name: TOOL_NAME.into(),
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

/// One named check. Exact values are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default)]
    pub values: BTreeMap<String, String>,
    #[serde(default)]
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Self {
            name: name.into(),
            passed,
            values: BTreeMap::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn value(mut self, key: &str, v: impl ToString) -> Self {
        self.values.insert(key.into(), v.to_string());
        self
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witnesses.push(w.into());
        self
    }

    pub fn witnesses<I: IntoIterator<Item = String>>(mut self, ws: I) -> Self {
        self.witnesses.extend(ws);
        self
    }

    /// A failed check recording an engine error.
    pub fn error(name: impl Into<String>, e: impl std::fmt::Display) -> Self {
        Self::new(name, false).witness(format!("error: {e}"))
    }
}

/// A labelled integer matrix, row-major, with row sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSection {
    pub name: String,
    pub labels: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub row_sums: Vec<String>,
}

impl MatrixSection {
    pub fn new(name: impl Into<String>, labels: Vec<String>, m: &Matrix<BigInt>) -> Self {
        let rows = (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect())
            .collect();
        Self {
            name: name.into(),
            labels,
            rows,
            row_sums: m.row_sums().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_corr(name: impl Into<String>, c: &CorrMatrix) -> Self {
        Self::new(name, c.labels.clone(), &c.matrix)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema_version: String,
    pub tool: Tool,
    pub command: Command,
    pub input: RunConfig,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub values: BTreeMap<String, String>,
    pub matrices: Vec<MatrixSection>,
    /// Hypotheses that the checks take for granted.
    pub assumptions: Vec<String>,
    pub scope: String,
    /// The only field that may differ between runs on the same input.
    pub timing: Timing,
}

impl Report {
    pub fn new(command: Command, input: &RunConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            tool: Tool::default(),
            command,
            input: input.echo(),
            passed: false,
            checks: Vec::new(),
            values: BTreeMap::new(),
            matrices: Vec::new(),
            assumptions: Vec::new(),
            scope: prymcheck::pt_engine::SCOPE_NOTE.into(),
            timing: Timing::default(),
        }
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn value(&mut self, key: &str, v: impl ToString) {
        self.values.insert(key.into(), v.to_string());
    }

    /// Sets `passed` from the checks; a report without checks fails.
    pub fn finish(mut self) -> Self {
        self.passed = !self.checks.is_empty() && self.checks.iter().all(|c| c.passed);
        self
    }

    pub fn without_timing(&self) -> Self {
        Self {
            timing: Timing::default(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Row-major dump: a header, one line per row with its label and row sum.
pub fn emit_matrix(m: &MatrixSection) -> String {
    let n = m.rows.len();
    let cols = m.rows.first().map_or(0, Vec::len);
    let label_w = m.labels.iter().map(String::len).max().unwrap_or(0);
    let cell_w = m.rows.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = format!("# {} ({n}x{cols}), column x lists D(x)\n", m.name);
    for (r, row) in m.rows.iter().enumerate() {
        let label = m.labels.get(r).map_or("", String::as_str);
        let _ = write!(out, "{label:<label_w$} |");
        for v in row {
            let _ = write!(out, " {v:>cell_w$}");
        }
        let sum = m.row_sums.get(r).map_or("", String::as_str);
        let _ = writeln!(out, " | {sum}");
    }
    out
}

/// Human-readable summary; matrices only when `verbose`.
pub fn render_text(r: &Report, verbose: bool) -> String {
    let mut out = format!(
        "{} {} {} (schema {})\n",
        r.tool.name, r.tool.version, r.command, r.schema_version
    );
    for c in &r.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        let _ = write!(out, "{mark}  {}", c.name);
        if !c.values.is_empty() {
            let vals: Vec<String> = c.values.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            let _ = write!(out, "  [{}]", vals.join(", "));
        }
        out.push('\n');
        if verbose || !c.passed {
            for w in &c.witnesses {
                let _ = writeln!(out, "      {w}");
            }
        }
    }
    if !r.values.is_empty() {
        out.push_str("values:\n");
        for (k, v) in &r.values {
            let _ = writeln!(out, "  {k} = {v}");
        }
    }
    for a in &r.assumptions {
        let _ = writeln!(out, "assumes: {a}");
    }
    if verbose {
        for m in &r.matrices {
            out.push_str(&emit_matrix(m));
        }
    }
    let failed = r.checks.iter().filter(|c| !c.passed).count();
    let _ = writeln!(
        out,
        "result: {} ({} checks, {failed} failed, {} ms)",
        if r.passed { "PASS" } else { "FAIL" },
        r.checks.len(),
        r.timing.elapsed_ms
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_dump() {
        let m = MatrixSection::new("id", vec!["a".into(), "b".into()], &Matrix::identity(2));
        assert_eq!(
            emit_matrix(&m),
            "# id (2x2), column x lists D(x)\na | 1 0 | 1\nb | 0 1 | 1\n"
        );
    }

    #[test]
    fn empty_report_fails() {
        let r = Report::new(Command::Verify, &RunConfig::default()).finish();
        assert!(!r.passed);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
