//! Text and JSON renderings of analysis results and coverage matrices.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::checkers::Diagnostic;
use crate::coverage::{CoverageMatrix, GapReport, Ruleset};
use crate::frontend::SourceLocation;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExitStatus {
    Clean,
    FindingsPresent,
    UsageError,
    InputError,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Clean => 0,
            ExitStatus::FindingsPresent => 1,
            ExitStatus::UsageError => 2,
            ExitStatus::InputError => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunSummary {
    pub files_analyzed: usize,
    pub diagnostics_total: usize,
    pub diagnostics_by_guideline: BTreeMap<String, usize>,
    pub suppressed_count: usize,
    /// `FindingsPresent` exactly when some diagnostic is not suppressed.
    pub exit_status: ExitStatus,
}

impl RunSummary {
    pub fn new(files_analyzed: usize, diags: &[Diagnostic]) -> Self {
        let mut by = BTreeMap::new();
        for d in diags {
            *by.entry(d.guideline.id.to_string()).or_insert(0) += 1;
        }
        let suppressed_count = diags.iter().filter(|d| d.suppressed).count();
        let exit_status =
            if diags.len() == suppressed_count { ExitStatus::Clean } else { ExitStatus::FindingsPresent };
        RunSummary { files_analyzed, diagnostics_total: diags.len(), diagnostics_by_guideline: by, suppressed_count, exit_status }
    }

    pub fn active_count(&self) -> usize {
        self.diagnostics_total - self.suppressed_count
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonLocation {
    pub file: String,
    pub line: u32,
    pub column: u32,
}

impl From<&SourceLocation> for JsonLocation {
    fn from(l: &SourceLocation) -> Self {
        JsonLocation { file: l.file.to_string(), line: l.line, column: l.column }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonFinding {
    pub guideline: String,
    pub category: String,
    pub file: String,
    pub line: u32,
    pub column: u32,
    pub message: String,
    pub suppressed: bool,
    pub evidence: Vec<JsonLocation>,
}

impl From<&Diagnostic> for JsonFinding {
    fn from(d: &Diagnostic) -> Self {
        JsonFinding {
            guideline: d.guideline.id.to_string(),
            category: d.guideline.category.as_str().to_string(),
            file: d.loc.file.to_string(),
            line: d.loc.line,
            column: d.loc.column,
            message: d.message.clone(),
            suppressed: d.suppressed,
            evidence: d.evidence.iter().map(JsonLocation::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub schema: u32,
    pub findings: Vec<JsonFinding>,
    pub summary: RunSummary,
}

pub fn format_diagnostic(d: &Diagnostic) -> String {
    format!(
        "{}{}: [{}] {}: {}",
        if d.suppressed { "suppressed: " } else { "" },
        d.loc,
        d.guideline.id,
        d.guideline.category,
        d.message
    )
}

/// One line per diagnostic followed by a summary line.
pub fn render_text(diags: &[Diagnostic]) -> String {
    let mut out = String::new();
    for d in diags {
        out.push_str(&format_diagnostic(d));
        out.push('\n');
    }
    let suppressed = diags.iter().filter(|d| d.suppressed).count();
    let active = diags.len() - suppressed;
    if suppressed == 0 {
        let _ = writeln!(out, "{active} findings");
    } else {
        let _ = writeln!(out, "{active} findings, {suppressed} suppressed");
    }
    out
}

pub fn json_report(diags: &[Diagnostic], summary: &RunSummary) -> JsonReport {
    JsonReport { schema: SCHEMA_VERSION, findings: diags.iter().map(JsonFinding::from).collect(), summary: summary.clone() }
}

/// Pretty-printed JSON with keys in declaration order, newline-terminated.
pub fn render_json(diags: &[Diagnostic], summary: &RunSummary) -> String {
    let mut s = serde_json::to_string_pretty(&json_report(diags, summary)).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageDocument {
    pub schema: u32,
    pub ruleset: Ruleset,
    pub matrices: Vec<CoverageMatrix>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gaps: Option<GapReport>,
}

pub fn render_coverage_json(ruleset: Ruleset, matrices: &[CoverageMatrix], gaps: Option<&GapReport>) -> String {
    let doc = CoverageDocument { schema: SCHEMA_VERSION, ruleset, matrices: matrices.to_vec(), gaps: gaps.cloned() };
    let mut s = serde_json::to_string_pretty(&doc).expect("coverage serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkers::guideline;

    fn diag(id: &str, line: u32, suppressed: bool) -> Diagnostic {
        let mut d = Diagnostic::new(guideline(id).unwrap(), SourceLocation::new("src/a.c".into(), line, 7), "message text");
        d.suppressed = suppressed;
        d
    }

    #[test]
    fn empty_text_is_summary_only() {
        assert_eq!(render_text(&[]), "0 findings\n");
    }

    #[test]
    fn one_line_per_finding() {
        let t = render_text(&[diag("SEC.string.1", 4, false)]);
        assert_eq!(t, "src/a.c:4:7: [SEC.string.1] mandatory: message text\n1 findings\n");
        let s = render_text(&[diag("SEC.memcmp.1", 2, true)]);
        assert!(s.starts_with("suppressed: src/a.c:2:7: [SEC.memcmp.1] required: "));
        assert!(s.ends_with("0 findings, 1 suppressed\n"));
    }

    #[test]
    fn summary_counts() {
        let diags = [diag("SEC.memcmp.1", 2, true)];
        let s = RunSummary::new(1, &diags);
        assert_eq!(s.suppressed_count, 1);
        assert_eq!(s.exit_status, ExitStatus::Clean);
        let empty = RunSummary::new(0, &[]);
        let doc: JsonReport = serde_json::from_str(&render_json(&[], &empty)).unwrap();
        assert!(doc.findings.is_empty());
        assert_eq!(doc.summary.diagnostics_total, 0);
    }

    #[test]
    fn json_key_order_is_fixed() {
        let diags = [diag("SEC.eof.1", 3, false)];
        let json = render_json(&diags, &RunSummary::new(1, &diags));
        let pos = |k: &str| json.find(&format!("\"{k}\"")).unwrap();
        assert!(pos("schema") < pos("findings") && pos("findings") < pos("summary"));
        let keys = ["guideline", "category", "file", "line", "column", "message", "suppressed", "evidence"];
        assert!(keys.windows(2).all(|w| pos(w[0]) < pos(w[1])));
        let back: JsonReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, json_report(&diags, &RunSummary::new(1, &diags)));
    }
}
