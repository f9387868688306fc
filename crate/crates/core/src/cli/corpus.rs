//! Expected-findings harness for annotated fixtures.
//!
//! A fixture marks each expected finding with `// EXPECT: <id>` on the line
//! where it should be reported, and each expected suppressed finding with
//! `// EXPECT-SUPPRESSED: <id>`. `// CORPUS-PROFILE: <profile>` selects the
//! profile the fixture is checked under.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::checkers::{analyze_source, AnalysisOptions, Diagnostic, Profile};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expectations {
    pub profile: Option<Profile>,
    /// (guideline, line) → count.
    pub active: BTreeMap<(String, u32), usize>,
    pub suppressed: BTreeMap<(String, u32), usize>,
}

fn ids_after<'a>(line: &'a str, marker: &str) -> Vec<&'a str> {
    let mut out = Vec::new();
    let mut rest = line;
    while let Some(pos) = rest.find(marker) {
        let after = &rest[pos + marker.len()..];
        let end = after.find("//").or_else(|| after.find("*/")).unwrap_or(after.len());
        out.extend(after[..end].split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()));
        rest = &after[end..];
    }
    out
}

pub fn parse_expectations(source: &str) -> Result<Expectations, String> {
    let mut e = Expectations::default();
    for (i, line) in source.lines().enumerate() {
        let n = i as u32 + 1;
        for id in ids_after(line, "EXPECT:") {
            *e.active.entry((id.to_string(), n)).or_insert(0) += 1;
        }
        for id in ids_after(line, "EXPECT-SUPPRESSED:") {
            *e.suppressed.entry((id.to_string(), n)).or_insert(0) += 1;
        }
        if let Some(p) = ids_after(line, "CORPUS-PROFILE:").first() {
            e.profile = Some(p.parse()?);
        }
    }
    Ok(e)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    Missing { guideline: String, line: u32, suppressed: bool },
    Unexpected { guideline: String, line: u32, suppressed: bool, message: String },
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = |s: &bool| if *s { " (suppressed)" } else { "" };
        match self {
            Mismatch::Missing { guideline, line, suppressed } => {
                write!(f, "missing {guideline} at line {line}{}", tag(suppressed))
            }
            Mismatch::Unexpected { guideline, line, suppressed, message } => {
                write!(f, "unexpected {guideline} at line {line}{}: {message}", tag(suppressed))
            }
        }
    }
}

fn diff(expected: &BTreeMap<(String, u32), usize>, got: &[&Diagnostic], suppressed: bool, out: &mut Vec<Mismatch>) {
    let mut remaining = expected.clone();
    for d in got {
        let key = (d.guideline.id.to_string(), d.loc.line);
        match remaining.get_mut(&key) {
            Some(n) if *n > 0 => *n -= 1,
            _ => out.push(Mismatch::Unexpected {
                guideline: key.0,
                line: key.1,
                suppressed,
                message: d.message.clone(),
            }),
        }
    }
    for ((g, line), n) in remaining {
        for _ in 0..n {
            out.push(Mismatch::Missing { guideline: g.clone(), line, suppressed });
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileOutcome {
    pub path: String,
    pub profile: Profile,
    pub mismatches: Vec<Mismatch>,
    pub error: Option<String>,
    pub diagnostics: Vec<Diagnostic>,
}

impl FileOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.mismatches.is_empty()
    }
}

/// Checks one fixture against its annotations.
pub fn check_fixture(path: &str, source: &str) -> FileOutcome {
    let fail = |profile, error: String| FileOutcome {
        path: path.to_string(),
        profile,
        mismatches: Vec::new(),
        error: Some(error),
        diagnostics: Vec::new(),
    };
    let exp = match parse_expectations(source) {
        Ok(e) => e,
        Err(e) => return fail(Profile::Security, e),
    };
    let profile = exp.profile.unwrap_or(Profile::Security);
    let analysis = match analyze_source(path, source, &AnalysisOptions::with_profile(profile)) {
        Ok(a) => a,
        Err(e) => return fail(profile, e.to_string()),
    };
    let mut mismatches = Vec::new();
    let (sup, act): (Vec<&Diagnostic>, Vec<&Diagnostic>) = analysis.diagnostics.iter().partition(|d| d.suppressed);
    diff(&exp.active, &act, false, &mut mismatches);
    diff(&exp.suppressed, &sup, true, &mut mismatches);
    FileOutcome { path: path.to_string(), profile, mismatches, error: None, diagnostics: analysis.diagnostics }
}

/// Per-file PASS/FAIL lines with indented mismatches, then `N/M PASS`.
pub fn render_outcomes(outcomes: &[FileOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        let _ = writeln!(out, "{} {}", if o.passed() { "PASS" } else { "FAIL" }, o.path);
        if let Some(e) = &o.error {
            let _ = writeln!(out, "  error: {e}");
        }
        for m in &o.mismatches {
            let _ = writeln!(out, "  {m}");
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    let _ = writeln!(out, "{passed}/{} PASS", outcomes.len());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const HDR: &str = "#include <string.h>\n";

    #[test]
    fn annotations_parse() {
        let e = parse_expectations("x(); // EXPECT: SEC.a.1 SEC.b.2\ny(); // EXPECT: SEC.a.1 // EXPECT: SEC.a.1\n// CORPUS-PROFILE: both\n/* EXPECT-SUPPRESSED: SEC.c.3 */").unwrap();
        assert_eq!(e.active.get(&("SEC.a.1".into(), 1)), Some(&1));
        assert_eq!(e.active.get(&("SEC.b.2".into(), 1)), Some(&1));
        assert_eq!(e.active.get(&("SEC.a.1".into(), 2)), Some(&2));
        assert_eq!(e.suppressed.len(), 1);
        assert_eq!(e.profile, Some(Profile::Both));
    }

    #[test]
    fn matching_fixture_passes() {
        let src = format!("{HDR}void f(char *d, const char *s) {{\n  strcpy(d, s); // EXPECT: SEC.string.1\n}}\n");
        assert!(check_fixture("a.c", &src).passed());
    }

    #[test]
    fn extra_and_missing_are_distinguished() {
        let extra = format!("{HDR}void f(char *d, const char *s) {{\n  strcpy(d, s);\n}}\n");
        let o = check_fixture("a.c", &extra);
        assert!(matches!(&o.mismatches[..], [Mismatch::Unexpected { line: 3, .. }]));
        assert!(render_outcomes(&[o]).contains("unexpected SEC.string.1 at line 3"));

        let missing = format!("{HDR}void f(void) {{ // EXPECT: SEC.string.1\n}}\n");
        let o = check_fixture("b.c", &missing);
        assert!(matches!(&o.mismatches[..], [Mismatch::Missing { line: 2, .. }]));
        assert!(render_outcomes(&[o]).ends_with("0/1 PASS\n"));
    }
}
