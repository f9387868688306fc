use crate::frontend::{Comment, SourceLocation};

use super::registry::{guideline, Category, Guideline};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub guideline: &'static Guideline,
    pub loc: SourceLocation,
    pub message: String,
    /// Secondary locations, such as where a pointer was obtained.
    pub evidence: Vec<SourceLocation>,
    pub suppressed: bool,
}

impl Diagnostic {
    pub fn new(guideline: &'static Guideline, loc: SourceLocation, message: impl Into<String>) -> Self {
        let message = message.into();
        debug_assert!(!message.is_empty());
        Diagnostic { guideline, loc, message, evidence: Vec::new(), suppressed: false }
    }

    pub fn with_evidence(mut self, evidence: impl IntoIterator<Item = SourceLocation>) -> Self {
        self.evidence.extend(evidence);
        self
    }

    pub fn sort_key(&self) -> (&str, u32, u32, &str) {
        (&self.loc.file, self.loc.line, self.loc.column, self.guideline.id)
    }
}

/// Sorts by (file, line, column, guideline) and drops exact repeats.
pub fn sort_diagnostics(diags: &mut Vec<Diagnostic>) {
    diags.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()).then_with(|| a.message.cmp(&b.message)));
    diags.dedup_by(|a, b| a.sort_key() == b.sort_key() && a.message == b.message);
}

/// A parsed `seclint-deviation` comment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deviation {
    pub guideline: &'static Guideline,
    /// The line whose diagnostics are suppressed.
    pub target_line: u32,
    pub justification: String,
}

const MARKER: &str = "seclint-deviation:";

/// Extracts deviation records. Comments naming an unknown guideline or
/// lacking a justification are ignored.
pub fn deviations(comments: &[Comment]) -> Vec<Deviation> {
    comments
        .iter()
        .filter_map(|c| {
            let rest = &c.text[c.text.find(MARKER)? + MARKER.len()..];
            let rest = rest.trim_end_matches("*/").trim();
            let (id, justification) = rest.split_once(char::is_whitespace)?;
            let justification = justification.trim();
            if justification.is_empty() {
                return None;
            }
            Some(Deviation { guideline: guideline(id)?, target_line: c.end_line + 1, justification: justification.to_string() })
        })
        .collect()
}

/// Marks diagnostics covered by a deviation. Mandatory guidelines admit no
/// deviation, so records naming them have no effect.
pub fn apply_deviations(diags: &mut [Diagnostic], deviations: &[Deviation]) {
    for d in diags {
        d.suppressed = d.guideline.category != Category::Mandatory
            && deviations.iter().any(|dev| dev.guideline.id == d.guideline.id && dev.target_line == d.loc.line);
    }
}
