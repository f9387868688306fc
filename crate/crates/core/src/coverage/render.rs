use std::fmt::Write;

use super::{CoverageKind, CoverageMatrix, GapReport, GapRow};

/// Plain-text coverage table: one row per kind, one column per matrix, and a
/// closing total row.
pub fn render_table(title: &str, kinds: &[CoverageKind], columns: &[(&str, &CoverageMatrix)]) -> String {
    let label_width = kinds.iter().map(|k| k.row_label().len()).chain(["Coverage kind".len()]).max().unwrap_or(0);
    let widths: Vec<usize> = columns.iter().map(|(label, _)| label.len().max(5)).collect();
    let rule = "-".repeat(label_width + widths.iter().map(|w| w + 2).sum::<usize>());
    let row = |out: &mut String, label: &str, cells: Vec<String>| {
        let _ = write!(out, "{label:<label_width$}");
        for (cell, w) in cells.iter().zip(&widths) {
            let _ = write!(out, "  {cell:>w$}");
        }
        out.push('\n');
    };

    let mut out = format!("{title}\n");
    row(&mut out, "Coverage kind", columns.iter().map(|(l, _)| l.to_string()).collect());
    let _ = writeln!(out, "{rule}");
    for &k in kinds {
        row(&mut out, k.row_label(), columns.iter().map(|(_, m)| m.count(k).to_string()).collect());
    }
    let _ = writeln!(out, "{rule}");
    row(&mut out, "Total", columns.iter().map(|(_, m)| m.total.to_string()).collect());
    out
}

fn gap_line(out: &mut String, r: &GapRow) {
    let refs = if r.covering_guidelines.is_empty() { "-".to_string() } else { r.covering_guidelines.join(",") };
    let _ = writeln!(out, "  {:<10} {:<12} {:<32} {}", r.rule.rule_id, r.kind.file_name(), refs, r.rule.title);
}

/// Gap report: action items first, then the full matrix.
pub fn render_gaps(report: &GapReport) -> String {
    let mut out = String::new();
    let broad = report.action_items.iter().filter(|r| r.kind == CoverageKind::Broad).count();
    let none = report.action_items.len() - broad;
    let _ = writeln!(out, "Action items: {} ({broad} broad, {none} none)", report.action_items.len());
    for r in &report.action_items {
        gap_line(&mut out, r);
    }
    let _ = writeln!(out, "All rules: {}", report.rows.len());
    for r in &report.rows {
        gap_line(&mut out, r);
    }
    out
}
