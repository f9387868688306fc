//! Coverage of external rulesets by the guideline set.
//!
//! A mapping file classifies every external rule, per profile, by how the
//! guidelines address it. [`aggregate`] counts classifications per kind and
//! [`gap_report`] lists the rules still needing attention.

mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::checkers::guideline;

pub use render::{render_gaps, render_table};

/// The shipped synthetic mapping fixture.
pub const SHIPPED_MAPPINGS: &str = include_str!("../../data/mappings.txt");
/// The shipped rule catalog the fixture refers to.
pub const SHIPPED_CATALOG: &str = include_str!("../../data/catalog.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ruleset {
    #[serde(rename = "TS17961")]
    Ts17961,
    #[serde(rename = "CERTC2014")]
    CertC2014,
    #[serde(rename = "CERTC2016")]
    CertC2016,
}

impl Ruleset {
    pub const ALL: [Ruleset; 3] = [Ruleset::Ts17961, Ruleset::CertC2014, Ruleset::CertC2016];

    pub fn file_name(self) -> &'static str {
        match self {
            Ruleset::Ts17961 => "TS17961",
            Ruleset::CertC2014 => "CERTC2014",
            Ruleset::CertC2016 => "CERTC2016",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Ruleset::Ts17961 => "TS 17961",
            Ruleset::CertC2014 => "CERT C:2014",
            Ruleset::CertC2016 => "CERT C:2016",
        }
    }

    pub fn is_cert(self) -> bool {
        matches!(self, Ruleset::CertC2014 | Ruleset::CertC2016)
    }

    /// Profiles each rule of this ruleset must be classified under.
    pub fn profiles(self) -> &'static [CoverageProfile] {
        if self.is_cert() {
            &[CoverageProfile::Mc3Amd1]
        } else {
            &[CoverageProfile::Mc3, CoverageProfile::Mc3Amd1]
        }
    }

    /// Kinds reported for this ruleset, in table order.
    pub fn kinds(self) -> &'static [CoverageKind] {
        use CoverageKind::*;
        if self.is_cert() {
            &[C11Specific, Explicit, Implicit, Restrictive, None]
        } else {
            &[Explicit, Implicit, Restrictive, Broad, None]
        }
    }
}

impl FromStr for Ruleset {
    type Err = String;

    /// Accepts the mapping-file spelling or its lowercase form.
    fn from_str(s: &str) -> Result<Self, String> {
        Ruleset::ALL
            .into_iter()
            .find(|r| r.file_name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown ruleset `{s}`"))
    }
}

impl fmt::Display for Ruleset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.file_name())
    }
}

/// Guideline set a classification refers to: the base guidelines alone, or
/// with the security amendment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoverageProfile {
    #[serde(rename = "MC3")]
    Mc3,
    #[serde(rename = "MC3_AMD1")]
    Mc3Amd1,
}

impl CoverageProfile {
    pub fn file_name(self) -> &'static str {
        match self {
            CoverageProfile::Mc3 => "MC3",
            CoverageProfile::Mc3Amd1 => "MC3_AMD1",
        }
    }

    pub fn column_label(self) -> &'static str {
        match self {
            CoverageProfile::Mc3 => "MC3",
            CoverageProfile::Mc3Amd1 => "MC3 + MC3A1",
        }
    }
}

impl FromStr for CoverageProfile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "mc3" => Ok(CoverageProfile::Mc3),
            "mc3_amd1" | "mc3a1" | "mc3amd1" => Ok(CoverageProfile::Mc3Amd1),
            _ => Err(format!("unknown coverage profile `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverageKind {
    Explicit,
    Implicit,
    Restrictive,
    Broad,
    None,
    #[serde(rename = "c11")]
    C11Specific,
}

impl CoverageKind {
    pub fn file_name(self) -> &'static str {
        match self {
            CoverageKind::Explicit => "explicit",
            CoverageKind::Implicit => "implicit",
            CoverageKind::Restrictive => "restrictive",
            CoverageKind::Broad => "broad",
            CoverageKind::None => "none",
            CoverageKind::C11Specific => "c11",
        }
    }

    pub fn row_label(self) -> &'static str {
        match self {
            CoverageKind::Explicit => "Full, explicit",
            CoverageKind::Implicit => "Full, implicit",
            CoverageKind::Restrictive => "Full, restrictive",
            CoverageKind::Broad => "Partial, broad",
            CoverageKind::None => "None",
            CoverageKind::C11Specific => "C11 specific",
        }
    }

    /// Kinds that leave work to do.
    pub fn is_gap(self) -> bool {
        matches!(self, CoverageKind::Broad | CoverageKind::None)
    }
}

impl FromStr for CoverageKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        use CoverageKind::*;
        [Explicit, Implicit, Restrictive, Broad, None, C11Specific]
            .into_iter()
            .find(|k| k.file_name() == s)
            .ok_or_else(|| format!("unknown coverage kind `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExternalRule {
    pub ruleset: Ruleset,
    pub rule_id: String,
    pub title: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingEntry {
    pub ruleset: Ruleset,
    pub rule_id: String,
    pub profile: CoverageProfile,
    pub kind: CoverageKind,
    pub covering_guidelines: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverageError {
    #[error("line {line}: malformed mapping: {reason}")]
    MalformedMapping { line: usize, reason: String },
    #[error("line {line}: unknown {what} `{reference}`")]
    DanglingReference { line: usize, what: &'static str, reference: String },
    #[error("line {line}: duplicate entry for {ruleset} {rule_id} under {profile}")]
    DuplicateEntry { line: usize, ruleset: Ruleset, rule_id: String, profile: &'static str },
    #[error("{ruleset} under {profile} has no classification for: {}", missing.join(", "))]
    IncompleteMapping { ruleset: Ruleset, profile: &'static str, missing: Vec<String> },
}

/// Rules of each ruleset, in catalog order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Catalog {
    rules: BTreeMap<Ruleset, Vec<ExternalRule>>,
}

impl Catalog {
    /// Parses `ruleset | rule_id | title` lines.
    pub fn parse(text: &str) -> Result<Catalog, CoverageError> {
        let mut cat = Catalog::default();
        let mut seen = BTreeSet::new();
        for (line, fields) in data_lines(text) {
            let [ruleset, rule_id, title] = fields[..] else {
                return Err(malformed(line, format!("expected 3 fields, found {}", fields.len())));
            };
            let ruleset: Ruleset = ruleset.parse().map_err(|e| malformed(line, e))?;
            if rule_id.is_empty() {
                return Err(malformed(line, "empty rule id".into()));
            }
            if !seen.insert((ruleset, rule_id.to_string())) {
                return Err(malformed(line, format!("rule `{rule_id}` listed twice")));
            }
            cat.rules.entry(ruleset).or_default().push(ExternalRule {
                ruleset,
                rule_id: rule_id.to_string(),
                title: title.to_string(),
            });
        }
        Ok(cat)
    }

    pub fn shipped() -> Catalog {
        Catalog::parse(SHIPPED_CATALOG).expect("shipped catalog is well-formed")
    }

    pub fn rules(&self, ruleset: Ruleset) -> &[ExternalRule] {
        self.rules.get(&ruleset).map_or(&[], Vec::as_slice)
    }

    pub fn rule(&self, ruleset: Ruleset, rule_id: &str) -> Option<&ExternalRule> {
        self.rules(ruleset).iter().find(|r| r.rule_id == rule_id)
    }
}

fn malformed(line: usize, reason: String) -> CoverageError {
    CoverageError::MalformedMapping { line, reason }
}

/// Non-comment, non-blank lines split on `|`, with 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with('#')).then(|| (i + 1, l.split('|').map(str::trim).collect()))
    })
}

/// Guideline references outside the registry, in `R.<n>.<m>` or `D.<n>.<m>`
/// form, name base-standard guidelines.
fn is_base_reference(id: &str) -> bool {
    let mut parts = id.split('.');
    matches!(parts.next(), Some("R" | "D"))
        && parts.clone().count() == 2
        && parts.all(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()))
}

/// Parses and validates a mapping file against the shipped catalog.
pub fn load_mappings(data: &str) -> Result<Vec<MappingEntry>, CoverageError> {
    load_mappings_with(data, &Catalog::shipped())
}

pub fn load_mappings_with(data: &str, catalog: &Catalog) -> Result<Vec<MappingEntry>, CoverageError> {
    let mut entries = Vec::new();
    let mut seen = BTreeSet::new();
    for (line, fields) in data_lines(data) {
        let [ruleset, rule_id, profile, kind, guidelines] = fields[..] else {
            return Err(malformed(line, format!("expected 5 fields, found {}", fields.len())));
        };
        let ruleset: Ruleset = ruleset.parse().map_err(|e| malformed(line, e))?;
        let profile: CoverageProfile = profile.parse().map_err(|e| malformed(line, e))?;
        let kind: CoverageKind = kind.parse().map_err(|e| malformed(line, e))?;
        if catalog.rule(ruleset, rule_id).is_none() {
            return Err(CoverageError::DanglingReference { line, what: "rule", reference: format!("{ruleset}:{rule_id}") });
        }
        if !ruleset.profiles().contains(&profile) {
            return Err(malformed(line, format!("{ruleset} is not classified under {}", profile.file_name())));
        }
        let covering: Vec<String> = match guidelines {
            "-" => Vec::new(),
            "" => return Err(malformed(line, "empty guideline field; use `-`".into())),
            list => list.split(',').map(|g| g.trim().to_string()).collect(),
        };
        for g in &covering {
            if guideline(g).is_none() && !is_base_reference(g) {
                return Err(CoverageError::DanglingReference { line, what: "guideline", reference: g.clone() });
            }
            if profile == CoverageProfile::Mc3 && g.starts_with("SEC.") {
                return Err(malformed(line, format!("{g} is not part of the MC3 guideline set")));
            }
        }
        match kind {
            CoverageKind::None if !covering.is_empty() => {
                return Err(malformed(line, "kind `none` cannot list covering guidelines".into()));
            }
            CoverageKind::Explicit | CoverageKind::Implicit | CoverageKind::Restrictive if covering.is_empty() => {
                return Err(malformed(line, format!("kind `{}` needs at least one guideline", kind.file_name())));
            }
            CoverageKind::C11Specific if !ruleset.is_cert() => {
                return Err(malformed(line, "kind `c11` applies only to CERT C rulesets".into()));
            }
            _ => {}
        }
        if !seen.insert((ruleset, rule_id.to_string(), profile)) {
            return Err(CoverageError::DuplicateEntry {
                line,
                ruleset,
                rule_id: rule_id.to_string(),
                profile: profile.file_name(),
            });
        }
        entries.push(MappingEntry { ruleset, rule_id: rule_id.to_string(), profile, kind, covering_guidelines: covering });
    }
    Ok(entries)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageMatrix {
    pub ruleset: Ruleset,
    pub profile: CoverageProfile,
    /// Every kind reported for the ruleset appears, zero counts included.
    pub counts: BTreeMap<CoverageKind, usize>,
    pub total: usize,
}

impl CoverageMatrix {
    pub fn count(&self, kind: CoverageKind) -> usize {
        self.counts.get(&kind).copied().unwrap_or(0)
    }
}

fn entries_for<'e>(
    entries: &'e [MappingEntry],
    catalog: &Catalog,
    ruleset: Ruleset,
    profile: CoverageProfile,
) -> Result<BTreeMap<String, &'e MappingEntry>, CoverageError> {
    let by_rule: BTreeMap<String, &MappingEntry> = entries
        .iter()
        .filter(|e| e.ruleset == ruleset && e.profile == profile)
        .map(|e| (e.rule_id.clone(), e))
        .collect();
    let missing: Vec<String> =
        catalog.rules(ruleset).iter().filter(|r| !by_rule.contains_key(&r.rule_id)).map(|r| r.rule_id.clone()).collect();
    if !missing.is_empty() {
        return Err(CoverageError::IncompleteMapping { ruleset, profile: profile.file_name(), missing });
    }
    Ok(by_rule)
}

/// Counts classifications of `ruleset` under `profile`.
pub fn aggregate(
    entries: &[MappingEntry],
    catalog: &Catalog,
    ruleset: Ruleset,
    profile: CoverageProfile,
) -> Result<CoverageMatrix, CoverageError> {
    let by_rule = entries_for(entries, catalog, ruleset, profile)?;
    let mut counts: BTreeMap<CoverageKind, usize> = ruleset.kinds().iter().map(|&k| (k, 0)).collect();
    for e in by_rule.values() {
        *counts.entry(e.kind).or_insert(0) += 1;
    }
    Ok(CoverageMatrix { ruleset, profile, total: by_rule.len(), counts })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapRow {
    pub rule: ExternalRule,
    pub kind: CoverageKind,
    pub covering_guidelines: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    /// Broad and None rows, ordered by rule id.
    pub action_items: Vec<GapRow>,
    /// Every rule, ordered by rule id.
    pub rows: Vec<GapRow>,
}

pub fn gap_report(
    entries: &[MappingEntry],
    catalog: &Catalog,
    ruleset: Ruleset,
    profile: CoverageProfile,
) -> Result<GapReport, CoverageError> {
    let by_rule = entries_for(entries, catalog, ruleset, profile)?;
    let rows: Vec<GapRow> = by_rule
        .values()
        .map(|e| GapRow {
            rule: catalog.rule(ruleset, &e.rule_id).cloned().expect("validated on load"),
            kind: e.kind,
            covering_guidelines: e.covering_guidelines.clone(),
        })
        .collect();
    let action_items = rows.iter().filter(|r| r.kind.is_gap()).cloned().collect();
    Ok(GapReport { action_items, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_catalog() -> Catalog {
        Catalog::parse("TS17961 | r1 | one\nTS17961 | r2 | two\nCERTC2014 | c1 | cee\n").unwrap()
    }

    #[test]
    fn well_formed_three_lines() {
        let data = "# c\nTS17961 | r1 | MC3 | explicit | R.1.3\nTS17961 | r2 | MC3 | none | -\nTS17961 | r1 | MC3_AMD1 | explicit | SEC.env.1,R.1.3\n";
        let e = load_mappings_with(data, &small_catalog()).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e[2].covering_guidelines, ["SEC.env.1", "R.1.3"]);
    }

    #[test]
    fn none_with_guideline_is_malformed() {
        let err = load_mappings_with("TS17961 | r1 | MC3 | none | R.1.3\n", &small_catalog()).unwrap_err();
        assert!(matches!(err, CoverageError::MalformedMapping { line: 1, .. }));
    }

    #[test]
    fn duplicates_are_rejected() {
        let data = "TS17961 | r1 | MC3 | none | -\nTS17961 | r1 | MC3 | broad | -\n";
        assert!(matches!(load_mappings_with(data, &small_catalog()), Err(CoverageError::DuplicateEntry { line: 2, .. })));
    }

    #[test]
    fn dangling_references() {
        let cat = small_catalog();
        let rule = load_mappings_with("TS17961 | r9 | MC3 | none | -\n", &cat).unwrap_err();
        assert!(matches!(rule, CoverageError::DanglingReference { what: "rule", .. }));
        let g = load_mappings_with("TS17961 | r1 | MC3 | explicit | SEC.bogus.1\n", &cat).unwrap_err();
        assert!(matches!(g, CoverageError::DanglingReference { what: "guideline", .. }));
    }

    #[test]
    fn kind_constraints() {
        let cat = small_catalog();
        for bad in [
            "TS17961 | r1 | MC3 | explicit | -",
            "TS17961 | r1 | MC3 | c11 | -",
            "TS17961 | r1 | MC3 | sideways | -",
            "TS17961 | r1 | MC3 | explicit | SEC.env.1",
            "CERTC2014 | c1 | MC3 | c11 | -",
            "TS17961 | r1 | MC3 | none",
        ] {
            assert!(matches!(load_mappings_with(bad, &cat), Err(CoverageError::MalformedMapping { .. })), "{bad}");
        }
        assert!(load_mappings_with("CERTC2014 | c1 | MC3_AMD1 | c11 | -", &cat).is_ok());
    }

    #[test]
    fn empty_mapping_is_incomplete() {
        let cat = Catalog::shipped();
        match aggregate(&[], &cat, Ruleset::Ts17961, CoverageProfile::Mc3) {
            Err(CoverageError::IncompleteMapping { missing, .. }) => assert_eq!(missing.len(), 46),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn base_reference_shapes() {
        assert!(is_base_reference("R.21.3"));
        assert!(is_base_reference("D.4.14"));
        assert!(!is_base_reference("R.21"));
        assert!(!is_base_reference("X.1.2"));
        assert!(!is_base_reference("R.a.1"));
    }

    #[test]
    fn gap_rows_are_ordered_and_filtered() {
        let cat = small_catalog();
        let data = "TS17961 | r2 | MC3 | none | -\nTS17961 | r1 | MC3 | broad | R.1.3\n";
        let entries = load_mappings_with(data, &cat).unwrap();
        let g = gap_report(&entries, &cat, Ruleset::Ts17961, CoverageProfile::Mc3).unwrap();
        let ids: Vec<_> = g.rows.iter().map(|r| r.rule.rule_id.as_str()).collect();
        assert_eq!(ids, ["r1", "r2"]);
        assert_eq!(g.action_items.len(), 2);
    }
}
