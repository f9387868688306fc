//! Guideline checkers and the per-file analysis pipeline.

pub mod dataflow;
mod diagnostic;
mod flow;
pub mod registry;
mod syntactic;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::frontend::{parse_source, FrontendError, Preprocessed};
use crate::sema::{resolve, ResolvedUnit, SemaError, SemaNote};

pub use diagnostic::{apply_deviations, deviations, sort_diagnostics, Deviation, Diagnostic};
pub use flow::check_flow;
pub use registry::{guideline, Category, Family, Guideline, Profile, GUIDELINES};
pub use syntactic::{
    check_banned_constructs, check_ctype_args, check_eof_handling, check_mem_compare, check_sizeof_array_param,
    check_string_unbounded,
};

/// Which guidelines run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub profile: Profile,
    /// When non-empty, only these guidelines run.
    pub enabled: BTreeSet<&'static str>,
    pub disabled: BTreeSet<&'static str>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { profile: Profile::Security, enabled: BTreeSet::new(), disabled: BTreeSet::new() }
    }
}

impl AnalysisOptions {
    pub fn with_profile(profile: Profile) -> Self {
        AnalysisOptions { profile, ..Self::default() }
    }

    pub fn is_active(&self, g: &Guideline) -> bool {
        self.profile.includes(g) && (self.enabled.is_empty() || self.enabled.contains(g.id)) && !self.disabled.contains(g.id)
    }
}

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Frontend(#[from] FrontendError),
    #[error(transparent)]
    Sema(#[from] SemaError),
}

#[derive(Debug, Clone)]
pub struct FileAnalysis {
    pub path: String,
    /// Sorted by (file, line, column, guideline).
    pub diagnostics: Vec<Diagnostic>,
    pub notes: Vec<SemaNote>,
    pub deviations: Vec<Deviation>,
}

/// Runs every active checker over one resolved unit. The result is sorted and
/// has deviations applied.
pub fn check_unit(ru: &ResolvedUnit, pp: &Preprocessed, opts: &AnalysisOptions) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    diags.extend(check_sizeof_array_param(ru));
    diags.extend(check_ctype_args(ru));
    diags.extend(check_mem_compare(ru));
    diags.extend(check_string_unbounded(ru));
    diags.extend(check_eof_handling(ru));
    diags.extend(check_flow(ru));
    if opts.profile != Profile::Security {
        diags.extend(check_banned_constructs(ru));
    }
    diags.retain(|d| opts.is_active(d.guideline));
    sort_diagnostics(&mut diags);
    apply_deviations(&mut diags, &deviations(&pp.comments));
    diags
}

pub fn analyze_source(path: &str, text: &str, opts: &AnalysisOptions) -> Result<FileAnalysis, AnalysisError> {
    let (pp, tu) = parse_source(text, path)?;
    let ru = resolve(tu)?;
    let diagnostics = check_unit(&ru, &pp, opts);
    Ok(FileAnalysis { path: path.to_string(), diagnostics, notes: ru.sema.notes, deviations: deviations(&pp.comments) })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SRC: &str = "#include <stdlib.h>\n#include <string.h>\nvoid f(char *d) {\n char *p = getenv(\"A\");\n strcpy(d, p);\n}\n";

    fn ids(opts: &AnalysisOptions) -> Vec<&'static str> {
        analyze_source("t.c", SRC, opts).unwrap().diagnostics.iter().map(|d| d.guideline.id).collect()
    }

    #[test]
    fn profiles_gate_bans() {
        assert_eq!(ids(&AnalysisOptions::with_profile(Profile::Security)), ["SEC.string.1"]);
        assert_eq!(ids(&AnalysisOptions::with_profile(Profile::Restrictive)), ["BAN.21_8"]);
        assert_eq!(ids(&AnalysisOptions::with_profile(Profile::Both)), ["BAN.21_8", "SEC.string.1"]);
    }

    #[test]
    fn enable_and_disable_filter() {
        let mut opts = AnalysisOptions::with_profile(Profile::Both);
        opts.disabled.insert("BAN.21_8");
        assert_eq!(ids(&opts), ["SEC.string.1"]);
        opts.disabled.clear();
        opts.enabled.insert("BAN.21_8");
        assert_eq!(ids(&opts), ["BAN.21_8"]);
    }

    #[test]
    fn frontend_errors_surface() {
        let err = analyze_source("t.c", "#ifdef X\n#endif\n", &AnalysisOptions::default()).unwrap_err();
        assert!(matches!(err, AnalysisError::Frontend(FrontendError::UnsupportedDirective { .. })));
    }
}
