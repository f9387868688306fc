//! Command-line driver.

mod config;
pub mod corpus;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use walkdir::WalkDir;

use crate::checkers::{analyze_source, sort_diagnostics, AnalysisOptions, Diagnostic};
use crate::coverage::{
    aggregate, gap_report, load_mappings_with, render_gaps, render_table, Catalog, CoverageError, CoverageProfile,
    Ruleset, SHIPPED_CATALOG, SHIPPED_MAPPINGS,
};
use crate::report::{render_coverage_json, render_json, render_text, ExitStatus, RunSummary};

pub use config::{parse_config_file, Config, FailOn, OutputFormat, Overrides, ProfileArg};

#[derive(Debug, Parser)]
#[command(name = "seclint", version, about = "Security guideline checker for C sources")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze C files or directories.
    Check(CheckArgs),
    /// Print coverage matrices for an external ruleset.
    Coverage(CoverageArgs),
    /// Run the analyzer over an annotated corpus and compare with expectations.
    Corpus(CorpusArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Files or directories to analyze.
    #[arg(required = true)]
    paths: Vec<PathBuf>,
    #[arg(long, value_enum)]
    profile: Option<ProfileArg>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Run only these guidelines (repeatable).
    #[arg(long, value_name = "ID")]
    enable: Vec<String>,
    /// Skip these guidelines (repeatable).
    #[arg(long, value_name = "ID")]
    disable: Vec<String>,
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
    #[arg(long, value_enum)]
    fail_on: Option<FailOn>,
    /// File of `key = value` settings; flags take precedence.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CoverageArgs {
    #[arg(long, default_value = "ts17961", value_parser = parse_ruleset)]
    ruleset: Ruleset,
    /// Restrict to one profile (mc3 or mc3a1).
    #[arg(long, value_parser = parse_coverage_profile)]
    profile: Option<CoverageProfile>,
    /// Also print the per-rule gap report.
    #[arg(long)]
    gaps: bool,
    #[arg(long, value_name = "PATH")]
    mapping: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    catalog: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct CorpusArgs {
    /// Directory of annotated fixtures.
    dir: PathBuf,
    #[arg(long, value_name = "N", default_value_t = 1)]
    jobs: usize,
}

fn parse_ruleset(s: &str) -> Result<Ruleset, String> {
    s.parse()
}

fn parse_coverage_profile(s: &str) -> Result<CoverageProfile, String> {
    s.parse()
}

/// Runs the command line `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { ExitStatus::UsageError.code() } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match cli.command {
        Command::Check(a) => run_check(a, out, err),
        Command::Coverage(a) => run_coverage(a, out, err),
        Command::Corpus(a) => run_corpus(a, out, err),
    }
}

/// Expands directories into their `.c` files, sorted and deduplicated.
pub fn discover(paths: &[PathBuf]) -> Result<Vec<PathBuf>, String> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            for entry in WalkDir::new(p).sort_by_file_name() {
                let entry = entry.map_err(|e| format!("{}: {e}", p.display()))?;
                if entry.file_type().is_file() && entry.path().extension().is_some_and(|x| x == "c") {
                    files.push(entry.into_path());
                }
            }
        } else if p.is_file() {
            files.push(p.clone());
        } else {
            return Err(format!("{}: no such file or directory", p.display()));
        }
    }
    files.sort();
    files.dedup();
    Ok(files)
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool")
}

fn analyze_file(path: &Path, opts: &AnalysisOptions) -> Result<Vec<Diagnostic>, String> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| format!("{display}: {e}"))?;
    analyze_source(&display, &text, opts).map(|a| a.diagnostics).map_err(|e| e.to_string())
}

fn run_check(a: CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let file_cfg = match &a.config {
        Some(p) => match std::fs::read_to_string(p).map_err(|e| e.to_string()).and_then(|t| parse_config_file(&t)) {
            Ok(o) => o,
            Err(e) => {
                let _ = writeln!(err, "error: {}: {e}", p.display());
                return ExitStatus::UsageError.code();
            }
        },
        None => Overrides::default(),
    };
    let flags = Overrides {
        profile: a.profile,
        enable: a.enable,
        disable: a.disable,
        format: a.format,
        mapping: None,
        fail_on: a.fail_on,
        jobs: a.jobs,
    };
    let config = match Config::resolve(file_cfg, flags) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return ExitStatus::UsageError.code();
        }
    };
    let files = match discover(&a.paths) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return ExitStatus::InputError.code();
        }
    };
    let opts = config.analysis_options();
    let results: Vec<Result<Vec<Diagnostic>, String>> =
        pool(config.jobs).install(|| files.par_iter().map(|f| analyze_file(f, &opts)).collect());

    let mut diags = Vec::new();
    let mut failed = false;
    for r in results {
        match r {
            Ok(d) => diags.extend(d),
            Err(e) => {
                failed = true;
                let _ = writeln!(err, "error: {e}");
            }
        }
    }
    sort_diagnostics(&mut diags);
    let mut summary = RunSummary::new(files.len(), &diags);
    let status = if failed {
        ExitStatus::InputError
    } else if config.fail_on.fails(&diags) {
        ExitStatus::FindingsPresent
    } else {
        ExitStatus::Clean
    };
    if failed {
        summary.exit_status = ExitStatus::InputError;
    }
    let rendered = match config.output_format {
        OutputFormat::Text => render_text(&diags),
        OutputFormat::Json => render_json(&diags, &summary),
    };
    let _ = out.write_all(rendered.as_bytes());
    status.code()
}

fn read_or(path: &Option<PathBuf>, shipped: &str) -> Result<String, String> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
        None => Ok(shipped.to_string()),
    }
}

fn run_coverage(a: CoverageArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = (|| -> Result<String, String> {
        let catalog = Catalog::parse(&read_or(&a.catalog, SHIPPED_CATALOG)?).map_err(|e| e.to_string())?;
        let entries = load_mappings_with(&read_or(&a.mapping, SHIPPED_MAPPINGS)?, &catalog).map_err(|e| e.to_string())?;
        let profiles: Vec<CoverageProfile> = match a.profile {
            Some(p) if !a.ruleset.profiles().contains(&p) => {
                return Err(format!("{} is not classified under {}", a.ruleset, p.file_name()));
            }
            Some(p) => vec![p],
            None => a.ruleset.profiles().to_vec(),
        };
        let matrices = profiles
            .iter()
            .map(|&p| aggregate(&entries, &catalog, a.ruleset, p))
            .collect::<Result<Vec<_>, CoverageError>>()
            .map_err(|e| e.to_string())?;
        let gaps = if a.gaps {
            let p = a.profile.unwrap_or(a.ruleset.profiles()[0]);
            Some(gap_report(&entries, &catalog, a.ruleset, p).map_err(|e| e.to_string())?)
        } else {
            None
        };
        Ok(match a.format {
            OutputFormat::Json => render_coverage_json(a.ruleset, &matrices, gaps.as_ref()),
            OutputFormat::Text => {
                let (title, columns): (String, Vec<(&str, _)>) = if a.ruleset.is_cert() {
                    (
                        format!("MC3 + MC3A1 coverage of {}", a.ruleset.display_name()),
                        matrices.iter().map(|m| (a.ruleset.display_name(), m)).collect(),
                    )
                } else {
                    (
                        format!("Coverage of {}", a.ruleset.display_name()),
                        matrices.iter().map(|m| (m.profile.column_label(), m)).collect(),
                    )
                };
                let mut s = render_table(&title, a.ruleset.kinds(), &columns);
                if let Some(g) = &gaps {
                    s.push('\n');
                    s.push_str(&render_gaps(g));
                }
                s
            }
        })
    })();
    match result {
        Ok(s) => {
            let _ = out.write_all(s.as_bytes());
            ExitStatus::Clean.code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitStatus::InputError.code()
        }
    }
}

fn run_corpus(a: CorpusArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if a.jobs == 0 {
        let _ = writeln!(err, "error: --jobs must be at least 1");
        return ExitStatus::UsageError.code();
    }
    let files = match discover(std::slice::from_ref(&a.dir)) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return ExitStatus::InputError.code();
        }
    };
    let outcomes: Vec<corpus::FileOutcome> = pool(a.jobs).install(|| {
        files
            .par_iter()
            .map(|f| {
                let display = f.display().to_string();
                match std::fs::read_to_string(f) {
                    Ok(text) => corpus::check_fixture(&display, &text),
                    Err(e) => corpus::FileOutcome {
                        path: display,
                        profile: crate::checkers::Profile::Security,
                        mismatches: Vec::new(),
                        error: Some(e.to_string()),
                        diagnostics: Vec::new(),
                    },
                }
            })
            .collect()
    });
    let _ = out.write_all(corpus::render_outcomes(&outcomes).as_bytes());
    if outcomes.iter().all(corpus::FileOutcome::passed) {
        ExitStatus::Clean.code()
    } else {
        ExitStatus::FindingsPresent.code()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("seclint").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        let (code, _, err) = run_args(&["check", "--bogus", "x.c"]);
        assert_eq!(code, 2);
        assert!(err.contains("Usage"));
    }

    #[test]
    fn missing_file_is_input_error() {
        let (code, _, err) = run_args(&["check", "/nonexistent/nothing.c"]);
        assert_eq!(code, 3);
        assert!(err.contains("/nonexistent/nothing.c"));
    }

    #[test]
    fn coverage_default_is_ts_table() {
        let (code, out, _) = run_args(&["coverage"]);
        assert_eq!(code, 0);
        assert!(out.contains("Full, explicit        22           35"), "{out}");
    }

    #[test]
    fn coverage_profile_must_apply() {
        let (code, _, err) = run_args(&["coverage", "--ruleset", "certc2014", "--profile", "mc3"]);
        assert_eq!(code, 3);
        assert!(err.contains("not classified"));
    }
}
