use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use clap::ValueEnum;

use crate::checkers::{guideline, AnalysisOptions, Category, Diagnostic, Profile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    Security,
    Restrictive,
    Both,
}

impl From<ProfileArg> for Profile {
    fn from(p: ProfileArg) -> Profile {
        match p {
            ProfileArg::Security => Profile::Security,
            ProfileArg::Restrictive => Profile::Restrictive,
            ProfileArg::Both => Profile::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum FailOn {
    #[default]
    Any,
    Mandatory,
    Never,
}

impl FailOn {
    /// Whether these diagnostics make the run fail.
    pub fn fails(self, diags: &[Diagnostic]) -> bool {
        let mut active = diags.iter().filter(|d| !d.suppressed);
        match self {
            FailOn::Any => active.next().is_some(),
            FailOn::Mandatory => active.any(|d| d.guideline.category == Category::Mandatory),
            FailOn::Never => false,
        }
    }
}

/// Effective settings for a `check` run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub profile: Profile,
    pub enabled_guidelines: BTreeSet<&'static str>,
    pub disabled_guidelines: BTreeSet<&'static str>,
    pub output_format: OutputFormat,
    pub mapping_file: Option<PathBuf>,
    pub fail_on: FailOn,
    pub jobs: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            profile: Profile::Security,
            enabled_guidelines: BTreeSet::new(),
            disabled_guidelines: BTreeSet::new(),
            output_format: OutputFormat::Text,
            mapping_file: None,
            fail_on: FailOn::Any,
            jobs: 1,
        }
    }
}

/// Settings that may come from a config file or from flags.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub profile: Option<ProfileArg>,
    pub enable: Vec<String>,
    pub disable: Vec<String>,
    pub format: Option<OutputFormat>,
    pub mapping: Option<PathBuf>,
    pub fail_on: Option<FailOn>,
    pub jobs: Option<usize>,
}

/// Parses `key = value` lines. `#` starts a comment line.
pub fn parse_config_file(text: &str) -> Result<Overrides, String> {
    let mut raw: BTreeMap<&str, &str> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| format!("config line {}: expected `key = value`", i + 1))?;
        raw.insert(k.trim(), v.trim());
    }
    let list = |v: &str| v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
    let mut o = Overrides::default();
    for (k, v) in raw {
        match k {
            "profile" => o.profile = Some(ProfileArg::from_str(v, true)?),
            "format" => o.format = Some(OutputFormat::from_str(v, true)?),
            "fail_on" | "fail-on" => o.fail_on = Some(FailOn::from_str(v, true)?),
            "enable" => o.enable = list(v),
            "disable" => o.disable = list(v),
            "mapping" => o.mapping = Some(PathBuf::from(v)),
            "jobs" => o.jobs = Some(v.parse().map_err(|_| format!("config: jobs must be a positive integer, got `{v}`"))?),
            other => return Err(format!("config: unknown key `{other}`")),
        }
    }
    Ok(o)
}

fn known_ids(ids: &[String]) -> Result<BTreeSet<&'static str>, String> {
    ids.iter().map(|id| guideline(id).map(|g| g.id).ok_or_else(|| format!("unknown guideline `{id}`"))).collect()
}

impl Config {
    /// Layers flags over the config file over defaults.
    pub fn resolve(file: Overrides, flags: Overrides) -> Result<Config, String> {
        let d = Config::default();
        let pick_list = |f: Vec<String>, c: Vec<String>| if f.is_empty() { c } else { f };
        let enabled = known_ids(&pick_list(flags.enable, file.enable))?;
        let disabled = known_ids(&pick_list(flags.disable, file.disable))?;
        if let Some(both) = enabled.intersection(&disabled).next() {
            return Err(format!("guideline `{both}` is both enabled and disabled"));
        }
        let jobs = flags.jobs.or(file.jobs).unwrap_or(d.jobs);
        if jobs == 0 {
            return Err("--jobs must be at least 1".into());
        }
        Ok(Config {
            profile: flags.profile.or(file.profile).map_or(d.profile, Profile::from),
            enabled_guidelines: enabled,
            disabled_guidelines: disabled,
            output_format: flags.format.or(file.format).unwrap_or(d.output_format),
            mapping_file: flags.mapping.or(file.mapping),
            fail_on: flags.fail_on.or(file.fail_on).unwrap_or(d.fail_on),
            jobs,
        })
    }

    pub fn analysis_options(&self) -> AnalysisOptions {
        AnalysisOptions {
            profile: self.profile,
            enabled: self.enabled_guidelines.clone(),
            disabled: self.disabled_guidelines.clone(),
        }
    }
}
