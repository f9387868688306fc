#![allow(dead_code)]

pub mod oracle;

use std::path::{Path, PathBuf};

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// Every `.c` fixture under the corpus, sorted.
pub fn corpus_files() -> Vec<PathBuf> {
    seclint::cli::discover(&[corpus_dir()]).expect("corpus directory")
}

pub fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Runs the command-line driver in-process.
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = seclint::cli::run(std::iter::once("seclint").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}
