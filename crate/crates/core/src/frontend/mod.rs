//! Preprocessing, lexing, and parsing of the supported C subset.
//!
//! The pipeline is `preprocess` → `tokenize` → `parse`. Each stage is a pure
//! function of its input; [`parse_source`] chains them for convenience.

pub mod ast;
mod lexer;
mod parser;
mod preprocess;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use lexer::{tokenize, StdMacro, Token, TokenKind};
pub use parser::parse;
pub use preprocess::{preprocess, Comment, Preprocessed, RECOGNIZED_HEADERS};

/// A position in a source file. Columns count bytes of the physical line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SourceLocation {
    pub file: Arc<str>,
    pub line: u32,
    pub column: u32,
}

impl SourceLocation {
    pub fn new(file: Arc<str>, line: u32, column: u32) -> Self {
        debug_assert!(line >= 1 && column >= 1);
        SourceLocation { file, line, column }
    }
}

impl fmt::Display for SourceLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

/// Everything that can go wrong before semantic analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrontendError {
    #[error("{loc}: unsupported directive `#{directive}`")]
    UnsupportedDirective { directive: String, loc: SourceLocation },
    #[error("{loc}: {message}")]
    Lex { message: String, loc: SourceLocation },
    #[error("{loc}: {message}")]
    Parse { message: String, loc: SourceLocation },
}

impl FrontendError {
    pub fn loc(&self) -> &SourceLocation {
        match self {
            FrontendError::UnsupportedDirective { loc, .. }
            | FrontendError::Lex { loc, .. }
            | FrontendError::Parse { loc, .. } => loc,
        }
    }
}

/// Runs the three frontend stages over one file.
pub fn parse_source(source: &str, path: &str) -> Result<(Preprocessed, ast::TranslationUnit), FrontendError> {
    let pp = preprocess(source, path)?;
    let tokens = tokenize(&pp)?;
    let tu = parse(&tokens, &pp)?;
    Ok((pp, tu))
}
