use std::sync::Arc;

use super::preprocess::Preprocessed;
use super::{FrontendError, SourceLocation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Identifier,
    Keyword,
    IntegerLiteral,
    FloatLiteral,
    CharLiteral,
    StringLiteral,
    Punctuator,
    EofMarker,
}

/// Standard macros the lexer expands itself and tags, so checkers can tell
/// `EOF` apart from a literal `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StdMacro {
    Eof,
    Null,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub loc: SourceLocation,
    pub from_standard_macro: Option<StdMacro>,
}

const KEYWORDS: &[&str] = &[
    "auto", "break", "case", "char", "const", "continue", "default", "do", "double", "else", "enum",
    "extern", "float", "for", "goto", "if", "inline", "int", "long", "register", "restrict",
    "return", "short", "signed", "sizeof", "static", "struct", "switch", "typedef", "union",
    "unsigned", "void", "volatile", "while", "_Bool",
];

const PUNCTUATORS: &[&str] = &[
    "...", "<<=", ">>=", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||", "*=",
    "/=", "%=", "+=", "-=", "&=", "^=", "|=", "##", "[", "]", "(", ")", "{", "}", ".", "&", "*",
    "+", "-", "~", "!", "/", "%", "<", ">", "^", "|", "?", ":", ";", "=", ",", "#",
];

/// Integer constants supplied by recognized headers. Only `EOF` and `NULL`
/// carry provenance.
fn builtin_macro(name: &str, pp: &Preprocessed) -> Option<(&'static str, Option<StdMacro>)> {
    let any_header = !pp.headers.is_empty();
    match name {
        "EOF" if pp.includes("stdio.h") => Some(("-1", Some(StdMacro::Eof))),
        "NULL" if any_header => Some(("0", Some(StdMacro::Null))),
        "EDOM" if pp.includes("errno.h") => Some(("33", None)),
        "ERANGE" if pp.includes("errno.h") => Some(("34", None)),
        "EILSEQ" if pp.includes("errno.h") => Some(("84", None)),
        "EXIT_SUCCESS" if pp.includes("stdlib.h") => Some(("0", None)),
        "EXIT_FAILURE" if pp.includes("stdlib.h") => Some(("1", None)),
        "SIGINT" if pp.includes("signal.h") => Some(("2", None)),
        "SIGABRT" if pp.includes("signal.h") => Some(("6", None)),
        "SIGTERM" if pp.includes("signal.h") => Some(("15", None)),
        _ => None,
    }
}

/// Splits preprocessed text into tokens, expanding object-like macros and the
/// built-in header constants. The result always ends with one `EofMarker`.
pub fn tokenize(pp: &Preprocessed) -> Result<Vec<Token>, FrontendError> {
    let mut tokens = Vec::new();
    let mut active = Vec::new();
    lex_into(&pp.text, &pp.path, None, pp, &mut active, &mut tokens)?;
    let (line, column) = end_position(&pp.text);
    tokens.push(Token {
        kind: TokenKind::EofMarker,
        text: String::new(),
        loc: SourceLocation::new(pp.path.clone(), line, column),
        from_standard_macro: None,
    });
    Ok(tokens)
}

fn end_position(text: &str) -> (u32, u32) {
    let line = text.bytes().filter(|&b| b == b'\n').count() as u32 + 1;
    let column = text.rsplit('\n').next().map_or(0, str::len) as u32 + 1;
    (line, column)
}

/// Lexes `text`. When `use_site` is set every token gets that location
/// (macro bodies are attributed to the expansion point).
fn lex_into(
    text: &str,
    path: &Arc<str>,
    use_site: Option<&SourceLocation>,
    pp: &Preprocessed,
    active: &mut Vec<String>,
    out: &mut Vec<Token>,
) -> Result<(), FrontendError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut line: u32 = 1;
    let mut line_start = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b == b'\n' {
            line += 1;
            i += 1;
            line_start = i;
            continue;
        }
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let loc = match use_site {
            Some(site) => site.clone(),
            None => SourceLocation::new(path.clone(), line, (i - line_start) as u32 + 1),
        };
        let start = i;
        let lex_err = |message: &str| FrontendError::Lex { message: message.to_string(), loc: loc.clone() };

        let wide_prefix = b == b'L' && matches!(bytes.get(i + 1), Some(b'"') | Some(b'\''));
        if b == b'"' || b == b'\'' || wide_prefix {
            let quote = if wide_prefix { bytes[i + 1] } else { b };
            let mut j = if wide_prefix { i + 2 } else { i + 1 };
            loop {
                match bytes.get(j) {
                    None | Some(b'\n') => {
                        return Err(lex_err(if quote == b'"' {
                            "unterminated string literal"
                        } else {
                            "unterminated character literal"
                        }))
                    }
                    Some(b'\\') => j += 2,
                    Some(&c) if c == quote => break,
                    Some(_) => j += 1,
                }
            }
            i = j + 1;
            let kind = if quote == b'"' { TokenKind::StringLiteral } else { TokenKind::CharLiteral };
            if kind == TokenKind::CharLiteral && i - start <= 2 + wide_prefix as usize {
                return Err(lex_err("empty character literal"));
            }
            out.push(Token { kind, text: text[start..i].to_string(), loc, from_standard_macro: None });
            continue;
        }

        if b.is_ascii_alphabetic() || b == b'_' {
            let mut j = i;
            while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                j += 1;
            }
            let word = &text[i..j];
            i = j;
            if KEYWORDS.contains(&word) {
                out.push(Token { kind: TokenKind::Keyword, text: word.to_string(), loc, from_standard_macro: None });
                continue;
            }
            if let Some((value, tag)) = builtin_macro(word, pp) {
                out.push(Token {
                    kind: TokenKind::IntegerLiteral,
                    text: value.to_string(),
                    loc,
                    from_standard_macro: tag,
                });
                continue;
            }
            if !active.iter().any(|a| a == word) {
                if let Some(def) = pp.macro_at(word, loc.line) {
                    active.push(word.to_string());
                    let body = def.body.clone();
                    lex_into(&body, path, Some(&loc), pp, active, out)?;
                    active.pop();
                    continue;
                }
            }
            out.push(Token { kind: TokenKind::Identifier, text: word.to_string(), loc, from_standard_macro: None });
            continue;
        }

        let starts_number = b.is_ascii_digit() || (b == b'.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit));
        if starts_number {
            let hex = b == b'0' && matches!(bytes.get(i + 1), Some(b'x') | Some(b'X'));
            let mut j = i;
            let mut is_float = false;
            while j < bytes.len() {
                let c = bytes[j];
                let exp = if hex { matches!(c, b'p' | b'P') } else { matches!(c, b'e' | b'E') };
                if exp {
                    is_float = true;
                    j += 1;
                    if matches!(bytes.get(j), Some(b'+') | Some(b'-')) {
                        j += 1;
                    }
                } else if c == b'.' {
                    is_float = true;
                    j += 1;
                } else if c.is_ascii_alphanumeric() || c == b'_' {
                    j += 1;
                } else {
                    break;
                }
            }
            i = j;
            let kind = if is_float { TokenKind::FloatLiteral } else { TokenKind::IntegerLiteral };
            out.push(Token { kind, text: text[start..i].to_string(), loc, from_standard_macro: None });
            continue;
        }

        if let Some(p) = PUNCTUATORS.iter().find(|p| bytes[i..].starts_with(p.as_bytes())) {
            i += p.len();
            out.push(Token { kind: TokenKind::Punctuator, text: p.to_string(), loc, from_standard_macro: None });
            continue;
        }

        let shown = text[i..].chars().next().unwrap_or('?');
        return Err(lex_err(&format!("illegal character `{}`", shown.escape_default())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::preprocess;

    fn lex(src: &str) -> Result<Vec<Token>, FrontendError> {
        tokenize(&preprocess(src, "t.c").unwrap())
    }

    #[test]
    fn eof_expands_to_tagged_literal() {
        let toks = lex("#include <stdio.h>\na==EOF").unwrap();
        let summary: Vec<_> = toks.iter().map(|t| (t.kind, t.text.as_str(), t.from_standard_macro)).collect();
        assert_eq!(
            summary,
            vec![
                (TokenKind::Identifier, "a", None),
                (TokenKind::Punctuator, "==", None),
                (TokenKind::IntegerLiteral, "-1", Some(StdMacro::Eof)),
                (TokenKind::EofMarker, "", None),
            ]
        );
        assert_eq!((toks[2].loc.line, toks[2].loc.column), (2, 4));
    }

    #[test]
    fn eof_without_stdio_is_an_identifier() {
        let toks = lex("a==EOF").unwrap();
        assert_eq!(toks[2].kind, TokenKind::Identifier);
    }

    #[test]
    fn unterminated_string_reports_column_one() {
        let err = lex("\"abc").unwrap_err();
        assert!(matches!(err, FrontendError::Lex { .. }));
        assert_eq!((err.loc().line, err.loc().column), (1, 1));
    }

    #[test]
    fn compound_assignment_is_one_punctuator() {
        let toks = lex("x += 1;").unwrap();
        assert_eq!(toks.len(), 5);
        assert_eq!(toks[1].text, "+=");
        assert_eq!(toks.last().unwrap().kind, TokenKind::EofMarker);
    }

    #[test]
    fn illegal_byte_is_rejected() {
        let err = lex("int a = 1 @ 2;").unwrap_err();
        assert_eq!(err.loc().column, 11);
    }

    #[test]
    fn object_macro_expands_at_use_site() {
        let toks = lex("#define LEN 16\nchar b[LEN];").unwrap();
        let lit = toks.iter().find(|t| t.text == "16").unwrap();
        assert_eq!(lit.kind, TokenKind::IntegerLiteral);
        assert_eq!((lit.loc.line, lit.loc.column), (2, 8));
    }

    #[test]
    fn self_referential_macro_terminates() {
        let toks = lex("#define X X + 1\nint a = X;").unwrap();
        assert!(toks.iter().any(|t| t.text == "X" && t.kind == TokenKind::Identifier));
    }

    #[test]
    fn literals_and_floats() {
        let toks = lex("1.5e-3 0x1F 'a' '\\n' \"s\\\"t\" 10UL").unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| t.kind).collect();
        assert_eq!(
            kinds,
            vec![
                TokenKind::FloatLiteral,
                TokenKind::IntegerLiteral,
                TokenKind::CharLiteral,
                TokenKind::CharLiteral,
                TokenKind::StringLiteral,
                TokenKind::IntegerLiteral,
                TokenKind::EofMarker
            ]
        );
    }
}
