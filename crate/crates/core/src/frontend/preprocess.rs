use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{FrontendError, SourceLocation};

/// Standard headers whose inclusion is recorded. Any other include is blanked
/// without being recorded.
pub const RECOGNIZED_HEADERS: [&str; 13] = [
    "assert.h", "ctype.h", "errno.h", "limits.h", "locale.h", "math.h", "signal.h", "stdarg.h",
    "stddef.h", "stdio.h", "stdlib.h", "string.h", "time.h",
];

/// A comment removed from the source, kept for annotation scanning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comment {
    pub line: u32,
    pub end_line: u32,
    /// Comment body without the `//` or `/* */` delimiters.
    pub text: String,
}

/// An object-like `#define`, live on lines `defined_line + 1 ..= undefined_line`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectMacro {
    pub name: String,
    pub body: String,
    pub defined_line: u32,
    pub undefined_line: Option<u32>,
}

impl ObjectMacro {
    pub fn is_live_at(&self, line: u32) -> bool {
        line > self.defined_line && self.undefined_line.is_none_or(|u| line < u)
    }
}

/// Output of [`preprocess`]: the blanked text plus everything it removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preprocessed {
    pub path: Arc<str>,
    pub text: String,
    /// Recognized header → line of its first `#include`.
    pub headers: BTreeMap<String, u32>,
    pub comments: Vec<Comment>,
    pub macros: Vec<ObjectMacro>,
}

impl Preprocessed {
    pub fn header_names(&self) -> BTreeSet<String> {
        self.headers.keys().cloned().collect()
    }

    pub fn includes(&self, header: &str) -> bool {
        self.headers.contains_key(header)
    }

    pub fn macro_at(&self, name: &str, line: u32) -> Option<&ObjectMacro> {
        self.macros.iter().rev().find(|m| m.name == name && m.is_live_at(line))
    }
}

/// Strips comments, records and blanks directives. The output has exactly as
/// many lines as the input and every surviving byte keeps its column.
pub fn preprocess(source_text: &str, path: &str) -> Result<Preprocessed, FrontendError> {
    let path: Arc<str> = Arc::from(path);
    let (stripped, comments) = strip_comments(source_text);

    let mut out = String::with_capacity(stripped.len());
    let mut headers = BTreeMap::new();
    let mut macros: Vec<ObjectMacro> = Vec::new();

    for (idx, line) in stripped.split_inclusive('\n').enumerate() {
        let line_no = idx as u32 + 1;
        let (body, newline) = match line.strip_suffix('\n') {
            Some(b) => (b, "\n"),
            None => (line, ""),
        };
        let trimmed = body.trim_start();
        if !trimmed.starts_with('#') {
            out.push_str(line);
            continue;
        }
        let hash_col = (body.len() - trimmed.len()) as u32 + 1;
        let loc = SourceLocation::new(path.clone(), line_no, hash_col);
        let rest = trimmed[1..].trim_start();
        let name_len = rest.bytes().take_while(|b| b.is_ascii_alphanumeric() || *b == b'_').count();
        let (name, args) = rest.split_at(name_len);
        let unsupported = |directive: &str| FrontendError::UnsupportedDirective {
            directive: directive.to_string(),
            loc: loc.clone(),
        };
        if body.trim_end().ends_with('\\') {
            return Err(unsupported(&format!("{name} (line continuation)")));
        }
        match name {
            "" if args.trim().is_empty() => {}
            "include" => {
                let arg = args.trim();
                let header = if let Some(inner) = arg.strip_prefix('<').and_then(|a| a.strip_suffix('>')) {
                    inner
                } else if let Some(inner) = arg.strip_prefix('"').and_then(|a| a.strip_suffix('"')) {
                    inner
                } else {
                    return Err(unsupported("include (computed header name)"));
                };
                if RECOGNIZED_HEADERS.contains(&header) {
                    headers.entry(header.to_string()).or_insert(line_no);
                }
            }
            "define" => {
                let args = args.trim_start();
                let mlen = args.bytes().take_while(|b| b.is_ascii_alphanumeric() || *b == b'_').count();
                if mlen == 0 {
                    return Err(unsupported("define (missing macro name)"));
                }
                let (mname, mbody) = args.split_at(mlen);
                if mbody.starts_with('(') {
                    return Err(unsupported("define (function-like macro)"));
                }
                if let Some(prev) = macros.iter_mut().rev().find(|m| m.name == mname && m.undefined_line.is_none()) {
                    prev.undefined_line = Some(line_no);
                }
                macros.push(ObjectMacro {
                    name: mname.to_string(),
                    body: mbody.trim().to_string(),
                    defined_line: line_no,
                    undefined_line: None,
                });
            }
            "undef" => {
                let mname = args.trim();
                if let Some(prev) = macros.iter_mut().rev().find(|m| m.name == mname && m.undefined_line.is_none()) {
                    prev.undefined_line = Some(line_no);
                }
            }
            "pragma" => {}
            other => return Err(unsupported(other)),
        }
        out.push_str(newline);
    }

    Ok(Preprocessed { path, text: out, headers, comments, macros })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Code,
    Str,
    Chr,
    LineComment,
    BlockComment,
}

/// Replaces every comment byte with a space (newlines kept).
fn strip_comments(src: &str) -> (String, Vec<Comment>) {
    let bytes = src.as_bytes();
    let mut out: Vec<u8> = Vec::with_capacity(bytes.len());
    let mut comments = Vec::new();
    let mut mode = Mode::Code;
    let mut line: u32 = 1;
    let mut start_line = 1;
    let mut text_start = 0;
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let next = bytes.get(i + 1).copied();
        match mode {
            Mode::Code => match (b, next) {
                (b'/', Some(b'/')) => {
                    mode = Mode::LineComment;
                    start_line = line;
                    text_start = i + 2;
                    out.extend_from_slice(b"  ");
                    i += 2;
                    continue;
                }
                (b'/', Some(b'*')) => {
                    mode = Mode::BlockComment;
                    start_line = line;
                    text_start = i + 2;
                    out.extend_from_slice(b"  ");
                    i += 2;
                    continue;
                }
                (b'"', _) => mode = Mode::Str,
                (b'\'', _) => mode = Mode::Chr,
                _ => {}
            },
            Mode::Str | Mode::Chr => {
                let close = if mode == Mode::Str { b'"' } else { b'\'' };
                if b == b'\\' && next.is_some() && next != Some(b'\n') {
                    out.push(b);
                    out.push(next.unwrap_or(b' '));
                    i += 2;
                    continue;
                }
                // An unterminated literal ends at the newline; the lexer reports it.
                if b == close || b == b'\n' {
                    mode = Mode::Code;
                }
            }
            Mode::LineComment => {
                if b == b'\n' {
                    comments.push(Comment {
                        line: start_line,
                        end_line: start_line,
                        text: String::from_utf8_lossy(&bytes[text_start..i]).into_owned(),
                    });
                    mode = Mode::Code;
                } else {
                    out.push(b' ');
                    i += 1;
                    continue;
                }
            }
            Mode::BlockComment => {
                if b == b'*' && next == Some(b'/') {
                    comments.push(Comment {
                        line: start_line,
                        end_line: line,
                        text: String::from_utf8_lossy(&bytes[text_start..i]).into_owned(),
                    });
                    out.extend_from_slice(b"  ");
                    mode = Mode::Code;
                    i += 2;
                    continue;
                }
                if b != b'\n' {
                    out.push(b' ');
                    i += 1;
                    continue;
                }
            }
        }
        if b == b'\n' {
            line += 1;
        }
        out.push(b);
        i += 1;
    }
    match mode {
        Mode::LineComment => comments.push(Comment {
            line: start_line,
            end_line: start_line,
            text: String::from_utf8_lossy(&bytes[text_start..]).into_owned(),
        }),
        Mode::BlockComment => comments.push(Comment {
            line: start_line,
            end_line: line,
            text: String::from_utf8_lossy(&bytes[text_start..]).into_owned(),
        }),
        _ => {}
    }
    // Only ASCII bytes inside comments were replaced, so this cannot fail on
    // valid UTF-8 input; multi-byte sequences in comments become runs of spaces.
    let text = String::from_utf8(out).unwrap_or_else(|e| String::from_utf8_lossy(e.as_bytes()).into_owned());
    (text, comments)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comment_replacement_preserves_columns() {
        let pp = preprocess("/*x*/int a;", "t.c").unwrap();
        assert_eq!(pp.text, "     int a;");
        assert_eq!(pp.text.find("int"), Some(5));
        assert!(pp.headers.is_empty());
        assert_eq!(pp.comments[0].text, "x");
    }

    #[test]
    fn include_is_recorded_and_blanked() {
        let pp = preprocess("#include <ctype.h>\nint a;", "t.c").unwrap();
        assert_eq!(pp.text, "\nint a;");
        assert_eq!(pp.header_names(), BTreeSet::from(["ctype.h".to_string()]));
    }

    #[test]
    fn unknown_header_is_blanked_not_recorded() {
        let pp = preprocess("#include \"mine.h\"\n", "t.c").unwrap();
        assert!(pp.headers.is_empty());
        assert_eq!(pp.text, "\n");
    }

    #[test]
    fn function_like_macro_is_rejected() {
        let err = preprocess("#define SQ(x) ((x)*(x))", "t.c").unwrap_err();
        match err {
            FrontendError::UnsupportedDirective { directive, loc } => {
                assert!(directive.contains("function-like"));
                assert_eq!((loc.line, loc.column), (1, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn conditional_compilation_is_rejected() {
        let err = preprocess("int a;\n  #ifdef X\n#endif\n", "t.c").unwrap_err();
        assert_eq!(err.loc().line, 2);
        assert_eq!(err.loc().column, 3);
        assert!(matches!(err, FrontendError::UnsupportedDirective { ref directive, .. } if directive == "ifdef"));
    }

    #[test]
    fn comment_markers_inside_literals_are_kept() {
        let pp = preprocess("char *s = \"//x\"; /* y */ char c = '/';\n", "t.c").unwrap();
        assert!(pp.text.contains("\"//x\""));
        assert!(pp.text.contains("'/'"));
        assert_eq!(pp.comments.len(), 1);
    }

    #[test]
    fn multi_line_block_comment_keeps_line_count() {
        let src = "int a; /* one\ntwo\nthree */ int b;\n";
        let pp = preprocess(src, "t.c").unwrap();
        assert_eq!(pp.text.lines().count(), src.lines().count());
        let last = pp.text.lines().nth(2).unwrap();
        assert_eq!(last.find("int"), src.lines().nth(2).unwrap().find("int"));
        assert_eq!((pp.comments[0].line, pp.comments[0].end_line), (1, 3));
    }

    #[test]
    fn object_macro_liveness_follows_define_and_undef() {
        let pp = preprocess("#define N 4\nint a[N];\n#undef N\nint N;\n", "t.c").unwrap();
        assert!(pp.macro_at("N", 2).is_some());
        assert!(pp.macro_at("N", 4).is_none());
        assert!(pp.macro_at("N", 1).is_none());
    }
}
