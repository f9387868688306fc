//! Checks decidable from the resolved syntax tree alone.

use crate::frontend::ast::*;
use crate::frontend::StdMacro;
use crate::sema::{LibraryFamily, ParamRole, ResolvedUnit, SemaModel, TypeDesc};

use super::registry::known;
use super::Diagnostic;

/// Byte size of the object a buffer argument designates, when known.
pub(crate) fn buffer_size(sema: &SemaModel, arg: &Expr) -> Option<u64> {
    let arg = arg.peel_casts();
    match &arg.kind {
        ExprKind::Unary { op: UnaryOp::AddrOf, operand } => sema.object_type(operand).byte_size(),
        _ => match sema.object_type(arg) {
            t @ TypeDesc::Array(..) => t.byte_size(),
            _ => None,
        },
    }
}

fn library_calls(ru: &ResolvedUnit) -> Vec<(&Expr, &[Expr], &'static crate::sema::LibraryFunctionInfo)> {
    let mut out = Vec::new();
    walk_exprs(&ru.tu, &mut |e| {
        if let ExprKind::Call { args, .. } = &e.kind {
            if let Some(info) = ru.sema.library_call(e.id) {
                out.push((e, args.as_slice(), info));
            }
        }
    });
    out
}

pub fn check_sizeof_array_param(ru: &ResolvedUnit) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    walk_exprs(&ru.tu, &mut |e| {
        let ExprKind::Sizeof(SizeofOperand::Expr(inner)) = &e.kind else { return };
        if !matches!(inner.kind, ExprKind::Ident(_)) {
            return;
        }
        let Some(sym) = ru.sema.symbol_of_ref(inner.id).map(|s| ru.sema.symbol(s)) else { return };
        if sym.is_array_declared_parameter {
            out.push(Diagnostic::new(
                known("SEC.sizeof.1"),
                e.loc.clone(),
                format!("sizeof applied to array parameter `{}` yields the size of a pointer", sym.name),
            )
            .with_evidence([sym.decl_loc.clone()]));
        }
    });
    out
}

pub fn check_ctype_args(ru: &ResolvedUnit) -> Vec<Diagnostic> {
    library_calls(ru)
        .into_iter()
        .filter(|(_, _, info)| info.family == LibraryFamily::CtypeClassify)
        .filter_map(|(call, args, info)| {
            let arg = args.first()?;
            let et = ru.sema.essential_type(arg);
            let risky = matches!(et.ty, TypeDesc::PlainChar | TypeDesc::SignedChar) && !et.io_int;
            risky.then(|| {
                Diagnostic::new(
                    known("SEC.ctype.1"),
                    call.loc.clone(),
                    format!("argument to {} has type {} and may be negative; convert to unsigned char", info.name, et.ty),
                )
            })
        })
        .collect()
}

fn is_string_like(sema: &SemaModel, arg: &Expr) -> bool {
    let arg = arg.peel_casts();
    if matches!(arg.kind, ExprKind::StringLit(_)) {
        return true;
    }
    matches!(sema.object_type(arg).target(), Some(TypeDesc::PlainChar | TypeDesc::SignedChar))
}

fn points_to_struct(sema: &SemaModel, arg: &Expr) -> bool {
    matches!(sema.object_type(arg.peel_casts()).target(), Some(TypeDesc::Struct(_)))
}

pub fn check_mem_compare(ru: &ResolvedUnit) -> Vec<Diagnostic> {
    let sema = &ru.sema;
    let mut out = Vec::new();
    for (call, args, info) in library_calls(ru) {
        if info.family != LibraryFamily::MemCompareCopy {
            continue;
        }
        let buffers: Vec<&Expr> = info.args_with_role(ParamRole::Buffer, args.len()).map(|i| &args[i]).collect();
        if info.name == "memcmp" {
            if buffers.iter().any(|b| points_to_struct(sema, b)) {
                out.push(Diagnostic::new(
                    known("SEC.memcmp.1"),
                    call.loc.clone(),
                    "memcmp compares structure objects whose padding bytes are indeterminate",
                ));
            }
            if buffers.len() == 2 && buffers.iter().all(|b| is_string_like(sema, b)) {
                out.push(Diagnostic::new(
                    known("SEC.memcmp.2"),
                    call.loc.clone(),
                    "memcmp compares character strings past their terminator; use strcmp",
                ));
            }
        }
        let size = info.args_with_role(ParamRole::Size, args.len()).find_map(|i| sema.const_value(&args[i]));
        if let Some(size) = size {
            if let Some(cap) = buffers.iter().filter_map(|b| buffer_size(sema, b)).min() {
                if size > i128::from(cap) {
                    out.push(Diagnostic::new(
                        known("SEC.memcmp.3"),
                        call.loc.clone(),
                        format!("{} accesses {size} bytes of a {cap}-byte object", info.name),
                    ));
                }
            }
        }
    }
    out
}

pub fn check_string_unbounded(ru: &ResolvedUnit) -> Vec<Diagnostic> {
    library_calls(ru)
        .into_iter()
        .filter(|(_, _, info)| info.family == LibraryFamily::StringUnbounded)
        .map(|(call, _, info)| {
            Diagnostic::new(
                known("SEC.string.1"),
                call.loc.clone(),
                format!("{} has no bound on the bytes it writes", info.name),
            )
        })
        .collect()
}

pub fn check_eof_handling(ru: &ResolvedUnit) -> Vec<Diagnostic> {
    let is_eof = |e: &Expr| matches!(e.kind, ExprKind::IntLit { macro_origin: Some(StdMacro::Eof), .. });
    let mut out = Vec::new();
    walk_exprs(&ru.tu, &mut |e| {
        let ExprKind::Binary { op, lhs, rhs } = &e.kind else { return };
        if !op.is_comparison() {
            return;
        }
        let other = match (is_eof(lhs), is_eof(rhs)) {
            (true, false) => rhs,
            (false, true) => lhs,
            _ => return,
        };
        let ty = ru.sema.essential_type(other).ty;
        if ty.is_char() {
            out.push(Diagnostic::new(
                known("SEC.eof.1"),
                e.loc.clone(),
                format!("EOF compared with a value of type {ty}; the read result was truncated before the test"),
            ));
        }
    });
    out
}

pub fn check_banned_constructs(ru: &ResolvedUnit) -> Vec<Diagnostic> {
    library_calls(ru)
        .into_iter()
        .flat_map(|(call, _, info)| {
            let mut ids = Vec::new();
            if info.family == LibraryFamily::MemAlloc {
                ids.push(("BAN.21_3", "memory allocation function"));
            }
            if info.family == LibraryFamily::SignalApi {
                ids.push(("BAN.21_5", "<signal.h> facility"));
            }
            if info.header == "stdio.h" {
                ids.push(("BAN.21_6", "<stdio.h> function"));
            }
            if info.name == "getenv" {
                ids.push(("BAN.21_8", "environment query"));
            }
            ids.into_iter()
                .map(move |(id, what)| Diagnostic::new(known(id), call.loc.clone(), format!("use of {what} {}", info.name)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_source;
    use crate::sema::resolve;

    fn run(check: fn(&ResolvedUnit) -> Vec<Diagnostic>, src: &str) -> Vec<(&'static str, u32)> {
        let ru = resolve(parse_source(src, "t.c").unwrap().1).unwrap();
        check(&ru).into_iter().map(|d| (d.guideline.id, d.loc.line)).collect()
    }

    const HDRS: &str = "#include <string.h>\n#include <stdio.h>\n#include <ctype.h>\n#include <stdlib.h>\n#include <signal.h>\n";

    fn with_headers(body: &str) -> String {
        format!("{HDRS}{body}")
    }

    #[test]
    fn sizeof_array_parameter() {
        assert_eq!(run(check_sizeof_array_param, "void f(int a[4]){ unsigned long s = sizeof(a); }").len(), 1);
        assert!(run(check_sizeof_array_param, "void f(int *a){ unsigned long s = sizeof(a); }").is_empty());
        assert!(run(check_sizeof_array_param, "void f(int a[4]){ unsigned long s = sizeof(a[0]); }").is_empty());
    }

    #[test]
    fn ctype_arguments() {
        assert_eq!(run(check_ctype_args, &with_headers("void f(char c){ isalpha(c); }")).len(), 1);
        assert!(run(check_ctype_args, &with_headers("void f(char c){ isalpha((unsigned char)c); }")).is_empty());
        assert!(run(check_ctype_args, &with_headers("void f(void){ int c = getchar(); isalpha(c); }")).is_empty());
        assert!(run(check_ctype_args, &with_headers("void f(void){ isalpha(getchar()); }")).is_empty());
        assert!(run(check_ctype_args, "void f(char c){ isalpha(c); }").is_empty());
    }

    #[test]
    fn memcmp_sub_rules() {
        let a = with_headers("struct S { int x; char y; };\nvoid f(void){ struct S a, b; memcmp(&a, &b, sizeof a); }");
        assert_eq!(run(check_mem_compare, &a), [("SEC.memcmp.1", 7)]);
        let b = with_headers("void f(void){ char x[8], y[8]; memcmp(x, y, 8); }");
        assert_eq!(run(check_mem_compare, &b), [("SEC.memcmp.2", 6)]);
        let c = with_headers("void f(const char *src){ char d[4]; memcpy(d, src, 8); }");
        assert_eq!(run(check_mem_compare, &c), [("SEC.memcmp.3", 6)]);
        let ok = with_headers("void f(const unsigned char *p){ unsigned char d[8]; memcpy(d, p, sizeof d); memcmp(d, p, 8); }");
        assert!(run(check_mem_compare, &ok).is_empty());
    }

    #[test]
    fn unbounded_strings() {
        assert_eq!(run(check_string_unbounded, &with_headers("void f(char *d, const char *s){ strcpy(d, s); }")).len(), 1);
        assert!(run(check_string_unbounded, &with_headers("void f(char *d, const char *s){ strncpy(d, s, 4); }")).is_empty());
    }

    #[test]
    fn eof_comparisons() {
        assert_eq!(run(check_eof_handling, &with_headers("void f(void){ char c = getchar(); if (c == EOF) c = 0; }")).len(), 1);
        assert!(run(check_eof_handling, &with_headers("void f(void){ int c = getchar(); if (c == EOF) c = 0; }")).is_empty());
        assert!(run(check_eof_handling, &with_headers("void f(void){ char c = 'a'; if (c == -1) c = 0; }")).is_empty());
        assert_eq!(
            run(check_eof_handling, &with_headers("void f(void){ char c; while ((c = getchar()) != EOF) { } }")).len(),
            1
        );
    }

    #[test]
    fn bans() {
        let src = with_headers("void h(int s){ }\nvoid f(void){ char *p = malloc(8); signal(2, h); printf(\"x\"); getenv(\"A\"); free(p); }");
        let ids: Vec<_> = run(check_banned_constructs, &src).into_iter().map(|(id, _)| id).collect();
        assert_eq!(ids, ["BAN.21_3", "BAN.21_5", "BAN.21_6", "BAN.21_8", "BAN.21_3"]);
    }
}
