//! Checks evaluated against the dataflow fixpoint.

use std::collections::{BTreeSet, HashMap};

use crate::frontend::ast::*;
use crate::frontend::SourceLocation;
use crate::sema::{build_cfg, LibraryFamily, LibraryFunctionInfo, ParamRole, ResolvedUnit};

use super::dataflow::{propagate, DataflowState, EnvPointer, ErrnoPhase, Observer, Taint, Value};
use super::registry::known;
use super::syntactic::buffer_size;
use super::Diagnostic;

struct FlowChecker<'a> {
    ru: &'a ResolvedUnit,
    call_locs: &'a HashMap<NodeId, SourceLocation>,
    untested: BTreeSet<NodeId>,
    out: Vec<Diagnostic>,
}

fn origins(p: &EnvPointer) -> Vec<SourceLocation> {
    p.origins.iter().cloned().collect()
}

impl FlowChecker<'_> {
    fn emit(&mut self, id: &str, loc: &SourceLocation, message: String) {
        self.out.push(Diagnostic::new(known(id), loc.clone(), message));
    }

    fn untested_call(&mut self, call: NodeId) {
        if self.untested.insert(call) {
            if let Some(loc) = self.call_locs.get(&call).cloned() {
                self.emit("SEC.errno.2", &loc, "errno is not tested after this call".into());
            }
        }
    }

    fn flag_pending(&mut self, state: &DataflowState) {
        for phase in &state.errno {
            if let ErrnoPhase::CallMade(c) = phase {
                self.untested_call(*c);
            }
        }
    }

    fn bounded_string(&mut self, call: &Expr, args: &[Expr], info: &LibraryFunctionInfo, values: &[Value]) {
        let sema = &self.ru.sema;
        let sizes: Vec<usize> = info.args_with_role(ParamRole::Size, args.len()).collect();
        let tainted = sizes.iter().any(|&i| values[i].taint == Taint::Tainted);
        let dest = args.first().and_then(|d| buffer_size(sema, d));
        let excess = sizes.iter().find_map(|&i| sema.const_value(&args[i])).zip(dest).filter(|&(n, cap)| n > i128::from(cap));
        let message = match (excess, tainted) {
            (Some((n, cap)), _) => format!("{} bound {n} exceeds the {cap}-byte destination", info.name),
            (None, true) => format!("{} bound is derived from unvalidated external data", info.name),
            (None, false) => return,
        };
        self.emit("SEC.string.2", &call.loc, message);
    }
}

impl Observer for FlowChecker<'_> {
    fn subscript(&mut self, expr: &Expr, index: &Value) {
        if index.taint == Taint::Tainted {
            self.emit("SEC.extdata.1", &expr.loc, "array index is derived from unvalidated external data".into());
        }
    }

    fn call(&mut self, call: &Expr, info: Option<&'static LibraryFunctionInfo>, values: &[Value], state: &DataflowState) {
        let ExprKind::Call { args, .. } = &call.kind else { return };
        for (arg, v) in args.iter().zip(values) {
            if let Some(p) = v.env.as_ref().filter(|p| p.stale) {
                let d = Diagnostic::new(
                    known("SEC.env.2"),
                    arg.loc.clone(),
                    "pointer from an environment function is used after a later such call",
                )
                .with_evidence(origins(p));
                self.out.push(d);
            }
        }
        let Some(info) = info else { return };

        let size_sink = matches!(info.family, LibraryFamily::MemCompareCopy | LibraryFamily::StringBounded);
        for (i, (arg, v)) in args.iter().zip(values).enumerate() {
            let sink = info.name == "system" || (size_sink && info.role_of(i) == ParamRole::Size);
            if sink && v.taint == Taint::Tainted {
                self.emit("SEC.extdata.1", &arg.loc, format!("argument to {} is derived from unvalidated external data", info.name));
            }
        }

        if info.family == LibraryFamily::StringBounded {
            self.bounded_string(call, args, info, values);
        }

        let written: Vec<usize> = if info.reads_external_input() {
            info.args_with_role(ParamRole::Buffer, args.len()).collect()
        } else if info.writes_first_buffer {
            vec![0]
        } else {
            vec![]
        };
        for i in written {
            if let Some(p) = values.get(i).and_then(|v| v.env.as_ref()) {
                let d = Diagnostic::new(
                    known("SEC.env.1"),
                    call.loc.clone(),
                    format!("{} writes into storage owned by an environment function", info.name),
                )
                .with_evidence(origins(p));
                self.out.push(d);
            }
        }

        if info.family == LibraryFamily::ErrnoSetting {
            if state.errno.iter().any(|p| *p != ErrnoPhase::Zeroed) {
                self.emit("SEC.errno.1", &call.loc, format!("errno is not set to zero before calling {}", info.name));
            }
            self.flag_pending(state);
        }
    }

    fn errno_read(&mut self, expr: &Expr, state: &DataflowState) {
        if state.errno.iter().any(|p| matches!(p, ErrnoPhase::Indeterminate | ErrnoPhase::Zeroed)) {
            self.emit("SEC.errno.3", &expr.loc, "errno is tested without a preceding errno-setting call".into());
        }
    }

    fn errno_write(&mut self, _expr: &Expr, state: &DataflowState) {
        self.flag_pending(state);
    }

    fn write_through(&mut self, lvalue: &Expr, pointer: &Value) {
        if let Some(p) = &pointer.env {
            let d = Diagnostic::new(known("SEC.env.1"), lvalue.loc.clone(), "write into storage owned by an environment function")
                .with_evidence(origins(p));
            self.out.push(d);
        }
    }

    fn read_through(&mut self, expr: &Expr, pointer: &Value) {
        if let Some(p) = pointer.env.as_ref().filter(|p| p.stale) {
            let d = Diagnostic::new(
                known("SEC.env.2"),
                expr.loc.clone(),
                "read through a pointer from an environment function after a later such call",
            )
            .with_evidence(origins(p));
            self.out.push(d);
        }
    }

    fn loop_condition(&mut self, cond: &Expr, tainted_bound: bool) {
        if tainted_bound {
            self.emit("SEC.extdata.1", &cond.loc, "loop bound is derived from unvalidated external data".into());
        }
    }

    fn function_exit(&mut self, state: &DataflowState) {
        self.flag_pending(state);
    }
}

/// Runs the dataflow checks over every function of the unit.
pub fn check_flow(ru: &ResolvedUnit) -> Vec<Diagnostic> {
    let mut call_locs = HashMap::new();
    walk_exprs(&ru.tu, &mut |e| {
        if matches!(e.kind, ExprKind::Call { .. }) {
            call_locs.insert(e.id, e.loc.clone());
        }
    });
    let mut out = Vec::new();
    for f in ru.tu.functions() {
        let cfg = build_cfg(f);
        let fx = propagate(&ru.sema, &cfg);
        let mut checker = FlowChecker { ru, call_locs: &call_locs, untested: BTreeSet::new(), out: Vec::new() };
        fx.observe(&ru.sema, &cfg, &mut checker);
        out.append(&mut checker.out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_source;
    use crate::sema::resolve;

    const HDRS: &str = "#include <string.h>\n#include <stdio.h>\n#include <stdlib.h>\n#include <errno.h>\n";

    fn run(body: &str) -> Vec<(&'static str, u32)> {
        let src = format!("{HDRS}{body}");
        let ru = resolve(parse_source(&src, "t.c").unwrap().1).unwrap();
        let mut d = check_flow(&ru);
        super::super::sort_diagnostics(&mut d);
        d.into_iter().map(|d| (d.guideline.id, d.loc.line - 4)).collect()
    }

    #[test]
    fn argv_index_is_flagged() {
        let r = run("int atoi(const char *s);\nint main(int argc, char *argv[]) {\n char buf[8];\n int n = atoi(argv[1]);\n buf[n] = 0;\n return 0;\n}");
        assert_eq!(r, [("SEC.extdata.1", 5)]);
    }

    #[test]
    fn range_check_validates() {
        let r = run("void f(char *buf) {\n int n = atoi(getenv(\"N\"));\n if (n >= 0 && n < 10) buf[n] = 0;\n}\nint atoi(const char *s);");
        assert!(r.is_empty(), "{r:?}");
    }

    #[test]
    fn env_sub_rules() {
        assert_eq!(run("void f(void) {\n char *p = getenv(\"A\");\n p[0] = 'x';\n}"), [("SEC.env.1", 3)]);
        assert_eq!(
            run("void use(char c);\nvoid f(void) {\n char *p = getenv(\"A\");\n char *q = getenv(\"B\");\n use(p[0]);\n}"),
            [("SEC.env.2", 5)]
        );
        assert!(run("void copybuf(char *s);\nvoid f(void) {\n char *p = getenv(\"A\");\n copybuf(p);\n char *q = getenv(\"B\");\n}").is_empty());
    }

    #[test]
    fn bounded_string_sub_rule() {
        assert_eq!(run("void f(const char *s) {\n char d[4];\n strncpy(d, s, 8);\n}"), [("SEC.string.2", 3)]);
        assert!(run("void f(const char *s) {\n char d[16];\n strncpy(d, s, sizeof d);\n}").is_empty());
    }

    #[test]
    fn errno_protocol() {
        let ok = run("void f(const char *s) {\n long v;\n errno = 0;\n v = strtol(s, 0, 10);\n if (errno) v = 0;\n}");
        assert!(ok.is_empty(), "{ok:?}");
        let a = run("void f(const char *s) {\n long v;\n v = strtol(s, 0, 10);\n if (errno) v = 0;\n}");
        assert_eq!(a, [("SEC.errno.1", 3)]);
        let two = run("void f(const char *s, const char *t) {\n long v; double w;\n errno = 0;\n v = strtol(s, 0, 10);\n w = strtod(t, 0);\n if (errno) v = 0;\n}");
        assert_eq!(two, [("SEC.errno.2", 4), ("SEC.errno.1", 5)]);
        let c = run("void f(void) {\n int e;\n e = errno;\n}");
        assert_eq!(c, [("SEC.errno.3", 3)]);
        let reset = run("void f(const char *s) {\n long v = strtol(s, 0, 10);\n errno = 0;\n v = strtol(s, 0, 10);\n if (errno) v = 0;\n}");
        assert_eq!(reset, [("SEC.errno.1", 2), ("SEC.errno.2", 2)]);
    }

    #[test]
    fn taint_join_after_one_sided_validation() {
        let r = run("void f(char *buf, int mode) {\n int n = atoi(getenv(\"N\"));\n int idx = 0;\n if (mode) {\n  if (n < 8) idx = n;\n } else {\n  idx = n;\n }\n buf[idx] = 0;\n}\nint atoi(const char *s);");
        assert_eq!(r, [("SEC.extdata.1", 9)]);
    }

    #[test]
    fn tainted_loop_bound() {
        let r = run("void f(char *buf) {\n int i;\n int n = atoi(getenv(\"N\"));\n for (i = 0; i < n; i++) buf[0] = 0;\n}\nint atoi(const char *s);");
        assert_eq!(r, [("SEC.extdata.1", 4)]);
    }
}
