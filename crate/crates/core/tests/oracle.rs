mod support;

use proptest::prelude::*;
use seclint::checkers::dataflow::{propagate, Taint};
use seclint::checkers::{analyze_source, AnalysisOptions};
use seclint::frontend::parse_source;
use seclint::sema::{build_cfg, resolve};
use support::oracle::compare_source;

#[test]
fn corpus_functions_agree_with_oracle() {
    let mut compared = 0;
    for path in support::corpus_files() {
        let name = path.display().to_string();
        for c in compare_source(&name, &support::read(&path), 6).unwrap() {
            assert!(c.agrees(), "{name}: {}\noracle {:?}\nfixpoint {:?}", c.function, c.oracle, c.fixpoint);
            compared += 1;
        }
    }
    assert!(compared >= 90, "only {compared} functions compared");
}

#[test]
fn taint_join_has_one_tainted_sink() {
    let path = support::corpus_dir().join("extdata/taint_join.c");
    let text = support::read(&path);
    let cmp = compare_source("taint_join.c", &text, 6).unwrap();
    let main = cmp.iter().find(|c| c.function == "main").unwrap();
    assert!(main.agrees());
    assert_eq!(main.tainted_sinks(), 1);
    assert!(main.paths >= 3);
    let a = analyze_source("taint_join.c", &text, &AnalysisOptions::default()).unwrap();
    assert_eq!(a.diagnostics.iter().filter(|d| d.guideline.id == "SEC.extdata.1").count(), 1);
}

#[test]
fn loop_retaint_converges_quickly_and_taints_head() {
    let text = support::read(&support::corpus_dir().join("extdata/loop_retaint.c"));
    let (_, tu) = parse_source(&text, "loop_retaint.c").unwrap();
    let ru = resolve(tu).unwrap();
    let f = ru.tu.functions().next().unwrap();
    let cfg = build_cfg(f);
    let fp = propagate(&ru.sema, &cfg);
    assert!(fp.passes <= cfg.blocks.len() + 1, "{} passes over {} blocks", fp.passes, cfg.blocks.len());
    let v = ru.sema.symbols.iter().position(|s| s.name == "v").unwrap();
    let head = cfg.blocks.iter().find(|b| b.preds.len() > 1 && b.condition().is_some()).unwrap();
    assert_eq!(fp.ins[head.id].as_ref().unwrap().taint_of(v), Taint::Tainted);
    let cmp = compare_source("loop_retaint.c", &text, 6).unwrap();
    assert!(cmp.iter().all(|c| c.agrees()));
}

#[derive(Debug, Clone)]
enum Stmt {
    Assign(usize, Rhs),
    Sink(usize),
    Copy(usize),
    Guard(usize, Vec<Stmt>, Vec<Stmt>),
    Loop(Vec<Stmt>),
}

#[derive(Debug, Clone)]
enum Rhs {
    Arg,
    Const(u8),
    Var(usize),
    Sum(usize, usize),
}

const VARS: [&str; 3] = ["a", "b", "c"];

fn render(stmts: &[Stmt], depth: usize, out: &mut String) {
    let pad = "    ".repeat(depth);
    for s in stmts {
        match s {
            Stmt::Assign(v, rhs) => {
                let r = match rhs {
                    Rhs::Arg => "atoi(argv[1])".to_string(),
                    Rhs::Const(k) => k.to_string(),
                    Rhs::Var(w) => VARS[*w].to_string(),
                    Rhs::Sum(x, y) => format!("{} + {}", VARS[*x], VARS[*y]),
                };
                out.push_str(&format!("{pad}{} = {r};\n", VARS[*v]));
            }
            Stmt::Sink(v) => out.push_str(&format!("{pad}buf[{}] = 0;\n", VARS[*v])),
            Stmt::Copy(v) => out.push_str(&format!("{pad}memcpy(buf, buf, {});\n", VARS[*v])),
            Stmt::Guard(v, then, els) => {
                out.push_str(&format!("{pad}if ({v} >= 0 && {v} < 8) {{\n", v = VARS[*v]));
                render(then, depth + 1, out);
                out.push_str(&format!("{pad}}} else {{\n"));
                render(els, depth + 1, out);
                out.push_str(&format!("{pad}}}\n"));
            }
            Stmt::Loop(body) => {
                out.push_str(&format!("{pad}for (k = 0; k < 3; k++) {{\n"));
                render(body, depth + 1, out);
                out.push_str(&format!("{pad}}}\n"));
            }
        }
    }
}

fn program(stmts: &[Stmt]) -> String {
    let mut s = String::from(
        "#include <string.h>\n\nint atoi(const char *s);\n\nint main(int argc, char **argv) {\n    int buf[8];\n    int a = 0;\n    int b = 0;\n    int c = argc;\n    int k;\n",
    );
    render(stmts, 1, &mut s);
    s.push_str("    return buf[0];\n}\n");
    s
}

fn stmt() -> impl Strategy<Value = Stmt> {
    let var = 0..VARS.len();
    let rhs = prop_oneof![
        Just(Rhs::Arg),
        (0u8..8).prop_map(Rhs::Const),
        (0..VARS.len()).prop_map(Rhs::Var),
        (0..VARS.len(), 0..VARS.len()).prop_map(|(x, y)| Rhs::Sum(x, y)),
    ];
    let leaf = prop_oneof![
        3 => (var.clone(), rhs).prop_map(|(v, r)| Stmt::Assign(v, r)),
        1 => var.clone().prop_map(Stmt::Sink),
        1 => var.prop_map(Stmt::Copy),
    ];
    leaf.prop_recursive(2, 12, 4, |inner| {
        prop_oneof![
            (0..VARS.len(), prop::collection::vec(inner.clone(), 0..4), prop::collection::vec(inner.clone(), 0..3))
                .prop_map(|(v, t, e)| Stmt::Guard(v, t, e)),
            prop::collection::vec(inner, 1..4).prop_map(Stmt::Loop),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn generated_programs_agree_with_oracle(stmts in prop::collection::vec(stmt(), 1..7)) {
        let src = program(&stmts);
        for c in compare_source("gen.c", &src, 6).unwrap() {
            prop_assert!(c.agrees(), "{src}\noracle {:?}\nfixpoint {:?}", c.oracle, c.fixpoint);
        }
    }
}
