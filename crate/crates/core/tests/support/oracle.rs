//! Path-enumeration taint oracle.
//!
//! Walks every entry-to-exit path of a function's CFG (each block visited at
//! most `max_visits` times per path), simulating per-variable taint on that
//! single path with no joins. A sink is tainted if any path reaches it with a
//! tainted value. The fixpoint analysis must agree on every sink.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use seclint::checkers::dataflow::{propagate, DataflowState, Observer, Taint, Value};
use seclint::frontend::ast::{BinaryOp, Expr, ExprKind, Initializer, NodeId, UnaryOp};
use seclint::frontend::parse_source;
use seclint::sema::{
    build_cfg, resolve, BasicBlock, Cfg, EdgeKind, Element, LibraryFamily, LibraryFunctionInfo, ParamRole, SemaModel,
    SymbolId,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sink {
    Index,
    SizeArg(usize),
    SystemArg(usize),
    LoopBound,
}

pub type Verdicts = BTreeMap<(NodeId, Sink), bool>;

const U: u8 = 0;
const V: u8 = 1;
const T: u8 = 2;

fn record(v: &mut Verdicts, id: NodeId, sink: Sink, tainted: bool) {
    *v.entry((id, sink)).or_insert(false) |= tainted;
}

fn call_sinks(call: &Expr, info: Option<&LibraryFunctionInfo>, tainted: &[bool], out: &mut Verdicts) {
    let Some(info) = info else { return };
    for (i, &t) in tainted.iter().enumerate() {
        if info.name == "system" {
            record(out, call.id, Sink::SystemArg(i), t);
        } else if matches!(info.family, LibraryFamily::MemCompareCopy | LibraryFamily::StringBounded)
            && info.role_of(i) == ParamRole::Size
        {
            record(out, call.id, Sink::SizeArg(i), t);
        }
    }
}

enum Place {
    Var(SymbolId),
    Through(Option<SymbolId>),
    Unknown,
}

type Env = HashMap<SymbolId, u8>;

pub struct Oracle<'a> {
    sema: &'a SemaModel,
    cfg: &'a Cfg<'a>,
    max_visits: u32,
    path_limit: usize,
    pub paths: usize,
    pub verdicts: Verdicts,
}

impl<'a> Oracle<'a> {
    pub fn new(sema: &'a SemaModel, cfg: &'a Cfg<'a>) -> Self {
        Oracle { sema, cfg, max_visits: 3, path_limit: 2_000_000, paths: 0, verdicts: Verdicts::new() }
    }

    /// Enumerates all paths. Returns `false` if the path limit was hit.
    pub fn run(&mut self) -> bool {
        let mut env = Env::new();
        let f = self.cfg.function;
        if f.name == "main" {
            if let Some(&sym) = f.params.get(1).and_then(|p| self.sema.decls.get(&p.id)) {
                env.insert(sym, T);
            }
        }
        let mut visits = vec![0u32; self.cfg.blocks.len()];
        self.walk(self.cfg.entry(), env, &mut visits)
    }

    fn walk(&mut self, b: usize, mut env: Env, visits: &mut Vec<u32>) -> bool {
        if self.paths >= self.path_limit {
            return false;
        }
        visits[b] += 1;
        let block: &BasicBlock = &self.cfg.blocks[b];
        let mut sinks = std::mem::take(&mut self.verdicts);
        for el in &block.elements {
            self.element(el, &mut env, &mut sinks);
        }
        self.verdicts = sinks;
        let mut complete = true;
        let succs: Vec<_> = block.succs.iter().filter(|e| visits[e.to] < self.max_visits).copied().collect();
        if succs.is_empty() {
            self.paths += 1;
        }
        for e in succs {
            let mut next = env.clone();
            if e.kind == EdgeKind::BranchTrue {
                if let Some(sym) = block.condition().and_then(|c| self.guarded(c)) {
                    if next.get(&sym) == Some(&T) {
                        next.insert(sym, V);
                    }
                }
            }
            complete &= self.walk(e.to, next, visits);
        }
        visits[b] -= 1;
        complete
    }

    fn guarded(&self, cond: &Expr) -> Option<SymbolId> {
        let ExprKind::Binary { op, lhs, rhs } = &cond.kind else { return None };
        if !matches!(op, BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge) {
            return None;
        }
        let ident = |e: &Expr| {
            let e = e.peel_casts();
            matches!(e.kind, ExprKind::Ident(_)).then(|| self.sema.symbol_of_ref(e.id)).flatten().filter(|&s| !self.sema.is_errno(s))
        };
        match (ident(lhs), ident(rhs)) {
            (Some(s), None) if self.sema.is_constant(rhs) => Some(s),
            (None, Some(s)) if self.sema.is_constant(lhs) => Some(s),
            _ => None,
        }
    }

    fn element(&self, el: &Element, env: &mut Env, out: &mut Verdicts) {
        match *el {
            Element::Decl(d) => {
                let Some(&sym) = self.sema.decls.get(&d.id) else { return };
                let t = match &d.init {
                    Some(Initializer::Expr(e)) => self.eval(e, env, out),
                    Some(list) => list.exprs().into_iter().map(|e| self.eval(e, env, out)).max().unwrap_or(U),
                    None => U,
                };
                env.insert(sym, t);
            }
            Element::Expr(e) | Element::Return(Some(e)) => {
                self.eval(e, env, out);
            }
            Element::Return(None) => {}
            Element::Condition { expr, in_loop } => {
                if !in_loop {
                    self.eval(expr, env, out);
                    return;
                }
                let tainted = match &expr.kind {
                    ExprKind::Binary { op, lhs, rhs } if is_comparison(*op) => {
                        let l = self.eval(lhs, env, out);
                        let r = self.eval(rhs, env, out);
                        !self.sema.is_constant(lhs) && !self.sema.is_constant(rhs) && (l == T || r == T)
                    }
                    _ => self.eval(expr, env, out) == T,
                };
                record(out, expr.id, Sink::LoopBound, tainted);
            }
        }
    }

    fn var(&self, e: &Expr) -> Option<SymbolId> {
        self.sema.symbol_of_ref(e.id)
    }

    fn root(&self, e: &Expr) -> Option<SymbolId> {
        match &e.kind {
            ExprKind::Ident(_) => self.var(e),
            ExprKind::Cast { operand, .. } | ExprKind::Unary { operand, .. } => self.root(operand),
            ExprKind::Subscript { base, .. } | ExprKind::Member { base, .. } => self.root(base),
            ExprKind::Binary { op: BinaryOp::Add | BinaryOp::Sub, lhs, .. } => self.root(lhs),
            _ => None,
        }
    }

    fn place(&self, e: &Expr, env: &mut Env, out: &mut Verdicts) -> Place {
        match &e.kind {
            ExprKind::Ident(_) => self.var(e).map_or(Place::Unknown, Place::Var),
            ExprKind::Subscript { base, index } => {
                self.eval(base, env, out);
                let i = self.eval(index, env, out);
                record(out, e.id, Sink::Index, i == T);
                Place::Through(self.root(base))
            }
            ExprKind::Unary { op: UnaryOp::Deref, operand } => {
                self.eval(operand, env, out);
                Place::Through(self.root(operand))
            }
            ExprKind::Member { base, arrow: true, .. } => {
                self.eval(base, env, out);
                Place::Through(self.root(base))
            }
            ExprKind::Member { base, arrow: false, .. } => match self.place(base, env, out) {
                Place::Var(s) => Place::Through(Some(s)),
                other => other,
            },
            _ => {
                self.eval(e, env, out);
                Place::Unknown
            }
        }
    }

    fn read(&self, sym: SymbolId, env: &Env) -> u8 {
        if self.sema.is_errno(sym) {
            U
        } else {
            env.get(&sym).copied().unwrap_or(U)
        }
    }

    fn eval(&self, e: &Expr, env: &mut Env, out: &mut Verdicts) -> u8 {
        match &e.kind {
            ExprKind::Ident(_) => self.var(e).map_or(U, |s| self.read(s, env)),
            ExprKind::IntLit { .. }
            | ExprKind::FloatLit { .. }
            | ExprKind::CharLit(_)
            | ExprKind::StringLit(_)
            | ExprKind::Sizeof(_) => U,
            ExprKind::Call { callee, args } => {
                if !matches!(callee.kind, ExprKind::Ident(_)) {
                    self.eval(callee, env, out);
                }
                let ts: Vec<u8> = args.iter().map(|a| self.eval(a, env, out)).collect();
                let info = self.sema.library_call(e.id);
                call_sinks(e, info, &ts.iter().map(|&t| t == T).collect::<Vec<_>>(), out);
                let joined = ts.iter().copied().max().unwrap_or(U);
                let Some(info) = info else { return joined };
                let external = info.reads_external_input();
                if external {
                    for i in info.args_with_role(ParamRole::Buffer, args.len()) {
                        if let Some(s) = self.root(&args[i]) {
                            env.insert(s, T);
                        }
                    }
                }
                if external || info.name == "getenv" {
                    T
                } else {
                    joined
                }
            }
            ExprKind::Binary { op, lhs, rhs } => {
                let l = self.eval(lhs, env, out);
                let r = self.eval(rhs, env, out);
                if is_comparison(*op) || matches!(op, BinaryOp::LogicalAnd | BinaryOp::LogicalOr) {
                    U
                } else if *op == BinaryOp::Comma {
                    r
                } else {
                    l.max(r)
                }
            }
            ExprKind::Unary { op, operand } => match op {
                UnaryOp::PreInc | UnaryOp::PreDec | UnaryOp::PostInc | UnaryOp::PostDec => {
                    match self.place(operand, env, out) {
                        Place::Var(s) => self.read(s, env),
                        _ => U,
                    }
                }
                UnaryOp::Not => {
                    self.eval(operand, env, out);
                    U
                }
                _ => self.eval(operand, env, out),
            },
            ExprKind::Cast { operand, .. } => self.eval(operand, env, out),
            ExprKind::Subscript { base, index } => {
                let b = self.eval(base, env, out);
                let i = self.eval(index, env, out);
                record(out, e.id, Sink::Index, i == T);
                b
            }
            ExprKind::Member { base, .. } => self.eval(base, env, out),
            ExprKind::Assign { op, lhs, rhs } => {
                let r = self.eval(rhs, env, out);
                match self.place(lhs, env, out) {
                    Place::Var(s) if self.sema.is_errno(s) => U,
                    Place::Var(s) => {
                        let v = if op.is_some() { self.read(s, env).max(r) } else { r };
                        env.insert(s, v);
                        v
                    }
                    Place::Through(Some(s)) => {
                        let v = self.read(s, env).max(r);
                        env.insert(s, v);
                        r
                    }
                    Place::Through(None) | Place::Unknown => r,
                }
            }
            ExprKind::Conditional { cond, then_expr, else_expr } => {
                self.eval(cond, env, out);
                let t = self.eval(then_expr, env, out);
                let f = self.eval(else_expr, env, out);
                t.max(f)
            }
        }
    }
}

fn is_comparison(op: BinaryOp) -> bool {
    matches!(op, BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge | BinaryOp::Eq | BinaryOp::Ne)
}

/// Sink verdicts as seen by the fixpoint analysis.
struct Collector<'s> {
    sema: &'s SemaModel,
    verdicts: Verdicts,
}

impl Observer for Collector<'_> {
    fn subscript(&mut self, expr: &Expr, index: &Value) {
        record(&mut self.verdicts, expr.id, Sink::Index, index.taint == Taint::Tainted);
    }

    fn call(&mut self, call: &Expr, info: Option<&'static LibraryFunctionInfo>, args: &[Value], _: &DataflowState) {
        let _ = self.sema;
        let tainted: Vec<bool> = args.iter().map(|v| v.taint == Taint::Tainted).collect();
        call_sinks(call, info, &tainted, &mut self.verdicts);
    }

    fn loop_condition(&mut self, cond: &Expr, tainted_bound: bool) {
        record(&mut self.verdicts, cond.id, Sink::LoopBound, tainted_bound);
    }
}

pub fn fixpoint_verdicts(sema: &SemaModel, cfg: &Cfg) -> Verdicts {
    let fp = propagate(sema, cfg);
    let mut c = Collector { sema, verdicts: Verdicts::new() };
    fp.observe(sema, cfg, &mut c);
    c.verdicts
}

#[derive(Debug)]
pub struct FunctionComparison {
    pub function: String,
    pub branches: usize,
    pub paths: usize,
    pub oracle: Verdicts,
    pub fixpoint: Verdicts,
}

impl FunctionComparison {
    pub fn agrees(&self) -> bool {
        self.oracle == self.fixpoint
    }

    pub fn tainted_sinks(&self) -> usize {
        self.oracle.values().filter(|&&t| t).count()
    }
}

pub fn branch_count(cfg: &Cfg) -> usize {
    cfg.blocks.iter().filter(|b| b.succs.len() > 1).count()
}

/// Compares oracle and fixpoint on every function with at most
/// `max_branches` branch points.
pub fn compare_source(path: &str, text: &str, max_branches: usize) -> Result<Vec<FunctionComparison>, String> {
    let (_, tu) = parse_source(text, path).map_err(|e| e.to_string())?;
    let ru = resolve(tu).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for f in ru.tu.functions() {
        let cfg = build_cfg(f);
        let branches = branch_count(&cfg);
        if branches > max_branches {
            continue;
        }
        let mut oracle = Oracle::new(&ru.sema, &cfg);
        if !oracle.run() {
            return Err(format!("{path}: {}: path limit exceeded", f.name));
        }
        out.push(FunctionComparison {
            function: f.name.clone(),
            branches,
            paths: oracle.paths,
            oracle: oracle.verdicts,
            fixpoint: fixpoint_verdicts(&ru.sema, &cfg),
        });
    }
    Ok(out)
}
