//! Forward dataflow over a function's CFG.
//!
//! One abstract state tracks four independent facts: taint of external data,
//! unconverted stdio read results, the errno protocol phase, and pointers
//! returned by environment functions. Checkers observe the transfer
//! functions through [`Observer`] while re-walking blocks at the fixpoint.

use std::collections::{BTreeMap, BTreeSet};

use crate::frontend::ast::*;
use crate::frontend::SourceLocation;
use crate::sema::{BasicBlock, BlockId, Cfg, Edge, EdgeKind, Element, LibraryFamily, LibraryFunctionInfo, ParamRole};
use crate::sema::{SemaModel, SymbolId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Taint {
    #[default]
    Untainted,
    Validated,
    Tainted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ErrnoPhase {
    Indeterminate,
    Zeroed,
    Tested,
    /// An errno-setting call (by node id) whose result is not yet tested.
    CallMade(NodeId),
}

/// A pointer into storage owned by an environment function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvPointer {
    /// A later environment call may have overwritten the storage.
    pub stale: bool,
    /// Calls that produced the pointer.
    pub origins: BTreeSet<SourceLocation>,
}

impl EnvPointer {
    fn join(&mut self, other: &EnvPointer) {
        self.stale |= other.stale;
        self.origins.extend(other.origins.iter().cloned());
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DataflowState {
    /// Absent variables are untainted.
    pub taint: BTreeMap<SymbolId, Taint>,
    /// Variables holding an unconverted character-read result.
    pub io_int: BTreeSet<SymbolId>,
    /// Phases errno may be in; joined by union.
    pub errno: BTreeSet<ErrnoPhase>,
    pub env: BTreeMap<SymbolId, EnvPointer>,
}

impl DataflowState {
    pub fn taint_of(&self, sym: SymbolId) -> Taint {
        self.taint.get(&sym).copied().unwrap_or_default()
    }

    pub fn set_taint(&mut self, sym: SymbolId, t: Taint) {
        if t == Taint::Untainted {
            self.taint.remove(&sym);
        } else {
            self.taint.insert(sym, t);
        }
    }

    pub fn join(&mut self, other: &DataflowState) {
        for (&sym, &t) in &other.taint {
            let cur = self.taint_of(sym);
            self.set_taint(sym, cur.max(t));
        }
        self.io_int.retain(|s| other.io_int.contains(s));
        self.errno.extend(other.errno.iter().copied());
        for (&sym, p) in &other.env {
            match self.env.get_mut(&sym) {
                Some(mine) => mine.join(p),
                None => {
                    self.env.insert(sym, p.clone());
                }
            }
        }
    }
}

/// Abstract value of an evaluated expression.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Value {
    pub taint: Taint,
    pub io_int: bool,
    pub env: Option<EnvPointer>,
}

impl Value {
    fn of_taint(taint: Taint) -> Self {
        Value { taint, ..Value::default() }
    }
}

/// Events raised while evaluating a block. All methods default to no-ops.
pub trait Observer {
    fn subscript(&mut self, _expr: &Expr, _index: &Value) {}
    /// Raised after the arguments are evaluated and before the call's effects.
    fn call(&mut self, _call: &Expr, _info: Option<&'static LibraryFunctionInfo>, _args: &[Value], _state: &DataflowState) {}
    /// Raised before the read changes the errno phase.
    fn errno_read(&mut self, _expr: &Expr, _state: &DataflowState) {}
    /// Raised before a store replaces the errno phase.
    fn errno_write(&mut self, _expr: &Expr, _state: &DataflowState) {}
    fn write_through(&mut self, _lvalue: &Expr, _pointer: &Value) {}
    fn read_through(&mut self, _expr: &Expr, _pointer: &Value) {}
    fn loop_condition(&mut self, _cond: &Expr, _tainted_bound: bool) {}
    fn function_exit(&mut self, _state: &DataflowState) {}
}

pub struct NoObserver;

impl Observer for NoObserver {}

enum Place {
    Var(SymbolId),
    /// Storage reached through a pointer, array element, or member; updates
    /// to the named root variable are weak.
    Through(Option<SymbolId>),
    Unknown,
}

/// Transfer functions, parameterized by the resolution tables.
pub struct Transfer<'s> {
    sema: &'s SemaModel,
}

impl<'s> Transfer<'s> {
    pub fn new(sema: &'s SemaModel) -> Self {
        Transfer { sema }
    }

    /// State on function entry: `argv` of `main` is tainted and errno is
    /// indeterminate.
    pub fn entry_state(&self, f: &FunctionDef) -> DataflowState {
        let mut st = DataflowState::default();
        st.errno.insert(ErrnoPhase::Indeterminate);
        if f.name == "main" {
            if let Some(sym) = f.params.get(1).and_then(|p| self.sema.decls.get(&p.id)) {
                st.set_taint(*sym, Taint::Tainted);
            }
        }
        st
    }

    /// In-state of `b` given the current out-states of its predecessors.
    /// `None` while no predecessor has been reached.
    pub fn in_state(&self, cfg: &Cfg, b: BlockId, entry: &DataflowState, outs: &[Option<DataflowState>]) -> Option<DataflowState> {
        let mut acc = (b == cfg.entry()).then(|| entry.clone());
        for e in &cfg.blocks[b].preds {
            if let Some(out) = &outs[e.from] {
                let s = self.edge(cfg, e, out);
                match &mut acc {
                    Some(a) => a.join(&s),
                    None => acc = Some(s),
                }
            }
        }
        acc
    }

    pub fn block(&self, block: &BasicBlock, st: &mut DataflowState, obs: &mut dyn Observer) {
        for el in &block.elements {
            match *el {
                Element::Decl(d) => self.decl(d, st, obs),
                Element::Expr(e) => {
                    self.eval(e, st, obs);
                }
                Element::Condition { expr, in_loop } => self.condition(expr, in_loop, st, obs),
                Element::Return(v) => {
                    if let Some(e) = v {
                        self.eval(e, st, obs);
                    }
                }
            }
        }
    }

    /// Applies edge-sensitive validation: on a true edge out of a relational
    /// comparison between a variable and a constant, the variable is
    /// validated.
    pub fn edge(&self, cfg: &Cfg, edge: &Edge, out: &DataflowState) -> DataflowState {
        let mut s = out.clone();
        if edge.kind == EdgeKind::BranchTrue {
            if let Some(sym) = cfg.blocks[edge.from].condition().and_then(|c| self.validated_var(c)) {
                if s.taint_of(sym) == Taint::Tainted {
                    s.set_taint(sym, Taint::Validated);
                }
            }
        }
        s
    }

    fn validated_var(&self, cond: &Expr) -> Option<SymbolId> {
        let ExprKind::Binary { op, lhs, rhs } = &cond.kind else { return None };
        if !op.is_relational() {
            return None;
        }
        let var = |e: &Expr| match &e.peel_casts().kind {
            ExprKind::Ident(_) => self.sema.symbol_of_ref(e.peel_casts().id).filter(|&s| !self.sema.is_errno(s)),
            _ => None,
        };
        match (var(lhs), var(rhs)) {
            (Some(s), None) if self.sema.is_constant(rhs) => Some(s),
            (None, Some(s)) if self.sema.is_constant(lhs) => Some(s),
            _ => None,
        }
    }

    fn condition(&self, expr: &Expr, in_loop: bool, st: &mut DataflowState, obs: &mut dyn Observer) {
        if !in_loop {
            self.eval(expr, st, obs);
            return;
        }
        let tainted = match &expr.kind {
            ExprKind::Binary { op, lhs, rhs } if op.is_comparison() => {
                let l = self.eval(lhs, st, obs);
                let r = self.eval(rhs, st, obs);
                !self.sema.is_constant(lhs)
                    && !self.sema.is_constant(rhs)
                    && (l.taint == Taint::Tainted || r.taint == Taint::Tainted)
            }
            _ => self.eval(expr, st, obs).taint == Taint::Tainted,
        };
        obs.loop_condition(expr, tainted);
    }

    fn decl(&self, d: &InitDeclarator, st: &mut DataflowState, obs: &mut dyn Observer) {
        let Some(&sym) = self.sema.decls.get(&d.id) else { return };
        match &d.init {
            Some(Initializer::Expr(e)) => {
                let v = self.eval(e, st, obs);
                self.store(sym, v, st);
            }
            Some(list) => {
                let mut t = Taint::Untainted;
                for e in list.exprs() {
                    t = t.max(self.eval(e, st, obs).taint);
                }
                self.store(sym, Value::of_taint(t), st);
            }
            None => self.store(sym, Value::default(), st),
        }
    }

    /// Strong update of a variable.
    fn store(&self, sym: SymbolId, v: Value, st: &mut DataflowState) {
        st.set_taint(sym, v.taint);
        if v.io_int && !self.sema.symbol(sym).declared_type.is_char() {
            st.io_int.insert(sym);
        } else {
            st.io_int.remove(&sym);
        }
        match v.env {
            Some(p) => {
                st.env.insert(sym, p);
            }
            None => {
                st.env.remove(&sym);
            }
        }
    }

    fn root(&self, e: &Expr) -> Option<SymbolId> {
        match &e.kind {
            ExprKind::Ident(_) => self.sema.symbol_of_ref(e.id),
            ExprKind::Cast { operand, .. } | ExprKind::Unary { operand, .. } => self.root(operand),
            ExprKind::Subscript { base, .. } | ExprKind::Member { base, .. } => self.root(base),
            ExprKind::Binary { op: BinaryOp::Add | BinaryOp::Sub, lhs, .. } => self.root(lhs),
            _ => None,
        }
    }

    fn place(&self, e: &Expr, st: &mut DataflowState, obs: &mut dyn Observer) -> Place {
        match &e.kind {
            ExprKind::Ident(_) => self.sema.symbol_of_ref(e.id).map_or(Place::Unknown, Place::Var),
            ExprKind::Subscript { base, index } => {
                let b = self.eval(base, st, obs);
                let i = self.eval(index, st, obs);
                obs.subscript(e, &i);
                obs.write_through(e, &b);
                Place::Through(self.root(base))
            }
            ExprKind::Unary { op: UnaryOp::Deref, operand } => {
                let p = self.eval(operand, st, obs);
                obs.write_through(e, &p);
                Place::Through(self.root(operand))
            }
            ExprKind::Member { base, arrow: true, .. } => {
                let p = self.eval(base, st, obs);
                obs.write_through(e, &p);
                Place::Through(self.root(base))
            }
            ExprKind::Member { base, arrow: false, .. } => match self.place(base, st, obs) {
                Place::Var(s) => Place::Through(Some(s)),
                other => other,
            },
            _ => {
                self.eval(e, st, obs);
                Place::Unknown
            }
        }
    }

    fn read_var(&self, e: &Expr, sym: SymbolId, st: &mut DataflowState, obs: &mut dyn Observer) -> Value {
        if self.sema.is_errno(sym) {
            obs.errno_read(e, st);
            st.errno = BTreeSet::from([ErrnoPhase::Tested]);
            return Value::default();
        }
        Value { taint: st.taint_of(sym), io_int: st.io_int.contains(&sym), env: st.env.get(&sym).cloned() }
    }

    /// Evaluates `e` in source order, updating `st` and raising events.
    pub fn eval(&self, e: &Expr, st: &mut DataflowState, obs: &mut dyn Observer) -> Value {
        match &e.kind {
            ExprKind::Ident(_) => match self.sema.symbol_of_ref(e.id) {
                Some(sym) => self.read_var(e, sym, st, obs),
                None => Value::default(),
            },
            ExprKind::IntLit { .. }
            | ExprKind::FloatLit { .. }
            | ExprKind::CharLit(_)
            | ExprKind::StringLit(_)
            | ExprKind::Sizeof(_) => Value::default(),
            ExprKind::Call { callee, args } => self.call(e, callee, args, st, obs),
            ExprKind::Binary { op, lhs, rhs } => {
                let l = self.eval(lhs, st, obs);
                let r = self.eval(rhs, st, obs);
                if op.is_comparison() || op.is_logical() {
                    Value::default()
                } else if *op == BinaryOp::Comma {
                    r
                } else {
                    let env = match op {
                        BinaryOp::Add | BinaryOp::Sub => l.env.or(r.env),
                        _ => None,
                    };
                    Value { taint: l.taint.max(r.taint), io_int: false, env }
                }
            }
            ExprKind::Unary { op, operand } => match op {
                UnaryOp::Deref => {
                    let p = self.eval(operand, st, obs);
                    obs.read_through(e, &p);
                    Value::of_taint(p.taint)
                }
                UnaryOp::PreInc | UnaryOp::PreDec | UnaryOp::PostInc | UnaryOp::PostDec => {
                    match self.place(operand, st, obs) {
                        Place::Var(sym) => {
                            let v = self.read_var(operand, sym, st, obs);
                            if self.sema.is_errno(sym) {
                                st.errno = BTreeSet::from([ErrnoPhase::Indeterminate]);
                            }
                            st.io_int.remove(&sym);
                            Value { io_int: false, ..v }
                        }
                        _ => Value::default(),
                    }
                }
                UnaryOp::AddrOf => Value::of_taint(self.eval(operand, st, obs).taint),
                UnaryOp::Not => {
                    self.eval(operand, st, obs);
                    Value::default()
                }
                UnaryOp::Plus | UnaryOp::Neg | UnaryOp::BitNot => Value::of_taint(self.eval(operand, st, obs).taint),
            },
            ExprKind::Cast { operand, .. } => {
                let v = self.eval(operand, st, obs);
                Value { io_int: false, ..v }
            }
            ExprKind::Subscript { base, index } => {
                let b = self.eval(base, st, obs);
                let i = self.eval(index, st, obs);
                obs.subscript(e, &i);
                obs.read_through(e, &b);
                Value::of_taint(b.taint)
            }
            ExprKind::Member { base, arrow, .. } => {
                let b = self.eval(base, st, obs);
                if *arrow {
                    obs.read_through(e, &b);
                }
                Value::of_taint(b.taint)
            }
            ExprKind::Assign { op, lhs, rhs } => {
                let r = self.eval(rhs, st, obs);
                match self.place(lhs, st, obs) {
                    Place::Var(sym) if self.sema.is_errno(sym) => {
                        if op.is_some() {
                            obs.errno_read(lhs, st);
                        }
                        obs.errno_write(lhs, st);
                        let zero = op.is_none() && self.sema.const_value(rhs) == Some(0);
                        let phase = if zero { ErrnoPhase::Zeroed } else { ErrnoPhase::Indeterminate };
                        st.errno = BTreeSet::from([phase]);
                        Value::default()
                    }
                    Place::Var(sym) => {
                        let v = match op {
                            None => r,
                            Some(_) => {
                                let old = self.read_var(lhs, sym, st, obs);
                                Value { taint: old.taint.max(r.taint), io_int: false, env: old.env }
                            }
                        };
                        self.store(sym, v.clone(), st);
                        v
                    }
                    Place::Through(Some(sym)) => {
                        let t = st.taint_of(sym).max(r.taint);
                        st.set_taint(sym, t);
                        Value::of_taint(r.taint)
                    }
                    Place::Through(None) | Place::Unknown => Value::of_taint(r.taint),
                }
            }
            ExprKind::Conditional { cond, then_expr, else_expr } => {
                self.eval(cond, st, obs);
                let t = self.eval(then_expr, st, obs);
                let f = self.eval(else_expr, st, obs);
                let env = match (t.env, f.env) {
                    (Some(mut a), Some(b)) => {
                        a.join(&b);
                        Some(a)
                    }
                    (a, b) => a.or(b),
                };
                Value { taint: t.taint.max(f.taint), io_int: t.io_int && f.io_int, env }
            }
        }
    }

    fn call(&self, e: &Expr, callee: &Expr, args: &[Expr], st: &mut DataflowState, obs: &mut dyn Observer) -> Value {
        if !matches!(callee.kind, ExprKind::Ident(_)) {
            self.eval(callee, st, obs);
        }
        let values: Vec<Value> = args.iter().map(|a| self.eval(a, st, obs)).collect();
        let info = self.sema.library_call(e.id);
        obs.call(e, info, &values, st);
        let joined = values.iter().map(|v| v.taint).max().unwrap_or_default();
        let Some(info) = info else { return Value::of_taint(joined) };

        if info.family == LibraryFamily::ErrnoSetting {
            st.errno = BTreeSet::from([ErrnoPhase::CallMade(e.id)]);
        }
        if info.returns_env_pointer {
            for p in st.env.values_mut() {
                p.stale = true;
            }
        }
        if info.reads_external_input() {
            for i in info.args_with_role(ParamRole::Buffer, args.len()) {
                if let Some(sym) = self.root(&args[i]) {
                    st.set_taint(sym, Taint::Tainted);
                }
            }
        }
        let taint = if info.name == "getenv" || info.reads_external_input() { Taint::Tainted } else { joined };
        let env = info.returns_env_pointer.then(|| EnvPointer { stale: false, origins: BTreeSet::from([e.loc.clone()]) });
        Value { taint, io_int: info.returns_io_int, env }
    }
}

/// Result of [`propagate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Fixpoint {
    pub entry: DataflowState,
    /// In-state per block; `None` for blocks no path reaches.
    pub ins: Vec<Option<DataflowState>>,
    pub outs: Vec<Option<DataflowState>>,
    /// Round-robin passes, including the final pass that saw no change.
    pub passes: usize,
}

/// Iterates the transfer functions in reverse postorder until no in-state
/// changes.
pub fn propagate(sema: &SemaModel, cfg: &Cfg) -> Fixpoint {
    let t = Transfer::new(sema);
    let entry = t.entry_state(cfg.function);
    let n = cfg.blocks.len();
    let order = cfg.reverse_postorder();
    let mut ins: Vec<Option<DataflowState>> = vec![None; n];
    let mut outs: Vec<Option<DataflowState>> = vec![None; n];
    let mut passes = 0;
    loop {
        passes += 1;
        let mut changed = false;
        for &b in &order {
            let new_in = t.in_state(cfg, b, &entry, &outs);
            if new_in.is_none() || new_in == ins[b] {
                continue;
            }
            let mut out = new_in.clone().expect("reached block");
            t.block(&cfg.blocks[b], &mut out, &mut NoObserver);
            ins[b] = new_in;
            outs[b] = Some(out);
            changed = true;
        }
        if !changed {
            break;
        }
        assert!(passes <= 64 * (n + 1), "dataflow failed to converge");
    }
    Fixpoint { entry, ins, outs, passes }
}

impl Fixpoint {
    /// Re-applies every transfer function once and reports whether any
    /// program-point state would change.
    pub fn is_stable(&self, sema: &SemaModel, cfg: &Cfg) -> bool {
        let t = Transfer::new(sema);
        (0..cfg.blocks.len()).all(|b| {
            let again = t.in_state(cfg, b, &self.entry, &self.outs);
            let out = again.clone().map(|mut s| {
                t.block(&cfg.blocks[b], &mut s, &mut NoObserver);
                s
            });
            again == self.ins[b] && out == self.outs[b]
        })
    }

    /// Re-walks every reached block from its in-state, raising events.
    pub fn observe(&self, sema: &SemaModel, cfg: &Cfg, obs: &mut dyn Observer) {
        let t = Transfer::new(sema);
        for (b, block) in cfg.blocks.iter().enumerate() {
            if let Some(mut st) = self.ins[b].clone() {
                t.block(block, &mut st, obs);
            }
        }
        if let Some(exit) = &self.ins[cfg.exit()] {
            obs.function_exit(exit);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_source;
    use crate::sema::{build_cfg, resolve, ResolvedUnit};

    fn unit(src: &str) -> ResolvedUnit {
        resolve(parse_source(src, "t.c").unwrap().1).unwrap()
    }

    fn sym(ru: &ResolvedUnit, name: &str) -> SymbolId {
        ru.sema.symbols.iter().position(|s| s.name == name).unwrap()
    }

    fn exit_state(ru: &ResolvedUnit) -> (DataflowState, usize, usize) {
        let f = ru.tu.functions().last().unwrap();
        let cfg = build_cfg(f);
        let fx = propagate(&ru.sema, &cfg);
        assert!(fx.is_stable(&ru.sema, &cfg));
        (fx.ins[cfg.exit()].clone().unwrap(), fx.passes, cfg.blocks.len())
    }

    #[test]
    fn empty_function_exit_equals_entry() {
        let ru = unit("void f(void) { }");
        let f = ru.tu.functions().next().unwrap();
        let cfg = build_cfg(f);
        let fx = propagate(&ru.sema, &cfg);
        assert_eq!(fx.ins[cfg.exit()].as_ref(), Some(&fx.entry));
    }

    #[test]
    fn straight_line_taint_reaches_sink() {
        let ru = unit("int atoi(const char *s);\nint main(int argc, char *argv[]) { char buf[8]; int n = atoi(argv[1]); buf[n] = 0; return 0; }");
        let (st, _, _) = exit_state(&ru);
        assert_eq!(st.taint_of(sym(&ru, "n")), Taint::Tainted);
        assert_eq!(st.taint_of(sym(&ru, "buf")), Taint::Untainted);
    }

    #[test]
    fn validation_holds_only_on_the_guarded_edge() {
        let src = "#include <stdlib.h>\nvoid f(void) { char b[8]; int n = atoi(getenv(\"N\")); if (n < 8) { b[0] = 1; } }";
        let ru = unit(src);
        let (st, _, _) = exit_state(&ru);
        assert_eq!(st.taint_of(sym(&ru, "n")), Taint::Tainted);
    }

    #[test]
    fn loop_retaint_converges() {
        let src = "#include <stdio.h>\nvoid f(void) { int n = getchar(); while (n > 0) { if (n < 5) n = 1; n = getchar(); } }";
        let ru = unit(src);
        let (st, passes, blocks) = exit_state(&ru);
        assert_eq!(st.taint_of(sym(&ru, "n")), Taint::Tainted);
        assert!(passes <= blocks + 1, "{passes} passes for {blocks} blocks");
    }

    #[test]
    fn errno_machine_on_straight_line() {
        let src = "#include <errno.h>\n#include <stdlib.h>\nvoid f(const char *s) { long v; errno = 0; v = strtol(s, 0, 10); if (errno) v = 0; }";
        let ru = unit(src);
        let (st, _, _) = exit_state(&ru);
        assert_eq!(st.errno, BTreeSet::from([ErrnoPhase::Tested]));
    }

    #[test]
    fn env_pointers_go_stale() {
        let src = "#include <stdlib.h>\nvoid f(void) { char *p = getenv(\"A\"); char *q = getenv(\"B\"); }";
        let ru = unit(src);
        let (st, _, _) = exit_state(&ru);
        assert!(st.env[&sym(&ru, "p")].stale);
        assert!(!st.env[&sym(&ru, "q")].stale);
    }

    #[test]
    fn io_int_cleared_by_char_store_and_arithmetic() {
        let src = "#include <stdio.h>\nvoid f(void) { int a = getchar(); int b = getchar(); char c = getchar(); b = b + 1; }";
        let ru = unit(src);
        let (st, _, _) = exit_state(&ru);
        assert_eq!(st.io_int, BTreeSet::from([sym(&ru, "a")]));
    }

    #[test]
    fn join_is_pointwise() {
        let mut a = DataflowState::default();
        let mut b = DataflowState::default();
        a.set_taint(0, Taint::Validated);
        b.set_taint(0, Taint::Tainted);
        a.io_int.insert(1);
        a.errno.insert(ErrnoPhase::Zeroed);
        b.errno.insert(ErrnoPhase::Tested);
        a.join(&b);
        assert_eq!(a.taint_of(0), Taint::Tainted);
        assert!(a.io_int.is_empty());
        assert_eq!(a.errno.len(), 2);
    }
}
