use crate::frontend::ast::*;

pub type BlockId = usize;

/// One unit of straight-line work inside a basic block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Element<'a> {
    Decl(&'a InitDeclarator),
    Expr(&'a Expr),
    /// An atomic branch condition. Short-circuit operators and `!` have
    /// already been lowered into separate blocks and swapped edges.
    Condition { expr: &'a Expr, in_loop: bool },
    Return(Option<&'a Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Fallthrough,
    BranchTrue,
    BranchFalse,
    LoopBack,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub from: BlockId,
    pub to: BlockId,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasicBlock<'a> {
    pub id: BlockId,
    pub elements: Vec<Element<'a>>,
    pub succs: Vec<Edge>,
    pub preds: Vec<Edge>,
}

impl<'a> BasicBlock<'a> {
    /// The condition that selects between this block's branch edges.
    pub fn condition(&self) -> Option<&'a Expr> {
        match self.elements.last() {
            Some(Element::Condition { expr, .. }) => Some(expr),
            _ => None,
        }
    }
}

/// Control-flow graph of one function. Block 0 is the entry and the last
/// block is the exit. Every other block is reachable from the entry.
#[derive(Debug, Clone)]
pub struct Cfg<'a> {
    pub function: &'a FunctionDef,
    pub blocks: Vec<BasicBlock<'a>>,
}

impl<'a> Cfg<'a> {
    pub fn entry(&self) -> BlockId {
        0
    }

    pub fn exit(&self) -> BlockId {
        self.blocks.len() - 1
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.blocks.iter().flat_map(|b| b.succs.iter())
    }

    /// Blocks reachable from the entry in reverse postorder, followed by
    /// any unreachable ones (only the exit can be unreachable).
    pub fn reverse_postorder(&self) -> Vec<BlockId> {
        let n = self.blocks.len();
        let mut seen = vec![false; n];
        let mut post = Vec::with_capacity(n);
        let mut stack = vec![(self.entry(), 0usize)];
        seen[self.entry()] = true;
        while let Some((b, i)) = stack.pop() {
            if let Some(e) = self.blocks[b].succs.get(i) {
                stack.push((b, i + 1));
                if !seen[e.to] {
                    seen[e.to] = true;
                    stack.push((e.to, 0));
                }
            } else {
                post.push(b);
            }
        }
        post.reverse();
        post.extend((0..n).filter(|&b| !seen[b]));
        post
    }
}

struct LoopTargets {
    brk: BlockId,
    cont: BlockId,
    cont_kind: EdgeKind,
}

type PendingBlock<'a> = (Vec<Element<'a>>, Vec<(BlockId, EdgeKind)>);

struct Builder<'a> {
    blocks: Vec<PendingBlock<'a>>,
    current: Option<BlockId>,
    exit: BlockId,
    loops: Vec<LoopTargets>,
}

impl<'a> Builder<'a> {
    fn new_block(&mut self) -> BlockId {
        self.blocks.push((Vec::new(), Vec::new()));
        self.blocks.len() - 1
    }

    fn cur(&mut self) -> BlockId {
        match self.current {
            Some(b) => b,
            None => {
                let b = self.new_block();
                self.current = Some(b);
                b
            }
        }
    }

    fn push(&mut self, el: Element<'a>) {
        let b = self.cur();
        self.blocks[b].0.push(el);
    }

    fn edge(&mut self, from: BlockId, to: BlockId, kind: EdgeKind) {
        self.blocks[from].1.push((to, kind));
    }

    /// Ends the current block with an unconditional jump.
    fn jump(&mut self, to: BlockId, kind: EdgeKind) {
        if let Some(b) = self.current.take() {
            self.edge(b, to, kind);
        }
    }

    fn cond(&mut self, e: &'a Expr, t: BlockId, f: BlockId, in_loop: bool) {
        match &e.kind {
            ExprKind::Binary { op: BinaryOp::LogicalAnd, lhs, rhs } => {
                let mid = self.new_block();
                self.cond(lhs, mid, f, in_loop);
                self.current = Some(mid);
                self.cond(rhs, t, f, in_loop);
            }
            ExprKind::Binary { op: BinaryOp::LogicalOr, lhs, rhs } => {
                let mid = self.new_block();
                self.cond(lhs, t, mid, in_loop);
                self.current = Some(mid);
                self.cond(rhs, t, f, in_loop);
            }
            ExprKind::Unary { op: UnaryOp::Not, operand } => self.cond(operand, f, t, in_loop),
            _ => {
                self.push(Element::Condition { expr: e, in_loop });
                let b = self.current.take().expect("condition block");
                self.edge(b, t, EdgeKind::BranchTrue);
                self.edge(b, f, EdgeKind::BranchFalse);
            }
        }
    }

    fn stmt(&mut self, s: &'a Stmt) {
        match &s.kind {
            StmtKind::Compound(items) => items.iter().for_each(|i| self.stmt(i)),
            StmtKind::Decl(d) => d.declarators.iter().for_each(|d| self.push(Element::Decl(d))),
            StmtKind::Expr(e) => self.push(Element::Expr(e)),
            StmtKind::Empty => {}
            StmtKind::If { cond, then_branch, else_branch } => {
                self.cur();
                let then_b = self.new_block();
                let join = self.new_block();
                let else_b = if else_branch.is_some() { self.new_block() } else { join };
                self.cond(cond, then_b, else_b, false);
                self.current = Some(then_b);
                self.stmt(then_branch);
                self.jump(join, EdgeKind::Fallthrough);
                if let Some(e) = else_branch {
                    self.current = Some(else_b);
                    self.stmt(e);
                    self.jump(join, EdgeKind::Fallthrough);
                }
                self.current = Some(join);
            }
            StmtKind::While { cond, body } => {
                self.cur();
                let header = self.new_block();
                self.jump(header, EdgeKind::Fallthrough);
                let body_b = self.new_block();
                let after = self.new_block();
                self.current = Some(header);
                self.cond(cond, body_b, after, true);
                self.loops.push(LoopTargets { brk: after, cont: header, cont_kind: EdgeKind::LoopBack });
                self.current = Some(body_b);
                self.stmt(body);
                self.jump(header, EdgeKind::LoopBack);
                self.loops.pop();
                self.current = Some(after);
            }
            StmtKind::DoWhile { body, cond } => {
                self.cur();
                let body_b = self.new_block();
                self.jump(body_b, EdgeKind::Fallthrough);
                let cond_b = self.new_block();
                let after = self.new_block();
                self.loops.push(LoopTargets { brk: after, cont: cond_b, cont_kind: EdgeKind::Fallthrough });
                self.current = Some(body_b);
                self.stmt(body);
                self.jump(cond_b, EdgeKind::Fallthrough);
                self.loops.pop();
                self.current = Some(cond_b);
                self.cond(cond, body_b, after, true);
                self.current = Some(after);
            }
            StmtKind::For { init, cond, step, body } => {
                if let Some(i) = init {
                    self.stmt(i);
                }
                self.cur();
                let header = self.new_block();
                self.jump(header, EdgeKind::Fallthrough);
                let body_b = self.new_block();
                let step_b = self.new_block();
                let after = self.new_block();
                self.current = Some(header);
                match cond {
                    Some(c) => self.cond(c, body_b, after, true),
                    None => self.jump(body_b, EdgeKind::Fallthrough),
                }
                self.loops.push(LoopTargets { brk: after, cont: step_b, cont_kind: EdgeKind::Fallthrough });
                self.current = Some(body_b);
                self.stmt(body);
                self.jump(step_b, EdgeKind::Fallthrough);
                self.loops.pop();
                self.current = Some(step_b);
                if let Some(st) = step {
                    self.push(Element::Expr(st));
                }
                self.jump(header, EdgeKind::LoopBack);
                self.current = Some(after);
            }
            StmtKind::Return(v) => {
                self.push(Element::Return(v.as_ref()));
                self.jump(self.exit, EdgeKind::Fallthrough);
            }
            StmtKind::Break => {
                self.cur();
                let brk = self.loops.last().map(|l| l.brk);
                if let Some(t) = brk {
                    self.jump(t, EdgeKind::Fallthrough);
                }
            }
            StmtKind::Continue => {
                self.cur();
                let target = self.loops.last().map(|l| (l.cont, l.cont_kind));
                if let Some((t, k)) = target {
                    self.jump(t, k);
                }
            }
        }
    }
}

/// Lowers a function body into basic blocks.
pub fn build_cfg(f: &FunctionDef) -> Cfg<'_> {
    let mut b = Builder { blocks: Vec::new(), current: None, exit: 0, loops: Vec::new() };
    let entry = b.new_block();
    b.exit = b.new_block();
    b.current = Some(entry);
    b.stmt(&f.body);
    b.jump(b.exit, EdgeKind::Fallthrough);

    let n = b.blocks.len();
    let mut reachable = vec![false; n];
    let mut work = vec![entry];
    reachable[entry] = true;
    while let Some(x) = work.pop() {
        for &(to, _) in &b.blocks[x].1 {
            if !reachable[to] {
                reachable[to] = true;
                work.push(to);
            }
        }
    }
    let order: Vec<BlockId> = (0..n).filter(|&i| reachable[i] && i != b.exit).chain([b.exit]).collect();
    let mut renumber = vec![usize::MAX; n];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }
    let mut blocks: Vec<BasicBlock> = order
        .iter()
        .enumerate()
        .map(|(id, &old)| BasicBlock {
            id,
            elements: std::mem::take(&mut b.blocks[old].0),
            succs: b.blocks[old].1.iter().map(|&(to, kind)| Edge { from: id, to: renumber[to], kind }).collect(),
            preds: Vec::new(),
        })
        .collect();
    let edges: Vec<Edge> = blocks.iter().flat_map(|b| b.succs.clone()).collect();
    for e in edges {
        blocks[e.to].preds.push(e);
    }
    Cfg { function: f, blocks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_source;

    fn with_cfg(src: &str, check: impl FnOnce(&Cfg)) {
        let (_, tu) = parse_source(src, "t.c").unwrap();
        let f = tu.functions().next().unwrap();
        check(&build_cfg(f));
    }

    fn count_kind(cfg: &Cfg, kind: EdgeKind) -> usize {
        cfg.edges().filter(|e| e.kind == kind).count()
    }

    #[test]
    fn single_return() {
        with_cfg("int f(void) { return 0; }", |cfg| {
            assert_eq!(cfg.blocks.len(), 2);
            assert_eq!(cfg.blocks[0].succs, vec![Edge { from: 0, to: 1, kind: EdgeKind::Fallthrough }]);
        });
    }

    #[test]
    fn diamond() {
        with_cfg("int f(int c) { int x; if (c) x = 1; else x = 2; return x; }", |cfg| {
            assert_eq!(cfg.blocks.len(), 5);
            assert_eq!(count_kind(cfg, EdgeKind::BranchTrue), 1);
            assert_eq!(count_kind(cfg, EdgeKind::BranchFalse), 1);
        });
    }

    #[test]
    fn while_has_back_edge() {
        with_cfg("void f(int n) { while (n) n--; }", |cfg| {
            assert_eq!(count_kind(cfg, EdgeKind::LoopBack), 1);
            let back = cfg.edges().find(|e| e.kind == EdgeKind::LoopBack).unwrap();
            assert!(matches!(cfg.blocks[back.to].elements[0], Element::Condition { in_loop: true, .. }));
        });
    }

    #[test]
    fn short_circuit_splits_blocks() {
        with_cfg("void f(int a, int b) { if (a && !b) a = 0; }", |cfg| {
            let conds: Vec<_> = cfg.blocks.iter().filter_map(|b| b.condition()).collect();
            assert_eq!(conds.len(), 2);
            // `!b` is lowered with swapped targets, so `b` is the atom.
            assert!(matches!(conds[1].kind, ExprKind::Ident(ref n) if n == "b"));
            assert_eq!(count_kind(cfg, EdgeKind::BranchTrue), 2);
        });
    }

    #[test]
    fn code_after_return_is_pruned() {
        with_cfg("int f(void) { return 1; f(); }", |cfg| {
            assert_eq!(cfg.blocks.len(), 2);
        });
    }

    #[test]
    fn break_and_continue() {
        with_cfg("void f(int n) { for (;;) { if (n) break; n++; continue; } }", |cfg| {
            assert!(cfg.blocks.iter().all(|b| b.id == 0 || !b.preds.is_empty() || b.id == cfg.exit()));
            assert!(!cfg.blocks[cfg.exit()].preds.is_empty());
        });
    }

    #[test]
    fn do_while_back_edge_is_true_branch() {
        with_cfg("void f(int n) { do { n--; } while (n > 0); }", |cfg| {
            let t = cfg.edges().find(|e| e.kind == EdgeKind::BranchTrue).unwrap();
            assert!(t.to < t.from);
            assert_eq!(count_kind(cfg, EdgeKind::LoopBack), 0);
        });
    }

    #[test]
    fn rpo_starts_at_entry_and_covers_all() {
        with_cfg("void f(int n) { while (n) { if (n > 3) n = 1; n--; } }", |cfg| {
            let rpo = cfg.reverse_postorder();
            assert_eq!(rpo[0], 0);
            let mut sorted = rpo.clone();
            sorted.sort();
            assert_eq!(sorted, (0..cfg.blocks.len()).collect::<Vec<_>>());
        });
    }
}
