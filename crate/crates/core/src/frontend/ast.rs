//! Syntax tree for the supported C subset.
//!
//! Every node that semantic analysis annotates carries a [`NodeId`], unique
//! within its translation unit. Annotations live in side tables keyed by id.

use std::collections::BTreeSet;

use super::{SourceLocation, StdMacro};
use crate::sema::TypeDesc;

pub type NodeId = u32;

#[derive(Debug, Clone, PartialEq)]
pub struct TranslationUnit {
    pub path: String,
    pub included_standard_headers: BTreeSet<String>,
    pub items: Vec<ExternalDecl>,
    pub node_count: u32,
}

impl TranslationUnit {
    pub fn functions(&self) -> impl Iterator<Item = &FunctionDef> {
        self.items.iter().filter_map(|item| match item {
            ExternalDecl::Function(f) => Some(f),
            ExternalDecl::Declaration(_) => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExternalDecl {
    Function(FunctionDef),
    Declaration(Declaration),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionDef {
    pub id: NodeId,
    pub name: String,
    pub return_type: TypeDesc,
    pub params: Vec<Param>,
    pub body: Stmt,
    pub loc: SourceLocation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Param {
    pub id: NodeId,
    pub name: Option<String>,
    /// Declared type as written; `int a[10]` stays an array here.
    pub ty: TypeDesc,
    pub loc: SourceLocation,
}

impl Param {
    pub fn is_array_declared(&self) -> bool {
        matches!(self.ty, TypeDesc::Array(..))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructDef {
    pub tag: String,
    pub fields: Vec<(String, TypeDesc, SourceLocation)>,
    pub loc: SourceLocation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Declaration {
    pub struct_def: Option<StructDef>,
    pub declarators: Vec<InitDeclarator>,
    pub loc: SourceLocation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InitDeclarator {
    pub id: NodeId,
    pub name: String,
    pub ty: TypeDesc,
    /// Present for function declarators (prototypes).
    pub params: Option<Vec<Param>>,
    pub init: Option<Initializer>,
    pub loc: SourceLocation,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Initializer {
    Expr(Expr),
    List(Vec<Initializer>, SourceLocation),
}

impl Initializer {
    /// Expressions in source order, flattening braces.
    pub fn exprs(&self) -> Vec<&Expr> {
        match self {
            Initializer::Expr(e) => vec![e],
            Initializer::List(items, _) => items.iter().flat_map(Initializer::exprs).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stmt {
    pub id: NodeId,
    pub kind: StmtKind,
    pub loc: SourceLocation,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Compound(Vec<Stmt>),
    Decl(Declaration),
    Expr(Expr),
    Empty,
    If { cond: Expr, then_branch: Box<Stmt>, else_branch: Option<Box<Stmt>> },
    While { cond: Expr, body: Box<Stmt> },
    DoWhile { body: Box<Stmt>, cond: Expr },
    For { init: Option<Box<Stmt>>, cond: Option<Expr>, step: Option<Expr>, body: Box<Stmt> },
    Return(Option<Expr>),
    Break,
    Continue,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub id: NodeId,
    pub kind: ExprKind,
    pub loc: SourceLocation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Mul,
    Div,
    Rem,
    Add,
    Sub,
    Shl,
    Shr,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    BitAnd,
    BitXor,
    BitOr,
    LogicalAnd,
    LogicalOr,
    Comma,
}

impl BinaryOp {
    pub fn is_relational(self) -> bool {
        matches!(self, BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge)
    }

    pub fn is_comparison(self) -> bool {
        self.is_relational() || matches!(self, BinaryOp::Eq | BinaryOp::Ne)
    }

    pub fn is_logical(self) -> bool {
        matches!(self, BinaryOp::LogicalAnd | BinaryOp::LogicalOr)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Plus,
    Neg,
    BitNot,
    Not,
    AddrOf,
    Deref,
    PreInc,
    PreDec,
    PostInc,
    PostDec,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SizeofOperand {
    Expr(Box<Expr>),
    Type(TypeDesc),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Ident(String),
    IntLit { value: i128, unsigned: bool, long: bool, macro_origin: Option<StdMacro> },
    FloatLit { text: String, single: bool },
    CharLit(i64),
    StringLit(Vec<u8>),
    Call { callee: Box<Expr>, args: Vec<Expr> },
    Binary { op: BinaryOp, lhs: Box<Expr>, rhs: Box<Expr> },
    Unary { op: UnaryOp, operand: Box<Expr> },
    Cast { ty: TypeDesc, operand: Box<Expr> },
    Sizeof(SizeofOperand),
    Subscript { base: Box<Expr>, index: Box<Expr> },
    Member { base: Box<Expr>, field: String, arrow: bool },
    /// `op` is `None` for plain `=`, otherwise the arithmetic of `op=`.
    Assign { op: Option<BinaryOp>, lhs: Box<Expr>, rhs: Box<Expr> },
    Conditional { cond: Box<Expr>, then_expr: Box<Expr>, else_expr: Box<Expr> },
}

impl Expr {
    /// Immediate subexpressions in evaluation order. `sizeof` operands are
    /// included even though they are not evaluated.
    pub fn children(&self) -> Vec<&Expr> {
        match &self.kind {
            ExprKind::Ident(_)
            | ExprKind::IntLit { .. }
            | ExprKind::FloatLit { .. }
            | ExprKind::CharLit(_)
            | ExprKind::StringLit(_) => vec![],
            ExprKind::Call { callee, args } => std::iter::once(callee.as_ref()).chain(args.iter()).collect(),
            ExprKind::Binary { lhs, rhs, .. } | ExprKind::Assign { lhs, rhs, .. } => vec![lhs, rhs],
            ExprKind::Unary { operand, .. } | ExprKind::Cast { operand, .. } => vec![operand],
            ExprKind::Sizeof(SizeofOperand::Expr(e)) => vec![e],
            ExprKind::Sizeof(SizeofOperand::Type(_)) => vec![],
            ExprKind::Subscript { base, index } => vec![base, index],
            ExprKind::Member { base, .. } => vec![base],
            ExprKind::Conditional { cond, then_expr, else_expr } => vec![cond, then_expr, else_expr],
        }
    }

    /// Pre-order traversal of this expression and all subexpressions.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        for child in self.children() {
            child.walk(f);
        }
    }

    /// Strips casts.
    pub fn peel_casts(&self) -> &Expr {
        match &self.kind {
            ExprKind::Cast { operand, .. } => operand.peel_casts(),
            _ => self,
        }
    }

    pub fn callee_name(&self) -> Option<&str> {
        match &self.kind {
            ExprKind::Call { callee, .. } => match &callee.kind {
                ExprKind::Ident(name) => Some(name),
                _ => None,
            },
            _ => None,
        }
    }
}

impl Stmt {
    /// Pre-order traversal of statements.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Stmt)) {
        f(self);
        match &self.kind {
            StmtKind::Compound(items) => items.iter().for_each(|s| s.walk(f)),
            StmtKind::If { then_branch, else_branch, .. } => {
                then_branch.walk(f);
                if let Some(e) = else_branch {
                    e.walk(f);
                }
            }
            StmtKind::While { body, .. } | StmtKind::DoWhile { body, .. } => body.walk(f),
            StmtKind::For { init, body, .. } => {
                if let Some(i) = init {
                    i.walk(f);
                }
                body.walk(f);
            }
            _ => {}
        }
    }

    /// Expressions owned directly by this statement (not nested statements).
    pub fn own_exprs(&self) -> Vec<&Expr> {
        match &self.kind {
            StmtKind::Decl(d) => d.exprs(),
            StmtKind::Expr(e) => vec![e],
            StmtKind::If { cond, .. } | StmtKind::While { cond, .. } | StmtKind::DoWhile { cond, .. } => vec![cond],
            StmtKind::For { cond, step, .. } => cond.iter().chain(step.iter()).collect(),
            StmtKind::Return(Some(e)) => vec![e],
            _ => vec![],
        }
    }
}

impl Declaration {
    pub fn exprs(&self) -> Vec<&Expr> {
        self.declarators.iter().filter_map(|d| d.init.as_ref()).flat_map(Initializer::exprs).collect()
    }
}

/// Visits every expression in the unit, including nested subexpressions.
pub fn walk_exprs<'a>(tu: &'a TranslationUnit, f: &mut impl FnMut(&'a Expr)) {
    for item in &tu.items {
        match item {
            ExternalDecl::Declaration(d) => d.exprs().into_iter().for_each(|e| e.walk(f)),
            ExternalDecl::Function(func) => func.body.walk(&mut |s: &'a Stmt| {
                for e in s.own_exprs() {
                    e.walk(f);
                }
            }),
        }
    }
}
