use super::{usual_arithmetic, SemaModel, SymbolKind, TypeDesc};
use crate::frontend::ast::*;

/// The classification checkers reason about: the expression's type after
/// the usual unary conversions, with character categories left unpromoted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialType {
    pub ty: TypeDesc,
    /// The value comes straight from a character-reading stdio call
    /// (`getchar` and friends) and still fits an `int`.
    pub io_int: bool,
}

impl SemaModel {
    /// Declared type of an expression before any conversion. Arrays stay
    /// arrays, so `sizeof` and buffer-size reasoning see the real extent.
    pub fn object_type(&self, e: &Expr) -> TypeDesc {
        match &e.kind {
            ExprKind::Ident(_) => match self.symbol_of_ref(e.id) {
                Some(sym) => {
                    let s = self.symbol(sym);
                    match s.kind {
                        SymbolKind::Function => match &s.declared_type {
                            TypeDesc::Function(_) => s.declared_type.clone(),
                            other => TypeDesc::Function(Box::new(other.clone())),
                        },
                        _ => s.declared_type.clone(),
                    }
                }
                None => TypeDesc::SignedInt(None),
            },
            ExprKind::IntLit { value, unsigned, long, .. } => {
                let size = if *long || *value > i32::MAX as i128 || *value < i32::MIN as i128 { 8 } else { 4 };
                if *unsigned {
                    TypeDesc::UnsignedInt(Some(size))
                } else {
                    TypeDesc::SignedInt(Some(size))
                }
            }
            ExprKind::FloatLit { single, .. } => TypeDesc::Floating(Some(if *single { 4 } else { 8 })),
            ExprKind::CharLit(_) => TypeDesc::int(),
            ExprKind::StringLit(bytes) => TypeDesc::Array(Box::new(TypeDesc::PlainChar), Some(bytes.len() as u64 + 1)),
            ExprKind::Call { callee, .. } => {
                if let Some(info) = self.library_call(e.id) {
                    return info.ret.ty();
                }
                match self.object_type(callee) {
                    TypeDesc::Function(ret) => *ret,
                    TypeDesc::Pointer(inner) => match *inner {
                        TypeDesc::Function(ret) => *ret,
                        _ => TypeDesc::int(),
                    },
                    _ => TypeDesc::int(),
                }
            }
            ExprKind::Binary { op, lhs, rhs } => {
                if op.is_comparison() || op.is_logical() {
                    return TypeDesc::int();
                }
                match op {
                    BinaryOp::Comma => self.object_type(rhs),
                    BinaryOp::Shl | BinaryOp::Shr => self.object_type(lhs).promoted(),
                    BinaryOp::Add | BinaryOp::Sub => {
                        let (l, r) = (self.object_type(lhs).decayed(), self.object_type(rhs).decayed());
                        match (l.is_pointer_like(), r.is_pointer_like()) {
                            (true, true) => TypeDesc::SignedInt(Some(8)),
                            (true, false) => l,
                            (false, true) => r,
                            _ => usual_arithmetic(&l, &r),
                        }
                    }
                    _ => usual_arithmetic(&self.object_type(lhs), &self.object_type(rhs)),
                }
            }
            ExprKind::Unary { op, operand } => match op {
                UnaryOp::Plus | UnaryOp::Neg | UnaryOp::BitNot => self.object_type(operand).promoted(),
                UnaryOp::Not => TypeDesc::int(),
                UnaryOp::AddrOf => TypeDesc::pointer_to(self.object_type(operand)),
                UnaryOp::Deref => match self.object_type(operand).decayed() {
                    TypeDesc::Pointer(inner) => *inner,
                    _ => TypeDesc::SignedInt(None),
                },
                UnaryOp::PreInc | UnaryOp::PreDec | UnaryOp::PostInc | UnaryOp::PostDec => self.object_type(operand),
            },
            ExprKind::Cast { ty, .. } => ty.clone(),
            ExprKind::Sizeof(_) => TypeDesc::size_t(),
            ExprKind::Subscript { base, index } => {
                let b = self.object_type(base).decayed();
                let i = self.object_type(index).decayed();
                match (b, i) {
                    (TypeDesc::Pointer(elem), _) | (_, TypeDesc::Pointer(elem)) => *elem,
                    _ => TypeDesc::SignedInt(None),
                }
            }
            ExprKind::Member { base, field, arrow } => {
                let container = if *arrow {
                    match self.object_type(base).decayed() {
                        TypeDesc::Pointer(inner) => *inner,
                        _ => return TypeDesc::SignedInt(None),
                    }
                } else {
                    self.object_type(base)
                };
                match container {
                    TypeDesc::Struct(tag) => self
                        .structs
                        .get(&tag)
                        .and_then(|s| s.fields.iter().find(|(n, _)| n == field))
                        .map(|(_, t)| t.clone())
                        .unwrap_or(TypeDesc::SignedInt(None)),
                    _ => TypeDesc::SignedInt(None),
                }
            }
            ExprKind::Assign { lhs, .. } => self.object_type(lhs),
            ExprKind::Conditional { then_expr, else_expr, .. } => {
                let (t, f) = (self.object_type(then_expr).decayed(), self.object_type(else_expr).decayed());
                if t.is_arithmetic() && f.is_arithmetic() {
                    usual_arithmetic(&t, &f)
                } else if t.is_pointer_like() {
                    t
                } else {
                    f
                }
            }
        }
    }

    /// Essential type of a resolved expression. Total and side-effect free.
    pub fn essential_type(&self, e: &Expr) -> EssentialType {
        let io_int = match &e.kind {
            ExprKind::Call { .. } => self.library_call(e.id).is_some_and(|info| info.returns_io_int),
            _ => false,
        };
        EssentialType { ty: self.object_type(e).promoted_keep_char(), io_int }
    }

    /// Value of an integer constant expression, when it is one. Covers
    /// literals, unary minus, casts, and `sizeof` with a known size.
    pub fn const_value(&self, e: &Expr) -> Option<i128> {
        match &e.kind {
            ExprKind::IntLit { value, .. } => Some(*value),
            ExprKind::CharLit(v) => Some(*v as i128),
            ExprKind::Unary { op: UnaryOp::Neg, operand } => self.const_value(operand).map(|v| -v),
            ExprKind::Unary { op: UnaryOp::Plus, operand } => self.const_value(operand),
            ExprKind::Cast { ty, operand } if ty.is_integer() => self.const_value(operand),
            ExprKind::Sizeof(SizeofOperand::Type(t)) => t.byte_size().map(i128::from),
            ExprKind::Sizeof(SizeofOperand::Expr(inner)) => self.object_type(inner).byte_size().map(i128::from),
            _ => None,
        }
    }

    /// Whether an expression is a compile-time constant for validation
    /// purposes: an integer constant or any `sizeof`.
    pub fn is_constant(&self, e: &Expr) -> bool {
        matches!(e.peel_casts().kind, ExprKind::Sizeof(_)) || self.const_value(e).is_some()
    }
}

#[cfg(test)]
mod tests {
    use crate::frontend::ast::*;
    use crate::frontend::parse_source;
    use crate::sema::{resolve, ResolvedUnit, TypeDesc};

    fn unit(src: &str) -> ResolvedUnit {
        resolve(parse_source(src, "t.c").unwrap().1).unwrap()
    }

    /// Essential type of the expression in the last expression statement of
    /// the first function.
    fn last_expr_type(src: &str) -> (TypeDesc, bool) {
        let ru = unit(src);
        let f = ru.tu.functions().next().unwrap();
        let StmtKind::Compound(items) = &f.body.kind else { panic!() };
        let e = items
            .iter()
            .rev()
            .find_map(|s| match &s.kind {
                StmtKind::Expr(e) => Some(e),
                _ => None,
            })
            .unwrap();
        let et = ru.sema.essential_type(e);
        (et.ty, et.io_int)
    }

    #[test]
    fn cast_dominates() {
        assert_eq!(last_expr_type("void f(char c){ (unsigned char)c; }").0, TypeDesc::UnsignedChar);
    }

    #[test]
    fn subscript_yields_element() {
        assert_eq!(last_expr_type("void f(void){ char a[10]; a[3]; }").0, TypeDesc::PlainChar);
    }

    #[test]
    fn getchar_is_int_with_io_provenance() {
        let (ty, io) = last_expr_type("#include <stdio.h>\nvoid f(void){ getchar(); }");
        assert_eq!(ty, TypeDesc::int());
        assert!(io);
    }

    #[test]
    fn char_arithmetic_promotes() {
        assert_eq!(last_expr_type("void f(char c){ c + 1; }").0, TypeDesc::int());
        assert_eq!(last_expr_type("void f(char c){ c; }").0, TypeDesc::PlainChar);
        assert_eq!(last_expr_type("void f(short s){ s; }").0, TypeDesc::int());
    }

    #[test]
    fn unknown_constructs_are_permissive_int() {
        assert_eq!(last_expr_type("void f(void){ mystery; }").0, TypeDesc::SignedInt(None));
    }

    #[test]
    fn member_and_pointer_types() {
        let src = "struct P { char tag; int n; };\nvoid f(struct P *p){ p->tag; }";
        assert_eq!(last_expr_type(src).0, TypeDesc::PlainChar);
        assert_eq!(last_expr_type("void f(int *p){ *p; }").0, TypeDesc::int());
        assert_eq!(
            last_expr_type("void f(void){ char b[4]; b; }").0,
            TypeDesc::pointer_to(TypeDesc::PlainChar)
        );
    }

    #[test]
    fn requery_is_stable() {
        let ru = unit("void f(char c, int n){ c = n + (c ? 1 : 2); }");
        walk_exprs(&ru.tu, &mut |e| assert_eq!(ru.sema.essential_type(e), ru.sema.essential_type(e)));
    }

    #[test]
    fn sizeof_constants() {
        let ru = unit("void f(int a[4]){ char d[16]; sizeof d; sizeof(a); sizeof(int); sizeof(struct Q *); }");
        let mut values = vec![];
        walk_exprs(&ru.tu, &mut |e| {
            if matches!(e.kind, ExprKind::Sizeof(_)) {
                values.push(ru.sema.const_value(e));
            }
        });
        assert_eq!(values, vec![Some(16), Some(8), Some(4), Some(8)]);
    }
}
