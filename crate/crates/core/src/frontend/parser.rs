use super::ast::*;
use super::lexer::{Token, TokenKind};
use super::preprocess::Preprocessed;
use super::{FrontendError, SourceLocation};
use crate::sema::TypeDesc;

/// Type names the parser knows without a `typedef` in the source.
pub const BUILTIN_TYPEDEFS: [&str; 4] = ["size_t", "ptrdiff_t", "FILE", "fpos_t"];

type PResult<T> = Result<T, FrontendError>;

/// Parses a token list (as produced by `tokenize`) into a translation unit.
pub fn parse(tokens: &[Token], pp: &Preprocessed) -> PResult<TranslationUnit> {
    let mut parser = Parser { tokens, pos: 0, next_id: 0, anon_structs: 0 };
    let mut items = Vec::new();
    while !parser.at_end() {
        items.push(parser.external_decl()?);
    }
    Ok(TranslationUnit {
        path: pp.path.to_string(),
        included_standard_headers: pp.header_names(),
        items,
        node_count: parser.next_id,
    })
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    next_id: NodeId,
    anon_structs: u32,
}

#[derive(Default)]
struct Specifiers {
    base: Option<TypeDesc>,
    struct_def: Option<StructDef>,
}

struct Declarator {
    name: Option<String>,
    ty: TypeDesc,
    params: Option<Vec<Param>>,
    loc: SourceLocation,
}

fn binary_precedence(text: &str) -> Option<(u8, BinaryOp)> {
    Some(match text {
        "||" => (1, BinaryOp::LogicalOr),
        "&&" => (2, BinaryOp::LogicalAnd),
        "|" => (3, BinaryOp::BitOr),
        "^" => (4, BinaryOp::BitXor),
        "&" => (5, BinaryOp::BitAnd),
        "==" => (6, BinaryOp::Eq),
        "!=" => (6, BinaryOp::Ne),
        "<" => (7, BinaryOp::Lt),
        ">" => (7, BinaryOp::Gt),
        "<=" => (7, BinaryOp::Le),
        ">=" => (7, BinaryOp::Ge),
        "<<" => (8, BinaryOp::Shl),
        ">>" => (8, BinaryOp::Shr),
        "+" => (9, BinaryOp::Add),
        "-" => (9, BinaryOp::Sub),
        "*" => (10, BinaryOp::Mul),
        "/" => (10, BinaryOp::Div),
        "%" => (10, BinaryOp::Rem),
        _ => return None,
    })
}

fn assign_op(text: &str) -> Option<Option<BinaryOp>> {
    Some(match text {
        "=" => None,
        "+=" => Some(BinaryOp::Add),
        "-=" => Some(BinaryOp::Sub),
        "*=" => Some(BinaryOp::Mul),
        "/=" => Some(BinaryOp::Div),
        "%=" => Some(BinaryOp::Rem),
        "<<=" => Some(BinaryOp::Shl),
        ">>=" => Some(BinaryOp::Shr),
        "&=" => Some(BinaryOp::BitAnd),
        "^=" => Some(BinaryOp::BitXor),
        "|=" => Some(BinaryOp::BitOr),
        _ => return None,
    })
}

impl<'t> Parser<'t> {
    fn peek(&self) -> &'t Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn peek_at(&self, n: usize) -> &'t Token {
        &self.tokens[(self.pos + n).min(self.tokens.len() - 1)]
    }

    fn at_end(&self) -> bool {
        self.peek().kind == TokenKind::EofMarker
    }

    fn bump(&mut self) -> &'t Token {
        let tok = self.peek();
        if tok.kind != TokenKind::EofMarker {
            self.pos += 1;
        }
        tok
    }

    fn id(&mut self) -> NodeId {
        let id = self.next_id;
        self.next_id += 1;
        id
    }

    fn is_punct(&self, p: &str) -> bool {
        let t = self.peek();
        t.kind == TokenKind::Punctuator && t.text == p
    }

    fn is_kw(&self, k: &str) -> bool {
        let t = self.peek();
        t.kind == TokenKind::Keyword && t.text == k
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error_at(&self, tok: &Token, message: impl Into<String>) -> FrontendError {
        FrontendError::Parse { message: message.into(), loc: tok.loc.clone() }
    }

    fn unsupported(&self, tok: &Token, what: &str) -> FrontendError {
        self.error_at(tok, format!("unsupported construct: {what}"))
    }

    fn expected(&self, what: &str) -> FrontendError {
        let tok = self.peek();
        let found = if tok.kind == TokenKind::EofMarker { "end of file".to_string() } else { format!("`{}`", tok.text) };
        self.error_at(tok, format!("expected {what}, found {found}"))
    }

    fn expect_punct(&mut self, p: &str) -> PResult<&'t Token> {
        if self.is_punct(p) {
            Ok(self.bump())
        } else {
            Err(self.expected(&format!("`{p}`")))
        }
    }

    fn expect_ident(&mut self) -> PResult<&'t Token> {
        if self.peek().kind == TokenKind::Identifier {
            Ok(self.bump())
        } else {
            Err(self.expected("identifier"))
        }
    }

    fn starts_type(&self, tok: &Token) -> bool {
        match tok.kind {
            TokenKind::Keyword => matches!(
                tok.text.as_str(),
                "void" | "char" | "short" | "int" | "long" | "float" | "double" | "signed" | "unsigned"
                    | "struct" | "union" | "enum" | "const" | "volatile" | "restrict" | "static"
                    | "extern" | "register" | "auto" | "inline" | "typedef" | "_Bool"
            ),
            TokenKind::Identifier => BUILTIN_TYPEDEFS.contains(&tok.text.as_str()),
            _ => false,
        }
    }

    // ---- declarations -------------------------------------------------

    fn specifiers(&mut self) -> PResult<Specifiers> {
        let start = self.peek();
        let mut spec = Specifiers::default();
        let (mut signed, mut unsigned, mut short, mut long, mut int, mut char_, mut other) =
            (false, false, false, 0u8, false, false, None::<TypeDesc>);
        let mut any = false;
        loop {
            let tok = self.peek();
            match (tok.kind, tok.text.as_str()) {
                (TokenKind::Keyword, "const" | "volatile" | "restrict" | "static" | "extern" | "register" | "auto" | "inline") => {}
                (TokenKind::Keyword, "typedef") => return Err(self.unsupported(tok, "typedef")),
                (TokenKind::Keyword, "union") => return Err(self.unsupported(tok, "union")),
                (TokenKind::Keyword, "enum") => return Err(self.unsupported(tok, "enum")),
                (TokenKind::Keyword, "_Bool") => return Err(self.unsupported(tok, "_Bool")),
                (TokenKind::Keyword, "signed") => signed = true,
                (TokenKind::Keyword, "unsigned") => unsigned = true,
                (TokenKind::Keyword, "short") => short = true,
                (TokenKind::Keyword, "long") => long += 1,
                (TokenKind::Keyword, "int") => int = true,
                (TokenKind::Keyword, "char") => char_ = true,
                (TokenKind::Keyword, "void") => other = Some(TypeDesc::Void),
                (TokenKind::Keyword, "float") => other = Some(TypeDesc::Floating(Some(4))),
                (TokenKind::Keyword, "double") => other = Some(TypeDesc::Floating(Some(if long > 0 { 16 } else { 8 }))),
                (TokenKind::Keyword, "struct") => {
                    self.bump();
                    let (ty, def) = self.struct_specifier(tok)?;
                    other = Some(ty);
                    spec.struct_def = def;
                    any = true;
                    continue;
                }
                (TokenKind::Identifier, name)
                    if BUILTIN_TYPEDEFS.contains(&name)
                        && other.is_none()
                        && !(signed || unsigned || short || long > 0 || int || char_) =>
                {
                    other = Some(match name {
                        "size_t" => TypeDesc::size_t(),
                        "ptrdiff_t" => TypeDesc::SignedInt(Some(8)),
                        tag => TypeDesc::Struct(tag.to_string()),
                    });
                }
                _ => break,
            }
            any = true;
            self.bump();
        }
        if !any {
            return Err(self.expected("type specifier"));
        }
        let ty = if let Some(t) = other {
            let float_ok = matches!(t, TypeDesc::Floating(_)) || long == 0;
            if char_ || short || int || signed || unsigned || !float_ok {
                return Err(self.error_at(start, "invalid combination of type specifiers"));
            }
            t
        } else if char_ {
            match (signed, unsigned) {
                (true, _) => TypeDesc::SignedChar,
                (_, true) => TypeDesc::UnsignedChar,
                _ => TypeDesc::PlainChar,
            }
        } else {
            let size = if short {
                2
            } else if long > 0 {
                8
            } else {
                4
            };
            if unsigned {
                TypeDesc::UnsignedInt(Some(size))
            } else {
                TypeDesc::SignedInt(Some(size))
            }
        };
        spec.base = Some(ty);
        Ok(spec)
    }

    fn struct_specifier(&mut self, kw: &'t Token) -> PResult<(TypeDesc, Option<StructDef>)> {
        let tag = if self.peek().kind == TokenKind::Identifier { Some(self.bump().text.clone()) } else { None };
        if !self.is_punct("{") {
            return match tag {
                Some(t) => Ok((TypeDesc::Struct(t), None)),
                None => Err(self.expected("struct tag or `{`")),
            };
        }
        self.bump();
        let tag = tag.unwrap_or_else(|| {
            self.anon_structs += 1;
            format!("<anonymous#{}>", self.anon_structs)
        });
        let mut fields = Vec::new();
        while !self.eat_punct("}") {
            let spec_tok = self.peek();
            let spec = self.specifiers()?;
            if spec.struct_def.is_some() {
                return Err(self.unsupported(spec_tok, "nested struct definition"));
            }
            let base = spec.base.expect("specifiers always set a base type");
            loop {
                let d = self.declarator(base.clone(), false)?;
                if self.is_punct(":") {
                    return Err(self.unsupported(self.peek(), "bit-field"));
                }
                if d.params.is_some() {
                    return Err(self.error_at(spec_tok, "function declarator in struct member"));
                }
                fields.push((d.name.unwrap_or_default(), d.ty, d.loc));
                if !self.eat_punct(",") {
                    break;
                }
            }
            self.expect_punct(";")?;
        }
        let def = StructDef { tag: tag.clone(), fields, loc: kw.loc.clone() };
        Ok((TypeDesc::Struct(tag), Some(def)))
    }

    /// Parses `*`s, an optional identifier, and at most one suffix.
    fn declarator(&mut self, base: TypeDesc, abstract_ok: bool) -> PResult<Declarator> {
        let mut ty = base;
        let start_loc = self.peek().loc.clone();
        while self.eat_punct("*") {
            ty = TypeDesc::pointer_to(ty);
            while matches!(self.peek().text.as_str(), "const" | "volatile" | "restrict") && self.peek().kind == TokenKind::Keyword {
                self.bump();
            }
        }
        if self.is_punct("(") && !abstract_ok {
            return Err(self.unsupported(self.peek(), "parenthesized declarator (function pointer)"));
        }
        if self.is_punct("(") && abstract_ok && matches!(self.peek_at(1).text.as_str(), "*" | "(") {
            return Err(self.unsupported(self.peek(), "parenthesized declarator (function pointer)"));
        }
        let (name, loc) = if self.peek().kind == TokenKind::Identifier {
            let t = self.bump();
            (Some(t.text.clone()), t.loc.clone())
        } else if abstract_ok {
            (None, start_loc)
        } else {
            return Err(self.expected("identifier"));
        };
        let mut params = None;
        if self.is_punct("[") {
            let open = self.bump();
            let extent = if self.is_punct("]") {
                None
            } else {
                let e = self.conditional()?;
                match const_eval(&e) {
                    Some(v) if v >= 0 => Some(v as u64),
                    Some(_) => return Err(self.error_at(open, "negative array extent")),
                    None => return Err(self.unsupported(open, "variable-length array")),
                }
            };
            self.expect_punct("]")?;
            if self.is_punct("[") {
                return Err(self.unsupported(self.peek(), "multi-dimensional array"));
            }
            ty = TypeDesc::Array(Box::new(ty), extent);
        } else if self.is_punct("(") && name.is_some() {
            self.bump();
            params = Some(self.param_list()?);
            ty = TypeDesc::Function(Box::new(ty));
        }
        if self.is_punct("(") || self.is_punct("[") {
            return Err(self.unsupported(self.peek(), "complex declarator"));
        }
        Ok(Declarator { name, ty, params, loc })
    }

    fn param_list(&mut self) -> PResult<Vec<Param>> {
        let mut params = Vec::new();
        if self.eat_punct(")") {
            return Ok(params);
        }
        if self.is_kw("void") && self.peek_at(1).text == ")" {
            self.bump();
            self.bump();
            return Ok(params);
        }
        loop {
            if self.is_punct("...") {
                return Err(self.unsupported(self.peek(), "variadic function"));
            }
            let spec_tok = self.peek();
            let spec = self.specifiers()?;
            if spec.struct_def.is_some() {
                return Err(self.unsupported(spec_tok, "struct definition in parameter list"));
            }
            let d = self.declarator(spec.base.expect("base type"), true)?;
            if d.params.is_some() {
                return Err(self.unsupported(spec_tok, "function-typed parameter"));
            }
            let id = self.id();
            let loc = if d.name.is_some() { d.loc } else { spec_tok.loc.clone() };
            params.push(Param { id, name: d.name, ty: d.ty, loc });
            if !self.eat_punct(",") {
                break;
            }
        }
        self.expect_punct(")")?;
        Ok(params)
    }

    fn external_decl(&mut self) -> PResult<ExternalDecl> {
        let start = self.peek();
        if !self.starts_type(start) {
            return Err(self.expected("declaration"));
        }
        let spec = self.specifiers()?;
        let base = spec.base.clone().expect("base type");
        if self.is_punct(";") {
            self.bump();
            return Ok(ExternalDecl::Declaration(Declaration { struct_def: spec.struct_def, declarators: vec![], loc: start.loc.clone() }));
        }
        let mut first = self.declarator(base.clone(), false)?;
        if let Some(params) = first.params.take_if(|_| self.is_punct("{")) {
            if params.iter().any(|p| p.name.is_none()) {
                return Err(self.error_at(start, "parameter name omitted in function definition"));
            }
            let return_type = match first.ty {
                TypeDesc::Function(r) => *r,
                other => other,
            };
            let id = self.id();
            let body = self.compound()?;
            return Ok(ExternalDecl::Function(FunctionDef {
                id,
                name: first.name.expect("named declarator"),
                return_type,
                params,
                body,
                loc: first.loc,
            }));
        }
        let decl = self.finish_declaration(spec, first, start)?;
        Ok(ExternalDecl::Declaration(decl))
    }

    fn finish_declaration(&mut self, spec: Specifiers, first: Declarator, start: &Token) -> PResult<Declaration> {
        let base = spec.base.expect("base type");
        let mut declarators = Vec::new();
        let mut current = first;
        loop {
            let init = if self.eat_punct("=") {
                if current.params.is_some() {
                    return Err(self.error_at(start, "function declarator with initializer"));
                }
                Some(self.initializer()?)
            } else {
                None
            };
            let ty = match (&current.ty, &init) {
                (TypeDesc::Array(elem, None), Some(init)) => {
                    let extent = match init {
                        Initializer::Expr(Expr { kind: ExprKind::StringLit(bytes), .. }) => Some(bytes.len() as u64 + 1),
                        Initializer::List(items, _) => Some(items.len() as u64),
                        _ => None,
                    };
                    TypeDesc::Array(elem.clone(), extent)
                }
                _ => current.ty.clone(),
            };
            let id = self.id();
            declarators.push(InitDeclarator {
                id,
                name: current.name.take().expect("named declarator"),
                ty,
                params: current.params.take(),
                init,
                loc: current.loc.clone(),
            });
            if !self.eat_punct(",") {
                break;
            }
            current = self.declarator(base.clone(), false)?;
        }
        self.expect_punct(";")?;
        Ok(Declaration { struct_def: spec.struct_def, declarators, loc: start.loc.clone() })
    }

    fn initializer(&mut self) -> PResult<Initializer> {
        if self.is_punct("{") {
            let open = self.bump();
            let mut items = Vec::new();
            while !self.eat_punct("}") {
                if self.is_punct(".") || self.is_punct("[") {
                    return Err(self.unsupported(self.peek(), "designated initializer"));
                }
                items.push(self.initializer()?);
                if !self.eat_punct(",") {
                    self.expect_punct("}")?;
                    break;
                }
            }
            Ok(Initializer::List(items, open.loc.clone()))
        } else {
            Ok(Initializer::Expr(self.assignment()?))
        }
    }

    fn local_declaration(&mut self) -> PResult<Declaration> {
        let start = self.peek();
        let spec = self.specifiers()?;
        if self.is_punct(";") {
            self.bump();
            return Ok(Declaration { struct_def: spec.struct_def, declarators: vec![], loc: start.loc.clone() });
        }
        let first = self.declarator(spec.base.clone().expect("base type"), false)?;
        self.finish_declaration(spec, first, start)
    }

    // ---- statements ---------------------------------------------------

    fn stmt_node(&mut self, kind: StmtKind, loc: SourceLocation) -> Stmt {
        Stmt { id: self.id(), kind, loc }
    }

    fn compound(&mut self) -> PResult<Stmt> {
        let open = self.expect_punct("{")?;
        let mut items = Vec::new();
        while !self.eat_punct("}") {
            if self.at_end() {
                return Err(self.expected("`}`"));
            }
            items.push(self.statement()?);
        }
        Ok(self.stmt_node(StmtKind::Compound(items), open.loc.clone()))
    }

    fn paren_expr(&mut self) -> PResult<Expr> {
        self.expect_punct("(")?;
        let e = self.expression()?;
        self.expect_punct(")")?;
        Ok(e)
    }

    fn statement(&mut self) -> PResult<Stmt> {
        let tok = self.peek();
        let loc = tok.loc.clone();
        if tok.kind == TokenKind::Keyword {
            match tok.text.as_str() {
                "goto" => return Err(self.unsupported(tok, "goto")),
                "switch" => return Err(self.unsupported(tok, "switch")),
                "case" | "default" => return Err(self.unsupported(tok, "switch label")),
                "if" => {
                    self.bump();
                    let cond = self.paren_expr()?;
                    let then_branch = Box::new(self.statement()?);
                    let else_branch = if self.is_kw("else") {
                        self.bump();
                        Some(Box::new(self.statement()?))
                    } else {
                        None
                    };
                    return Ok(self.stmt_node(StmtKind::If { cond, then_branch, else_branch }, loc));
                }
                "while" => {
                    self.bump();
                    let cond = self.paren_expr()?;
                    let body = Box::new(self.statement()?);
                    return Ok(self.stmt_node(StmtKind::While { cond, body }, loc));
                }
                "do" => {
                    self.bump();
                    let body = Box::new(self.statement()?);
                    if !self.is_kw("while") {
                        return Err(self.expected("`while`"));
                    }
                    self.bump();
                    let cond = self.paren_expr()?;
                    self.expect_punct(";")?;
                    return Ok(self.stmt_node(StmtKind::DoWhile { body, cond }, loc));
                }
                "for" => {
                    self.bump();
                    self.expect_punct("(")?;
                    let init = if self.eat_punct(";") {
                        None
                    } else if self.starts_type(self.peek()) {
                        let dloc = self.peek().loc.clone();
                        let d = self.local_declaration()?;
                        Some(Box::new(self.stmt_node(StmtKind::Decl(d), dloc)))
                    } else {
                        let eloc = self.peek().loc.clone();
                        let e = self.expression()?;
                        self.expect_punct(";")?;
                        Some(Box::new(self.stmt_node(StmtKind::Expr(e), eloc)))
                    };
                    let cond = if self.is_punct(";") { None } else { Some(self.expression()?) };
                    self.expect_punct(";")?;
                    let step = if self.is_punct(")") { None } else { Some(self.expression()?) };
                    self.expect_punct(")")?;
                    let body = Box::new(self.statement()?);
                    return Ok(self.stmt_node(StmtKind::For { init, cond, step, body }, loc));
                }
                "return" => {
                    self.bump();
                    let value = if self.is_punct(";") { None } else { Some(self.expression()?) };
                    self.expect_punct(";")?;
                    return Ok(self.stmt_node(StmtKind::Return(value), loc));
                }
                "break" | "continue" => {
                    let kind = if tok.text == "break" { StmtKind::Break } else { StmtKind::Continue };
                    self.bump();
                    self.expect_punct(";")?;
                    return Ok(self.stmt_node(kind, loc));
                }
                _ => {}
            }
        }
        if tok.kind == TokenKind::Identifier && self.peek_at(1).text == ":" && self.peek_at(1).kind == TokenKind::Punctuator {
            return Err(self.unsupported(tok, "label"));
        }
        if self.is_punct("{") {
            return self.compound();
        }
        if self.eat_punct(";") {
            return Ok(self.stmt_node(StmtKind::Empty, loc));
        }
        if self.starts_type(tok) {
            let d = self.local_declaration()?;
            return Ok(self.stmt_node(StmtKind::Decl(d), loc));
        }
        let e = self.expression()?;
        self.expect_punct(";")?;
        Ok(self.stmt_node(StmtKind::Expr(e), loc))
    }

    // ---- expressions --------------------------------------------------

    fn node(&mut self, kind: ExprKind, loc: SourceLocation) -> Expr {
        Expr { id: self.id(), kind, loc }
    }

    fn expression(&mut self) -> PResult<Expr> {
        let mut lhs = self.assignment()?;
        while self.is_punct(",") {
            let op = self.bump();
            let rhs = self.assignment()?;
            lhs = self.node(ExprKind::Binary { op: BinaryOp::Comma, lhs: Box::new(lhs), rhs: Box::new(rhs) }, op.loc.clone());
        }
        Ok(lhs)
    }

    fn assignment(&mut self) -> PResult<Expr> {
        let lhs = self.conditional()?;
        let tok = self.peek();
        if tok.kind == TokenKind::Punctuator {
            if let Some(op) = assign_op(&tok.text) {
                self.bump();
                let rhs = self.assignment()?;
                return Ok(self.node(ExprKind::Assign { op, lhs: Box::new(lhs), rhs: Box::new(rhs) }, tok.loc.clone()));
            }
        }
        Ok(lhs)
    }

    fn conditional(&mut self) -> PResult<Expr> {
        let cond = self.binary(1)?;
        if self.is_punct("?") {
            let q = self.bump();
            let then_expr = self.expression()?;
            self.expect_punct(":")?;
            let else_expr = self.conditional()?;
            return Ok(self.node(
                ExprKind::Conditional { cond: Box::new(cond), then_expr: Box::new(then_expr), else_expr: Box::new(else_expr) },
                q.loc.clone(),
            ));
        }
        Ok(cond)
    }

    fn binary(&mut self, min_prec: u8) -> PResult<Expr> {
        let mut lhs = self.cast()?;
        loop {
            let tok = self.peek();
            if tok.kind != TokenKind::Punctuator {
                break;
            }
            let Some((prec, op)) = binary_precedence(&tok.text) else { break };
            if prec < min_prec {
                break;
            }
            self.bump();
            let rhs = self.binary(prec + 1)?;
            lhs = self.node(ExprKind::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) }, tok.loc.clone());
        }
        Ok(lhs)
    }

    fn type_name(&mut self) -> PResult<TypeDesc> {
        let tok = self.peek();
        let spec = self.specifiers()?;
        if spec.struct_def.is_some() {
            return Err(self.unsupported(tok, "struct definition in type name"));
        }
        let d = self.declarator(spec.base.expect("base type"), true)?;
        if d.name.is_some() {
            return Err(self.error_at(tok, "unexpected identifier in type name"));
        }
        Ok(d.ty)
    }

    fn cast(&mut self) -> PResult<Expr> {
        if self.is_punct("(") && self.starts_type(self.peek_at(1)) {
            let open = self.bump();
            let ty = self.type_name()?;
            self.expect_punct(")")?;
            if self.is_punct("{") {
                return Err(self.unsupported(open, "compound literal"));
            }
            let operand = self.cast()?;
            return Ok(self.node(ExprKind::Cast { ty, operand: Box::new(operand) }, open.loc.clone()));
        }
        self.unary()
    }

    fn unary(&mut self) -> PResult<Expr> {
        let tok = self.peek();
        if tok.kind == TokenKind::Keyword && tok.text == "sizeof" {
            self.bump();
            if self.is_punct("(") && self.starts_type(self.peek_at(1)) {
                self.bump();
                let ty = self.type_name()?;
                self.expect_punct(")")?;
                return Ok(self.node(ExprKind::Sizeof(SizeofOperand::Type(ty)), tok.loc.clone()));
            }
            let operand = self.unary()?;
            return Ok(self.node(ExprKind::Sizeof(SizeofOperand::Expr(Box::new(operand))), tok.loc.clone()));
        }
        if tok.kind == TokenKind::Punctuator {
            let (op, is_prefix_incdec) = match tok.text.as_str() {
                "++" => (UnaryOp::PreInc, true),
                "--" => (UnaryOp::PreDec, true),
                "&" => (UnaryOp::AddrOf, false),
                "*" => (UnaryOp::Deref, false),
                "+" => (UnaryOp::Plus, false),
                "-" => (UnaryOp::Neg, false),
                "~" => (UnaryOp::BitNot, false),
                "!" => (UnaryOp::Not, false),
                _ => return self.postfix(),
            };
            self.bump();
            let operand = if is_prefix_incdec { self.unary()? } else { self.cast()? };
            return Ok(self.node(ExprKind::Unary { op, operand: Box::new(operand) }, tok.loc.clone()));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> PResult<Expr> {
        let mut e = self.primary()?;
        loop {
            let tok = self.peek();
            if tok.kind != TokenKind::Punctuator {
                break;
            }
            match tok.text.as_str() {
                "[" => {
                    self.bump();
                    let index = self.expression()?;
                    self.expect_punct("]")?;
                    e = self.node(ExprKind::Subscript { base: Box::new(e), index: Box::new(index) }, tok.loc.clone());
                }
                "(" => {
                    self.bump();
                    let mut args = Vec::new();
                    if !self.eat_punct(")") {
                        loop {
                            args.push(self.assignment()?);
                            if !self.eat_punct(",") {
                                break;
                            }
                        }
                        self.expect_punct(")")?;
                    }
                    let loc = e.loc.clone();
                    e = self.node(ExprKind::Call { callee: Box::new(e), args }, loc);
                }
                "." | "->" => {
                    self.bump();
                    let field = self.expect_ident()?.text.clone();
                    e = self.node(ExprKind::Member { base: Box::new(e), field, arrow: tok.text == "->" }, tok.loc.clone());
                }
                "++" | "--" => {
                    self.bump();
                    let op = if tok.text == "++" { UnaryOp::PostInc } else { UnaryOp::PostDec };
                    e = self.node(ExprKind::Unary { op, operand: Box::new(e) }, tok.loc.clone());
                }
                _ => break,
            }
        }
        Ok(e)
    }

    fn primary(&mut self) -> PResult<Expr> {
        let tok = self.peek();
        let loc = tok.loc.clone();
        match tok.kind {
            TokenKind::Identifier => {
                self.bump();
                Ok(self.node(ExprKind::Ident(tok.text.clone()), loc))
            }
            TokenKind::IntegerLiteral => {
                self.bump();
                let (value, unsigned, long) =
                    parse_int(&tok.text).ok_or_else(|| self.error_at(tok, format!("invalid integer constant `{}`", tok.text)))?;
                Ok(self.node(ExprKind::IntLit { value, unsigned, long, macro_origin: tok.from_standard_macro }, loc))
            }
            TokenKind::FloatLiteral => {
                self.bump();
                let single = tok.text.ends_with(['f', 'F']);
                Ok(self.node(ExprKind::FloatLit { text: tok.text.clone(), single }, loc))
            }
            TokenKind::CharLiteral => {
                self.bump();
                let body = tok.text.trim_start_matches('L');
                let bytes = unescape(&body[1..body.len() - 1]);
                let value = bytes.first().copied().unwrap_or(0) as i64;
                Ok(self.node(ExprKind::CharLit(value), loc))
            }
            TokenKind::StringLiteral => {
                let mut bytes = Vec::new();
                while self.peek().kind == TokenKind::StringLiteral {
                    let t = self.bump();
                    let body = t.text.trim_start_matches('L');
                    bytes.extend(unescape(&body[1..body.len() - 1]));
                }
                Ok(self.node(ExprKind::StringLit(bytes), loc))
            }
            TokenKind::Punctuator if tok.text == "(" => {
                self.bump();
                let e = self.expression()?;
                self.expect_punct(")")?;
                Ok(e)
            }
            _ => Err(self.expected("expression")),
        }
    }
}

fn parse_int(text: &str) -> Option<(i128, bool, bool)> {
    if let Some(rest) = text.strip_prefix('-') {
        let (v, u, l) = parse_int(rest)?;
        return Some((-v, u, l));
    }
    let digits = text.trim_end_matches(['u', 'U', 'l', 'L']);
    let suffix = &text[digits.len()..].to_ascii_lowercase();
    let unsigned = suffix.contains('u');
    let long = suffix.contains('l');
    let value = if let Some(hex) = digits.strip_prefix("0x").or_else(|| digits.strip_prefix("0X")) {
        i128::from_str_radix(hex, 16).ok()?
    } else if digits.len() > 1 && digits.starts_with('0') {
        i128::from_str_radix(&digits[1..], 8).ok()?
    } else {
        digits.parse::<i128>().ok()?
    };
    if value > u64::MAX as i128 {
        return None;
    }
    Some((value, unsigned, long))
}

/// Decodes C escape sequences in a literal body.
fn unescape(body: &str) -> Vec<u8> {
    let bytes = body.as_bytes();
    let mut out = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] != b'\\' || i + 1 >= bytes.len() {
            out.push(bytes[i]);
            i += 1;
            continue;
        }
        let c = bytes[i + 1];
        i += 2;
        let simple = match c {
            b'n' => Some(b'\n'),
            b't' => Some(b'\t'),
            b'r' => Some(b'\r'),
            b'a' => Some(7),
            b'b' => Some(8),
            b'f' => Some(12),
            b'v' => Some(11),
            b'\\' | b'\'' | b'"' | b'?' => Some(c),
            _ => None,
        };
        if let Some(s) = simple {
            out.push(s);
        } else if c == b'x' {
            let mut v: u32 = 0;
            while i < bytes.len() && bytes[i].is_ascii_hexdigit() {
                v = v.wrapping_mul(16) + (bytes[i] as char).to_digit(16).unwrap_or(0);
                i += 1;
            }
            out.push(v as u8);
        } else if (b'0'..=b'7').contains(&c) {
            let mut v: u32 = (c - b'0') as u32;
            let mut n = 1;
            while n < 3 && i < bytes.len() && (b'0'..=b'7').contains(&bytes[i]) {
                v = v * 8 + (bytes[i] - b'0') as u32;
                i += 1;
                n += 1;
            }
            out.push(v as u8);
        } else {
            out.push(c);
        }
    }
    out
}

/// Folds integer constant expressions used as array extents.
fn const_eval(e: &Expr) -> Option<i128> {
    match &e.kind {
        ExprKind::IntLit { value, .. } => Some(*value),
        ExprKind::CharLit(v) => Some(*v as i128),
        ExprKind::Unary { op: UnaryOp::Neg, operand } => const_eval(operand).map(|v| -v),
        ExprKind::Unary { op: UnaryOp::Plus, operand } => const_eval(operand),
        ExprKind::Binary { op, lhs, rhs } => {
            let (a, b) = (const_eval(lhs)?, const_eval(rhs)?);
            match op {
                BinaryOp::Add => a.checked_add(b),
                BinaryOp::Sub => a.checked_sub(b),
                BinaryOp::Mul => a.checked_mul(b),
                BinaryOp::Div if b != 0 => Some(a / b),
                _ => None,
            }
        }
        ExprKind::Sizeof(SizeofOperand::Type(t)) => t.byte_size().map(|s| s as i128),
        _ => None,
    }
}
