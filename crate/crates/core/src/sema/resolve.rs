use std::collections::{BTreeSet, HashMap};

use super::library;
use super::{
    BuiltinObject, NoteKind, ResolvedUnit, SemaError, SemaModel, SemaNote, StructInfo, Symbol, SymbolId, SymbolKind,
    TypeDesc,
};
use crate::frontend::ast::*;
use crate::frontend::SourceLocation;

/// Resolves every identifier in `tu` and tags calls to known library
/// functions whose header was included.
pub fn resolve(tu: TranslationUnit) -> Result<ResolvedUnit, SemaError> {
    let mut r = Resolver {
        model: SemaModel::default(),
        scopes: Vec::new(),
        next_scope: 0,
        tags: HashMap::new(),
        included: tu.included_standard_headers.clone(),
    };
    r.push_scope();
    r.declare_header_objects(&tu);
    r.push_scope();
    for item in &tu.items {
        match item {
            ExternalDecl::Declaration(d) => r.declaration(d)?,
            ExternalDecl::Function(f) => r.function(f)?,
        }
    }
    Ok(ResolvedUnit { tu, sema: r.model })
}

struct Resolver {
    model: SemaModel,
    scopes: Vec<(u32, HashMap<String, SymbolId>)>,
    next_scope: u32,
    tags: HashMap<String, SymbolId>,
    included: BTreeSet<String>,
}

impl Resolver {
    fn push_scope(&mut self) {
        self.scopes.push((self.next_scope, HashMap::new()));
        self.next_scope += 1;
    }

    fn pop_scope(&mut self) {
        self.scopes.pop();
    }

    fn lookup(&self, name: &str) -> Option<SymbolId> {
        self.scopes.iter().rev().find_map(|(_, s)| s.get(name).copied())
    }

    fn declare_header_objects(&mut self, tu: &TranslationUnit) {
        let file: std::sync::Arc<str> = tu.path.as_str().into();
        let at = SourceLocation::new(file, 1, 1);
        if tu.included_standard_headers.contains("stdio.h") {
            for stream in ["stdin", "stdout", "stderr"] {
                let ty = TypeDesc::pointer_to(TypeDesc::Struct("FILE".into()));
                self.add_symbol(stream, SymbolKind::Variable, ty, false, at.clone(), Some(BuiltinObject::StdStream));
            }
        }
        if tu.included_standard_headers.contains("errno.h") {
            self.add_symbol("errno", SymbolKind::Variable, TypeDesc::int(), false, at, Some(BuiltinObject::Errno));
        }
    }

    fn add_symbol(
        &mut self,
        name: &str,
        kind: SymbolKind,
        declared_type: TypeDesc,
        is_array_declared_parameter: bool,
        decl_loc: SourceLocation,
        builtin: Option<BuiltinObject>,
    ) -> SymbolId {
        let id = self.model.symbols.len();
        let scope_id = self.scopes.last().map_or(0, |s| s.0);
        self.model.symbols.push(Symbol {
            name: name.to_string(),
            kind,
            declared_type,
            is_array_declared_parameter,
            scope_id,
            decl_loc,
            builtin,
        });
        if let Some((_, scope)) = self.scopes.last_mut() {
            scope.insert(name.to_string(), id);
        }
        id
    }

    /// Declares in the innermost scope, rejecting duplicates. Repeated function
    /// declarations share one symbol.
    fn declare(&mut self, name: &str, kind: SymbolKind, ty: TypeDesc, array_param: bool, loc: &SourceLocation) -> Result<SymbolId, SemaError> {
        if let Some(&existing) = self.scopes.last().and_then(|(_, s)| s.get(name)) {
            let prev = &self.model.symbols[existing];
            if prev.kind == SymbolKind::Function && kind == SymbolKind::Function {
                return Ok(existing);
            }
            return Err(SemaError::Redeclaration { name: name.to_string(), first: prev.decl_loc.clone(), second: loc.clone() });
        }
        Ok(self.add_symbol(name, kind, ty, array_param, loc.clone(), None))
    }

    fn struct_def(&mut self, def: &StructDef) -> Result<(), SemaError> {
        if let Some(&prev) = self.tags.get(&def.tag) {
            return Err(SemaError::Redeclaration {
                name: format!("struct {}", def.tag),
                first: self.model.symbols[prev].decl_loc.clone(),
                second: def.loc.clone(),
            });
        }
        let id = self.model.symbols.len();
        self.model.symbols.push(Symbol {
            name: def.tag.clone(),
            kind: SymbolKind::StructTag,
            declared_type: TypeDesc::Struct(def.tag.clone()),
            is_array_declared_parameter: false,
            scope_id: self.scopes.last().map_or(0, |s| s.0),
            decl_loc: def.loc.clone(),
            builtin: None,
        });
        self.tags.insert(def.tag.clone(), id);
        self.model.structs.insert(
            def.tag.clone(),
            StructInfo {
                tag: def.tag.clone(),
                fields: def.fields.iter().map(|(n, t, _)| (n.clone(), t.clone())).collect(),
                loc: def.loc.clone(),
            },
        );
        Ok(())
    }

    fn declaration(&mut self, d: &Declaration) -> Result<(), SemaError> {
        if let Some(def) = &d.struct_def {
            self.struct_def(def)?;
        }
        for decl in &d.declarators {
            let kind = if decl.params.is_some() { SymbolKind::Function } else { SymbolKind::Variable };
            let sym = self.declare(&decl.name, kind, decl.ty.clone(), false, &decl.loc)?;
            self.model.decls.insert(decl.id, sym);
            if let Some(init) = &decl.init {
                for e in init.exprs() {
                    self.expr(e);
                }
            }
        }
        Ok(())
    }

    fn function(&mut self, f: &FunctionDef) -> Result<(), SemaError> {
        let sym = self.declare(&f.name, SymbolKind::Function, TypeDesc::Function(Box::new(f.return_type.clone())), false, &f.loc)?;
        self.model.decls.insert(f.id, sym);
        self.push_scope();
        for p in &f.params {
            let Some(name) = &p.name else { continue };
            let adjusted = p.ty.decayed();
            let psym = self.declare(name, SymbolKind::Parameter, adjusted, p.is_array_declared(), &p.loc)?;
            self.model.decls.insert(p.id, psym);
        }
        // The outermost block shares the parameter scope.
        match &f.body.kind {
            StmtKind::Compound(items) => {
                for s in items {
                    self.stmt(s)?;
                }
            }
            _ => self.stmt(&f.body)?,
        }
        self.pop_scope();
        Ok(())
    }

    fn stmt(&mut self, s: &Stmt) -> Result<(), SemaError> {
        match &s.kind {
            StmtKind::Compound(items) => {
                self.push_scope();
                for item in items {
                    self.stmt(item)?;
                }
                self.pop_scope();
            }
            StmtKind::Decl(d) => self.declaration(d)?,
            StmtKind::Expr(e) => self.expr(e),
            StmtKind::Empty | StmtKind::Break | StmtKind::Continue => {}
            StmtKind::If { cond, then_branch, else_branch } => {
                self.expr(cond);
                self.stmt(then_branch)?;
                if let Some(e) = else_branch {
                    self.stmt(e)?;
                }
            }
            StmtKind::While { cond, body } => {
                self.expr(cond);
                self.stmt(body)?;
            }
            StmtKind::DoWhile { body, cond } => {
                self.stmt(body)?;
                self.expr(cond);
            }
            StmtKind::For { init, cond, step, body } => {
                self.push_scope();
                if let Some(i) = init {
                    self.stmt(i)?;
                }
                if let Some(c) = cond {
                    self.expr(c);
                }
                if let Some(st) = step {
                    self.expr(st);
                }
                self.stmt(body)?;
                self.pop_scope();
            }
            StmtKind::Return(v) => {
                if let Some(e) = v {
                    self.expr(e);
                }
            }
        }
        Ok(())
    }

    fn note(&mut self, kind: NoteKind, name: &str, loc: &SourceLocation) {
        self.model.notes.push(SemaNote { kind, name: name.to_string(), loc: loc.clone() });
    }

    fn expr(&mut self, e: &Expr) {
        match &e.kind {
            ExprKind::Ident(name) => match self.lookup(name) {
                Some(sym) => {
                    self.model.refs.insert(e.id, sym);
                }
                None => self.note(NoteKind::UnresolvedName, name, &e.loc),
            },
            ExprKind::Call { callee, args } => {
                if let ExprKind::Ident(name) = &callee.kind {
                    if let Some(sym) = self.lookup(name) {
                        self.model.refs.insert(callee.id, sym);
                    } else {
                        match library::lookup(name) {
                            Some(info) if self.header_included(info.header) => {
                                self.model.library_calls.insert(e.id, info);
                            }
                            _ => self.note(NoteKind::ImplicitDeclaration, name, &callee.loc),
                        }
                    }
                } else {
                    self.expr(callee);
                }
                for a in args {
                    self.expr(a);
                }
            }
            _ => {
                for child in e.children() {
                    self.expr(child);
                }
            }
        }
    }

    fn header_included(&self, header: &str) -> bool {
        self.included.contains(header)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_source;

    fn resolved(src: &str) -> Result<ResolvedUnit, SemaError> {
        resolve(parse_source(src, "t.c").unwrap().1)
    }

    fn refs_to(ru: &ResolvedUnit, name: &str) -> Vec<SymbolId> {
        let mut out = Vec::new();
        crate::frontend::ast::walk_exprs(&ru.tu, &mut |e| {
            if matches!(&e.kind, ExprKind::Ident(n) if n == name) {
                out.extend(ru.sema.symbol_of_ref(e.id));
            }
        });
        out
    }

    #[test]
    fn inner_scope_shadows_outer() {
        let ru = resolved("int x;\nint f(int x) { { int x = 2; x = 3; } return x; }\n").unwrap();
        let r = refs_to(&ru, "x");
        assert_eq!(r.len(), 2);
        assert_ne!(r[0], r[1]);
        assert_eq!(ru.sema.symbol(r[0]).kind, SymbolKind::Variable);
        assert_eq!(ru.sema.symbol(r[1]).kind, SymbolKind::Parameter);
    }

    #[test]
    fn same_scope_redeclaration_is_an_error() {
        let err = resolved("void f(void) { int a; int a; }\n").unwrap_err();
        assert!(err.to_string().contains("redeclaration of `a`"));
        assert!(resolved("void f(int a) { int a; }\n").is_err());
        assert!(resolved("struct s { int a; };\nstruct s { int b; };\n").is_err());
        assert!(resolved("int g(void);\nint g(void);\nint g(void) { return 0; }\n").is_ok());
    }

    #[test]
    fn array_parameters_decay_but_are_flagged() {
        let ru = resolved("int f(int a[4], int *b) { return a[0] + b[0]; }\n").unwrap();
        let a = ru.sema.symbol(refs_to(&ru, "a")[0]);
        let b = ru.sema.symbol(refs_to(&ru, "b")[0]);
        assert!(a.is_array_declared_parameter && !b.is_array_declared_parameter);
        assert!(matches!(a.declared_type, TypeDesc::Pointer(_)));
    }

    #[test]
    fn library_calls_need_header_and_no_user_declaration() {
        let tagged = |src: &str| resolved(src).unwrap().sema.library_calls.len();
        assert_eq!(tagged("void f(char *d) { strcpy(d, d); }\n"), 0);
        assert_eq!(tagged("#include <string.h>\nvoid f(char *d) { strcpy(d, d); }\n"), 1);
        assert_eq!(tagged("#include <string.h>\nchar *strcpy(char *a, const char *b);\nvoid f(char *d) { strcpy(d, d); }\n"), 0);
        assert_eq!(tagged("#include <stdio.h>\nvoid f(char *d) { strcpy(d, d); }\n"), 0);
    }

    #[test]
    fn unknown_names_become_notes() {
        let ru = resolved("int f(void) { return helper(y); }\n").unwrap();
        let kinds: Vec<_> = ru.sema.notes.iter().map(|n| (n.kind, n.name.as_str())).collect();
        assert_eq!(kinds, [(NoteKind::ImplicitDeclaration, "helper"), (NoteKind::UnresolvedName, "y")]);
    }

    #[test]
    fn header_objects_follow_includes() {
        let ru = resolved("#include <errno.h>\nint f(void) { return errno; }\n").unwrap();
        assert!(ru.sema.is_errno(refs_to(&ru, "errno")[0]));
        let ru = resolved("int f(void) { return errno; }\n").unwrap();
        assert!(refs_to(&ru, "errno").is_empty());
        let ru = resolved("#include <stdio.h>\nint f(void) { return stdin != 0; }\n").unwrap();
        assert_eq!(ru.sema.symbol(refs_to(&ru, "stdin")[0]).builtin, Some(BuiltinObject::StdStream));
    }
}
