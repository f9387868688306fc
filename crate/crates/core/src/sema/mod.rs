//! Name resolution, expression typing, and control-flow graphs.

mod cfg;
mod essential;
pub mod library;
mod resolve;
mod types;

use std::collections::HashMap;

use thiserror::Error;

use crate::frontend::ast::{NodeId, TranslationUnit};
use crate::frontend::SourceLocation;

pub use cfg::{build_cfg, BasicBlock, BlockId, Cfg, Edge, EdgeKind, Element};
pub use essential::EssentialType;
pub use library::{LibraryFamily, LibraryFunctionInfo, ParamRole};
pub use resolve::resolve;
pub use types::{usual_arithmetic, TypeDesc, INT_SIZE, POINTER_SIZE};

pub type SymbolId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Variable,
    Parameter,
    Function,
    StructTag,
}

/// Objects a recognized header declares on the program's behalf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinObject {
    Errno,
    StdStream,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Symbol {
    pub name: String,
    pub kind: SymbolKind,
    /// For parameters this is the adjusted type: `int a[4]` is `int *`.
    pub declared_type: TypeDesc,
    pub is_array_declared_parameter: bool,
    pub scope_id: u32,
    pub decl_loc: SourceLocation,
    pub builtin: Option<BuiltinObject>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructInfo {
    pub tag: String,
    pub fields: Vec<(String, TypeDesc)>,
    pub loc: SourceLocation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoteKind {
    UnresolvedName,
    ImplicitDeclaration,
}

/// A non-fatal observation made during resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemaNote {
    pub kind: NoteKind,
    pub name: String,
    pub loc: SourceLocation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemaError {
    #[error("{second}: redeclaration of `{name}` (first declared at {first})")]
    Redeclaration { name: String, first: SourceLocation, second: SourceLocation },
}

/// Side tables produced by [`resolve`].
#[derive(Debug, Clone, Default)]
pub struct SemaModel {
    pub symbols: Vec<Symbol>,
    /// Identifier-reference expression → symbol.
    pub refs: HashMap<NodeId, SymbolId>,
    /// Declarator, parameter, or function-definition node → symbol.
    pub decls: HashMap<NodeId, SymbolId>,
    /// Call expression → library function, only when its header was included.
    pub library_calls: HashMap<NodeId, &'static LibraryFunctionInfo>,
    pub structs: HashMap<String, StructInfo>,
    pub notes: Vec<SemaNote>,
}

impl SemaModel {
    pub fn symbol(&self, id: SymbolId) -> &Symbol {
        &self.symbols[id]
    }

    pub fn symbol_of_ref(&self, expr_id: NodeId) -> Option<SymbolId> {
        self.refs.get(&expr_id).copied()
    }

    pub fn library_call(&self, call_id: NodeId) -> Option<&'static LibraryFunctionInfo> {
        self.library_calls.get(&call_id).copied()
    }

    pub fn is_errno(&self, id: SymbolId) -> bool {
        self.symbols[id].builtin == Some(BuiltinObject::Errno)
    }
}

/// A translation unit together with its resolution tables.
#[derive(Debug, Clone)]
pub struct ResolvedUnit {
    pub tu: TranslationUnit,
    pub sema: SemaModel,
}
