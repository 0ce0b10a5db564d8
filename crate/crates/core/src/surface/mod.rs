//! Concrete syntax: lexing, parsing, elaboration of the defined notations
//! into kernel terms, and printing back.

pub mod abbrev;
mod elaborate;
mod lexer;
mod parser;
mod prelude;
mod print;

use std::fmt;

use thiserror::Error;

use crate::term::{Const, Var};
use crate::ty::Type;

pub use elaborate::{elaborate, elaborate_formula};
pub use parser::{is_keyword, parse_sequent, parse_term, parse_type, SurfaceSequent};
pub use prelude::{Decl, DeclKind, Prelude, PreludeError};
pub use print::{print_term, print_type};

/// Byte range into the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    /// 1-based line and column of the start offset.
    pub fn line_col(&self, src: &str) -> (usize, usize) {
        let upto = &src[..self.start.min(src.len())];
        let line = upto.matches('\n').count() + 1;
        let col = upto.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, col)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("syntax error at {span}: {msg}")]
    Syntax { span: Span, msg: String },
    #[error("unknown identifier `{name}` at {span}")]
    UnknownIdentifier { span: Span, name: String },
    #[error("invalid type at {span}: a codomain cannot be `i`")]
    InvalidType { span: Span },
    #[error("ill-typed at {span}: {msg}")]
    IllTyped { span: Span, msg: String },
    #[error("`===` at {span} has operands whose only common type is `i`")]
    EquivOnIota { span: Span },
}

impl SurfaceError {
    pub fn span(&self) -> Span {
        match self {
            SurfaceError::Syntax { span, .. }
            | SurfaceError::UnknownIdentifier { span, .. }
            | SurfaceError::InvalidType { span }
            | SurfaceError::IllTyped { span, .. }
            | SurfaceError::EquivOnIota { span } => *span,
        }
    }

    /// True for errors raised by the type discipline rather than the syntax.
    pub fn is_type_error(&self) -> bool {
        matches!(self, SurfaceError::IllTyped { .. } | SurfaceError::EquivOnIota { .. })
    }

    /// Renders the error with a line:column prefix and a caret under the source.
    pub fn render(&self, src: &str) -> String {
        let span = self.span();
        let (line, col) = span.line_col(src);
        let text = src.lines().nth(line - 1).unwrap_or("");
        let width = src[span.start.min(src.len())..span.end.min(src.len())].chars().count().max(1);
        format!("{line}:{col}: {self}\n  {text}\n  {}{}", " ".repeat(col - 1), "^".repeat(width))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Or,
    And,
    Imp,
    Iff,
    Eq,
    Neq,
    IdEq,
    IdNeq,
    Equiv,
    NEquiv,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Or => "\\/",
            BinOp::And => "/\\",
            BinOp::Imp => "->",
            BinOp::Iff => "<->",
            BinOp::Eq => "=",
            BinOp::Neq => "!=",
            BinOp::IdEq => ".=",
            BinOp::IdNeq => ".!=",
            BinOp::Equiv => "===",
            BinOp::NEquiv => "!==",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinderKind {
    Lambda,
    Exists,
    Forall,
}

/// Parsed surface syntax with identifiers already resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ast {
    pub kind: AstKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AstKind {
    Var(Var),
    Const(Const),
    /// `nex` with an optional `[type]` annotation.
    Nex(Option<Type>),
    Numeral(u64),
    Truth,
    Falsity,
    Succ(Box<Ast>),
    App(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Binary(BinOp, Box<Ast>, Box<Ast>),
    Binder(BinderKind, Var, Box<Ast>),
}

impl Ast {
    /// A compact s-expression, used by tests and diagnostics.
    pub fn sexp(&self) -> String {
        match &self.kind {
            AstKind::Var(v) => v.name().to_owned(),
            AstKind::Const(Const::Nor) => "nor".into(),
            AstKind::Const(Const::Nex(t)) => format!("nex[{t}]"),
            AstKind::Const(Const::Declared { name, .. }) => name.to_string(),
            AstKind::Nex(None) => "nex".into(),
            AstKind::Nex(Some(t)) => format!("nex[{t}]"),
            AstKind::Numeral(n) => n.to_string(),
            AstKind::Truth => "true".into(),
            AstKind::Falsity => "false".into(),
            AstKind::Succ(a) => format!("(succ {})", a.sexp()),
            AstKind::App(f, a) => format!("(app {} {})", f.sexp(), a.sexp()),
            AstKind::Neg(a) => format!("(neg {})", a.sexp()),
            AstKind::Binary(op, l, r) => {
                let name = match op {
                    BinOp::Or => "or",
                    BinOp::And => "and",
                    BinOp::Imp => "imp",
                    BinOp::Iff => "iff",
                    BinOp::Eq => "eq",
                    BinOp::Neq => "neq",
                    BinOp::IdEq => "ideq",
                    BinOp::IdNeq => "idneq",
                    BinOp::Equiv => "equiv",
                    BinOp::NEquiv => "nequiv",
                };
                format!("({name} {} {})", l.sexp(), r.sexp())
            }
            AstKind::Binder(k, x, b) => {
                let name = match k {
                    BinderKind::Lambda => "lambda",
                    BinderKind::Exists => "exists",
                    BinderKind::Forall => "forall",
                };
                format!("({name} {}:{} {})", x.name(), x.ty(), b.sexp())
            }
        }
    }

    /// Checks that every child span lies within its parent's span.
    pub fn spans_nest(&self) -> bool {
        let children: Vec<&Ast> = match &self.kind {
            AstKind::Succ(a) | AstKind::Neg(a) | AstKind::Binder(_, _, a) => vec![a],
            AstKind::App(a, b) | AstKind::Binary(_, a, b) => vec![a, b],
            _ => vec![],
        };
        children.iter().all(|c| self.span.contains(&c.span) && c.spans_nest())
    }
}
