//! Theory preludes: the typed free variables and declared constants that
//! surface terms may mention.
//!
//! File format, one declaration per line:
//!
//! ```text
//! # comment
//! var p : o
//! const succ_rel : i i o
//! ```

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use super::parser::{is_keyword, parse_type};
use crate::term::{Const, Term, Var, FRESH_SEP};
use crate::ty::Type;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Var,
    Const,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub kind: DeclKind,
    pub name: String,
    pub ty: Type,
}

impl Decl {
    pub fn term(&self) -> Term {
        match self.kind {
            DeclKind::Var => Term::var(Var::new(self.name.as_str(), self.ty.clone())),
            DeclKind::Const => Term::constant(Const::Declared { name: self.name.as_str().into(), ty: self.ty.clone() }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreludeError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("`{0}` is declared twice")]
    Duplicate(String),
    #[error("`{0}` is not a valid declaration name")]
    BadName(String),
    #[error("cannot read prelude {path}: {msg}")]
    Io { path: String, msg: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Prelude {
    decls: Vec<Decl>,
    index: HashMap<String, usize>,
}

impl Prelude {
    pub fn new() -> Prelude {
        Prelude::default()
    }

    pub fn parse(text: &str) -> Result<Prelude, PreludeError> {
        let mut p = Prelude::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (head, rest) = content
                .split_once(char::is_whitespace)
                .ok_or_else(|| PreludeError::Parse { line, msg: "expected `var` or `const` declaration".into() })?;
            let kind = match head {
                "var" => DeclKind::Var,
                "const" => DeclKind::Const,
                other => {
                    return Err(PreludeError::Parse { line, msg: format!("unknown declaration keyword `{other}`") })
                }
            };
            let (name, ty_text) = rest
                .split_once(':')
                .ok_or_else(|| PreludeError::Parse { line, msg: "expected `<name> : <type>`".into() })?;
            let name = name.trim();
            if name.contains(FRESH_SEP) {
                return Err(PreludeError::Parse { line, msg: format!("`{name}` uses the reserved `$` namespace") });
            }
            let ty = parse_type(ty_text).map_err(|e| PreludeError::Parse { line, msg: e.to_string() })?;
            p.declare(kind, name, ty).map_err(|e| PreludeError::Parse { line, msg: e.to_string() })?;
        }
        Ok(p)
    }

    pub fn load(path: &Path) -> Result<Prelude, PreludeError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PreludeError::Io { path: path.display().to_string(), msg: e.to_string() })?;
        Prelude::parse(&text)
    }

    pub fn declare(&mut self, kind: DeclKind, name: &str, ty: Type) -> Result<(), PreludeError> {
        if !valid_name(name) {
            return Err(PreludeError::BadName(name.to_owned()));
        }
        if self.index.contains_key(name) {
            return Err(PreludeError::Duplicate(name.to_owned()));
        }
        self.index.insert(name.to_owned(), self.decls.len());
        self.decls.push(Decl { kind, name: name.to_owned(), ty });
        Ok(())
    }

    pub fn declare_var(&mut self, name: &str, ty: Type) -> Result<(), PreludeError> {
        self.declare(DeclKind::Var, name, ty)
    }

    pub fn declare_const(&mut self, name: &str, ty: Type) -> Result<(), PreludeError> {
        self.declare(DeclKind::Const, name, ty)
    }

    /// Declares `v` unless an identical variable is already present.
    pub fn ensure_var(&mut self, v: &Var) -> Result<(), PreludeError> {
        match self.get(v.name()) {
            Some(d) if d.kind == DeclKind::Var && d.ty == *v.ty() => Ok(()),
            Some(_) => Err(PreludeError::Duplicate(v.name().to_owned())),
            None => self.declare_var(v.name(), v.ty().clone()),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Decl> {
        self.index.get(name).map(|&i| &self.decls[i])
    }

    pub fn decls(&self) -> &[Decl] {
        &self.decls
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.decls
            .iter()
            .filter(|d| d.kind == DeclKind::Var)
            .map(|d| Var::new(d.name.as_str(), d.ty.clone()))
    }
}

impl fmt::Display for Prelude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            let kw = match d.kind {
                DeclKind::Var => "var",
                DeclKind::Const => "const",
            };
            writeln!(f, "{kw} {} : {}", d.name, d.ty)?;
        }
        Ok(())
    }
}

fn valid_name(name: &str) -> bool {
    let base = match name.split_once(FRESH_SEP) {
        Some((b, n)) if !n.is_empty() && n.bytes().all(|c| c.is_ascii_digit()) => b,
        Some(_) => return false,
        None => name,
    };
    let mut bytes = base.bytes();
    matches!(bytes.next(), Some(c) if c.is_ascii_alphabetic() || c == b'_')
        && bytes.all(|c| c.is_ascii_alphanumeric() || c == b'_')
        && !is_keyword(base)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_file() {
        let p = Prelude::parse("# theory\nvar p : o\n\nconst r : i i o  # relation\nvar f : (i o) o\n").unwrap();
        assert_eq!(p.decls().len(), 3);
        assert_eq!(p.get("r").unwrap().kind, DeclKind::Const);
        assert_eq!(p.get("r").unwrap().ty, Type::relation([Type::Iota, Type::Iota]));
        assert_eq!(p.get("f").unwrap().ty.to_string(), "(i o) o");
        assert_eq!(Prelude::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn errors() {
        assert!(matches!(Prelude::parse("var p : o\nvar p : i"), Err(PreludeError::Parse { line: 2, .. })));
        assert!(matches!(Prelude::parse("var q : o i"), Err(PreludeError::Parse { line: 1, .. })));
        assert!(matches!(Prelude::parse("let q : o"), Err(PreludeError::Parse { .. })));
        assert!(matches!(Prelude::parse("var ex : o"), Err(PreludeError::Parse { .. })));
        assert!(matches!(Prelude::parse("var x$1 : o"), Err(PreludeError::Parse { .. })));
    }

    #[test]
    fn fresh_names_allowed_programmatically() {
        let mut p = Prelude::new();
        p.ensure_var(&Var::new("x$1", Type::Iota)).unwrap();
        p.ensure_var(&Var::new("x$1", Type::Iota)).unwrap();
        assert!(p.ensure_var(&Var::new("x$1", Type::O)).is_err());
    }
}
