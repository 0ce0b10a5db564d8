//! Precedence-climbing parser for terms, types and sequents.
//!
//! Binding strength, tightest first: postfix `'`, application, `~`, the
//! equality family (`= != .= .!= === !==`, non-associative), `/\` and `\/`
//! (left), `->` and `<->` (right), then binders (`\`, `ex`, `all`), whose
//! bodies extend as far right as possible.

use super::lexer::{tokenize, Tok, Token};
use super::{Ast, AstKind, BinOp, BinderKind, Prelude, Span, SurfaceError};
use crate::term::{Const, Var};
use crate::ty::Type;

const KEYWORDS: &[&str] = &["ex", "all", "nor", "nex", "true", "false"];

pub fn is_keyword(name: &str) -> bool {
    KEYWORDS.contains(&name)
}

pub(crate) const PREC_BINDER: u8 = 1;
pub(crate) const PREC_IFF: u8 = 3;
pub(crate) const PREC_IMP: u8 = 4;
pub(crate) const PREC_OR: u8 = 5;
pub(crate) const PREC_AND: u8 = 6;
pub(crate) const PREC_EQ: u8 = 7;
pub(crate) const PREC_NEG: u8 = 8;
pub(crate) const PREC_APP: u8 = 9;
pub(crate) const PREC_POSTFIX: u8 = 10;
pub(crate) const PREC_ATOM: u8 = 11;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Assoc {
    Left,
    Right,
    None,
}

fn binop_info(tok: &Tok) -> Option<(BinOp, u8, Assoc)> {
    Some(match tok {
        Tok::Iff => (BinOp::Iff, PREC_IFF, Assoc::Right),
        Tok::Imp => (BinOp::Imp, PREC_IMP, Assoc::Right),
        Tok::Or => (BinOp::Or, PREC_OR, Assoc::Left),
        Tok::And => (BinOp::And, PREC_AND, Assoc::Left),
        Tok::Eq => (BinOp::Eq, PREC_EQ, Assoc::None),
        Tok::Neq => (BinOp::Neq, PREC_EQ, Assoc::None),
        Tok::IdEq => (BinOp::IdEq, PREC_EQ, Assoc::None),
        Tok::IdNeq => (BinOp::IdNeq, PREC_EQ, Assoc::None),
        Tok::Equiv => (BinOp::Equiv, PREC_EQ, Assoc::None),
        Tok::NEquiv => (BinOp::NEquiv, PREC_EQ, Assoc::None),
        _ => return None,
    })
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    src_len: usize,
    prelude: &'a Prelude,
    scope: Vec<Var>,
}

impl<'a> Parser<'a> {
    fn new(src: &str, prelude: &'a Prelude) -> Result<Self, SurfaceError> {
        Ok(Parser { toks: tokenize(src)?, pos: 0, src_len: src.len(), prelude, scope: Vec::new() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_span(&self) -> Span {
        self.toks.get(self.pos).map_or(Span::new(self.src_len, self.src_len), |t| t.span)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: &str) -> SurfaceError {
        let found = self.peek().map_or("end of input".to_owned(), Tok::describe);
        SurfaceError::Syntax { span: self.peek_span(), msg: format!("expected {expected}, found {found}") }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Span, SurfaceError> {
        if self.peek() == Some(&tok) {
            Ok(self.bump().map(|t| t.span).unwrap_or_default())
        } else {
            Err(self.error_here(what))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    // ---- types ----

    fn type_atom_starts(&self) -> bool {
        matches!(self.peek(), Some(Tok::LParen))
            || matches!(self.peek(), Some(Tok::Ident(s)) if s == "i" || s == "o")
    }

    fn parse_type(&mut self) -> Result<(Type, Span), SurfaceError> {
        let mut atoms: Vec<(Type, Span)> = Vec::new();
        while self.type_atom_starts() {
            atoms.push(self.parse_type_atom()?);
        }
        if atoms.is_empty() {
            return Err(self.error_here("a type (`i`, `o` or parenthesized)"));
        }
        let span = atoms[0].1.join(atoms[atoms.len() - 1].1);
        let (mut acc, last_span) = atoms.pop().expect("nonempty");
        if !atoms.is_empty() && !acc.is_predicate() {
            return Err(SurfaceError::InvalidType { span: last_span });
        }
        while let Some((dom, _)) = atoms.pop() {
            acc = Type::fun(dom, acc).map_err(|_| SurfaceError::InvalidType { span: last_span })?;
        }
        Ok((acc, span))
    }

    fn parse_type_atom(&mut self) -> Result<(Type, Span), SurfaceError> {
        let tok = self.bump().expect("checked by caller");
        match tok.tok {
            Tok::Ident(s) if s == "i" => Ok((Type::Iota, tok.span)),
            Tok::Ident(s) if s == "o" => Ok((Type::O, tok.span)),
            Tok::LParen => {
                let (t, _) = self.parse_type()?;
                let end = self.expect(Tok::RParen, "`)`")?;
                Ok((t, tok.span.join(end)))
            }
            _ => unreachable!("type_atom_starts"),
        }
    }

    // ---- terms ----

    fn parse_expr(&mut self, min: u8) -> Result<Ast, SurfaceError> {
        let mut lhs = self.parse_prefix()?;
        while let Some((op, prec, assoc)) = self.peek().and_then(binop_info) {
            if prec < min {
                break;
            }
            self.bump();
            let next_min = if assoc == Assoc::Right { prec } else { prec + 1 };
            let rhs = self.parse_expr(next_min)?;
            let span = lhs.span.join(rhs.span);
            lhs = Ast { kind: AstKind::Binary(op, Box::new(lhs), Box::new(rhs)), span };
            if assoc == Assoc::None {
                if let Some((_, p, _)) = self.peek().and_then(binop_info) {
                    if p == prec {
                        return Err(SurfaceError::Syntax {
                            span: self.peek_span(),
                            msg: "equality operators do not chain; add parentheses".into(),
                        });
                    }
                }
            }
        }
        Ok(lhs)
    }

    fn parse_prefix(&mut self) -> Result<Ast, SurfaceError> {
        match self.peek() {
            Some(Tok::Not) => {
                let start = self.bump().map(|t| t.span).unwrap_or_default();
                let operand = self.parse_expr(PREC_NEG)?;
                let span = start.join(operand.span);
                Ok(Ast { kind: AstKind::Neg(Box::new(operand)), span })
            }
            Some(Tok::Lambda) => self.parse_binder(BinderKind::Lambda),
            Some(Tok::Ident(s)) if s == "ex" => self.parse_binder(BinderKind::Exists),
            Some(Tok::Ident(s)) if s == "all" => self.parse_binder(BinderKind::Forall),
            _ => self.parse_app(),
        }
    }

    fn parse_binder(&mut self, kind: BinderKind) -> Result<Ast, SurfaceError> {
        let start = self.bump().map(|t| t.span).unwrap_or_default();
        let mut binders = Vec::new();
        loop {
            let (name, _) = self.parse_binder_name()?;
            self.expect(Tok::Colon, "`:` and a binder type")?;
            let (ty, _) = self.parse_type()?;
            binders.push(Var::new(name, ty));
            if self.peek() == Some(&Tok::Comma) {
                self.bump();
                continue;
            }
            break;
        }
        self.expect(Tok::Dot, "`.` after binder")?;
        let depth = self.scope.len();
        self.scope.extend(binders.iter().cloned());
        let body = self.parse_expr(0);
        self.scope.truncate(depth);
        let body = body?;
        let span = start.join(body.span);
        let ast = binders.into_iter().rev().fold(body, |acc, x| Ast {
            kind: AstKind::Binder(kind, x, Box::new(acc)),
            span,
        });
        Ok(ast)
    }

    fn parse_binder_name(&mut self) -> Result<(String, Span), SurfaceError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !is_keyword(s) => {
                let t = self.bump().expect("peeked");
                match t.tok {
                    Tok::Ident(s) => Ok((s, t.span)),
                    _ => unreachable!(),
                }
            }
            _ => Err(self.error_here("a binder name")),
        }
    }

    fn atom_starts(&self) -> bool {
        match self.peek() {
            Some(Tok::Ident(s)) => s != "ex" && s != "all",
            Some(Tok::Num(_)) | Some(Tok::LParen) => true,
            _ => false,
        }
    }

    fn parse_app(&mut self) -> Result<Ast, SurfaceError> {
        if !self.atom_starts() {
            return Err(self.error_here("a term"));
        }
        let mut acc = self.parse_postfix()?;
        while self.atom_starts() {
            let arg = self.parse_postfix()?;
            let span = acc.span.join(arg.span);
            acc = Ast { kind: AstKind::App(Box::new(acc), Box::new(arg)), span };
        }
        Ok(acc)
    }

    fn parse_postfix(&mut self) -> Result<Ast, SurfaceError> {
        let mut a = self.parse_atom()?;
        while self.peek() == Some(&Tok::Prime) {
            let end = self.bump().map(|t| t.span).unwrap_or_default();
            let span = a.span.join(end);
            a = Ast { kind: AstKind::Succ(Box::new(a)), span };
        }
        Ok(a)
    }

    fn parse_atom(&mut self) -> Result<Ast, SurfaceError> {
        let tok = self.bump().ok_or_else(|| self.error_here("a term"))?;
        let span = tok.span;
        let kind = match tok.tok {
            Tok::Num(n) => AstKind::Numeral(n),
            Tok::LParen => {
                let inner = self.parse_expr(0)?;
                let end = self.expect(Tok::RParen, "`)`")?;
                return Ok(Ast { kind: inner.kind, span: span.join(end) });
            }
            Tok::Ident(name) => match name.as_str() {
                "true" => AstKind::Truth,
                "false" => AstKind::Falsity,
                "nor" => AstKind::Const(Const::Nor),
                "nex" => {
                    if self.peek() == Some(&Tok::LBrack) {
                        self.bump();
                        let (t, _) = self.parse_type()?;
                        let end = self.expect(Tok::RBrack, "`]`")?;
                        return Ok(Ast { kind: AstKind::Nex(Some(t)), span: span.join(end) });
                    }
                    AstKind::Nex(None)
                }
                _ => self.resolve(&name, span)?,
            },
            other => {
                return Err(SurfaceError::Syntax { span, msg: format!("expected a term, found {}", other.describe()) })
            }
        };
        Ok(Ast { kind, span })
    }

    fn resolve(&self, name: &str, span: Span) -> Result<AstKind, SurfaceError> {
        if let Some(v) = self.scope.iter().rev().find(|v| v.name() == name) {
            return Ok(AstKind::Var(v.clone()));
        }
        match self.prelude.get(name) {
            Some(d) => Ok(match d.term().kind() {
                crate::term::TermKind::Var(v) => AstKind::Var(v.clone()),
                crate::term::TermKind::Const(c) => AstKind::Const(c.clone()),
                _ => unreachable!("declarations are atoms"),
            }),
            None => Err(SurfaceError::UnknownIdentifier { span, name: name.to_owned() }),
        }
    }

    fn finish(&self) -> Result<(), SurfaceError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error_here("end of input"))
        }
    }
}

/// Parses a type such as `i i o` or `(i o) o`. Juxtaposition associates to
/// the right.
pub fn parse_type(text: &str) -> Result<Type, SurfaceError> {
    let empty = Prelude::new();
    let mut p = Parser::new(text, &empty)?;
    let (t, _) = p.parse_type()?;
    p.finish()?;
    Ok(t)
}

/// Parses a term, resolving identifiers against binders and then the prelude.
pub fn parse_term(text: &str, prelude: &Prelude) -> Result<Ast, SurfaceError> {
    let mut p = Parser::new(text, prelude)?;
    let ast = p.parse_expr(0)?;
    p.finish()?;
    Ok(ast)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceSequent {
    pub left: Vec<Ast>,
    pub right: Vec<Ast>,
}

/// Parses `f1, ..., fn |- g1, ..., gm`; either side may be empty.
pub fn parse_sequent(text: &str, prelude: &Prelude) -> Result<SurfaceSequent, SurfaceError> {
    let mut p = Parser::new(text, prelude)?;
    let left = parse_formula_list(&mut p)?;
    p.expect(Tok::Turnstile, "`|-`")?;
    let right = parse_formula_list(&mut p)?;
    p.finish()?;
    Ok(SurfaceSequent { left, right })
}

fn parse_formula_list(p: &mut Parser<'_>) -> Result<Vec<Ast>, SurfaceError> {
    let mut out = Vec::new();
    if p.at_end() || p.peek() == Some(&Tok::Turnstile) {
        return Ok(out);
    }
    loop {
        out.push(p.parse_expr(0)?);
        if p.peek() == Some(&Tok::Comma) {
            p.bump();
        } else {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prelude() -> Prelude {
        Prelude::parse("var p : o\nvar q : o\nvar r : o\nvar f : i o\nvar a : i\nvar b : i\n").unwrap()
    }

    fn sx(s: &str) -> String {
        parse_term(s, &prelude()).unwrap().sexp()
    }

    #[test]
    fn types() {
        assert_eq!(parse_type("i i o").unwrap(), Type::relation([Type::Iota, Type::Iota]));
        assert_eq!(parse_type("(i o) o").unwrap(), Type::pred(Type::pred(Type::Iota)));
        assert!(matches!(parse_type("o i"), Err(SurfaceError::InvalidType { .. })));
        assert!(matches!(parse_type("(o i) o"), Err(SurfaceError::InvalidType { .. })));
        assert_eq!(parse_type("i").unwrap(), Type::Iota);
        assert!(matches!(parse_type("i o )"), Err(SurfaceError::Syntax { .. })));
        assert!(matches!(parse_type(""), Err(SurfaceError::Syntax { .. })));
    }

    #[test]
    fn negation_binds_tighter_than_or() {
        assert_eq!(sx("~p \\/ q"), "(or (neg p) q)");
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(sx("p -> q -> r"), "(imp p (imp q r))");
        assert_eq!(sx("p <-> q <-> r"), "(iff p (iff q r))");
    }

    #[test]
    fn binders_scope_maximally() {
        assert_eq!(sx("all x:i. p \\/ q"), "(forall x:i (or p q))");
        assert_eq!(sx("p /\\ ex x:i. f x \\/ q"), "(and p (exists x:i (or (app f x) q)))");
        assert_eq!(sx("\\x:i, y:i. x .= y"), "(lambda x:i (lambda y:i (ideq x y)))");
        assert_eq!(sx("(all x:i. f x) \\/ q"), "(or (forall x:i (app f x)) q)");
    }

    #[test]
    fn conjunction_and_disjunction_associate_left() {
        assert_eq!(sx("p /\\ q /\\ r"), "(and (and p q) r)");
        assert_eq!(sx("p \\/ q \\/ r"), "(or (or p q) r)");
        assert_eq!(sx("p \\/ q /\\ r"), "(or p (and q r))");
    }

    #[test]
    fn equality_layer() {
        assert_eq!(sx("~a = b"), "(eq (neg a) b)");
        assert_eq!(sx("a = b /\\ p"), "(and (eq a b) p)");
        assert!(parse_term("a = b = a", &prelude()).is_err());
    }

    #[test]
    fn postfix_and_numerals() {
        assert_eq!(sx("2'"), "(succ 2)");
        assert_eq!(sx("f 0'"), "(app f (succ 0))");
        assert_eq!(sx("~ f a"), "(neg (app f a))");
        assert_eq!(sx("nex[i] f"), "(app nex[i] f)");
        assert_eq!(sx("nor p q"), "(app (app nor p) q)");
    }

    #[test]
    fn unknown_identifier() {
        let err = parse_term("p \\/ zz", &prelude()).unwrap_err();
        assert_eq!(err, SurfaceError::UnknownIdentifier { span: Span::new(5, 7), name: "zz".into() });
    }

    #[test]
    fn binder_shadows_prelude() {
        let ast = parse_term("\\p:i. f p", &prelude()).unwrap();
        match ast.kind {
            AstKind::Binder(_, x, body) => match body.kind {
                AstKind::App(_, arg) => assert_eq!(arg.kind, AstKind::Var(x)),
                _ => panic!(),
            },
            _ => panic!(),
        }
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("p, q |- r", &prelude()).unwrap();
        assert_eq!(s.left.len(), 2);
        assert_eq!(s.right.len(), 1);
        let s = parse_sequent("|-", &prelude()).unwrap();
        assert!(s.left.is_empty() && s.right.is_empty());
        let s = parse_sequent("|- all x:i. f x, p", &prelude()).unwrap();
        assert_eq!(s.right.len(), 2);
        assert!(parse_sequent("p q", &prelude()).is_err());
    }

    #[test]
    fn spans_nest() {
        for s in ["~p \\/ q", "all x:i. f x -> p", "(p) /\\ ((q))", "2' = 3"] {
            assert!(parse_term(s, &prelude()).unwrap().spans_nest(), "{s}");
        }
    }
}
