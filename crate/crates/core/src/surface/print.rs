//! Printing kernel terms back to the ASCII syntax.
//!
//! Raw mode writes fully parenthesized kernel syntax. Resugaring mode
//! recognises the defined notations (via the matchers in [`super::abbrev`])
//! and prints them with minimal parentheses. Both outputs parse and
//! elaborate back to an alpha-equivalent term, given a prelude declaring the
//! term's free variables and constants.
//!
//! A binder is renamed on output when its name is already used by a
//! different variable that occurs free in its body.

use super::abbrev::{self, Relation};
use super::parser::{
    is_keyword, PREC_AND, PREC_APP, PREC_ATOM, PREC_BINDER, PREC_EQ, PREC_IFF, PREC_IMP, PREC_NEG, PREC_OR,
    PREC_POSTFIX,
};
use crate::term::{alpha_eq, free_vars, Const, Term, TermKind, Var};
use crate::ty::Type;

pub fn print_type(t: &Type) -> String {
    t.to_string()
}

pub fn print_term(t: &Term, resugar: bool) -> String {
    let mut p = Printer { env: Vec::new() };
    if resugar {
        p.sugar(t).0
    } else {
        p.raw(t)
    }
}

enum Form<'a> {
    Numeral(u64),
    Succ(&'a Term),
    Truth,
    Falsity,
    Infix(&'a Term, &'static str, &'a Term, u8, u8, u8),
    Binder(&'static str, &'a Var, &'a Term),
    Relation(Relation, Term, Term),
    Neg(&'a Term),
    Raw,
}

/// Chooses the notation `t` is printed with; earlier matches take priority.
fn classify(t: &Term) -> Form<'_> {
    if let Some(n) = abbrev::match_numeral(t) {
        return Form::Numeral(n);
    }
    if let Some(a) = abbrev::match_succ(t) {
        return Form::Succ(a);
    }
    if abbrev::is_truth(t) {
        return Form::Truth;
    }
    if abbrev::is_falsity(t) {
        return Form::Falsity;
    }
    if let Some((p, q)) = abbrev::match_iff(t) {
        return Form::Infix(p, "<->", q, PREC_IFF, PREC_IMP, PREC_IFF);
    }
    if let Some((p, q)) = abbrev::match_and(t) {
        return Form::Infix(p, "/\\", q, PREC_AND, PREC_AND, PREC_EQ);
    }
    // `p \/ p` prints as `~~p`
    if let Some((np, q)) = abbrev::match_or(t).filter(|(a, b)| !alpha_eq(a, b)) {
        if let Form::Neg(p) = classify(np) {
            return Form::Infix(p, "->", q, PREC_IMP, PREC_OR, PREC_IMP);
        }
        return Form::Infix(np, "\\/", q, PREC_OR, PREC_OR, PREC_AND);
    }
    if let Some((x, body)) = abbrev::match_forall(t) {
        return Form::Binder("all ", x, body);
    }
    if let Some((x, body)) = abbrev::match_exists(t) {
        return Form::Binder("ex ", x, body);
    }
    if let Some((rel, s, u, _)) = abbrev::match_relation(t) {
        return Form::Relation(rel, s, u);
    }
    if let Some(p) = abbrev::match_neg(t) {
        return Form::Neg(p);
    }
    Form::Raw
}

struct Printer {
    env: Vec<(Var, String)>,
}

impl Printer {
    fn display(&self, v: &Var) -> String {
        self.env
            .iter()
            .rev()
            .find(|(b, _)| b == v)
            .map_or_else(|| v.name().to_owned(), |(_, n)| n.clone())
    }

    fn binder_name(&self, x: &Var, body: &Term) -> String {
        let shown: Vec<String> = free_vars(body).iter().filter(|v| *v != x).map(|v| self.display(v)).collect();
        let clash = |n: &str| shown.iter().any(|s| s == n);
        if !clash(x.name()) && !is_keyword(x.name()) {
            x.name().to_owned()
        } else {
            Var::fresh(x.name(), x.ty().clone(), clash).name().to_owned()
        }
    }

    fn with_binder<R>(&mut self, x: &Var, body: &Term, f: impl FnOnce(&mut Self, &str) -> R) -> R {
        let name = self.binder_name(x, body);
        self.env.push((x.clone(), name.clone()));
        let r = f(self, &name);
        self.env.pop();
        r
    }

    fn constant(c: &Const) -> String {
        match c {
            Const::Nor => "nor".to_owned(),
            Const::Nex(t) => format!("nex[{t}]"),
            Const::Declared { name, .. } => name.to_string(),
        }
    }

    fn raw(&mut self, t: &Term) -> String {
        match t.kind() {
            TermKind::Var(v) => self.display(v),
            TermKind::Const(c) => Self::constant(c),
            TermKind::App(f, a) => format!("({} {})", self.raw(f), self.raw(a)),
            TermKind::Lam(x, b) => self.with_binder(x, b, |p, name| format!("(\\{name}:{}. {})", x.ty(), p.raw(b))),
        }
    }

    fn at(&mut self, t: &Term, min: u8) -> String {
        let (s, prec) = self.sugar(t);
        if prec < min {
            format!("({s})")
        } else {
            s
        }
    }

    fn infix(&mut self, l: &Term, op: &str, r: &Term, prec: u8, lmin: u8, rmin: u8) -> (String, u8) {
        let ls = self.at(l, lmin);
        let rs = self.at(r, rmin);
        (format!("{ls} {op} {rs}"), prec)
    }

    fn binder(&mut self, kw: &str, x: &Var, body: &Term) -> (String, u8) {
        let s = self.with_binder(x, body, |p, name| format!("{kw}{name}:{}. {}", x.ty(), p.at(body, 0)));
        (s, PREC_BINDER)
    }

    fn sugar(&mut self, t: &Term) -> (String, u8) {
        match classify(t) {
            Form::Numeral(n) => return (n.to_string(), PREC_ATOM),
            Form::Succ(a) => return (format!("{}'", self.at(a, PREC_ATOM)), PREC_POSTFIX),
            Form::Truth => return ("true".to_owned(), PREC_ATOM),
            Form::Falsity => return ("false".to_owned(), PREC_ATOM),
            Form::Infix(p, op, q, prec, lmin, rmin) => return self.infix(p, op, q, prec, lmin, rmin),
            Form::Binder(kw, x, body) => return self.binder(kw, x, body),
            Form::Relation(rel, s, u) => {
                let op = match rel {
                    Relation::Neq => "!=",
                    Relation::Eq => "=",
                    Relation::IdNeq => ".!=",
                    Relation::IdEq => ".=",
                    Relation::Equiv => "===",
                    Relation::NEquiv => "!==",
                };
                return self.infix(&s, op, &u, PREC_EQ, PREC_NEG, PREC_NEG);
            }
            Form::Neg(p) => return (format!("~{}", self.at(p, PREC_NEG)), PREC_NEG),
            Form::Raw => {}
        }
        match t.kind() {
            TermKind::Var(v) => (self.display(v), PREC_ATOM),
            TermKind::Const(c) => (Self::constant(c), PREC_ATOM),
            TermKind::App(f, a) => {
                let fs = self.at(f, PREC_APP);
                let args = self.at(a, PREC_POSTFIX);
                (format!("{fs} {args}"), PREC_APP)
            }
            TermKind::Lam(x, b) => self.binder("\\", x, b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{elaborate, parse_term, Prelude};
    use super::*;

    fn prelude() -> Prelude {
        Prelude::parse("var p : o\nvar q : o\nvar r : o\nvar f : i o\nvar a : i\nvar g : (i o) o\n").unwrap()
    }

    fn el(s: &str) -> Term {
        elaborate(&parse_term(s, &prelude()).unwrap()).unwrap()
    }

    fn roundtrip(t: &Term, resugar: bool) -> Term {
        let text = print_term(t, resugar);
        elaborate(&parse_term(&text, &prelude()).unwrap_or_else(|e| panic!("{text}: {e}")))
            .unwrap_or_else(|e| panic!("{text}: {e}"))
    }

    #[test]
    fn negation_resugars() {
        let p = Term::var(Var::new("p", Type::O));
        assert_eq!(print_term(&abbrev::neg(p), true), "~p");
    }

    #[test]
    fn raw_lambda() {
        let x = Var::new("x", Type::Iota);
        let t = Term::lam(x.clone(), Term::app(Term::var(Var::new("f", Type::pred(Type::Iota))), Term::var(x)));
        assert_eq!(print_term(&t, false), "(\\x:i. (f x))");
        assert_eq!(print_term(&t, true), "\\x:i. f x");
    }

    #[test]
    fn resugared_forms() {
        let cases = [
            ("p \\/ q", "p \\/ q"),
            ("~p \\/ q", "p -> q"),
            ("p -> q -> r", "p -> q -> r"),
            ("(p -> q) -> r", "(p -> q) -> r"),
            ("p /\\ q \\/ r", "p /\\ q \\/ r"),
            ("p /\\ (q \\/ r)", "p /\\ (q \\/ r)"),
            ("p <-> q", "p <-> q"),
            ("all x:i. f x", "all x:i. f x"),
            ("ex x:i. f x /\\ p", "ex x:i. f x /\\ p"),
            ("0 = 1", "0 = 1"),
            ("a .= 2'", "a .= 3"),
            ("a' .!= 0", "a' .!= 0"),
            ("f === f", "f === f"),
            ("~(p = q)", "~(p = q)"),
            ("true /\\ ~false", "true /\\ ~false"),
            ("nex f", "nex[i] f"),
            ("(ex x:i. f x) \\/ p", "(ex x:i. f x) \\/ p"),
        ];
        for (src, expected) in cases {
            let t = el(src);
            assert_eq!(print_term(&t, true), expected, "{src}");
            assert!(alpha_eq(&roundtrip(&t, true), &t), "{src}");
            assert!(alpha_eq(&roundtrip(&t, false), &t), "{src}");
        }
    }

    #[test]
    fn shadowing_binder_is_renamed() {
        // \x:o. f x  where the inner x is the free individual x
        let xo = Var::new("x", Type::O);
        let xi = Var::new("x", Type::Iota);
        let f = Term::var(Var::new("f", Type::pred(Type::Iota)));
        let t = Term::lam(xo, Term::app(f, Term::var(xi)));
        assert_eq!(print_term(&t, false), "(\\x$1:o. (f x))");
    }

    #[test]
    fn inner_binder_yields_to_outer_name() {
        // \x:i. \x:o. f x(outer)
        let xi = Var::new("x", Type::Iota);
        let xo = Var::new("x", Type::O);
        let f = Term::var(Var::new("f", Type::pred(Type::Iota)));
        let t = Term::lam(xi.clone(), Term::lam(xo, Term::app(f, Term::var(xi))));
        assert_eq!(print_term(&t, true), "\\x:i. \\x$1:o. f x");
    }
}
