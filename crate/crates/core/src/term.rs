//! The term algebra: applications, abstractions, typed variables and constants.
//!
//! Variables are named and carry their type; identity is the pair
//! `(name, type)`. Alpha-equivalence and capture-avoiding substitution are
//! exact: comparison tracks binder positions, and substitution renames a
//! binder whenever it would capture a free variable of the substituted term.
//!
//! Fresh names live in a reserved namespace: a base identifier followed by
//! `$` and a counter (`x$1`, `x$2`, ...). User identifiers never contain `$`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::ty::Type;

/// Separator between a base name and a fresh-name counter.
pub const FRESH_SEP: char = '$';

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    name: Arc<str>,
    ty: Type,
}

impl Var {
    pub fn new(name: impl Into<Arc<str>>, ty: Type) -> Var {
        Var { name: name.into(), ty }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ty(&self) -> &Type {
        &self.ty
    }

    /// The name without any fresh-name counter.
    pub fn base_name(&self) -> &str {
        base_name(&self.name)
    }

    /// Whether this variable was produced by the fresh-name supply.
    pub fn is_fresh_name(&self) -> bool {
        self.name.contains(FRESH_SEP)
    }

    /// A variable of type `ty` named `base$k` for the least `k >= 1` such
    /// that `taken` rejects none of them.
    pub fn fresh(base: &str, ty: Type, taken: impl Fn(&str) -> bool) -> Var {
        let base = base_name(base);
        (1u64..)
            .map(|k| format!("{base}{FRESH_SEP}{k}"))
            .find(|n| !taken(n))
            .map(|n| Var::new(n, ty))
            .expect("fresh name supply is infinite")
    }
}

fn base_name(name: &str) -> &str {
    match name.find(FRESH_SEP) {
        Some(i) => &name[..i],
        None => name,
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.ty)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Const {
    /// "neither ... nor ...", of type `o o o`.
    Nor,
    /// "no ... exists" at element type `t`, of type `(t o) o`.
    Nex(Type),
    /// A constant introduced by a prelude.
    Declared { name: Arc<str>, ty: Type },
}

impl Const {
    pub fn ty(&self) -> Type {
        match self {
            Const::Nor => Type::relation([Type::O, Type::O]),
            Const::Nex(t) => Type::pred(Type::pred(t.clone())),
            Const::Declared { ty, .. } => ty.clone(),
        }
    }
}

/// An immutable, cheaply clonable term. `PartialEq` is syntactic identity;
/// use [`alpha_eq`] to compare up to renaming of bound variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term(Arc<TermKind>);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermKind {
    App(Term, Term),
    Lam(Var, Term),
    Var(Var),
    Const(Const),
}

impl Term {
    /// Identity of the shared node, not structural equality.
    pub fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Address of the shared node; stable while any clone is alive.
    pub fn node_addr(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn kind(&self) -> &TermKind {
        &self.0
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term(Arc::new(TermKind::App(fun, arg)))
    }

    /// `f a1 ... an`, nesting to the left.
    pub fn apps(fun: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(fun, Term::app)
    }

    pub fn lam(binder: Var, body: Term) -> Term {
        Term(Arc::new(TermKind::Lam(binder, body)))
    }

    pub fn var(v: Var) -> Term {
        Term(Arc::new(TermKind::Var(v)))
    }

    pub fn constant(c: Const) -> Term {
        Term(Arc::new(TermKind::Const(c)))
    }

    pub fn nor() -> Term {
        Term::constant(Const::Nor)
    }

    pub fn nex(elem: Type) -> Term {
        Term::constant(Const::Nex(elem))
    }

    pub fn as_app(&self) -> Option<(&Term, &Term)> {
        match self.kind() {
            TermKind::App(f, a) => Some((f, a)),
            _ => None,
        }
    }

    pub fn as_lam(&self) -> Option<(&Var, &Term)> {
        match self.kind() {
            TermKind::Lam(x, b) => Some((x, b)),
            _ => None,
        }
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self.kind() {
            TermKind::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_const(&self) -> Option<&Const> {
        match self.kind() {
            TermKind::Const(c) => Some(c),
            _ => None,
        }
    }

    /// Splits `f a1 ... an` into `f` and `[a1, ..., an]`.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut head = self;
        while let TermKind::App(f, a) = head.kind() {
            args.push(a);
            head = f;
        }
        args.reverse();
        (head, args)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self.kind() {
            TermKind::App(f, a) => 1 + f.size() + a.size(),
            TermKind::Lam(_, b) => 1 + b.size(),
            TermKind::Var(_) | TermKind::Const(_) => 1,
        }
    }

    /// The subterm reached by following child indices (0 = function or
    /// body, 1 = argument).
    pub fn at_path(&self, path: &[usize]) -> Option<&Term> {
        let mut cur = self;
        for &i in path {
            cur = match (cur.kind(), i) {
                (TermKind::App(f, _), 0) => f,
                (TermKind::App(_, a), 1) => a,
                (TermKind::Lam(_, b), 0) => b,
                _ => return None,
            };
        }
        Some(cur)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::surface::print_term(self, false))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::surface::print_term(self, false))
    }
}

/// Variables with at least one occurrence outside the scope of a matching binder.
pub fn free_vars(t: &Term) -> BTreeSet<Var> {
    fn go<'a>(t: &'a Term, bound: &mut Vec<&'a Var>, out: &mut BTreeSet<Var>) {
        match t.kind() {
            TermKind::Var(v) => {
                if !bound.contains(&v) {
                    out.insert(v.clone());
                }
            }
            TermKind::Const(_) => {}
            TermKind::App(f, a) => {
                go(f, bound, out);
                go(a, bound, out);
            }
            TermKind::Lam(x, b) => {
                bound.push(x);
                go(b, bound, out);
                bound.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

pub fn occurs_free(x: &Var, t: &Term) -> bool {
    match t.kind() {
        TermKind::Var(v) => v == x,
        TermKind::Const(_) => false,
        TermKind::App(f, a) => occurs_free(x, f) || occurs_free(x, a),
        TermKind::Lam(y, b) => y != x && occurs_free(x, b),
    }
}

/// Names of every variable occurring in `t`, bound or free.
pub fn var_names(t: &Term, out: &mut HashSet<String>) {
    match t.kind() {
        TermKind::Var(v) => {
            out.insert(v.name().to_owned());
        }
        TermKind::Const(_) => {}
        TermKind::App(f, a) => {
            var_names(f, out);
            var_names(a, out);
        }
        TermKind::Lam(x, b) => {
            out.insert(x.name().to_owned());
            var_names(b, out);
        }
    }
}

/// `p[t/x]`: every free occurrence of `x` in `p` replaced by `t`, renaming
/// binders of `p` that would capture a free variable of `t`.
pub fn substitute(p: &Term, t: &Term, x: &Var) -> Term {
    let fv_t = free_vars(t);
    let fv_t_names: HashSet<String> = fv_t.iter().map(|v| v.name().to_owned()).collect();
    subst(p, t, x, &fv_t, &fv_t_names)
}

fn subst(p: &Term, t: &Term, x: &Var, fv_t: &BTreeSet<Var>, fv_t_names: &HashSet<String>) -> Term {
    match p.kind() {
        TermKind::Var(v) => {
            if v == x {
                t.clone()
            } else {
                p.clone()
            }
        }
        TermKind::Const(_) => p.clone(),
        TermKind::App(f, a) => {
            let f2 = subst(f, t, x, fv_t, fv_t_names);
            let a2 = subst(a, t, x, fv_t, fv_t_names);
            if f2.ptr_eq(f) && a2.ptr_eq(a) {
                p.clone()
            } else {
                Term::app(f2, a2)
            }
        }
        TermKind::Lam(y, body) => {
            if y == x {
                return p.clone();
            }
            if fv_t.contains(y) {
                if !occurs_free(x, body) {
                    return p.clone();
                }
                let mut taken: HashSet<String> = fv_t_names.clone();
                var_names(body, &mut taken);
                taken.insert(x.name().to_owned());
                let y2 = Var::fresh(y.name(), y.ty().clone(), |n| taken.contains(n));
                let renamed = rename_free(body, y, &y2);
                Term::lam(y2, subst(&renamed, t, x, fv_t, fv_t_names))
            } else {
                let b2 = subst(body, t, x, fv_t, fv_t_names);
                if b2.ptr_eq(body) {
                    p.clone()
                } else {
                    Term::lam(y.clone(), b2)
                }
            }
        }
    }
}

/// Replaces free occurrences of `from` with `to`, where `to` is known not to
/// occur anywhere in `t` (so no capture can arise).
fn rename_free(t: &Term, from: &Var, to: &Var) -> Term {
    match t.kind() {
        TermKind::Var(v) if v == from => Term::var(to.clone()),
        TermKind::Var(_) | TermKind::Const(_) => t.clone(),
        TermKind::App(f, a) => Term::app(rename_free(f, from, to), rename_free(a, from, to)),
        TermKind::Lam(y, b) => {
            if y == from {
                t.clone()
            } else {
                Term::lam(y.clone(), rename_free(b, from, to))
            }
        }
    }
}

/// Alpha-equivalence. Binders correspond only when their types agree;
/// free variables are compared by identity.
pub fn alpha_eq(s: &Term, t: &Term) -> bool {
    fn go<'a>(s: &'a Term, t: &'a Term, ls: &mut Vec<&'a Var>, rs: &mut Vec<&'a Var>) -> bool {
        if ls.is_empty() && rs.is_empty() && Arc::ptr_eq(&s.0, &t.0) {
            return true;
        }
        match (s.kind(), t.kind()) {
            (TermKind::Var(a), TermKind::Var(b)) => {
                let i = ls.iter().rposition(|v| *v == a);
                let j = rs.iter().rposition(|v| *v == b);
                match (i, j) {
                    (Some(i), Some(j)) => ls.len() - i == rs.len() - j,
                    (None, None) => a == b,
                    _ => false,
                }
            }
            (TermKind::Const(a), TermKind::Const(b)) => a == b,
            (TermKind::App(f, a), TermKind::App(g, b)) => go(f, g, ls, rs) && go(a, b, ls, rs),
            (TermKind::Lam(x, b), TermKind::Lam(y, c)) => {
                if x.ty() != y.ty() {
                    return false;
                }
                ls.push(x);
                rs.push(y);
                let r = go(b, c, ls, rs);
                ls.pop();
                rs.pop();
                r
            }
            _ => false,
        }
    }
    go(s, t, &mut Vec::new(), &mut Vec::new())
}

/// A nameless rendering of a term: bound variables become de Bruijn indices.
/// Two terms have equal keys iff they are alpha-equivalent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlphaKey {
    Bound(usize),
    Free(Var),
    Const(Const),
    App(Box<AlphaKey>, Box<AlphaKey>),
    Lam(Type, Box<AlphaKey>),
}

pub fn alpha_key(t: &Term) -> AlphaKey {
    fn go<'a>(t: &'a Term, bound: &mut Vec<&'a Var>) -> AlphaKey {
        match t.kind() {
            TermKind::Var(v) => match bound.iter().rposition(|b| *b == v) {
                Some(i) => AlphaKey::Bound(bound.len() - 1 - i),
                None => AlphaKey::Free(v.clone()),
            },
            TermKind::Const(c) => AlphaKey::Const(c.clone()),
            TermKind::App(f, a) => AlphaKey::App(Box::new(go(f, bound)), Box::new(go(a, bound))),
            TermKind::Lam(x, b) => {
                bound.push(x);
                let k = go(b, bound);
                bound.pop();
                AlphaKey::Lam(x.ty().clone(), Box::new(k))
            }
        }
    }
    go(t, &mut Vec::new())
}

/// Contracts `t` itself if it is a beta- or eta-redex.
pub fn contract_root(t: &Term) -> Option<Term> {
    match t.kind() {
        TermKind::App(f, a) => {
            let (x, body) = f.as_lam()?;
            Some(substitute(body, a, x))
        }
        TermKind::Lam(x, body) => {
            let (p, arg) = body.as_app()?;
            match arg.as_var() {
                Some(y) if y == x && !occurs_free(x, p) => Some(p.clone()),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Every term obtained from `t` by contracting exactly one beta- or
/// eta-redex, outermost first, then left to right.
pub fn reduct_steps(t: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    if let Some(r) = contract_root(t) {
        out.push(r);
    }
    match t.kind() {
        TermKind::App(f, a) => {
            out.extend(reduct_steps(f).into_iter().map(|f2| Term::app(f2, a.clone())));
            out.extend(reduct_steps(a).into_iter().map(|a2| Term::app(f.clone(), a2)));
        }
        TermKind::Lam(x, b) => {
            out.extend(reduct_steps(b).into_iter().map(|b2| Term::lam(x.clone(), b2)));
        }
        TermKind::Var(_) | TermKind::Const(_) => {}
    }
    out
}

/// `s > t`: `t` is, up to alpha, `s` with one beta- or eta-reduction.
pub fn reduces_one(s: &Term, t: &Term) -> bool {
    reduct_steps(s).iter().any(|u| alpha_eq(u, t))
}

pub fn is_normal(t: &Term) -> bool {
    contract_root(t).is_none()
        && match t.kind() {
            TermKind::App(f, a) => is_normal(f) && is_normal(a),
            TermKind::Lam(_, b) => is_normal(b),
            _ => true,
        }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    LeftmostOutermost,
    RightmostInnermost,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("no normal form reached within {fuel} reduction steps")]
    FuelExhausted { fuel: u64 },
}

/// One contraction of the redex selected by `strategy`, or `None` on a normal form.
pub fn step(t: &Term, strategy: Strategy) -> Option<Term> {
    match strategy {
        Strategy::LeftmostOutermost => step_lo(t),
        Strategy::RightmostInnermost => step_ri(t),
    }
}

fn step_lo(t: &Term) -> Option<Term> {
    if let Some(r) = contract_root(t) {
        return Some(r);
    }
    match t.kind() {
        TermKind::App(f, a) => step_lo(f)
            .map(|f2| Term::app(f2, a.clone()))
            .or_else(|| step_lo(a).map(|a2| Term::app(f.clone(), a2))),
        TermKind::Lam(x, b) => step_lo(b).map(|b2| Term::lam(x.clone(), b2)),
        _ => None,
    }
}

fn step_ri(t: &Term) -> Option<Term> {
    let inner = match t.kind() {
        TermKind::App(f, a) => step_ri(a)
            .map(|a2| Term::app(f.clone(), a2))
            .or_else(|| step_ri(f).map(|f2| Term::app(f2, a.clone()))),
        TermKind::Lam(x, b) => step_ri(b).map(|b2| Term::lam(x.clone(), b2)),
        _ => None,
    };
    inner.or_else(|| contract_root(t))
}

/// Repeatedly contracts the selected redex until none is left. `fuel` bounds
/// the number of contractions.
pub fn normalize(t: &Term, strategy: Strategy, fuel: u64) -> Result<Term, NormalizeError> {
    let mut cur = t.clone();
    for _ in 0..fuel {
        match step(&cur, strategy) {
            Some(next) => cur = next,
            None => return Ok(cur),
        }
    }
    if is_normal(&cur) {
        Ok(cur)
    } else {
        Err(NormalizeError::FuelExhausted { fuel })
    }
}
