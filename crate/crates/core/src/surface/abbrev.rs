//! The defined notations as kernel-term builders, plus matchers that
//! recognise them again.
//!
//! Every matcher decomposes a term by shape and then confirms the candidate
//! by rebuilding it and comparing up to alpha, so a successful match always
//! means "this term is exactly what the builder produces for these operands".

use thiserror::Error;

use crate::term::{alpha_eq, Const, Term, TermKind, Var};
use crate::ty::Type;
use crate::typing::{has_type, structural_type, IllTyped};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbbrevError {
    #[error("operand is ill-typed: {0}")]
    Operand(#[from] IllTyped),
    #[error("operand types `{0}` and `{1}` have no common type")]
    NoCommonType(Type, Type),
    #[error("operand of type `{0}` is not of type `i`")]
    NotIndividual(Type),
    #[error("equivalence operands have only the common type `i`")]
    EquivOnIota,
}

fn v(name: &str, ty: Type) -> Var {
    Var::new(name, ty)
}

pub fn nor(p: Term, q: Term) -> Term {
    Term::apps(Term::nor(), [p, q])
}

/// `~p := c p p`
pub fn neg(p: Term) -> Term {
    nor(p.clone(), p)
}

/// `p \/ q := ~(c p q)`
pub fn or(p: Term, q: Term) -> Term {
    neg(nor(p, q))
}

/// `p /\ q := ~(~p \/ ~q)`
pub fn and(p: Term, q: Term) -> Term {
    neg(or(neg(p), neg(q)))
}

/// `p -> q := ~p \/ q`
pub fn imp(p: Term, q: Term) -> Term {
    or(neg(p), q)
}

/// `p <-> q := (p -> q) /\ (q -> p)`
pub fn iff(p: Term, q: Term) -> Term {
    and(imp(p.clone(), q.clone()), imp(q, p))
}

/// `ex x. p := ~(c (\x. p))` with `c` the no-exists constant at the type of `x`.
pub fn exists(x: Var, body: Term) -> Term {
    let nex = Term::nex(x.ty().clone());
    neg(Term::app(nex, Term::lam(x, body)))
}

/// `all x. p := ~ex x. ~p`
pub fn forall(x: Var, body: Term) -> Term {
    neg(exists(x, neg(body)))
}

/// `ex x:o. x`
pub fn truth() -> Term {
    let x = v("x", Type::O);
    exists(x.clone(), Term::var(x))
}

/// `~true`
pub fn falsity() -> Term {
    neg(truth())
}

/// `\x y. ex z. z x /\ ~(z y)` at operand type `ty`.
pub fn neq_template(ty: &Type) -> Term {
    let x = v("x", ty.clone());
    let y = v("y", ty.clone());
    let z = v("z", Type::pred(ty.clone()));
    let body = exists(
        z.clone(),
        and(Term::app(Term::var(z.clone()), Term::var(x.clone())), neg(Term::app(Term::var(z), Term::var(y.clone())))),
    );
    Term::lam(x, Term::lam(y, body))
}

pub fn neq_at(ty: &Type, s: Term, t: Term) -> Term {
    Term::apps(neq_template(ty), [s, t])
}

pub fn eq_at(ty: &Type, s: Term, t: Term) -> Term {
    neg(neq_at(ty, s, t))
}

/// The instance type of `=` and `!=`: the common structural type of the
/// operands, or `i` when one side is an individual and the other
/// nominalizable.
pub fn equality_type(s: &Term, t: &Term) -> Result<Type, AbbrevError> {
    let ts = structural_type(s)?;
    let tt = structural_type(t)?;
    if ts == tt {
        Ok(ts)
    } else if (ts == Type::Iota && has_type(t, &Type::Iota)) || (tt == Type::Iota && has_type(s, &Type::Iota)) {
        Ok(Type::Iota)
    } else {
        Err(AbbrevError::NoCommonType(ts, tt))
    }
}

pub fn neq(s: Term, t: Term) -> Result<Term, AbbrevError> {
    let ty = equality_type(&s, &t)?;
    Ok(neq_at(&ty, s, t))
}

pub fn eq(s: Term, t: Term) -> Result<Term, AbbrevError> {
    neq(s, t).map(neg)
}

fn require_individual(t: &Term) -> Result<(), AbbrevError> {
    if has_type(t, &Type::Iota) {
        Ok(())
    } else {
        Err(AbbrevError::NotIndividual(structural_type(t)?))
    }
}

/// `s .!= t`: `!=` fixed at type `i i o`.
pub fn idneq(s: Term, t: Term) -> Result<Term, AbbrevError> {
    require_individual(&s)?;
    require_individual(&t)?;
    Ok(neq_at(&Type::Iota, s, t))
}

pub fn ideq(s: Term, t: Term) -> Result<Term, AbbrevError> {
    idneq(s, t).map(neg)
}

/// `\x y. all z1 .. zn. x z1 .. zn <-> y z1 .. zn` at predicate type `ty`,
/// with `n` the arity of `ty`.
pub fn equiv_template(ty: &Type) -> Term {
    let x = v("x", ty.clone());
    let y = v("y", ty.clone());
    let zs: Vec<Var> = ty.domains().into_iter().enumerate().map(|(i, d)| v(&format!("z{}", i + 1), d)).collect();
    let args = || zs.iter().cloned().map(Term::var);
    let mut body = iff(Term::apps(Term::var(x.clone()), args()), Term::apps(Term::var(y.clone()), args()));
    for z in zs.iter().rev() {
        body = forall(z.clone(), body);
    }
    Term::lam(x, Term::lam(y, body))
}

pub fn equiv_type(s: &Term, t: &Term) -> Result<Type, AbbrevError> {
    let ts = structural_type(s)?;
    let tt = structural_type(t)?;
    if ts == tt && ts.is_predicate() {
        Ok(ts)
    } else if ts == tt || (ts == Type::Iota && has_type(t, &Type::Iota)) || (tt == Type::Iota && has_type(s, &Type::Iota)) {
        Err(AbbrevError::EquivOnIota)
    } else {
        Err(AbbrevError::NoCommonType(ts, tt))
    }
}

pub fn equiv(s: Term, t: Term) -> Result<Term, AbbrevError> {
    let ty = equiv_type(&s, &t)?;
    Ok(Term::apps(equiv_template(&ty), [s, t]))
}

pub fn nequiv(s: Term, t: Term) -> Result<Term, AbbrevError> {
    equiv(s, t).map(neg)
}

/// `\x:i. \y:i. x .= y`
pub fn successor_template() -> Term {
    let x = v("x", Type::Iota);
    let y = v("y", Type::Iota);
    let body = neg(neq_at(&Type::Iota, Term::var(x.clone()), Term::var(y.clone())));
    Term::lam(x, Term::lam(y, body))
}

/// `t' := (\x y. x .= y) t`
pub fn succ(t: Term) -> Result<Term, AbbrevError> {
    require_individual(&t)?;
    Ok(Term::app(successor_template(), t))
}

/// `0 := \x:i. x .!= x`
pub fn zero() -> Term {
    let x = v("x", Type::Iota);
    Term::lam(x.clone(), neq_at(&Type::Iota, Term::var(x.clone()), Term::var(x)))
}

pub fn numeral(n: u64) -> Term {
    let s = successor_template();
    (0..n).fold(zero(), |acc, _| Term::app(s.clone(), acc))
}

// ---- matchers ----

pub fn match_nor(t: &Term) -> Option<(&Term, &Term)> {
    let (f, q) = t.as_app()?;
    let (c, p) = f.as_app()?;
    matches!(c.as_const(), Some(Const::Nor)).then_some((p, q))
}

pub fn match_neg(t: &Term) -> Option<&Term> {
    let (p, q) = match_nor(t)?;
    alpha_eq(p, q).then_some(p)
}

pub fn match_or(t: &Term) -> Option<(&Term, &Term)> {
    match_nor(match_neg(t)?)
}

pub fn match_and(t: &Term) -> Option<(&Term, &Term)> {
    let (np, nq) = match_or(match_neg(t)?)?;
    Some((match_neg(np)?, match_neg(nq)?))
}

pub fn match_imp(t: &Term) -> Option<(&Term, &Term)> {
    let (np, q) = match_or(t)?;
    Some((match_neg(np)?, q))
}

pub fn match_iff(t: &Term) -> Option<(&Term, &Term)> {
    let (l, r) = match_and(t)?;
    let (p, q) = match_imp(l)?;
    let (q2, p2) = match_imp(r)?;
    (alpha_eq(p, p2) && alpha_eq(q, q2)).then_some((p, q))
}

/// `ex x. body`, returning the binder and body.
pub fn match_exists(t: &Term) -> Option<(&Var, &Term)> {
    let (c, lam) = match_neg(t)?.as_app()?;
    let (x, body) = lam.as_lam()?;
    match c.as_const() {
        Some(Const::Nex(ty)) if ty == x.ty() => Some((x, body)),
        _ => None,
    }
}

pub fn match_forall(t: &Term) -> Option<(&Var, &Term)> {
    let (x, nbody) = match_exists(match_neg(t)?)?;
    Some((x, match_neg(nbody)?))
}

pub fn is_truth(t: &Term) -> bool {
    alpha_eq(t, &truth())
}

pub fn is_falsity(t: &Term) -> bool {
    match_neg(t).is_some_and(is_truth)
}

/// `template s t` with a two-binder template.
fn match_binary_app(t: &Term) -> Option<(&Term, &Term, &Term)> {
    let (f, rhs) = t.as_app()?;
    let (tmpl, lhs) = f.as_app()?;
    tmpl.as_lam()?.1.as_lam()?;
    Some((tmpl, lhs, rhs))
}

/// Which binary notation a term instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Neq,
    Eq,
    IdNeq,
    IdEq,
    Equiv,
    NEquiv,
}

/// Recognises `!=`, `=`, `.!=`, `.=`, `===` and `!==`, returning the
/// notation, both operands and the instance type. When a term fits both the
/// plain and the `i`-fixed form, the `i`-fixed form is reported.
pub fn match_relation(t: &Term) -> Option<(Relation, Term, Term, Type)> {
    if let Some(inner) = match_neg(t) {
        if let Some((rel, s, u, ty)) = match_positive_relation(inner) {
            let negated = match rel {
                Relation::Neq => Relation::Eq,
                Relation::IdNeq => Relation::IdEq,
                Relation::Equiv => Relation::NEquiv,
                _ => return None,
            };
            return Some((negated, s, u, ty));
        }
    }
    match_positive_relation(t)
}

fn match_positive_relation(t: &Term) -> Option<(Relation, Term, Term, Type)> {
    let (tmpl, s, u) = match_binary_app(t)?;
    let (x, _) = tmpl.as_lam()?;
    let ty = x.ty().clone();
    if let Ok(built) = idneq(s.clone(), u.clone()) {
        if alpha_eq(&built, t) {
            return Some((Relation::IdNeq, s.clone(), u.clone(), Type::Iota));
        }
    }
    if let Ok(built) = neq(s.clone(), u.clone()) {
        if alpha_eq(&built, t) {
            return Some((Relation::Neq, s.clone(), u.clone(), ty));
        }
    }
    if let Ok(built) = equiv(s.clone(), u.clone()) {
        if alpha_eq(&built, t) {
            return Some((Relation::Equiv, s.clone(), u.clone(), ty));
        }
    }
    None
}

/// `p = q` as produced by [`eq`], with its instance type.
pub fn match_eq(t: &Term) -> Option<(Term, Term, Type)> {
    let inner = match_neg(t)?;
    let (tmpl, s, u) = match_binary_app(inner)?;
    let (x, _) = tmpl.as_lam()?;
    let built = eq(s.clone(), u.clone()).ok()?;
    alpha_eq(&built, t).then(|| (s.clone(), u.clone(), x.ty().clone()))
}

/// `t'`, returning `t`.
pub fn match_succ(t: &Term) -> Option<&Term> {
    let (f, a) = t.as_app()?;
    alpha_eq(f, &successor_template()).then_some(a)
}

/// The value of a numeral built from `0` by successors.
pub fn match_numeral(t: &Term) -> Option<u64> {
    let mut n = 0;
    let mut cur = t;
    loop {
        if let Some(prev) = match_succ(cur) {
            n += 1;
            cur = prev;
        } else if alpha_eq(cur, &zero()) {
            return Some(n);
        } else {
            return None;
        }
    }
}

/// Whether a term is a constant application `nex[ty] p`.
pub fn match_nex_app(t: &Term) -> Option<(&Type, &Term)> {
    let (c, p) = t.as_app()?;
    match c.kind() {
        TermKind::Const(Const::Nex(ty)) => Some((ty, p)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typing::{is_formula, types_of};

    fn p() -> Term {
        Term::var(v("p", Type::O))
    }
    fn q() -> Term {
        Term::var(v("q", Type::O))
    }

    #[test]
    fn negation_and_disjunction_shapes() {
        assert_eq!(neg(p()), Term::apps(Term::nor(), [p(), p()]));
        let npq = Term::apps(Term::nor(), [p(), q()]);
        assert_eq!(or(p(), q()), Term::apps(Term::nor(), [npq.clone(), npq]));
    }

    #[test]
    fn matchers_invert_builders() {
        assert!(match_neg(&neg(p())).is_some());
        assert_eq!(match_or(&or(p(), q())), Some((&p(), &q())));
        let a = and(p(), q());
        assert_eq!(match_and(&a), Some((&p(), &q())));
        let i = iff(p(), q());
        assert_eq!(match_iff(&i), Some((&p(), &q())));
        let x = v("x", Type::O);
        let e = exists(x.clone(), Term::var(x.clone()));
        assert!(match_exists(&e).is_some());
        let f = forall(x.clone(), Term::var(x));
        assert!(match_forall(&f).is_some());
        assert!(is_truth(&truth()));
        assert!(is_falsity(&falsity()));
    }

    #[test]
    fn numerals_are_individual_predicates() {
        for n in 0..4 {
            let t = numeral(n);
            assert_eq!(types_of(&t).unwrap(), vec![Type::pred(Type::Iota), Type::Iota]);
            assert_eq!(match_numeral(&t), Some(n));
            assert!(!is_formula(&t));
        }
    }

    #[test]
    fn equality_instance_types() {
        let zero = numeral(0);
        assert_eq!(equality_type(&zero, &zero).unwrap(), Type::pred(Type::Iota));
        let a = Term::var(v("a", Type::Iota));
        assert_eq!(equality_type(&a, &zero).unwrap(), Type::Iota);
        let f = Term::var(v("f", Type::pred(Type::Iota)));
        assert!(matches!(equality_type(&a, &f), Err(AbbrevError::NoCommonType(..))));
        assert!(is_formula(&eq(zero.clone(), zero.clone()).unwrap()));
        assert!(is_formula(&ideq(zero.clone(), a.clone()).unwrap()));
        assert!(matches!(ideq(f.clone(), a.clone()), Err(AbbrevError::NotIndividual(_))));
        assert_eq!(equiv(a.clone(), a.clone()), Err(AbbrevError::EquivOnIota));
        assert_eq!(equiv(a, zero), Err(AbbrevError::EquivOnIota));
        assert!(is_formula(&equiv(f.clone(), f).unwrap()));
        assert!(is_formula(&equiv(p(), q()).unwrap()));
    }

    #[test]
    fn relation_matching() {
        let zero = numeral(0);
        let (rel, _, _, ty) = match_relation(&eq(zero.clone(), zero.clone()).unwrap()).unwrap();
        assert_eq!((rel, ty), (Relation::Eq, Type::pred(Type::Iota)));
        let (rel, ..) = match_relation(&ideq(zero.clone(), zero.clone()).unwrap()).unwrap();
        assert_eq!(rel, Relation::IdEq);
        // the i-instance of = on predicate operands is not what `=` produces
        let forced = eq_at(&Type::Iota, zero.clone(), zero.clone());
        assert!(match_eq(&forced).is_none());
        assert_eq!(match_relation(&forced).unwrap().0, Relation::IdEq);
        let (rel, ..) = match_relation(&nequiv(p(), q()).unwrap()).unwrap();
        assert_eq!(rel, Relation::NEquiv);
        assert!(match_relation(&p()).is_none());
    }

    #[test]
    fn equivalence_of_propositions_is_biconditional() {
        let t = equiv_template(&Type::O);
        let x = v("x", Type::O);
        let y = v("y", Type::O);
        assert_eq!(t, Term::lam(x.clone(), Term::lam(y.clone(), iff(Term::var(x), Term::var(y)))));
    }
}
