//! Algorithmic typing.
//!
//! Variables and constants carry their types, so no context is needed. The
//! structural type of a term is computed bottom-up; nominalization is only
//! consulted where an argument of type `i` is expected, and at the top level
//! by [`has_type`].

use thiserror::Error;

use crate::term::{free_vars, Term, TermKind, Var};
use crate::ty::Type;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IllTypedReason {
    #[error("cannot apply a term of type `{found}`")]
    NotAFunction { found: Type },
    #[error("argument has type `{found}` where `{expected}` is expected")]
    ArgumentMismatch { expected: Type, found: Type },
    #[error("argument of type `{found}` cannot be nominalized: free variable `{var}` is not of type `i`")]
    NotNominalizable { found: Type, var: Var },
    #[error("abstraction body has type `i`, expected a predicate type")]
    BodyIsIota,
}

/// A typing failure, located by the child-index path from the root
/// (0 = function or body, 1 = argument).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ill-typed at {}: {reason}", fmt_path(path))]
pub struct IllTyped {
    pub path: Vec<usize>,
    pub reason: IllTypedReason,
}

fn fmt_path(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_owned()
    } else {
        path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
    }
}

/// Result type of applying something of type `fun_ty` to `arg` whose
/// structural type is `arg_ty`.
pub fn app_type(fun_ty: &Type, arg: &Term, arg_ty: &Type) -> Result<Type, IllTypedReason> {
    let arrow = fun_ty
        .as_fun()
        .ok_or_else(|| IllTypedReason::NotAFunction { found: fun_ty.clone() })?;
    if arrow.dom() == arg_ty {
        return Ok(arrow.cod().clone());
    }
    if *arrow.dom() == Type::Iota && arg_ty.is_predicate() {
        return match free_vars(arg).into_iter().find(|v| *v.ty() != Type::Iota) {
            None => Ok(arrow.cod().clone()),
            Some(var) => Err(IllTypedReason::NotNominalizable { found: arg_ty.clone(), var }),
        };
    }
    Err(IllTypedReason::ArgumentMismatch { expected: arrow.dom().clone(), found: arg_ty.clone() })
}

/// Type of `\x. body` given the structural type of the body.
pub fn lam_type(binder: &Var, body_ty: &Type) -> Result<Type, IllTypedReason> {
    Type::fun(binder.ty().clone(), body_ty.clone()).map_err(|_| IllTypedReason::BodyIsIota)
}

/// The unique type derivable without using nominalization at the root.
pub fn structural_type(t: &Term) -> Result<Type, IllTyped> {
    fn go(t: &Term, path: &mut Vec<usize>) -> Result<Type, IllTyped> {
        match t.kind() {
            TermKind::Var(v) => Ok(v.ty().clone()),
            TermKind::Const(c) => Ok(c.ty()),
            TermKind::App(f, a) => {
                path.push(0);
                let ft = go(f, path)?;
                path.pop();
                path.push(1);
                let at = go(a, path)?;
                path.pop();
                app_type(&ft, a, &at).map_err(|reason| IllTyped { path: path.clone(), reason })
            }
            TermKind::Lam(x, b) => {
                path.push(0);
                let bt = go(b, path)?;
                path.pop();
                lam_type(x, &bt).map_err(|reason| IllTyped { path: path.clone(), reason })
            }
        }
    }
    go(t, &mut Vec::new())
}

pub fn is_predicate_type(t: &Type) -> bool {
    t.is_predicate()
}

/// A predicate-typed term all of whose free variables are individuals.
pub fn is_nominalizable(t: &Term) -> bool {
    match structural_type(t) {
        Ok(ty) => ty.is_predicate() && free_vars(t).iter().all(|v| *v.ty() == Type::Iota),
        Err(_) => false,
    }
}

/// The full judgment `t : ty`, including nominalization at the root.
pub fn has_type(t: &Term, ty: &Type) -> bool {
    match structural_type(t) {
        Ok(st) if st == *ty => true,
        Ok(_) => *ty == Type::Iota && is_nominalizable(t),
        Err(_) => false,
    }
}

/// Every type of `t`: the structural type, then `i` when nominalizable.
pub fn types_of(t: &Term) -> Result<Vec<Type>, IllTyped> {
    let st = structural_type(t)?;
    let mut out = vec![st.clone()];
    if st != Type::Iota && is_nominalizable(t) {
        out.push(Type::Iota);
    }
    Ok(out)
}

pub fn is_formula(t: &Term) -> bool {
    has_type(t, &Type::O)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Const;

    fn io() -> Type {
        Type::pred(Type::Iota)
    }

    #[test]
    fn constant_types() {
        assert_eq!(structural_type(&Term::nor()).unwrap(), Type::relation([Type::O, Type::O]));
        assert_eq!(structural_type(&Term::nex(Type::Iota)).unwrap(), Type::pred(io()));
    }

    #[test]
    fn abstraction_over_iota_body_is_rejected() {
        let x = Var::new("x", Type::Iota);
        let err = structural_type(&Term::lam(x.clone(), Term::var(x))).unwrap_err();
        assert_eq!(err.reason, IllTypedReason::BodyIsIota);
        assert!(err.path.is_empty());
    }

    #[test]
    fn nominalizable_examples() {
        assert!(!is_nominalizable(&Term::var(Var::new("z", io()))));
        // \x:i. r y x  with y : i free
        let r = Term::var(Var::new("r", Type::relation([Type::Iota, Type::Iota])));
        let x = Var::new("x", Type::Iota);
        let t = Term::lam(x.clone(), Term::apps(r, [Term::var(Var::new("y", Type::Iota)), Term::var(x)]));
        // r is free and of type i i o, so t is not nominalizable
        assert!(!is_nominalizable(&t));
    }

    #[test]
    fn has_type_variable() {
        assert!(!has_type(&Term::var(Var::new("x", Type::Iota)), &Type::O));
        assert!(has_type(&Term::var(Var::new("x", Type::Iota)), &Type::Iota));
    }

    #[test]
    fn nominalized_argument() {
        // f : i o applied to a closed predicate
        let f = Term::var(Var::new("f", io()));
        let x = Var::new("x", Type::O);
        let id = Term::lam(x.clone(), Term::var(x));
        assert_eq!(structural_type(&Term::app(f.clone(), id)).unwrap(), Type::O);
        // but not to an open one with a non-individual free variable
        let q = Term::var(Var::new("q", io()));
        let err = structural_type(&Term::app(f, q)).unwrap_err();
        assert!(matches!(err.reason, IllTypedReason::NotNominalizable { .. }));
        assert_eq!(err.path, Vec::<usize>::new());
    }

    #[test]
    fn error_path_points_at_offending_node() {
        let h = Term::var(Var::new("h", Type::pred(Type::O)));
        let c = Term::constant(Const::Declared { name: "c".into(), ty: Type::Iota });
        let bad = Term::app(h, c);
        let t = Term::apps(Term::nor(), [Term::var(Var::new("p", Type::O)), bad]);
        let err = structural_type(&t).unwrap_err();
        assert_eq!(err.path, vec![1]);
        assert!(matches!(err.reason, IllTypedReason::ArgumentMismatch { .. }));
    }
}
