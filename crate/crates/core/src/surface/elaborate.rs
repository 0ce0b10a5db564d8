//! Expansion of surface syntax into kernel terms.
//!
//! Definitional redexes (the `!=` and `===` templates, successor) are left
//! unreduced. Every produced node is typechecked as it is built, so an
//! elaborated term is always structurally well typed.

use super::abbrev::{self, AbbrevError};
use super::{Ast, AstKind, BinOp, BinderKind, Span, SurfaceError};
use crate::term::{Term, Var};
use crate::ty::Type;
use crate::typing::{app_type, has_type, lam_type};

fn ill(span: Span, msg: impl ToString) -> SurfaceError {
    SurfaceError::IllTyped { span, msg: msg.to_string() }
}

fn abbrev_err(span: Span, e: AbbrevError) -> SurfaceError {
    match e {
        AbbrevError::EquivOnIota => SurfaceError::EquivOnIota { span },
        other => ill(span, other),
    }
}

/// Elaborates a parsed term to a kernel term.
pub fn elaborate(ast: &Ast) -> Result<Term, SurfaceError> {
    elab(ast).map(|(t, _)| t)
}

/// Elaborates and additionally requires type `o`.
pub fn elaborate_formula(ast: &Ast) -> Result<Term, SurfaceError> {
    let (t, ty) = elab(ast)?;
    if has_type(&t, &Type::O) {
        Ok(t)
    } else {
        Err(ill(ast.span, format!("expected a formula, found a term of type `{ty}`")))
    }
}

fn expect_formula(ast: &Ast) -> Result<Term, SurfaceError> {
    let (t, ty) = elab(ast)?;
    if ty == Type::O {
        Ok(t)
    } else {
        Err(ill(ast.span, format!("expected a formula, found a term of type `{ty}`")))
    }
}

fn elab(ast: &Ast) -> Result<(Term, Type), SurfaceError> {
    let span = ast.span;
    match &ast.kind {
        AstKind::Var(v) => Ok((Term::var(v.clone()), v.ty().clone())),
        AstKind::Const(c) => Ok((Term::constant(c.clone()), c.ty())),
        AstKind::Nex(Some(ty)) => {
            let t = Term::nex(ty.clone());
            Ok((t.clone(), Type::pred(Type::pred(ty.clone()))))
        }
        AstKind::Nex(None) => Err(ill(span, "cannot infer the element type of `nex`; write `nex[<type>]`")),
        AstKind::Numeral(n) => Ok((abbrev::numeral(*n), Type::pred(Type::Iota))),
        AstKind::Truth => Ok((abbrev::truth(), Type::O)),
        AstKind::Falsity => Ok((abbrev::falsity(), Type::O)),
        AstKind::Succ(a) => {
            let (t, _) = elab(a)?;
            let s = abbrev::succ(t).map_err(|e| abbrev_err(a.span, e))?;
            Ok((s, Type::pred(Type::Iota)))
        }
        AstKind::App(f, a) => {
            if let AstKind::Nex(None) = f.kind {
                let (arg, arg_ty) = elab(a)?;
                let elem = match arg_ty.as_fun() {
                    Some(arrow) if *arrow.cod() == Type::O => arrow.dom().clone(),
                    _ => return Err(ill(a.span, format!("`nex` needs a predicate of type `<t> o`, found `{arg_ty}`"))),
                };
                return Ok((Term::app(Term::nex(elem), arg), Type::O));
            }
            let (ft, fty) = elab(f)?;
            let (at, aty) = elab(a)?;
            let ty = app_type(&fty, &at, &aty).map_err(|r| ill(span, r))?;
            Ok((Term::app(ft, at), ty))
        }
        AstKind::Neg(a) => Ok((abbrev::neg(expect_formula(a)?), Type::O)),
        AstKind::Binary(op, l, r) => elab_binary(*op, l, r, span),
        AstKind::Binder(kind, x, body) => elab_binder(*kind, x, body, span),
    }
}

fn elab_binary(op: BinOp, l: &Ast, r: &Ast, span: Span) -> Result<(Term, Type), SurfaceError> {
    let connective = |f: fn(Term, Term) -> Term| -> Result<(Term, Type), SurfaceError> {
        Ok((f(expect_formula(l)?, expect_formula(r)?), Type::O))
    };
    let relation = |f: fn(Term, Term) -> Result<Term, AbbrevError>| -> Result<(Term, Type), SurfaceError> {
        let (lt, _) = elab(l)?;
        let (rt, _) = elab(r)?;
        Ok((f(lt, rt).map_err(|e| abbrev_err(span, e))?, Type::O))
    };
    match op {
        BinOp::Or => connective(abbrev::or),
        BinOp::And => connective(abbrev::and),
        BinOp::Imp => connective(abbrev::imp),
        BinOp::Iff => connective(abbrev::iff),
        BinOp::Eq => relation(abbrev::eq),
        BinOp::Neq => relation(abbrev::neq),
        BinOp::IdEq => relation(abbrev::ideq),
        BinOp::IdNeq => relation(abbrev::idneq),
        BinOp::Equiv => relation(abbrev::equiv),
        BinOp::NEquiv => relation(abbrev::nequiv),
    }
}

fn elab_binder(kind: BinderKind, x: &Var, body: &Ast, span: Span) -> Result<(Term, Type), SurfaceError> {
    match kind {
        BinderKind::Lambda => {
            let (b, bty) = elab(body)?;
            let ty = lam_type(x, &bty).map_err(|r| ill(span, r))?;
            Ok((Term::lam(x.clone(), b), ty))
        }
        BinderKind::Exists => Ok((abbrev::exists(x.clone(), expect_formula(body)?), Type::O)),
        BinderKind::Forall => Ok((abbrev::forall(x.clone(), expect_formula(body)?), Type::O)),
    }
}
