use std::collections::HashSet;

use nl_core::gen::{Signature, TermGen};
use nl_core::term::{
    alpha_eq, alpha_key, free_vars, normalize, reduces_one, reduct_steps, substitute, var_names, Strategy, Term,
    TermKind, Var,
};
use nl_core::typing::structural_type;
use proptest::prelude::*;

/// Renames every binder to a globally unused name.
fn alpha_variant(t: &Term, tag: &str) -> Term {
    let mut used = HashSet::new();
    var_names(t, &mut used);
    let mut counter = 0;
    fn go(t: &Term, tag: &str, used: &HashSet<String>, counter: &mut usize) -> Term {
        match t.kind() {
            TermKind::Var(_) | TermKind::Const(_) => t.clone(),
            TermKind::App(f, a) => Term::app(go(f, tag, used, counter), go(a, tag, used, counter)),
            TermKind::Lam(x, b) => {
                let name = loop {
                    *counter += 1;
                    let n = format!("{tag}{counter}");
                    if !used.contains(&n) {
                        break n;
                    }
                };
                let y = Var::new(name, x.ty().clone());
                let body = substitute(b, &Term::var(y.clone()), x);
                Term::lam(y, go(&body, tag, used, counter))
            }
        }
    }
    go(t, tag, &used, &mut counter)
}

fn gen(seed: u64) -> TermGen {
    TermGen::new(seed, Signature::small())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn alpha_is_an_equivalence(seed in any::<u64>()) {
        let mut g = gen(seed);
        let t = g.any_typed(20);
        let t1 = alpha_variant(&t, "u");
        let t2 = alpha_variant(&t1, "w");
        prop_assert!(alpha_eq(&t, &t));
        prop_assert!(alpha_eq(&t, &t1) && alpha_eq(&t1, &t));
        prop_assert!(alpha_eq(&t1, &t2) && alpha_eq(&t, &t2));
        let u = g.any_typed(20);
        prop_assert_eq!(alpha_eq(&t, &u), alpha_eq(&u, &t));
        prop_assert_eq!(alpha_eq(&t, &u), alpha_key(&t) == alpha_key(&u));
        prop_assert_eq!(alpha_key(&t), alpha_key(&t2));
    }

    #[test]
    fn substitution_respects_alpha(seed in any::<u64>()) {
        let mut g = gen(seed);
        let s = g.any_typed(20);
        let s1 = alpha_variant(&s, "u");
        let vars = g.signature().vars.clone();
        let x = &vars[(seed % vars.len() as u64) as usize];
        let t = g.typed(x.ty(), 10);
        prop_assert!(alpha_eq(&substitute(&s, &t, x), &substitute(&s1, &t, x)));
    }

    #[test]
    fn free_variables_of_a_substitution(seed in any::<u64>()) {
        let mut g = gen(seed);
        let p = g.any_typed(20);
        let vars = g.signature().vars.clone();
        let x = &vars[(seed % vars.len() as u64) as usize];
        let t = g.typed(x.ty(), 10);
        let result = free_vars(&substitute(&p, &t, x));
        let mut bound = free_vars(&p);
        let had_x = bound.remove(x);
        bound.extend(free_vars(&t));
        prop_assert!(result.is_subset(&bound));
        if had_x {
            prop_assert_eq!(result, bound);
        }
    }

    #[test]
    fn identity_substitution(seed in any::<u64>()) {
        let mut g = gen(seed);
        let p = g.any_typed(20);
        for x in g.signature().vars.clone() {
            prop_assert!(alpha_eq(&substitute(&p, &Term::var(x.clone()), &x), &p));
        }
    }

    #[test]
    fn every_reduct_is_a_one_step_reduct(seed in any::<u64>()) {
        let t = gen(seed).any_typed(30);
        for u in reduct_steps(&t) {
            prop_assert!(reduces_one(&t, &u));
        }
    }

    #[test]
    fn subject_reduction_confluence_termination(seed in any::<u64>()) {
        let t = gen(seed).any_typed(30);
        let ty = structural_type(&t).unwrap();
        for u in reduct_steps(&t) {
            prop_assert_eq!(structural_type(&u).ok(), Some(ty.clone()), "{} ~> {}", t, u);
        }
        let lo = normalize(&t, Strategy::LeftmostOutermost, 10_000).unwrap();
        let ri = normalize(&t, Strategy::RightmostInnermost, 10_000).unwrap();
        prop_assert!(alpha_eq(&lo, &ri), "{} vs {}", lo, ri);
        prop_assert!(reduct_steps(&lo).is_empty());
    }
}

#[test]
fn two_step_pair_is_not_a_one_step_reduct() {
    let x = Var::new("x", nl_core::Type::O);
    let y = Var::new("y", nl_core::Type::O);
    let q = Term::var(Var::new("q", nl_core::Type::O));
    let inner = Term::app(Term::lam(y.clone(), Term::var(y)), q.clone());
    let s = Term::app(Term::lam(x.clone(), Term::var(x)), inner);
    assert!(!reduces_one(&s, &q));
    assert!(!reduces_one(&q, &q));
}
