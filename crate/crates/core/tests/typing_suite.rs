use std::collections::BTreeSet;

use nl_core::gen::{oracle_types, Signature, TermGen};
use nl_core::surface::{elaborate, parse_term, Prelude};
use nl_core::term::{Const, Term, Var};
use nl_core::typing::{has_type, structural_type, types_of};
use nl_core::Type;

fn el(s: &str) -> Term {
    elaborate(&parse_term(s, &Prelude::new()).unwrap()).unwrap()
}

fn shown(tys: &[Type]) -> Vec<String> {
    tys.iter().map(Type::to_string).collect()
}

#[test]
fn numerals_are_individual_predicates_and_individuals() {
    for n in 0..=3 {
        let t = el(&n.to_string());
        assert_eq!(shown(&types_of(&t).unwrap()), ["i o", "i"], "{n}");
    }
}

#[test]
fn identity_on_individuals_is_rejected() {
    let x = Var::new("x", Type::Iota);
    assert!(structural_type(&Term::lam(x.clone(), Term::var(x))).is_err());
    assert!(parse_term("\\x:i. x", &Prelude::new()).and_then(|a| elaborate(&a)).is_err());
}

#[test]
fn constant_types() {
    assert_eq!(Const::Nor.ty().to_string(), "o o o");
    assert_eq!(Const::Nex(Type::Iota).ty().to_string(), "(i o) o");
    assert_eq!(Const::Nex(Type::O).ty().to_string(), "(o o) o");
    assert_eq!(Const::Nex(Type::pred(Type::Iota)).ty().to_string(), "((i o) o) o");
}

#[test]
fn has_type_agrees_with_the_rule_enumerator() {
    let mut g = TermGen::new(2024, Signature::small());
    let probe = [Type::Iota, Type::O, Type::pred(Type::Iota), Type::pred(Type::O)];
    for i in 0..5000 {
        let t = if i % 3 == 0 { g.any_typed(12) } else { g.arbitrary(12) };
        let oracle = oracle_types(&t);
        let ours: BTreeSet<String> =
            types_of(&t).map(|v| v.iter().map(Type::to_string).collect()).unwrap_or_default();
        assert_eq!(ours, oracle, "{t}");
        for ty in &probe {
            assert_eq!(has_type(&t, ty), oracle.contains(&ty.to_string()), "{t} : {ty}");
        }
    }
}
