//! Seeded term generators and an independent typing oracle, used by the
//! property suites and the Python smoke test.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::surface::{abbrev, Prelude};
use crate::term::{free_vars, Const, Term, TermKind, Var};
use crate::ty::Type;

/// A fixed signature: free variables and declared constants.
#[derive(Clone, Debug)]
pub struct Signature {
    pub vars: Vec<Var>,
    pub consts: Vec<(String, Type)>,
}

fn io() -> Type {
    Type::pred(Type::Iota)
}

impl Signature {
    /// `p q r : o`, `a b : i`, `f : i o`, `rel : i i o`, `g : (i o) o`, `h : o o`, constant `k : i`.
    pub fn small() -> Signature {
        let v = |n: &str, t: Type| Var::new(n, t);
        Signature {
            vars: vec![
                v("p", Type::O),
                v("q", Type::O),
                v("r", Type::O),
                v("a", Type::Iota),
                v("b", Type::Iota),
                v("f", io()),
                v("rel", Type::relation([Type::Iota, Type::Iota])),
                v("g", Type::pred(io())),
                v("h", Type::pred(Type::O)),
            ],
            consts: vec![("k".to_owned(), Type::Iota)],
        }
    }

    pub fn prelude(&self) -> Prelude {
        let mut p = Prelude::new();
        for v in &self.vars {
            p.declare_var(v.name(), v.ty().clone()).expect("signature names are valid");
        }
        for (n, t) in &self.consts {
            p.declare_const(n, t.clone()).expect("signature names are valid");
        }
        p
    }

    fn atoms(&self) -> Vec<Term> {
        let mut out: Vec<Term> = self.vars.iter().cloned().map(Term::var).collect();
        out.extend(self.consts.iter().map(|(n, t)| {
            Term::constant(Const::Declared { name: n.as_str().into(), ty: t.clone() })
        }));
        out.push(Term::nor());
        out.push(Term::nex(Type::Iota));
        out.push(Term::nex(Type::O));
        out.push(Term::nex(io()));
        out
    }
}

/// Thirty surface fixtures over [`Signature::small`] covering every precedence level and associativity.
pub const PRECEDENCE_FIXTURES: [&str; 30] = [
    "~p \\/ q",
    "p -> q -> r",
    "(p -> q) -> p",
    "p \\/ q \\/ p",
    "p \\/ (q \\/ p)",
    "p /\\ q /\\ p",
    "p /\\ (q /\\ p)",
    "p /\\ q \\/ p",
    "p /\\ (q \\/ p)",
    "p \\/ q -> p /\\ q",
    "p <-> q <-> p",
    "(p <-> q) <-> p",
    "p -> q <-> q -> p",
    "~p /\\ ~q",
    "~(p /\\ q)",
    "~~p",
    "a = b /\\ p",
    "~p = q",
    "~(a .= b)",
    "f a \\/ f b",
    "rel a b -> f a",
    "all x:i. f x -> p",
    "(all x:i. f x) -> p",
    "ex x:i, y:i. rel x y /\\ ~rel y x",
    "all x:o. x \\/ ~x",
    "\\x:i. f x /\\ p",
    "g (\\y:i. f y) <-> g f",
    "a' .!= 0 /\\ 1 = 1'",
    "f === f \\/ p !== q",
    "true /\\ ~false -> nex[i] f",
];

/// Small types used for binders and arguments.
pub fn type_pool() -> Vec<Type> {
    vec![Type::Iota, Type::O, io(), Type::pred(Type::O), Type::relation([Type::Iota, Type::Iota])]
}

const BINDER_NAMES: [&str; 3] = ["x", "y", "z"];

pub struct TermGen {
    rng: ChaCha8Rng,
    sig: Signature,
    atoms: Vec<Term>,
    types: Vec<Type>,
}

impl TermGen {
    pub fn new(seed: u64, sig: Signature) -> TermGen {
        let atoms = sig.atoms();
        TermGen { rng: ChaCha8Rng::seed_from_u64(seed), sig, atoms, types: type_pool() }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    fn pick_type(&mut self) -> Type {
        self.types.choose(&mut self.rng).unwrap().clone()
    }

    fn binder(&mut self, ty: Type) -> Var {
        Var::new(*BINDER_NAMES.choose(&mut self.rng).unwrap(), ty)
    }

    /// A well-typed term whose structural type is `ty`, of size at most
    /// `max_size` when `max_size` allows it.
    pub fn typed(&mut self, ty: &Type, max_size: usize) -> Term {
        loop {
            let t = self.typed_in(ty, max_size, &mut Vec::new());
            if t.size() <= max_size.max(minimal(ty).size()) {
                return t;
            }
        }
    }

    /// A well-typed term of a random pool type.
    pub fn any_typed(&mut self, max_size: usize) -> Term {
        let ty = self.pick_type();
        self.typed(&ty, max_size)
    }

    fn leaves(&self, ty: &Type, scope: &[Var]) -> Vec<Term> {
        let mut out: Vec<Term> = scope.iter().filter(|v| v.ty() == ty).cloned().map(Term::var).collect();
        out.extend(self.atoms.iter().filter(|a| atom_type(a) == *ty).cloned());
        out
    }

    fn typed_in(&mut self, ty: &Type, budget: usize, scope: &mut Vec<Var>) -> Term {
        let leaves = self.leaves(ty, scope);
        let stop = if budget > 8 { 0.05 } else { 0.3 };
        if budget <= 1 || (!leaves.is_empty() && self.rng.gen_bool(stop)) {
            return leaves.choose(&mut self.rng).cloned().unwrap_or_else(|| minimal(ty));
        }
        match self.rng.gen_range(0..10) {
            // nominalize a closed predicate into an individual slot
            0..=1 if *ty == Type::Iota && budget >= 3 => {
                let pty = [io(), Type::O, Type::relation([Type::Iota, Type::Iota])]
                    .choose(&mut self.rng)
                    .unwrap()
                    .clone();
                let mut inner: Vec<Var> = scope.iter().filter(|v| *v.ty() == Type::Iota).cloned().collect();
                let t = self.typed_in(&pty, budget - 1, &mut inner);
                if free_vars(&t).iter().all(|v| *v.ty() == Type::Iota) {
                    t
                } else {
                    leaves.choose(&mut self.rng).cloned().unwrap_or_else(|| minimal(ty))
                }
            }
            0..=3 if ty.as_fun().is_some() => {
                let arrow = ty.as_fun().unwrap();
                let (dom, cod) = (arrow.dom().clone(), arrow.cod().clone());
                let x = self.binder(dom);
                scope.push(x.clone());
                let body = self.typed_in(&cod, budget - 1, scope);
                scope.pop();
                Term::lam(x, body)
            }
            _ if ty.is_predicate() && budget >= 3 => {
                let arg_ty = self.pick_type();
                let fun_ty = Type::fun(arg_ty.clone(), ty.clone()).expect("predicate codomain");
                let split = self.rng.gen_range(1..budget - 1);
                let f = self.typed_in(&fun_ty, split, scope);
                let a = self.typed_in(&arg_ty, budget - 1 - split, scope);
                Term::app(f, a)
            }
            _ => leaves.choose(&mut self.rng).cloned().unwrap_or_else(|| minimal(ty)),
        }
    }

    /// A term built without regard to typing, over the signature plus
    /// binders of pool types. Size at most `max_size`.
    pub fn arbitrary(&mut self, max_size: usize) -> Term {
        self.arbitrary_in(max_size.max(1), &mut Vec::new())
    }

    fn arbitrary_in(&mut self, budget: usize, scope: &mut Vec<Var>) -> Term {
        let choice = if budget < 2 { 0 } else { self.rng.gen_range(0..4) };
        match choice {
            0 => {
                if !scope.is_empty() && self.rng.gen_bool(0.5) {
                    Term::var(scope.choose(&mut self.rng).unwrap().clone())
                } else {
                    self.atoms.choose(&mut self.rng).unwrap().clone()
                }
            }
            1 => {
                let ty = self.pick_type();
                let x = self.binder(ty);
                scope.push(x.clone());
                let b = self.arbitrary_in(budget - 1, scope);
                scope.pop();
                Term::lam(x, b)
            }
            _ if budget >= 3 => {
                let split = self.rng.gen_range(1..budget - 1);
                let f = self.arbitrary_in(split, scope);
                let a = self.arbitrary_in(budget - 1 - split, scope);
                Term::app(f, a)
            }
            _ => self.arbitrary_in(1, scope),
        }
    }

    /// A formula built with the notation builders (connectives, quantifiers,
    /// relations, numerals) so that printing exercises resugaring.
    pub fn formula(&mut self, depth: usize) -> Term {
        let mut scope = Vec::new();
        self.formula_in(depth, &mut scope)
    }

    /// The `i o` variable of the signature.
    fn predicate(&self) -> Term {
        let f = self.sig.vars.iter().find(|v| *v.ty() == io()).expect("signature has an `i o` variable");
        Term::var(f.clone())
    }

    fn individual(&mut self, scope: &[Var]) -> Term {
        let mut opts: Vec<Term> = scope.iter().filter(|v| *v.ty() == Type::Iota).cloned().map(Term::var).collect();
        opts.extend(self.leaves(&Type::Iota, &[]));
        if self.rng.gen_bool(0.3) {
            let n = self.rng.gen_range(0..4);
            let t = abbrev::numeral(n);
            return if self.rng.gen_bool(0.3) { abbrev::succ(t).unwrap() } else { t };
        }
        opts.choose(&mut self.rng).unwrap().clone()
    }

    fn formula_in(&mut self, depth: usize, scope: &mut Vec<Var>) -> Term {
        if depth == 0 {
            return match self.rng.gen_range(0..5) {
                0 => abbrev::truth(),
                1 => abbrev::falsity(),
                2 => {
                    let t = self.individual(scope);
                    Term::app(self.predicate(), t)
                }
                _ => {
                    let mut opts: Vec<Term> =
                        scope.iter().filter(|v| *v.ty() == Type::O).cloned().map(Term::var).collect();
                    opts.extend(self.leaves(&Type::O, &[]));
                    opts.choose(&mut self.rng).unwrap().clone()
                }
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..14) {
            0 => abbrev::neg(self.formula_in(d, scope)),
            1 => abbrev::or(self.formula_in(d, scope), self.formula_in(d, scope)),
            2 => abbrev::and(self.formula_in(d, scope), self.formula_in(d, scope)),
            3 => abbrev::imp(self.formula_in(d, scope), self.formula_in(d, scope)),
            4 => abbrev::iff(self.formula_in(d, scope), self.formula_in(d, scope)),
            5 | 6 => {
                let ty = [Type::Iota, Type::O, io()].choose(&mut self.rng).unwrap().clone();
                let x = self.binder(ty);
                scope.push(x.clone());
                let body = self.formula_in(d, scope);
                scope.pop();
                if self.rng.gen_bool(0.5) {
                    abbrev::forall(x, body)
                } else {
                    abbrev::exists(x, body)
                }
            }
            7 => {
                let (s, t) = (self.individual(scope), self.individual(scope));
                if self.rng.gen_bool(0.5) {
                    abbrev::ideq(s, t).unwrap()
                } else {
                    abbrev::idneq(s, t).unwrap()
                }
            }
            8 => {
                let (s, t) = (self.individual(scope), self.individual(scope));
                if self.rng.gen_bool(0.5) {
                    abbrev::eq(s, t).unwrap()
                } else {
                    abbrev::neq(s, t).unwrap()
                }
            }
            9 => {
                let (s, t) = (self.formula_in(d, scope), self.formula_in(d, scope));
                abbrev::equiv(s, t).unwrap()
            }
            10 => {
                let n = self.predicate();
                abbrev::nequiv(n.clone(), n).unwrap()
            }
            11 => {
                let ty = self.pick_type();
                let x = self.binder(ty.clone());
                let body = {
                    scope.push(x.clone());
                    let b = self.formula_in(d, scope);
                    scope.pop();
                    b
                };
                let lam = Term::lam(x, body);
                let arg = self.typed_in(&ty, 4, scope);
                Term::app(lam, arg)
            }
            12 => Term::app(Term::nex(Type::Iota), self.predicate()),
            _ => self.typed_in(&Type::O, 2 + 2 * d, scope),
        }
    }
}

fn atom_type(t: &Term) -> Type {
    match t.kind() {
        TermKind::Var(v) => v.ty().clone(),
        TermKind::Const(c) => c.ty(),
        _ => unreachable!("atoms are variables or constants"),
    }
}

/// A small inhabitant of `ty` built from `a` and `p`.
fn minimal(ty: &Type) -> Term {
    match ty {
        Type::Iota => Term::var(Var::new("a", Type::Iota)),
        Type::O => Term::var(Var::new("p", Type::O)),
        Type::Fun(arrow) => Term::lam(Var::new("x", arrow.dom().clone()), minimal(arrow.cod())),
    }
}

/// Every type derivable for `t` by the five typing conditions, computed
/// directly from the rules as sets without the algorithmic shortcuts of
/// the typechecker.
pub fn oracle_types(t: &Term) -> BTreeSet<String> {
    fn derive(t: &Term) -> Vec<Type> {
        let mut out: Vec<Type> = match t.kind() {
            TermKind::Var(v) => vec![v.ty().clone()],
            TermKind::Const(c) => vec![c.ty()],
            TermKind::App(p, a) => {
                let pts = derive(p);
                let ats = derive(a);
                let mut res = Vec::new();
                for pt in &pts {
                    if let Type::Fun(arrow) = pt {
                        if ats.contains(arrow.dom()) {
                            res.push(arrow.cod().clone());
                        }
                    }
                }
                res
            }
            TermKind::Lam(x, p) => derive(p)
                .into_iter()
                .filter(|s| s.is_predicate())
                .filter_map(|s| Type::fun(x.ty().clone(), s).ok())
                .collect(),
        };
        let nominalizable =
            out.iter().any(Type::is_predicate) && free_vars(t).iter().all(|v| *v.ty() == Type::Iota);
        if nominalizable && !out.contains(&Type::Iota) {
            out.push(Type::Iota);
        }
        out.dedup();
        out
    }
    derive(t).iter().map(|t| t.to_string()).collect()
}
