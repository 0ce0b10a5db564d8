//! Simple types: individuals `i`, propositions `o`, and predicate types.
//!
//! Every function type ends in `o`: the codomain of an arrow is always a
//! predicate type, so a type such as `o i` cannot be built.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    /// Individuals, including names of nominalized predicates.
    Iota,
    /// Propositions.
    O,
    Fun(Arc<Arrow>),
}

/// The payload of a function type. Only constructible through [`Type::fun`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    dom: Type,
    cod: Type,
}

impl Arrow {
    pub fn dom(&self) -> &Type {
        &self.dom
    }

    pub fn cod(&self) -> &Type {
        &self.cod
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("codomain of a function type must be a predicate type, found `i`")]
pub struct CodomainIsIota;

impl Type {
    /// Builds `dom cod`, rejecting a codomain of `i`.
    pub fn fun(dom: Type, cod: Type) -> Result<Type, CodomainIsIota> {
        if cod.is_predicate() {
            Ok(Type::Fun(Arc::new(Arrow { dom, cod })))
        } else {
            Err(CodomainIsIota)
        }
    }

    /// `dom o`, always well formed.
    pub fn pred(dom: Type) -> Type {
        Type::Fun(Arc::new(Arrow { dom, cod: Type::O }))
    }

    /// `t1 ... tn o`, associating to the right.
    pub fn relation<I>(doms: I) -> Type
    where
        I: IntoIterator<Item = Type>,
        I::IntoIter: DoubleEndedIterator,
    {
        doms.into_iter().rev().fold(Type::O, |cod, dom| {
            Type::Fun(Arc::new(Arrow { dom, cod }))
        })
    }

    /// True for `o` and every function type.
    pub fn is_predicate(&self) -> bool {
        !matches!(self, Type::Iota)
    }

    pub fn as_fun(&self) -> Option<&Arrow> {
        match self {
            Type::Fun(a) => Some(a),
            _ => None,
        }
    }

    /// Argument types of a predicate type, outermost first. Empty for `o` and `i`.
    pub fn domains(&self) -> Vec<Type> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Type::Fun(a) = cur {
            out.push(a.dom.clone());
            cur = &a.cod;
        }
        out
    }

    /// Number of arguments a predicate of this type takes.
    pub fn arity(&self) -> usize {
        let mut n = 0;
        let mut cur = self;
        while let Type::Fun(a) = cur {
            n += 1;
            cur = &a.cod;
        }
        n
    }

    /// Checks the grammar invariant over the whole tree.
    pub fn is_well_formed(&self) -> bool {
        match self {
            Type::Iota | Type::O => true,
            Type::Fun(a) => a.cod.is_predicate() && a.dom.is_well_formed() && a.cod.is_well_formed(),
        }
    }

    /// Number of nodes in the type tree.
    pub fn size(&self) -> usize {
        match self {
            Type::Iota | Type::O => 1,
            Type::Fun(a) => 1 + a.dom.size() + a.cod.size(),
        }
    }
}

/// Prints in the juxtaposition syntax accepted by the parser, e.g. `(i o) o`.
impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Iota => f.write_str("i"),
            Type::O => f.write_str("o"),
            Type::Fun(a) => {
                if a.dom.as_fun().is_some() {
                    write!(f, "({}) {}", a.dom, a.cod)
                } else {
                    write!(f, "{} {}", a.dom, a.cod)
                }
            }
        }
    }
}
