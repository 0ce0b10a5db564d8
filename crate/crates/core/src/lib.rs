//! Nominalistic Logic: a small trusted kernel.
//!
//! - [`ty`], [`term`], [`typing`]: types, lambda terms with alpha/beta/eta, and typing with nominalization.
//! - [`surface`]: ASCII syntax, the defined notations, elaboration and printing.
//! - [`calculus`]: sequents, rule checking and proof reports.
//! - [`proof_file`]: the JSON proof format.
//! - [`search`]: bounded backward proof search.
//! - [`gen`]: seeded generators and a typing oracle for property tests.

pub mod calculus;
pub mod gen;
pub mod proof_file;
pub mod search;
pub mod surface;
pub mod term;
pub mod ty;
pub mod typing;

pub use calculus::{check_proof, check_rule_app, CheckMode, ProofNode, Report, RuleApp, RuleError, RuleErrorKind, Sequent};
pub use search::{prove, SearchBudget};
pub use term::{alpha_eq, normalize, Const, Strategy, Term, Var};
pub use ty::Type;
