//! Sequents, rule instances, and proof checking.
//!
//! Formula sequences are ordered; exchange is the only way to permute them.
//! All comparisons between formulas are up to alpha-equivalence. Axioms
//! (`S`, `PRightAx`, `QLeftAx`, `NAx`) match only the displayed formulas,
//! with no surrounding context; thinning adds and drops at the outer end
//! only (front of the antecedent, back of the succedent).

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::surface::abbrev::{self, match_eq, match_iff, match_nex_app, match_nor};
use crate::term::{alpha_eq, occurs_free, reduces_one, Const, Term, Var};
use crate::ty::Type;
use crate::typing::{has_type, is_formula, structural_type};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Sequent {
    pub left: Vec<Term>,
    pub right: Vec<Term>,
}

impl Sequent {
    pub fn new(left: Vec<Term>, right: Vec<Term>) -> Sequent {
        Sequent { left, right }
    }

    pub fn alpha_eq(&self, other: &Sequent) -> bool {
        seq_alpha_eq(&self.left, &other.left) && seq_alpha_eq(&self.right, &other.right)
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Term> {
        self.left.iter().chain(self.right.iter())
    }

    /// Prints as `f1, f2 |- g1` using the resugaring printer.
    pub fn display(&self, resugar: bool) -> String {
        let side = |fs: &[Term]| {
            fs.iter()
                .map(|f| crate::surface::print_term(f, resugar))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let l = side(&self.left);
        let r = side(&self.right);
        match (l.is_empty(), r.is_empty()) {
            (true, true) => "|-".to_owned(),
            (true, false) => format!("|- {r}"),
            (false, true) => format!("{l} |-"),
            (false, false) => format!("{l} |- {r}"),
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(true))
    }
}

fn seq_alpha_eq(a: &[Term], b: &[Term]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| alpha_eq(x, y))
}

/// Every formula on both sides has type `o`.
pub fn wf_sequent(s: &Sequent) -> bool {
    s.formulas().all(is_formula)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RuleApp {
    S,
    ThinAddL,
    ThinAddR,
    ThinDropL,
    ThinDropR,
    ExchL(usize),
    ExchR(usize),
    ContrL,
    ContrR,
    PLeft,
    PRightAx,
    QLeftAx,
    QRight(Var),
    NAx,
}

impl RuleApp {
    pub fn name(&self) -> &'static str {
        match self {
            RuleApp::S => "S",
            RuleApp::ThinAddL => "ThinAddL",
            RuleApp::ThinAddR => "ThinAddR",
            RuleApp::ThinDropL => "ThinDropL",
            RuleApp::ThinDropR => "ThinDropR",
            RuleApp::ExchL(_) => "ExchL",
            RuleApp::ExchR(_) => "ExchR",
            RuleApp::ContrL => "ContrL",
            RuleApp::ContrR => "ContrR",
            RuleApp::PLeft => "PLeft",
            RuleApp::PRightAx => "PRightAx",
            RuleApp::QLeftAx => "QLeftAx",
            RuleApp::QRight(_) => "QRight",
            RuleApp::NAx => "NAx",
        }
    }

    /// Number of premises the rule takes.
    pub fn arity(&self) -> usize {
        match self {
            RuleApp::S | RuleApp::PRightAx | RuleApp::QLeftAx | RuleApp::NAx => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for RuleApp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleApp::ExchL(p) | RuleApp::ExchR(p) => write!(f, "{}({p})", self.name()),
            RuleApp::QRight(x) => write!(f, "QRight({x})"),
            other => f.write_str(other.name()),
        }
    }
}

/// How the thinning rule may be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum CheckMode {
    /// Thinning adds formulas only.
    #[default]
    Strict,
    /// Thinning also removes formulas (the rule read in both directions).
    PaperBidirectional,
}

impl CheckMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckMode::Strict => "strict",
            CheckMode::PaperBidirectional => "paper",
        }
    }

    pub fn parse(s: &str) -> Option<CheckMode> {
        match s {
            "strict" => Some(CheckMode::Strict),
            "paper" => Some(CheckMode::PaperBidirectional),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RuleErrorKind {
    ShapeMismatch,
    EigenvariableViolation,
    ModeForbidden,
    NotAnAxiomInstance,
    ArityMismatch,
    IllFormedSequent,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind:?}: {detail}")]
pub struct RuleError {
    pub kind: RuleErrorKind,
    pub detail: String,
}

fn err(kind: RuleErrorKind, detail: impl Into<String>) -> Result<(), RuleError> {
    Err(RuleError { kind, detail: detail.into() })
}

fn shape(detail: impl Into<String>) -> Result<(), RuleError> {
    err(RuleErrorKind::ShapeMismatch, detail)
}

fn ensure(cond: bool, detail: &str) -> Result<(), RuleError> {
    if cond {
        Ok(())
    } else {
        shape(detail)
    }
}

fn not_axiom(detail: impl Into<String>) -> Result<(), RuleError> {
    err(RuleErrorKind::NotAnAxiomInstance, detail)
}

/// Checks one rule instance against its conclusion and premise sequents.
pub fn check_rule_app(
    conclusion: &Sequent,
    rule: &RuleApp,
    premises: &[Sequent],
    mode: CheckMode,
) -> Result<(), RuleError> {
    if premises.len() != rule.arity() {
        return err(
            RuleErrorKind::ArityMismatch,
            format!("{} takes {} premise(s), found {}", rule.name(), rule.arity(), premises.len()),
        );
    }
    let c = conclusion;
    match rule {
        RuleApp::S => check_s(c),
        RuleApp::PRightAx => check_p_right(c),
        RuleApp::QLeftAx => check_q_left(c),
        RuleApp::NAx => check_n(c),
        RuleApp::ThinAddL => thin_left(&premises[0], c),
        RuleApp::ThinAddR => thin_right(&premises[0], c),
        RuleApp::ThinDropL | RuleApp::ThinDropR => {
            if mode != CheckMode::PaperBidirectional {
                return err(RuleErrorKind::ModeForbidden, "removing a formula by thinning needs paper mode");
            }
            if *rule == RuleApp::ThinDropL {
                thin_left(c, &premises[0])
            } else {
                thin_right(c, &premises[0])
            }
        }
        RuleApp::ExchL(pos) => {
            let p = &premises[0];
            ensure(seq_alpha_eq(&p.right, &c.right), "succedents differ")?;
            exchanged(&p.left, &c.left, *pos)
        }
        RuleApp::ExchR(pos) => {
            let p = &premises[0];
            ensure(seq_alpha_eq(&p.left, &c.left), "antecedents differ")?;
            exchanged(&p.right, &c.right, *pos)
        }
        RuleApp::ContrL => {
            let p = &premises[0];
            ensure(seq_alpha_eq(&p.right, &c.right), "succedents differ")?;
            ensure(!c.left.is_empty() && p.left.len() == c.left.len() + 1, "antecedent lengths do not fit contraction")?;
            ensure(alpha_eq(&p.left[0], &p.left[1]), "premise does not start with a duplicated formula")?;
            ensure(seq_alpha_eq(&p.left[1..], &c.left), "conclusion is not the premise with one copy removed")
        }
        RuleApp::ContrR => {
            let p = &premises[0];
            ensure(seq_alpha_eq(&p.left, &c.left), "antecedents differ")?;
            let n = p.right.len();
            ensure(!c.right.is_empty() && n == c.right.len() + 1, "succedent lengths do not fit contraction")?;
            ensure(alpha_eq(&p.right[n - 1], &p.right[n - 2]), "premise does not end with a duplicated formula")?;
            ensure(seq_alpha_eq(&p.right[..n - 1], &c.right), "conclusion is not the premise with one copy removed")
        }
        RuleApp::PLeft => {
            let p = &premises[0];
            let (head, rest) = c.left.split_first().ok_or_else(|| RuleError {
                kind: RuleErrorKind::ShapeMismatch,
                detail: "conclusion antecedent is empty".into(),
            })?;
            let (a, b) = match_nor(head).ok_or_else(|| RuleError {
                kind: RuleErrorKind::ShapeMismatch,
                detail: "first antecedent formula is not `nor p q`".into(),
            })?;
            ensure(seq_alpha_eq(&p.left, rest), "antecedents differ")?;
            let n = p.right.len();
            ensure(n >= 2 && n == c.right.len() + 2, "premise succedent must be the conclusion's plus two formulas")?;
            ensure(seq_alpha_eq(&p.right[..n - 2], &c.right), "succedents differ")?;
            ensure(
                alpha_eq(&p.right[n - 2], a) && alpha_eq(&p.right[n - 1], b),
                "premise succedent does not end with the two nor operands",
            )
        }
        RuleApp::QRight(x) => check_q_right(&premises[0], c, x),
    }
}

fn check_s(c: &Sequent) -> Result<(), RuleError> {
    if c.left.len() != 1 || c.right.len() != 1 {
        return not_axiom("S needs exactly one formula on each side");
    }
    let (p, q) = (&c.left[0], &c.right[0]);
    if alpha_eq(p, q) || reduces_one(p, q) {
        Ok(())
    } else {
        not_axiom("right formula is neither alpha-equivalent to nor a one-step reduct of the left")
    }
}

fn check_p_right(c: &Sequent) -> Result<(), RuleError> {
    if !c.left.is_empty() || c.right.len() != 3 {
        return not_axiom("PRightAx needs an empty antecedent and exactly three succedent formulas");
    }
    match match_nor(&c.right[2]) {
        Some((a, b)) if alpha_eq(a, &c.right[0]) && alpha_eq(b, &c.right[1]) => Ok(()),
        _ => not_axiom("third formula is not `nor` of the first two"),
    }
}

fn check_q_left(c: &Sequent) -> Result<(), RuleError> {
    if c.left.len() != 2 || !c.right.is_empty() {
        return not_axiom("QLeftAx needs exactly two antecedent formulas and an empty succedent");
    }
    let Some((elem, p)) = match_nex_app(&c.left[0]) else {
        return not_axiom("first formula is not `nex p`");
    };
    match structural_type(p) {
        Ok(ty) if ty == Type::pred(elem.clone()) => {}
        _ => return not_axiom("predicate of `nex` does not have the matching type"),
    }
    let Some((p2, t)) = c.left[1].as_app() else {
        return not_axiom("second formula is not an application `p t`");
    };
    if !alpha_eq(p, p2) {
        return not_axiom("second formula does not apply the same predicate");
    }
    if !has_type(t, elem) {
        return not_axiom(format!("instance term does not have type `{elem}`"));
    }
    Ok(())
}

fn check_n(c: &Sequent) -> Result<(), RuleError> {
    if !c.left.is_empty() || c.right.len() != 1 {
        return not_axiom("NAx needs an empty antecedent and exactly one succedent formula");
    }
    match match_n_axiom(&c.right[0]) {
        Some(_) => Ok(()),
        None => not_axiom("formula is not an instance of `p = q <-> p .= q`"),
    }
}

/// Recognises `p = q <-> p .= q` (in this orientation) as elaborated from
/// the surface syntax, returning the operands and the instance type of `=`.
pub fn match_n_axiom(f: &Term) -> Option<(Term, Term, Type)> {
    let (lhs, _) = match_iff(f)?;
    let (p, q, ty) = match_eq(lhs)?;
    let expected = abbrev::iff(abbrev::eq(p.clone(), q.clone()).ok()?, abbrev::ideq(p.clone(), q.clone()).ok()?);
    (alpha_eq(&expected, f) && has_type(&p, &Type::Iota) && has_type(&q, &Type::Iota)).then_some((p, q, ty))
}

/// `conclusion` is `premise` with one formula added at the front of the antecedent.
fn thin_left(premise: &Sequent, conclusion: &Sequent) -> Result<(), RuleError> {
    ensure(seq_alpha_eq(&premise.right, &conclusion.right), "succedents differ")?;
    ensure(
        conclusion.left.len() == premise.left.len() + 1 && seq_alpha_eq(&conclusion.left[1..], &premise.left),
        "antecedents differ by more than one leading formula",
    )
}

/// `conclusion` is `premise` with one formula added at the end of the succedent.
fn thin_right(premise: &Sequent, conclusion: &Sequent) -> Result<(), RuleError> {
    ensure(seq_alpha_eq(&premise.left, &conclusion.left), "antecedents differ")?;
    let n = premise.right.len();
    ensure(
        conclusion.right.len() == n + 1 && seq_alpha_eq(&conclusion.right[..n], &premise.right),
        "succedents differ by more than one trailing formula",
    )
}

fn exchanged(premise: &[Term], conclusion: &[Term], pos: usize) -> Result<(), RuleError> {
    if pos + 1 >= premise.len() || premise.len() != conclusion.len() {
        return shape(format!("exchange position {pos} out of range for {} formulas", premise.len()));
    }
    for (i, c) in conclusion.iter().enumerate() {
        let j = if i == pos {
            pos + 1
        } else if i == pos + 1 {
            pos
        } else {
            i
        };
        if !alpha_eq(c, &premise[j]) {
            return shape(format!("formula {i} does not match the exchanged premise"));
        }
    }
    Ok(())
}

fn check_q_right(p: &Sequent, c: &Sequent, x: &Var) -> Result<(), RuleError> {
    let (last, delta) = c.right.split_last().ok_or_else(|| RuleError {
        kind: RuleErrorKind::ShapeMismatch,
        detail: "conclusion succedent is empty".into(),
    })?;
    let Some((elem, pred)) = match_nex_app(last) else {
        return shape("last succedent formula is not `nex p`");
    };
    if x.ty() != elem {
        return shape(format!("eigenvariable has type `{}`, expected `{elem}`", x.ty()));
    }
    let (head, gamma) = p.left.split_first().ok_or_else(|| RuleError {
        kind: RuleErrorKind::ShapeMismatch,
        detail: "premise antecedent is empty".into(),
    })?;
    ensure(
        alpha_eq(head, &Term::app(pred.clone(), Term::var(x.clone()))),
        "first premise formula is not `p x`",
    )?;
    ensure(seq_alpha_eq(gamma, &c.left), "antecedents differ")?;
    ensure(seq_alpha_eq(&p.right, delta), "succedents differ")?;
    if occurs_free(x, pred) {
        return err(RuleErrorKind::EigenvariableViolation, format!("`{}` is free in the predicate", x.name()));
    }
    if c.left.iter().chain(delta.iter()).any(|f| occurs_free(x, f)) {
        return err(RuleErrorKind::EigenvariableViolation, format!("`{}` is free in the context", x.name()));
    }
    Ok(())
}

/// A proof tree node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofNode {
    pub sequent: Sequent,
    pub rule: RuleApp,
    pub premises: Vec<ProofNode>,
}

impl ProofNode {
    pub fn leaf(sequent: Sequent, rule: RuleApp) -> ProofNode {
        ProofNode { sequent, rule, premises: Vec::new() }
    }

    pub fn unary(sequent: Sequent, rule: RuleApp, premise: ProofNode) -> ProofNode {
        ProofNode { sequent, rule, premises: vec![premise] }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofNode::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(ProofNode::depth).max().unwrap_or(0)
    }

    /// Nodes in preorder with their child-index paths.
    pub fn preorder(&self) -> Vec<(Vec<usize>, &ProofNode)> {
        fn go<'a>(n: &'a ProofNode, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, &'a ProofNode)>) {
            out.push((path.clone(), n));
            for (i, p) in n.premises.iter().enumerate() {
                path.push(i);
                go(p, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Every eigenvariable named by a `QRight` node.
    pub fn eigenvariables(&self) -> Vec<Var> {
        let mut out = Vec::new();
        for (_, n) in self.preorder() {
            if let RuleApp::QRight(x) = &n.rule {
                if !out.contains(x) {
                    out.push(x.clone());
                }
            }
        }
        out
    }

    /// Renders the tree, one node per line, premises indented.
    pub fn render(&self, resugar: bool) -> String {
        let mut out = String::new();
        for (path, n) in self.preorder() {
            out.push_str(&"  ".repeat(path.len()));
            out.push_str(&format!("{}  [{}]\n", n.sequent.display(resugar), n.rule));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeReport {
    pub path: Vec<usize>,
    pub rule: String,
    pub result: Result<(), RuleError>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub mode: CheckMode,
    pub nodes: Vec<NodeReport>,
}

impl Report {
    pub fn valid(&self) -> bool {
        self.nodes.iter().all(|n| n.result.is_ok())
    }

    pub fn failures(&self) -> impl Iterator<Item = &NodeReport> {
        self.nodes.iter().filter(|n| n.result.is_err())
    }
}

/// Checks a single node given its premises' sequents.
pub fn check_node(node: &ProofNode, mode: CheckMode) -> Result<(), RuleError> {
    if !wf_sequent(&node.sequent) {
        return err(RuleErrorKind::IllFormedSequent, "some formula does not have type `o`");
    }
    let premises: Vec<Sequent> = node.premises.iter().map(|p| p.sequent.clone()).collect();
    check_rule_app(&node.sequent, &node.rule, &premises, mode)
}

/// Checks every node; the verdict of a node depends only on its own
/// sequent, rule and the sequents of its premises.
pub fn check_proof(root: &ProofNode, mode: CheckMode) -> Report {
    let nodes = root
        .preorder()
        .into_iter()
        .map(|(path, n)| NodeReport { path, rule: n.rule.to_string(), result: check_node(n, mode) })
        .collect();
    Report { mode, nodes }
}

/// The constant head of `t`, if any.
pub fn head_const(t: &Term) -> Option<&Const> {
    t.spine().0.as_const()
}
