//! Bounded backward proof search.
//!
//! Iterative deepening over the rules read bottom-up. At each sequent the
//! axioms are tried first, then `PLeft`, `QRight`, contraction, exchange
//! and, in paper mode only, the dropping reading of thinning. Adding
//! thinning is never applied backward. A sequent already on the current
//! branch (up to alpha) is not revisited.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use crate::calculus::{check_rule_app, wf_sequent, CheckMode, ProofNode, RuleApp, Sequent};
use crate::surface::abbrev::{match_nex_app, match_nor};
use crate::term::{alpha_key, var_names, AlphaKey, Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearchBudget {
    /// Maximum number of sequents on a branch, the goal included.
    pub depth: usize,
    /// Maximum number of sequents visited over the whole search.
    pub node_limit: usize,
}

impl SearchBudget {
    pub fn new(depth: usize, node_limit: usize) -> SearchBudget {
        SearchBudget { depth: depth.max(1), node_limit: node_limit.max(1) }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { depth: 8, node_limit: 200_000 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub explored: usize,
    /// Set when the search stopped because `node_limit` was reached.
    pub exhausted: bool,
}

const AXIOMS: [RuleApp; 4] = [RuleApp::S, RuleApp::PRightAx, RuleApp::QLeftAx, RuleApp::NAx];

type SeqKey = (Vec<usize>, Vec<usize>);

/// Per-search memo of formula facts, keyed by node address. The stored
/// term keeps the address from being reused.
#[derive(Default)]
struct Interner {
    by_addr: HashMap<usize, (Term, usize)>,
    by_key: HashMap<AlphaKey, usize>,
    names: HashMap<usize, Rc<HashSet<String>>>,
}

impl Interner {
    /// A number shared by exactly the alpha-equivalent formulas seen so far.
    fn id(&mut self, t: &Term) -> usize {
        if let Some((_, id)) = self.by_addr.get(&t.node_addr()) {
            return *id;
        }
        let next = self.by_key.len();
        let id = *self.by_key.entry(alpha_key(t)).or_insert(next);
        self.by_addr.insert(t.node_addr(), (t.clone(), id));
        id
    }

    fn seq_key(&mut self, s: &Sequent) -> SeqKey {
        (s.left.iter().map(|f| self.id(f)).collect(), s.right.iter().map(|f| self.id(f)).collect())
    }

    fn names(&mut self, t: &Term) -> Rc<HashSet<String>> {
        let id = self.id(t);
        self.names
            .entry(id)
            .or_insert_with(|| {
                let mut set = HashSet::new();
                var_names(t, &mut set);
                Rc::new(set)
            })
            .clone()
    }
}

pub fn prove(goal: &Sequent, budget: SearchBudget, mode: CheckMode) -> Option<ProofNode> {
    prove_with_stats(goal, budget, mode).0
}

pub fn prove_with_stats(goal: &Sequent, budget: SearchBudget, mode: CheckMode) -> (Option<ProofNode>, SearchStats) {
    if !wf_sequent(goal) {
        return (None, SearchStats::default());
    }
    let mut s = Searcher {
        mode,
        limit: budget.node_limit,
        stats: SearchStats::default(),
        branch: HashSet::new(),
        interner: Interner::default(),
    };
    for depth in 1..=budget.depth.max(1) {
        s.branch.clear();
        if let Some(p) = s.search(goal, depth) {
            return (Some(p), s.stats);
        }
        if s.stats.exhausted {
            break;
        }
    }
    (None, s.stats)
}

struct Searcher {
    mode: CheckMode,
    limit: usize,
    stats: SearchStats,
    branch: HashSet<SeqKey>,
    interner: Interner,
}

impl Searcher {
    fn search(&mut self, goal: &Sequent, depth: usize) -> Option<ProofNode> {
        if self.stats.explored >= self.limit {
            self.stats.exhausted = true;
            return None;
        }
        self.stats.explored += 1;
        for rule in AXIOMS {
            if check_rule_app(goal, &rule, &[], self.mode).is_ok() {
                return Some(ProofNode::leaf(goal.clone(), rule));
            }
        }
        if depth <= 1 {
            return None;
        }
        let key = self.interner.seq_key(goal);
        self.branch.insert(key.clone());
        let mut found = None;
        let steps = steps_with(goal, self.mode, &mut self.interner);
        for (rule, premise) in steps {
            if self.branch.contains(&self.interner.seq_key(&premise)) {
                continue;
            }
            if let Some(sub) = self.search(&premise, depth - 1) {
                debug_assert!(check_rule_app(goal, &rule, std::slice::from_ref(&premise), self.mode).is_ok());
                found = Some(ProofNode::unary(goal.clone(), rule, sub));
                break;
            }
            if self.stats.exhausted {
                break;
            }
        }
        self.branch.remove(&key);
        found
    }
}

/// Every single-premise rule instance with conclusion `goal`, in search order.
pub fn backward_steps(goal: &Sequent, mode: CheckMode) -> Vec<(RuleApp, Sequent)> {
    steps_with(goal, mode, &mut Interner::default())
}

fn steps_with(goal: &Sequent, mode: CheckMode, interner: &mut Interner) -> Vec<(RuleApp, Sequent)> {
    let (l, r) = (&goal.left, &goal.right);
    let mut out = Vec::new();

    if let Some((a, b)) = l.first().and_then(match_nor) {
        let mut right = r.clone();
        right.extend([a.clone(), b.clone()]);
        out.push((RuleApp::PLeft, Sequent::new(l[1..].to_vec(), right)));
    }

    if let Some((elem, pred)) = r.last().and_then(match_nex_app) {
        let taken: Vec<_> = goal.formulas().map(|f| interner.names(f)).collect();
        let x = Var::fresh("x", elem.clone(), |n| taken.iter().any(|s| s.contains(n)));
        let mut left = vec![Term::app(pred.clone(), Term::var(x.clone()))];
        left.extend(l.iter().cloned());
        out.push((RuleApp::QRight(x), Sequent::new(left, r[..r.len() - 1].to_vec())));
    }

    if let Some(first) = l.first() {
        let mut left = vec![first.clone()];
        left.extend(l.iter().cloned());
        out.push((RuleApp::ContrL, Sequent::new(left, r.clone())));
    }
    if let Some(last) = r.last() {
        let mut right = r.clone();
        right.push(last.clone());
        out.push((RuleApp::ContrR, Sequent::new(l.clone(), right)));
    }

    for pos in 0..l.len().saturating_sub(1) {
        let mut left = l.clone();
        left.swap(pos, pos + 1);
        out.push((RuleApp::ExchL(pos), Sequent::new(left, r.clone())));
    }
    for pos in 0..r.len().saturating_sub(1) {
        let mut right = r.clone();
        right.swap(pos, pos + 1);
        out.push((RuleApp::ExchR(pos), Sequent::new(l.clone(), right)));
    }

    if mode == CheckMode::PaperBidirectional {
        let cands = thinning_candidates(goal, interner);
        for c in &cands {
            let mut left = vec![c.clone()];
            left.extend(l.iter().cloned());
            out.push((RuleApp::ThinDropL, Sequent::new(left, r.clone())));
        }
        for c in &cands {
            let mut right = r.clone();
            right.push(c.clone());
            out.push((RuleApp::ThinDropR, Sequent::new(l.clone(), right)));
        }
    }
    out
}

/// Operands of the top-level `nor` formulas of the sequent, deduplicated up to alpha.
fn thinning_candidates(goal: &Sequent, interner: &mut Interner) -> Vec<Term> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for f in goal.formulas() {
        if let Some((a, b)) = match_nor(f) {
            for t in [a, b] {
                if seen.insert(interner.id(t)) {
                    out.push(t.clone());
                }
            }
        }
    }
    out
}
