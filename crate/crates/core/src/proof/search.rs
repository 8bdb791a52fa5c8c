//! Backward proof search.
//!
//! Goals are expanded through the rule schemas in a fixed order. A goal that
//! reappears on its own branch fails there. Proved goals are memoized. A
//! failure that rests on such a loop stays provisional while the goal it
//! looped to is open: it becomes final when that goal fails and is dropped
//! when that goal is proved.
//!
//! Without `T` the number of `&` never rises backwards and atoms are fixed.
//! Premises whose runs of `'` exceed the goal's longest run by more than
//! `ortho_slack` are dropped, so the goal space is finite. Each use of `T`
//! spends one unit of the cut depth.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use super::{check_derivation, Derivation, RuleId};
use crate::lattice::{Elem, SasakiOrthoposet};
use crate::semantics::{
    default_catalog, find_countermodel, Countermodel, CountermodelSearch, ModelStructure, SearchLimits, SearchedSpace,
    SemanticsError,
};
use crate::terms::{Sequent, Term};

pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Distinct goals the search may expand before giving up.
    pub node_budget: u64,
    /// How many orthocomplements a run may grow beyond the longest run in
    /// the goal (or cut terms).
    pub ortho_slack: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { node_budget: DEFAULT_NODE_BUDGET, ortho_slack: 2 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub memo_size: usize,
    pub max_depth: usize,
}

#[derive(Clone, Debug)]
pub enum ProofResult {
    Proved(Derivation),
    /// The whole (finite) search space was closed without a proof.
    Exhausted(SearchStats),
    Refuted(Countermodel),
}

impl ProofResult {
    pub fn is_proved(&self) -> bool {
        matches!(self, ProofResult::Proved(_))
    }

    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            ProofResult::Proved(d) => Some(d),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ProofResult::Proved(_) => "proved",
            ProofResult::Exhausted(_) => "unknown",
            ProofResult::Refuted(_) => "refuted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("node budget exhausted after {nodes} goals; result unknown")]
    BudgetExceeded { nodes: u64 },
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

type Id = u32;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Atom(Id),
    Ortho(Id),
    Sasaki(Id, Id),
}

/// Hash-consed terms: equal subterms share one id.
#[derive(Default)]
struct Arena {
    nodes: Vec<Node>,
    /// Leading run of `'` and longest run anywhere, per node.
    runs: Vec<(usize, usize)>,
    index: HashMap<Node, Id>,
    atoms: Vec<String>,
}

impl Arena {
    fn intern(&mut self, node: Node) -> Id {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let run = match node {
            Node::Atom(_) => (0, 0),
            Node::Ortho(t) => {
                let (lead, max) = self.runs[t as usize];
                (lead + 1, max.max(lead + 1))
            }
            Node::Sasaki(l, r) => (0, self.runs[l as usize].1.max(self.runs[r as usize].1)),
        };
        let id = self.nodes.len() as Id;
        self.nodes.push(node);
        self.runs.push(run);
        self.index.insert(node, id);
        id
    }

    fn term(&mut self, t: &Term) -> Id {
        let node = match t {
            Term::Atom(name) => {
                let i = match self.atoms.iter().position(|a| a == name) {
                    Some(i) => i,
                    None => {
                        self.atoms.push(name.clone());
                        self.atoms.len() - 1
                    }
                };
                Node::Atom(i as Id)
            }
            Term::Ortho(inner) => Node::Ortho(self.term(inner)),
            Term::Sasaki(l, r) => Node::Sasaki(self.term(l), self.term(r)),
        };
        self.intern(node)
    }

    fn to_term(&self, id: Id) -> Term {
        match self.nodes[id as usize] {
            Node::Atom(i) => Term::atom(self.atoms[i as usize].clone()),
            Node::Ortho(t) => Term::ortho(self.to_term(t)),
            Node::Sasaki(l, r) => Term::sasaki(self.to_term(l), self.to_term(r)),
        }
    }

    fn sequent(&self, (l, r): (Id, Id)) -> Sequent {
        Sequent::new(self.to_term(l), self.to_term(r))
    }

    fn max_run(&self, id: Id) -> usize {
        self.runs[id as usize].1
    }

    fn perp(&mut self, id: Id) -> Id {
        self.intern(Node::Ortho(id))
    }

    fn as_sasaki(&self, id: Id) -> Option<(Id, Id)> {
        match self.nodes[id as usize] {
            Node::Sasaki(l, r) => Some((l, r)),
            _ => None,
        }
    }

    fn strip_double_ortho(&self, id: Id) -> Option<Id> {
        match self.nodes[id as usize] {
            Node::Ortho(t) => match self.nodes[t as usize] {
                Node::Ortho(u) => Some(u),
                _ => None,
            },
            _ => None,
        }
    }
}

#[derive(Clone, Copy)]
struct Alt {
    rule: RuleId,
    premises: [(Id, Id); 3],
    len: usize,
}

impl Alt {
    fn new(rule: RuleId, ps: &[(Id, Id)]) -> Alt {
        let mut premises = [(0, 0); 3];
        premises[..ps.len()].copy_from_slice(ps);
        Alt { rule, premises, len: ps.len() }
    }

    fn premises(&self) -> &[(Id, Id)] {
        &self.premises[..self.len]
    }
}

fn expand(arena: &mut Arena, (l, r): (Id, Id), out: &mut Vec<Alt>) {
    let (ls, rs) = (arena.as_sasaki(l), arena.as_sasaki(r));
    if l == r {
        out.push(Alt::new(RuleId::A, &[]));
    }
    if let Some((a, b)) = ls {
        out.push(Alt::new(RuleId::R, &[(b, r)]));
        out.push(Alt::new(RuleId::OL, &[(a, b), (a, r)]));
    }
    if let Some((b, c)) = rs {
        out.push(Alt::new(RuleId::OR, &[(l, b), (l, c)]));
    }
    if let (Some((a, b)), Some((c, d))) = (ls, rs) {
        out.push(Alt::new(RuleId::M, &[(a, c), (b, d), (d, b)]));
    }
    if let Some((a, b)) = ls {
        let r_perp = arena.perp(r);
        let lhs = arena.intern(Node::Sasaki(r_perp, b));
        let rhs = arena.perp(a);
        out.push(Alt::new(RuleId::G, &[(lhs, rhs)]));
    }
    if let Some(a) = arena.strip_double_ortho(l) {
        out.push(Alt::new(RuleId::NL, &[(a, r)]));
    }
    if let Some(b) = arena.strip_double_ortho(r) {
        out.push(Alt::new(RuleId::NR, &[(l, b)]));
    }
    let (r_perp, l_perp) = (arena.perp(r), arena.perp(l));
    out.push(Alt::new(RuleId::S, &[(r_perp, l_perp)]));
}

/// Every rule instance, without `T`, whose conclusion is `s`, in the order
/// A, R, O_L, O_R, M, G, N_L, N_R, S.
pub fn backward_expand(s: &Sequent) -> Vec<(RuleId, Vec<Sequent>)> {
    let mut arena = Arena::default();
    let goal = (arena.term(&s.lhs), arena.term(&s.rhs));
    let mut alts = Vec::new();
    expand(&mut arena, goal, &mut alts);
    alts.iter().map(|alt| (alt.rule, alt.premises().iter().map(|&p| arena.sequent(p)).collect())).collect()
}

/// Subterms of both sides and their orthocomplements, deduplicated.
pub fn default_cut_terms(s: &Sequent) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    for t in s.lhs.subterms().into_iter().chain(s.rhs.subterms()) {
        for candidate in [t.clone(), t.clone().perp()] {
            if !out.contains(&candidate) {
                out.push(candidate);
            }
        }
    }
    out
}

/// Values of interned terms in MO2 under every valuation of the atoms. A `T`
/// alternative with a premise false there is skipped unsearched.
struct Mo2Filter {
    model: &'static SasakiOrthoposet,
    valuations: Vec<Vec<Elem>>,
    values: Vec<Option<Vec<Elem>>>,
}

impl Mo2Filter {
    const MAX_VALUATIONS: usize = 1296;

    fn new(atoms: usize) -> Option<Mo2Filter> {
        let model = &default_catalog().iter().find(|m| m.name == "mo2")?.sasaki;
        let n = model.poset().len();
        let count = n.checked_pow(atoms as u32).filter(|&c| c <= Self::MAX_VALUATIONS)?;
        let valuations = (0..count)
            .map(|mut code| {
                let mut v = vec![0; atoms];
                for slot in v.iter_mut().rev() {
                    *slot = code % n;
                    code /= n;
                }
                v
            })
            .collect();
        Some(Mo2Filter { model, valuations, values: Vec::new() })
    }

    fn values(&mut self, arena: &Arena, id: Id) -> &[Elem] {
        let i = id as usize;
        if self.values.len() <= i {
            self.values.resize(arena.nodes.len(), None);
        }
        if self.values[i].is_none() {
            let computed: Vec<Elem> = match arena.nodes[i] {
                Node::Atom(a) => self.valuations.iter().map(|v| v[a as usize]).collect(),
                Node::Ortho(t) => {
                    let inner = self.values(arena, t).to_vec();
                    inner.into_iter().map(|x| self.model.poset().ortho(x)).collect()
                }
                Node::Sasaki(l, r) => {
                    let left = self.values(arena, l).to_vec();
                    let model = self.model;
                    let right = self.values(arena, r);
                    left.iter().zip(right).map(|(&a, &b)| model.sasaki(a, b)).collect()
                }
            };
            self.values[i] = Some(computed);
        }
        self.values[i].as_deref().expect("filled above")
    }

    fn holds(&mut self, arena: &Arena, (l, r): (Id, Id)) -> bool {
        let left = self.values(arena, l).to_vec();
        let model = self.model;
        let right = self.values(arena, r);
        left.iter().zip(right).all(|(&a, &b)| model.poset().leq(a, b))
    }
}

enum Outcome {
    Proved,
    /// Carries the depth of the shallowest open ancestor the failure looped
    /// back to, if any.
    Failed(Option<usize>),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Goal {
    lhs: Id,
    rhs: Id,
    cuts: usize,
}

struct Engine {
    arena: Arena,
    budget: u64,
    ortho_cap: usize,
    cut_terms: Vec<Id>,
    filter: Option<Mo2Filter>,
    /// The rule that closed each proved goal and the cut depth of its premises.
    proved: HashMap<Goal, (Alt, usize)>,
    failed: HashSet<Goal>,
    branch: HashMap<Goal, usize>,
    /// Provisional failures, with the depth of the open goal they rest on.
    pending: HashMap<Goal, usize>,
    pending_order: Vec<Goal>,
    nodes: u64,
    max_depth: usize,
}

impl Engine {
    fn new(root: &Sequent, cut_terms: &[Term], config: SearchConfig) -> Engine {
        let longest = cut_terms.iter().map(Term::max_ortho_run).fold(root.max_ortho_run(), usize::max);
        let mut arena = Arena::default();
        arena.term(&root.lhs);
        arena.term(&root.rhs);
        let cut_terms: Vec<Id> = cut_terms.iter().map(|t| arena.term(t)).collect();
        let filter = if cut_terms.is_empty() { None } else { Mo2Filter::new(arena.atoms.len()) };
        Engine {
            filter,
            arena,
            budget: config.node_budget,
            ortho_cap: longest + config.ortho_slack,
            cut_terms,
            proved: HashMap::new(),
            failed: HashSet::new(),
            branch: HashMap::new(),
            pending: HashMap::new(),
            pending_order: Vec::new(),
            nodes: 0,
            max_depth: 0,
        }
    }

    fn stats(&self) -> SearchStats {
        SearchStats { nodes: self.nodes, memo_size: self.proved.len() + self.failed.len(), max_depth: self.max_depth }
    }

    fn derivation(&self, goal: Goal) -> Derivation {
        let (alt, cuts) = &self.proved[&goal];
        let premises = alt.premises().iter().map(|&(lhs, rhs)| self.derivation(Goal { lhs, rhs, cuts: *cuts }));
        Derivation::by(alt.rule, self.arena.sequent((goal.lhs, goal.rhs)), premises.collect())
    }

    fn search(&mut self, goal: Goal, depth: usize) -> Result<Outcome, SearchError> {
        if self.proved.contains_key(&goal) {
            return Ok(Outcome::Proved);
        }
        if self.failed.contains(&goal) {
            return Ok(Outcome::Failed(None));
        }
        if let Some(&open_at) = self.branch.get(&goal).or_else(|| self.pending.get(&goal)) {
            return Ok(Outcome::Failed(Some(open_at)));
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SearchError::BudgetExceeded { nodes: self.nodes - 1 });
        }
        self.max_depth = self.max_depth.max(depth);
        self.branch.insert(goal, depth);
        let mark = self.pending_order.len();

        let mut alternatives = Vec::new();
        expand(&mut self.arena, (goal.lhs, goal.rhs), &mut alternatives);
        if goal.cuts > 0 {
            for &b in &self.cut_terms {
                alternatives.push(Alt::new(RuleId::T, &[(goal.lhs, b), (b, goal.rhs)]));
            }
        }

        let mut depends_on: Option<usize> = None;
        let mut found = None;
        'alternatives: for alt in alternatives {
            let cap = self.ortho_cap;
            if alt.premises().iter().any(|&(l, r)| self.arena.max_run(l).max(self.arena.max_run(r)) > cap) {
                continue;
            }
            if let (RuleId::T, Some(filter)) = (alt.rule, self.filter.as_mut()) {
                if !alt.premises().iter().all(|&p| filter.holds(&self.arena, p)) {
                    continue;
                }
            }
            let cuts = if alt.rule == RuleId::T { goal.cuts - 1 } else { goal.cuts };
            for &(lhs, rhs) in alt.premises() {
                if let Outcome::Failed(dep) = self.search(Goal { lhs, rhs, cuts }, depth + 1)? {
                    depends_on = match (depends_on, dep) {
                        (Some(x), Some(y)) => Some(x.min(y)),
                        (x, y) => x.or(y),
                    };
                    continue 'alternatives;
                }
            }
            found = Some((alt, cuts));
            break;
        }
        self.branch.remove(&goal);

        match found {
            Some(step) => {
                for g in self.pending_order.drain(mark..) {
                    self.pending.remove(&g);
                }
                self.proved.insert(goal, step);
                Ok(Outcome::Proved)
            }
            None => {
                // a loop back to this very goal is no support for proving it
                match depends_on.filter(|&d| d < depth) {
                    None => {
                        for g in self.pending_order.drain(mark..) {
                            self.pending.remove(&g);
                            self.failed.insert(g);
                        }
                        self.failed.insert(goal);
                        Ok(Outcome::Failed(None))
                    }
                    Some(open_at) => {
                        for g in &self.pending_order[mark..] {
                            self.pending.insert(*g, open_at);
                        }
                        self.pending.insert(goal, open_at);
                        self.pending_order.push(goal);
                        Ok(Outcome::Failed(Some(open_at)))
                    }
                }
            }
        }
    }
}

fn run(s: &Sequent, cut_terms: &[Term], cuts: usize, config: SearchConfig) -> Result<ProofResult, SearchError> {
    run_engine(Engine::new(s, cut_terms, config), s, cuts)
}

fn run_engine(mut engine: Engine, s: &Sequent, cuts: usize) -> Result<ProofResult, SearchError> {
    let root = Goal { lhs: engine.arena.term(&s.lhs), rhs: engine.arena.term(&s.rhs), cuts };
    match engine.search(root, 0)? {
        Outcome::Proved => {
            let d = engine.derivation(root);
            let open = check_derivation(&d, cuts > 0).expect("search only builds schema instances");
            debug_assert!(open.is_empty());
            Ok(ProofResult::Proved(d))
        }
        Outcome::Failed(_) => Ok(ProofResult::Exhausted(engine.stats())),
    }
}

/// Decides provability without `T`. Always terminates; `BudgetExceeded` only
/// when the configured node budget is smaller than the search space.
pub fn prove_rsol_t(s: &Sequent, config: SearchConfig) -> Result<ProofResult, SearchError> {
    run(s, &[], 0, config)
}

/// Same search with `T` allowed, its middle term drawn from `cut_terms`, at
/// most `depth` uses of `T` on any branch.
pub fn prove_with_cut(
    s: &Sequent,
    cut_terms: &[Term],
    depth: usize,
    config: SearchConfig,
) -> Result<ProofResult, SearchError> {
    run(s, cut_terms, depth, config)
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub result: ProofResult,
    /// Set when the countermodel search ran and found nothing.
    pub searched: Option<SearchedSpace>,
}

/// Cut-free search first; on exhaustion, a countermodel search over `catalog`.
/// An exhausted search with no countermodel stays `Exhausted`: unknown.
pub fn decide(
    s: &Sequent,
    config: SearchConfig,
    catalog: &[ModelStructure],
    limits: SearchLimits,
) -> Result<Decision, SearchError> {
    let result = prove_rsol_t(s, config)?;
    if !matches!(result, ProofResult::Exhausted(_)) {
        return Ok(Decision { result, searched: None });
    }
    Ok(match find_countermodel(s, catalog, limits)? {
        CountermodelSearch::Found(c) => Decision { result: ProofResult::Refuted(c), searched: None },
        CountermodelSearch::NotFound(space) => Decision { result, searched: Some(space) },
    })
}
