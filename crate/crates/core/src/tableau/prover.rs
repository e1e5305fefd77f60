//! Signed tableaux.
//!
//! `v:A` holds when `A` does not take the value `v`. A branch is closed once
//! it holds `v:A` for every value `v` and some formula `A`. To show
//! `Δ ⊨ A` one closes the tableau for `u:B` (every undesignated `u`, every
//! premise `B`) together with `d:A` (every designated `d`).

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::{self, Write as _};

use crate::budget::{Budget, Meter};
use crate::error::{Error, Partial, Result};
use crate::formula::{atoms_of, Formula};
use crate::matrix::{Matrix, Value, ValueSet};
use crate::semantics::Valuation;
use crate::tableau::rules::RuleSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedFormula {
    pub sign: Value,
    pub formula: Formula,
}

impl SignedFormula {
    pub fn display<'a>(&'a self, m: &'a Matrix) -> impl fmt::Display + 'a {
        DisplaySigned { s: self, m }
    }
}

struct DisplaySigned<'a> {
    s: &'a SignedFormula,
    m: &'a Matrix,
}

impl fmt::Display for DisplaySigned<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.m.value_name(self.s.sign), self.s.formula)
    }
}

/// Subformulas, shared by identity.
#[derive(Clone, Debug, Default)]
struct Arena {
    formulas: Vec<Formula>,
    /// `(op index, children)`; `None` for atoms
    shape: Vec<Option<(usize, Vec<usize>)>>,
    ids: HashMap<Formula, usize>,
}

impl Arena {
    fn intern(&mut self, m: &Matrix, f: &Formula) -> Result<usize> {
        if let Some(&id) = self.ids.get(f) {
            return Ok(id);
        }
        let shape = match f {
            Formula::Atom(_) => None,
            Formula::Compound { op, args } => {
                let op = m.resolve_op(op, args.len())?;
                let kids = args.iter().map(|a| self.intern(m, a)).collect::<Result<Vec<_>>>()?;
                Some((op, kids))
            }
        };
        let id = self.formulas.len();
        self.formulas.push(f.clone());
        self.shape.push(shape);
        self.ids.insert(f.clone(), id);
        Ok(id)
    }
}

#[derive(Clone, Debug)]
struct Node {
    sign: Value,
    formula: usize,
    parent: Option<usize>,
    children: Vec<usize>,
}

/// State of an open or closed leaf: signs seen per formula and the compound
/// nodes not yet expanded on this branch, oldest first.
#[derive(Clone, Debug)]
struct Branch {
    signs: Vec<ValueSet>,
    pending: VecDeque<usize>,
    closed: bool,
    /// Closed because its signs include those of a branch already closed.
    subsumed: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TableauStats {
    pub nodes: usize,
    pub expansions: usize,
    pub branches: usize,
    pub closed_branches: usize,
    /// Closed branches among them that were closed by subsumption.
    pub subsumed_branches: usize,
}

/// Whether adding the given `(formula, signs)` to a branch closes it.
type Dead<'a> = dyn Fn(&Branch, &[(usize, ValueSet)]) -> bool + 'a;

#[derive(Clone, Debug)]
pub struct Tableau<'m> {
    m: &'m Matrix,
    rules: &'m RuleSet,
    arena: Arena,
    nodes: Vec<Node>,
    leaves: HashMap<usize, Branch>,
    expansions: usize,
}

impl<'m> Tableau<'m> {
    /// A single branch holding `initial` from top to bottom.
    pub fn new(m: &'m Matrix, rules: &'m RuleSet, initial: &[SignedFormula]) -> Result<Self> {
        if initial.is_empty() {
            return Err(Error::domain("a tableau needs at least one signed formula"));
        }
        let mut t = Tableau {
            m,
            rules,
            arena: Arena::default(),
            nodes: Vec::new(),
            leaves: HashMap::new(),
            expansions: 0,
        };
        let mut branch = Branch {
            signs: Vec::new(),
            pending: VecDeque::new(),
            closed: false,
            subsumed: false,
        };
        let mut parent = None;
        for s in initial {
            if !m.contains(s.sign) {
                return Err(Error::ForeignValue {
                    index: s.sign.index(),
                    matrix: m.name().to_string(),
                });
            }
            let f = t.arena.intern(m, &s.formula)?;
            parent = Some(t.push(&mut branch, parent, s.sign, f));
        }
        t.leaves.insert(parent.unwrap(), branch);
        Ok(t)
    }

    fn push(&mut self, branch: &mut Branch, parent: Option<usize>, sign: Value, formula: usize) -> usize {
        let id = self.nodes.len();
        self.nodes.push(Node {
            sign,
            formula,
            parent,
            children: Vec::new(),
        });
        if let Some(p) = parent {
            self.nodes[p].children.push(id);
        }
        if branch.signs.len() < self.arena.formulas.len() {
            branch.signs.resize(self.arena.formulas.len(), 0);
        }
        branch.signs[formula] |= sign.bit();
        if branch.signs[formula] == self.m.full_mask() {
            branch.closed = true;
        }
        if self.arena.shape[formula].is_some() {
            branch.pending.push_back(id);
        }
        id
    }

    fn has(&self, branch: &Branch, sign: Value, formula: usize) -> bool {
        branch.signs.get(formula).is_some_and(|m| m & sign.bit() != 0)
    }

    /// The rule branches for `node` as `(sign, formula id)` lists.
    fn wanted(&self, node: usize) -> Vec<Vec<(Value, usize)>> {
        let (sign, formula) = (self.nodes[node].sign, self.nodes[node].formula);
        let (op, kids) = self.arena.shape[formula].as_ref().expect("compound");
        self.rules
            .get(*op, sign)
            .branches
            .iter()
            .map(|b| b.constraints().into_iter().map(|(v, i)| (v, kids[i])).collect())
            .collect()
    }

    /// Applies the rule of `node` at `leaf`; returns the new leaves.
    fn expand_at(&mut self, leaf: usize, node: usize) -> Vec<usize> {
        let mut branch = self.leaves.remove(&leaf).expect("leaf");
        branch.pending.retain(|&n| n != node);
        self.expansions += 1;
        let wanted = self.wanted(node);
        if wanted.is_empty() {
            // no tuple avoids the sign: the branch cannot be satisfied
            branch.closed = true;
            self.leaves.insert(leaf, branch);
            return vec![leaf];
        }
        // a rule branch already on the leaf adds nothing
        if wanted.iter().any(|w| w.iter().all(|&(v, f)| self.has(&branch, v, f))) {
            self.leaves.insert(leaf, branch);
            return vec![leaf];
        }
        let mut out = Vec::with_capacity(wanted.len());
        for w in wanted {
            let mut b = branch.clone();
            let mut at = leaf;
            for (v, f) in w {
                if b.closed {
                    break;
                }
                if !self.has(&b, v, f) {
                    at = self.push(&mut b, Some(at), v, f);
                }
            }
            self.leaves.insert(at, b);
            out.push(at);
        }
        out
    }

    /// Live alternatives of the rule for `node` on `branch`: rule branches
    /// that neither are already present nor close at once, by a full sign set
    /// or by `dead` on the signs they would add. `0` means the expansion
    /// closes the branch or adds nothing.
    fn live_alternatives(&self, branch: &Branch, node: usize, dead: &Dead) -> usize {
        let (sign, formula) = (self.nodes[node].sign, self.nodes[node].formula);
        let (op, kids) = self.arena.shape[formula].as_ref().expect("compound");
        let full = self.m.full_mask();
        let mut live = 0;
        let mut added = Vec::with_capacity(kids.len());
        for b in &self.rules.get(*op, sign).branches {
            let mut closes = false;
            added.clear();
            for (&mask, &f) in b.excluded().iter().zip(kids) {
                let have = branch.signs.get(f).copied().unwrap_or(0);
                if mask & !have != 0 {
                    added.push((f, mask & !have));
                }
                closes |= (mask | have) == full;
            }
            if added.is_empty() {
                return 0;
            }
            if !closes && !dead(branch, &added) {
                live += 1;
            }
        }
        live
    }

    /// The pending node to expand next on `leaf`: the oldest with at most one
    /// live alternative, else the one with fewest, oldest first among equals.
    fn pick(&self, leaf: usize, dead: &Dead) -> Option<usize> {
        let branch = &self.leaves[&leaf];
        let mut best: Option<(usize, usize)> = None;
        for &node in &branch.pending {
            let live = self.live_alternatives(branch, node, dead);
            if live <= 1 {
                return Some(node);
            }
            if best.is_none_or(|(l, _)| live < l) {
                best = Some((live, node));
            }
        }
        best.map(|(_, node)| node)
    }

    fn ancestors_contain(&self, mut at: usize, target: usize) -> bool {
        loop {
            if at == target {
                return true;
            }
            match self.nodes[at].parent {
                Some(p) => at = p,
                None => return false,
            }
        }
    }

    /// Expands `node` on every open branch through it where it is still
    /// unexpanded.
    pub fn expand(&mut self, node: usize) -> Result<()> {
        let n = self.nodes.get(node).ok_or(Error::UnknownNode(node))?;
        if self.arena.shape[n.formula].is_none() {
            return Err(Error::AtomicNode(node));
        }
        let mut open: Vec<usize> = self
            .leaves
            .iter()
            .filter(|(&l, b)| !b.closed && self.ancestors_contain(l, node))
            .map(|(&l, _)| l)
            .collect();
        open.sort();
        if open.is_empty() {
            return Ok(());
        }
        let mut expanded_any = false;
        for leaf in open {
            if self.leaves[&leaf].pending.contains(&node) {
                self.expand_at(leaf, node);
                expanded_any = true;
            }
        }
        if expanded_any {
            Ok(())
        } else {
            Err(Error::NodeAlreadyExpanded(node))
        }
    }

    pub fn signed(&self, node: usize) -> SignedFormula {
        SignedFormula {
            sign: self.nodes[node].sign,
            formula: self.arena.formulas[self.nodes[node].formula].clone(),
        }
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.nodes[node].children
    }

    /// Leaves in creation order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut l: Vec<usize> = self.leaves.keys().copied().collect();
        l.sort();
        l
    }

    pub fn is_closed_leaf(&self, leaf: usize) -> bool {
        self.leaves.get(&leaf).is_some_and(|b| b.closed)
    }

    /// Compound nodes on the branch ending at `leaf` that are not expanded
    /// there yet, oldest first. Empty for closed or unknown leaves.
    pub fn pending(&self, leaf: usize) -> Vec<usize> {
        match self.leaves.get(&leaf) {
            Some(b) if !b.closed => b.pending.iter().copied().collect(),
            _ => Vec::new(),
        }
    }

    pub fn open_leaves(&self) -> Vec<usize> {
        self.leaves().into_iter().filter(|l| !self.leaves[l].closed).collect()
    }

    pub fn is_closed(&self) -> bool {
        self.leaves.values().all(|b| b.closed)
    }

    /// Signed formulas on the branch ending at `leaf`, top first.
    pub fn branch(&self, leaf: usize) -> Vec<SignedFormula> {
        let mut out = Vec::new();
        let mut at = Some(leaf);
        while let Some(n) = at {
            out.push(self.signed(n));
            at = self.nodes[n].parent;
        }
        out.reverse();
        out
    }

    pub fn stats(&self) -> TableauStats {
        TableauStats {
            nodes: self.nodes.len(),
            expansions: self.expansions,
            branches: self.leaves.len(),
            closed_branches: self.leaves.values().filter(|b| b.closed).count(),
            subsumed_branches: self.leaves.values().filter(|b| b.subsumed).count(),
        }
    }

    /// Each atom gets the first value not among its signs on the branch.
    pub fn countervaluation(&self, leaf: usize, atoms: &[String]) -> Option<Valuation> {
        let b = self.leaves.get(&leaf)?;
        if b.closed {
            return None;
        }
        let pairs = atoms
            .iter()
            .map(|a| {
                let used = self
                    .arena
                    .ids
                    .get(&Formula::Atom(a.clone()))
                    .and_then(|&id| b.signs.get(id).copied())
                    .unwrap_or(0);
                let v = self.m.values().find(|v| used & v.bit() == 0).expect("open branch");
                (a.clone(), v)
            })
            .collect();
        Valuation::new(pairs).ok()
    }

    fn label(&self, node: usize) -> String {
        self.signed(node).display(self.m).to_string()
    }

    /// Indented tree, one signed formula per line; each alternative of a
    /// split is indented two further spaces, closed branches end in `×`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_from(self.root(), 0, &mut out);
        out
    }

    fn render_from(&self, start: usize, indent: usize, out: &mut String) {
        let pad = " ".repeat(indent);
        let mut at = start;
        loop {
            let _ = writeln!(out, "{pad}{}", self.label(at));
            match self.nodes[at].children.as_slice() {
                [] => {
                    match self.leaves.get(&at) {
                        Some(b) if b.subsumed => {
                            let _ = writeln!(out, "{pad}× (subsumed)");
                        }
                        Some(b) if b.closed => {
                            let _ = writeln!(out, "{pad}×");
                        }
                        _ => {}
                    }
                    return;
                }
                [only] if !self.leaves.contains_key(&at) => at = *only,
                kids => {
                    for &k in kids {
                        self.render_from(k, indent + 2, out);
                    }
                    return;
                }
            }
        }
    }

    /// Nested arrays: each node is `[label, child, ...]`, and a closed leaf
    /// has the single child `"×"`.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        self.json_from(self.root(), &mut out);
        out
    }

    fn json_from(&self, node: usize, out: &mut String) {
        out.push('[');
        push_json_string(out, &self.label(node));
        for &k in &self.nodes[node].children {
            out.push(',');
            self.json_from(k, out);
        }
        if self.nodes[node].children.is_empty() && self.is_closed_leaf(node) {
            out.push_str(",\"×\"");
        }
        out.push(']');
    }
}

fn push_json_string(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

/// The signed formulas whose closed tableau witnesses `premises ⊨ conclusion`.
pub fn initial_set(m: &Matrix, premises: &[Formula], conclusion: &Formula) -> Vec<SignedFormula> {
    let mut out = Vec::new();
    for p in premises {
        for v in m.undesignated() {
            out.push(SignedFormula {
                sign: v,
                formula: p.clone(),
            });
        }
    }
    for v in m.designated() {
        out.push(SignedFormula {
            sign: v,
            formula: conclusion.clone(),
        });
    }
    out
}

#[derive(Clone, Debug)]
pub struct ProofResult<'m> {
    pub holds: bool,
    pub tableau: Tableau<'m>,
    /// The saturated open leaf when the entailment fails.
    pub open_leaf: Option<usize>,
    pub countervaluation: Option<Valuation>,
}

/// Saturates the tableau for the entailment, stopping at the first saturated
/// open branch.
///
/// Every pending formula on a branch is expanded eventually. The oldest one
/// with at most one live alternative goes first, otherwise the one with the
/// fewest. An alternative is dead when its signs are already present, close
/// the branch at once, or complete a closure recorded earlier in the search.
/// Branches are worked on depth first, and a branch that includes a recorded
/// closure is marked subsumed instead of being expanded again.
pub fn prove_entailment<'m>(
    m: &'m Matrix,
    rules: &'m RuleSet,
    premises: &[Formula],
    conclusion: &Formula,
    budget: Budget,
) -> Result<ProofResult<'m>> {
    let mut t = Tableau::new(m, rules, &initial_set(m, premises, conclusion))?;
    let meter = Meter::new(budget);
    let mut search = Search {
        meter: &meter,
        cores: Vec::new(),
        seen: HashSet::new(),
        watch: HashMap::new(),
        initial: Vec::new(),
    };
    let root = t.leaves()[0];
    search.initial = t.leaves[&root].signs.clone();
    let r = search.solve(&mut t, root);
    match r? {
        Outcome::Open(leaf) => {
            let atoms = atoms_of(premises.iter().chain([conclusion]));
            let countervaluation = t.countervaluation(leaf, &atoms);
            Ok(ProofResult {
                holds: false,
                tableau: t,
                open_leaf: Some(leaf),
                countervaluation,
            })
        }
        Outcome::Closed(_) => Ok(ProofResult {
            holds: true,
            tableau: t,
            open_leaf: None,
            countervaluation: None,
        }),
    }
}

/// Depth-first saturation with memoised closures.
///
/// Each closed subtree yields a core: signs such that any branch carrying all
/// of them closes by repeating the subtree. A closing leaf's core is the full
/// sign set of one formula; an expansion of `v:A` contributes `v:A` plus the
/// children's cores minus what each child added. A later branch whose signs
/// include a stored core is closed on the spot, and when a child's core does
/// not use what the child added, its siblings are closed the same way.
struct Search<'a> {
    meter: &'a Meter,
    /// Stored cores as sparse `(formula, signs)` lists.
    cores: Vec<Vec<(usize, ValueSet)>>,
    seen: HashSet<Vec<(usize, ValueSet)>>,
    /// Each core is filed under one of its signs, `(formula, value index)`.
    watch: HashMap<(usize, u32), Vec<usize>>,
    /// Signs of the initial branch: on every branch, so poor watches.
    initial: Vec<ValueSet>,
}

enum Outcome {
    Open(usize),
    Closed(Vec<ValueSet>),
}

fn add(core: &mut Vec<ValueSet>, formula: usize, bits: ValueSet) {
    if core.len() <= formula {
        core.resize(formula + 1, 0);
    }
    core[formula] |= bits;
}

impl Search<'_> {
    fn stored_core(&self, signs: &[ValueSet]) -> Option<Vec<ValueSet>> {
        for (f, &x) in signs.iter().enumerate() {
            let mut bits = x;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                let Some(bucket) = self.watch.get(&(f, v)) else {
                    continue;
                };
                for &i in bucket {
                    let c = &self.cores[i];
                    if c.iter().all(|&(g, y)| y & !signs.get(g).copied().unwrap_or(0) == 0) {
                        let mut core = Vec::new();
                        for &(g, y) in c {
                            add(&mut core, g, y);
                        }
                        return Some(core);
                    }
                }
            }
        }
        None
    }

    /// Whether adding `added` to `signs` would complete a stored core filed
    /// under one of the added signs.
    fn completes(&self, signs: &[ValueSet], added: &[(usize, ValueSet)]) -> bool {
        let has = |g: usize| {
            signs.get(g).copied().unwrap_or(0) | added.iter().filter(|&&(f, _)| f == g).fold(0, |acc, &(_, x)| acc | x)
        };
        for &(f, x) in added {
            let mut bits = x;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                let Some(bucket) = self.watch.get(&(f, v)) else {
                    continue;
                };
                if bucket
                    .iter()
                    .any(|&i| self.cores[i].iter().all(|&(g, y)| y & !has(g) == 0))
                {
                    return true;
                }
            }
        }
        false
    }

    fn store(&mut self, core: &[ValueSet]) {
        let sparse: Vec<(usize, ValueSet)> = core
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(f, &x)| (f, x))
            .collect();
        if !self.seen.insert(sparse.clone()) {
            return;
        }
        // file under the sign with the shortest bucket
        let mut best: Option<((usize, u32), usize)> = None;
        for &(f, x) in &sparse {
            let mut bits = x;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                let common = self.initial.get(f).is_some_and(|&y| y & (1 << v) != 0);
                let len = self.watch.get(&(f, v)).map_or(0, Vec::len) + if common { 1 << 30 } else { 0 };
                if best.is_none_or(|(_, l)| len < l) {
                    best = Some(((f, v), len));
                }
            }
        }
        let Some((key, _)) = best else { return };
        self.watch.entry(key).or_default().push(self.cores.len());
        self.cores.push(sparse);
    }

    /// Core of a leaf closed by a formula carrying every sign.
    fn leaf_core(t: &Tableau<'_>, leaf: usize) -> Vec<ValueSet> {
        let signs = &t.leaves[&leaf].signs;
        let full = t.m.full_mask();
        let f = signs
            .iter()
            .position(|&x| x == full)
            .expect("closed leaf has a full formula");
        let mut core = Vec::new();
        add(&mut core, f, full);
        core
    }

    fn close_subsumed(t: &mut Tableau<'_>, leaf: usize) {
        let b = t.leaves.get_mut(&leaf).expect("leaf");
        b.closed = true;
        b.subsumed = true;
    }

    /// Saturates below `at`; returns a saturated open leaf or a core.
    fn solve(&mut self, t: &mut Tableau<'_>, at: usize) -> Result<Outcome> {
        if t.leaves[&at].closed {
            return Ok(Outcome::Closed(Self::leaf_core(t, at)));
        }
        let dead = |b: &Branch, added: &[(usize, ValueSet)]| self.completes(&b.signs, added);
        let Some(node) = t.pick(at, &dead) else {
            return Ok(Outcome::Open(at));
        };
        if !self.meter.tick() {
            return Err(Error::BudgetExhausted {
                cause: self.meter.exhausted().expect("stopped"),
                partial: Partial::Nothing,
            });
        }
        let (sign, formula) = (t.nodes[node].sign, t.nodes[node].formula);
        let wanted = t.wanted(node);
        let parent = t.leaves[&at].signs.clone();
        let kids = t.expand_at(at, node);
        if wanted.is_empty() {
            let mut core = Vec::new();
            add(&mut core, formula, sign.bit());
            return Ok(Outcome::Closed(core));
        }
        if kids == [at] && !t.leaves[&at].closed {
            // a rule branch was already present: nothing was added
            return self.solve(t, at);
        }
        let mut core = Vec::new();
        add(&mut core, formula, sign.bit());
        for (i, (&k, w)) in kids.iter().zip(&wanted).enumerate() {
            let added: Vec<(Value, usize)> = w
                .iter()
                .copied()
                .filter(|&(v, f)| parent.get(f).is_none_or(|&x| x & v.bit() == 0))
                .collect();
            let child = if t.leaves[&k].closed {
                Self::leaf_core(t, k)
            } else if let Some(c) = self.stored_core(&t.leaves[&k].signs) {
                Self::close_subsumed(t, k);
                c
            } else {
                match self.solve(t, k)? {
                    Outcome::Open(leaf) => return Ok(Outcome::Open(leaf)),
                    Outcome::Closed(c) => c,
                }
            };
            let uses_added = added
                .iter()
                .any(|&(v, f)| child.get(f).is_some_and(|&x| x & v.bit() != 0));
            if !uses_added {
                // the parent closes by itself; so do the remaining siblings
                for &rest in &kids[i + 1..] {
                    if !t.leaves[&rest].closed {
                        Self::close_subsumed(t, rest);
                    }
                }
                self.store(&child);
                return Ok(Outcome::Closed(child));
            }
            for (f, &x) in child.iter().enumerate() {
                let mut bits = x;
                for &(v, g) in &added {
                    if g == f {
                        bits &= !v.bit();
                    }
                }
                if bits != 0 {
                    add(&mut core, f, bits);
                }
            }
        }
        self.store(&core);
        Ok(Outcome::Closed(core))
    }
}
