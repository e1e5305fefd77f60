//! Congruence checking, enumeration and factor matrices.
//!
//! Enumeration builds partitions one value at a time in declaration order,
//! as restricted growth strings: value `i` joins one of the blocks opened so
//! far or opens a new one. Designated and undesignated values never share a
//! block, so the choices split into a partition of the designated values and
//! one of the undesignated values. After every choice the congruence
//! generated by the merges made so far is computed with a union-find
//! closure. A branch is abandoned as soon as that closure merges a
//! designated with an undesignated value, or merges two values that were
//! already placed in different blocks; no extension of such a branch can be
//! a congruence.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use crate::algebra::{MapKind, Partition, ValueMap, Verdict};
use crate::budget::{Budget, Meter};
use crate::error::{Error, Partial, Result};
use crate::matrix::{Matrix, Operation, Tuples, Value};

/// A partition together with whether it was checked to be a congruence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence {
    partition: Partition,
    verified: bool,
}

impl Congruence {
    /// Checks `p` and returns it as a verified congruence.
    pub fn verify(m: &Matrix, p: Partition) -> Result<Self> {
        match is_congruence(m, &p)? {
            Verdict::Holds => Ok(Congruence {
                partition: p,
                verified: true,
            }),
            Verdict::Fails(_) => Err(Error::UnverifiedCongruence(m.name().to_string())),
        }
    }

    /// Wraps `p` without checking it.
    pub fn unverified(p: Partition) -> Self {
        Congruence {
            partition: p,
            verified: false,
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn verified(&self) -> bool {
        self.verified
    }

    pub fn into_partition(self) -> Partition {
        self.partition
    }
}

/// Why a partition is not a congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CongruenceViolation {
    /// A block holds both a designated and an undesignated value.
    MixedBlock { designated: Value, undesignated: Value },
    /// Blockwise-equal arguments with results in different blocks.
    Operation {
        op: String,
        left: Vec<Value>,
        right: Vec<Value>,
        results: (Value, Value),
    },
}

/// Checks that `p` respects designation and every operation.
pub fn is_congruence(m: &Matrix, p: &Partition) -> Result<Verdict<CongruenceViolation>> {
    p.check_for(m)?;
    for block in p.blocks() {
        let d = block.iter().find(|v| m.designates(**v));
        let u = block.iter().find(|v| !m.designates(**v));
        if let (Some(&designated), Some(&undesignated)) = (d, u) {
            return Ok(Verdict::Fails(CongruenceViolation::MixedBlock {
                designated,
                undesignated,
            }));
        }
    }
    // Compatibility in each argument position separately implies full
    // compatibility, since the relation is an equivalence.
    for op in m.ops() {
        for pos in 0..op.arity() {
            for block in p.blocks() {
                let rep = block[0];
                for &other in &block[1..] {
                    for mut args in Tuples::new(m.len(), op.arity()) {
                        args[pos] = rep;
                        let a = op.eval(&args);
                        let left = args.clone();
                        args[pos] = other;
                        let b = op.eval(&args);
                        if !p.same_block(a, b) {
                            return Ok(Verdict::Fails(CongruenceViolation::Operation {
                                op: op.name().to_string(),
                                left,
                                right: args,
                                results: (a, b),
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Options for [`enumerate_congruences`].
#[derive(Clone, Debug)]
pub struct CongruenceOptions {
    /// Report the identity partition too.
    pub include_identity: bool,
    /// Keep at most this many congruences of the canonical list.
    pub limit: Option<usize>,
    /// Only congruences with exactly this many blocks (pruned during search).
    pub classes: Option<usize>,
    pub budget: Budget,
    /// Worker threads; 0 or 1 runs on the calling thread.
    pub jobs: usize,
}

impl Default for CongruenceOptions {
    fn default() -> Self {
        CongruenceOptions {
            include_identity: false,
            limit: None,
            classes: None,
            budget: Budget::default(),
            jobs: 1,
        }
    }
}

/// A binary-or-higher operation seen as its unary translations: fixing all
/// arguments but one gives a map `x -> table[base + x * stride]`.
struct Translations<'a> {
    table: &'a [Value],
    stride: usize,
    bases: Vec<usize>,
}

fn translations(m: &Matrix) -> Vec<Translations<'_>> {
    let n = m.len();
    let mut out = Vec::new();
    for op in m.ops() {
        let r = op.arity();
        for pos in 0..r {
            let stride = n.pow((r - 1 - pos) as u32);
            let bases = Tuples::new(n, r)
                .filter(|t| t[pos].index() == 0)
                .map(|t| index(op, &t))
                .collect();
            out.push(Translations {
                table: op.table(),
                stride,
                bases,
            });
        }
    }
    out
}

fn index(op: &Operation, args: &[Value]) -> usize {
    op.index_of(args)
}

/// Union-find over value indices; every class is designation-homogeneous.
#[derive(Clone)]
struct Closure {
    parent: Vec<u8>,
}

impl Closure {
    fn new(n: usize) -> Self {
        Closure {
            parent: (0..n as u8).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let up = self.parent[self.parent[x] as usize];
            self.parent[x] = up;
            x = up as usize;
        }
        x
    }

    /// Merges `a` and `b` and closes under all translations. Returns false if
    /// the closure mixes designated with undesignated values.
    fn merge(&mut self, a: usize, b: usize, trans: &[Translations<'_>], designated: &[bool]) -> bool {
        let mut work = vec![(a, b)];
        while let Some((x, y)) = work.pop() {
            let (rx, ry) = (self.find(x), self.find(y));
            if rx == ry {
                continue;
            }
            if designated[x] != designated[y] {
                return false;
            }
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.parent[hi] = lo as u8;
            for t in trans {
                let (ox, oy) = (x * t.stride, y * t.stride);
                for &base in &t.bases {
                    let (u, v) = (t.table[base + ox].index(), t.table[base + oy].index());
                    if u != v {
                        work.push((u, v));
                    }
                }
            }
        }
        true
    }
}

/// A node of the search: values `0..next` have been placed.
#[derive(Clone)]
struct Node {
    closure: Closure,
    labels: Vec<u8>,
    /// First member of each block.
    reps: Vec<u8>,
    next: usize,
}

struct Search<'a> {
    n: usize,
    designated: Vec<bool>,
    trans: Vec<Translations<'a>>,
    classes: Option<usize>,
    meter: &'a Meter,
}

impl<'a> Search<'a> {
    fn root(&self) -> Node {
        Node {
            closure: Closure::new(self.n),
            labels: Vec::with_capacity(self.n),
            reps: Vec::new(),
            next: 0,
        }
    }

    /// Closure classes must not contain two differently labelled placed
    /// values.
    fn consistent(&self, node: &mut Node) -> bool {
        let mut seen = [u8::MAX; crate::matrix::MAX_VALUES];
        for v in 0..node.next {
            let root = node.closure.find(v);
            let label = node.labels[v];
            if seen[root] == u8::MAX {
                seen[root] = label;
            } else if seen[root] != label {
                return false;
            }
        }
        true
    }

    fn feasible(&self, node: &Node) -> bool {
        match self.classes {
            Some(k) => node.reps.len() <= k && node.reps.len() + (self.n - node.next) >= k,
            None => true,
        }
    }

    /// The children of `node`, in restricted-growth order.
    fn children(&self, node: &Node) -> Vec<Node> {
        let i = node.next;
        let mut parent = node.clone();
        let root = parent.closure.find(i);
        // already forced into the block of an earlier value?
        let forced = (0..i)
            .find(|&j| parent.closure.find(j) == root)
            .map(|j| parent.labels[j]);
        let mut out = Vec::new();
        if let Some(label) = forced {
            let mut child = parent;
            child.labels.push(label);
            child.next += 1;
            if self.feasible(&child) {
                out.push(child);
            }
            return out;
        }
        for (label, &rep) in node.reps.iter().enumerate() {
            if self.designated[rep as usize] != self.designated[i] {
                continue;
            }
            let mut child = node.clone();
            if !child.closure.merge(i, rep as usize, &self.trans, &self.designated) {
                continue;
            }
            child.labels.push(label as u8);
            child.next += 1;
            if self.consistent(&mut child) {
                out.push(child);
            }
        }
        let mut fresh = parent;
        fresh.labels.push(fresh.reps.len() as u8);
        fresh.reps.push(i as u8);
        fresh.next += 1;
        out.push(fresh);
        out.retain(|c| self.feasible(c));
        out
    }

    /// Depth-first search below `node`; found partitions go to `found`.
    /// Returns false when the budget stopped the search.
    fn run(&self, node: Node, found: &mut Vec<Vec<u8>>) -> bool {
        if !self.meter.tick() {
            return false;
        }
        if node.next == self.n {
            found.push(node.labels);
            return true;
        }
        for child in self.children(&node) {
            if !self.run(child, found) {
                return false;
            }
        }
        true
    }

    /// Nodes at depth `depth` (or leaves above it), in search order.
    fn frontier(&self, depth: usize) -> Vec<Node> {
        let mut layer = vec![self.root()];
        for _ in 0..depth.min(self.n) {
            layer = layer
                .into_iter()
                .flat_map(|node| {
                    if node.next == self.n {
                        vec![node]
                    } else {
                        self.children(&node)
                    }
                })
                .collect();
        }
        layer
    }
}

/// All congruences of `m` in canonical order: ascending number of blocks,
/// then lexicographic by blocks.
///
/// The identity is included only when requested. If the budget runs out the
/// congruences found so far are returned inside
/// [`Error::BudgetExhausted`].
pub fn enumerate_congruences(m: &Matrix, options: &CongruenceOptions) -> Result<Vec<Congruence>> {
    let meter = Meter::new(options.budget);
    let search = Search {
        n: m.len(),
        designated: m.values().map(|v| m.designates(v)).collect(),
        trans: translations(m),
        classes: options.classes,
        meter: &meter,
    };
    let mut labels: Vec<Vec<u8>> = Vec::new();
    let complete = if options.jobs <= 1 {
        search.run(search.root(), &mut labels)
    } else {
        let jobs = options.jobs;
        let mut depth = 1;
        let mut frontier = search.frontier(depth);
        while frontier.len() < jobs * 8 && depth < m.len() {
            depth += 1;
            frontier = search.frontier(depth);
        }
        let next = AtomicUsize::new(0);
        let results = Mutex::new(Vec::new());
        thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some(node) = frontier.get(i) else { break };
                        if !search.run(node.clone(), &mut local) {
                            break;
                        }
                    }
                    results.lock().unwrap().extend(local);
                });
            }
        });
        labels = results.into_inner().unwrap();
        meter.exhausted().is_none()
    };
    let mut congruences: Vec<Congruence> = labels
        .iter()
        .map(|l| Congruence {
            partition: Partition::from_labels(m.name(), l),
            verified: true,
        })
        .filter(|c| options.include_identity || !c.partition.is_identity())
        .collect();
    congruences.sort_by(|a, b| a.partition.canonical_cmp(&b.partition));
    congruences.dedup();
    if let Some(limit) = options.limit {
        congruences.truncate(limit);
    }
    if !complete {
        return Err(Error::BudgetExhausted {
            cause: meter.exhausted().expect("search stopped by the budget"),
            partial: Partial::Congruences(congruences),
        });
    }
    Ok(congruences)
}

/// Search nodes visited by a full enumeration; used to report effort.
pub fn congruence_search_nodes(m: &Matrix, options: &CongruenceOptions) -> Result<u64> {
    let meter = Meter::new(options.budget);
    let search = Search {
        n: m.len(),
        designated: m.values().map(|v| m.designates(v)).collect(),
        trans: translations(m),
        classes: options.classes,
        meter: &meter,
    };
    let mut sink = Vec::new();
    search.run(search.root(), &mut sink);
    Ok(meter.nodes())
}

/// The factor matrix `m / c` and the projection onto it.
///
/// Values are the blocks, named by joining member names with `·`; a block is
/// designated iff its members are; operations act on representatives.
pub fn factor_matrix(m: &Matrix, c: &Congruence) -> Result<(Matrix, ValueMap)> {
    if !c.verified {
        return Err(Error::UnverifiedCongruence(m.name().to_string()));
    }
    let p = &c.partition;
    p.check_for(m)?;
    let k = p.len();
    let reps: Vec<Value> = p.blocks().iter().map(|b| b[0]).collect();
    let designated: Vec<Value> = (0..k).filter(|&b| m.designates(reps[b])).map(Value::new).collect();
    let ops = m
        .ops()
        .iter()
        .map(|op| {
            let mut args = vec![Value::new(0); op.arity()];
            Operation::from_fn(op.name(), op.arity(), k, |blocks| {
                for (slot, b) in args.iter_mut().zip(blocks) {
                    *slot = reps[b.index()];
                }
                Value::new(p.block_of(op.eval(&args)))
            })
        })
        .collect();
    let factor = Matrix::from_parts(format!("{}/{}", m.name(), k), p.block_names(m), &designated, ops)?;
    let projection = ValueMap::unchecked(
        m.name(),
        factor.name(),
        m.values().map(|v| Value::new(p.block_of(v))).collect(),
        if k == m.len() { MapKind::Iso } else { MapKind::Epi },
    );
    Ok((factor, projection))
}
