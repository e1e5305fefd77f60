//! Branch-expansion rules read off the truth tables.
//!
//! A signed formula `v:A` says that `A` does not take the value `v`. For
//! `v:op(A1, ..., An)` that is the conjunction, over all tuples `t` with
//! `op(t) = v`, of "some `Ai` is not `ti`". Multiplying this out gives the
//! branches of the rule.

use std::fmt;

use crate::matrix::{Matrix, Tuples, Value, ValueSet};

/// One branch: for each argument position the set of values it must avoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Branch {
    excluded: Vec<ValueSet>,
}

impl Branch {
    fn empty(arity: usize) -> Self {
        Branch {
            excluded: vec![0; arity],
        }
    }

    pub fn excluded(&self) -> &[ValueSet] {
        &self.excluded
    }

    /// `(sign, argument index)` pairs, by argument then value.
    pub fn constraints(&self) -> Vec<(Value, usize)> {
        let mut out = Vec::new();
        for (i, &mask) in self.excluded.iter().enumerate() {
            let mut m = mask;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                out.push((Value::new(v), i));
                m &= m - 1;
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.excluded.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.excluded.iter().all(|&m| m == 0)
    }

    pub fn satisfied_by(&self, args: &[Value]) -> bool {
        self.excluded.iter().zip(args).all(|(&m, a)| m & a.bit() == 0)
    }

    fn is_subset_of(&self, other: &Branch) -> bool {
        self.excluded.iter().zip(&other.excluded).all(|(&a, &b)| a & !b == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub op: String,
    pub arity: usize,
    pub sign: Value,
    pub branches: Vec<Branch>,
}

impl Rule {
    /// Whether an argument tuple meets some branch.
    pub fn satisfied_by(&self, args: &[Value]) -> bool {
        self.branches.iter().any(|b| b.satisfied_by(args))
    }

    pub fn display<'a>(&'a self, m: &'a Matrix) -> impl fmt::Display + 'a {
        DisplayRule { rule: self, m }
    }
}

struct DisplayRule<'a> {
    rule: &'a Rule,
    m: &'a Matrix,
}

impl fmt::Display for DisplayRule<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.rule;
        let args: Vec<String> = (1..=r.arity).map(|i| format!("A{i}")).collect();
        write!(f, "{}:{}({}) =>", self.m.value_name(r.sign), r.op, args.join(", "))?;
        if r.branches.is_empty() {
            return f.write_str(" ×");
        }
        for (k, b) in r.branches.iter().enumerate() {
            f.write_str(if k == 0 { " " } else { " | " })?;
            let cs: Vec<String> = b
                .constraints()
                .iter()
                .map(|&(v, i)| format!("{}:A{}", self.m.value_name(v), i + 1))
                .collect();
            if cs.is_empty() {
                f.write_str("()")?;
            } else {
                write!(f, "{}", cs.join(", "))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleOptions {
    /// Drop branches that contain another branch.
    pub subsume: bool,
}

impl Default for RuleOptions {
    fn default() -> Self {
        RuleOptions { subsume: true }
    }
}

/// Removes every branch that is a superset of another one (keeping the first
/// of equal branches).
fn prune(branches: &mut Vec<Branch>) {
    branches.sort_by_key(|b| (b.len(), b.clone()));
    branches.dedup();
    let mut kept: Vec<Branch> = Vec::with_capacity(branches.len());
    for b in branches.drain(..) {
        if !kept.iter().any(|k| k.is_subset_of(&b)) {
            kept.push(b);
        }
    }
    *branches = kept;
}

pub fn rule_for(m: &Matrix, op_index: usize, sign: Value, options: RuleOptions) -> Rule {
    let op = m.op(op_index);
    let (n, r) = (m.len(), op.arity());
    let full = m.full_mask();
    let mut branches = vec![Branch::empty(r)];
    for t in Tuples::new(n, r).filter(|t| op.eval(t) == sign) {
        let mut next = Vec::with_capacity(branches.len() * r);
        for b in &branches {
            if !b.satisfied_by(&t) {
                // already avoids t somewhere: the clause holds as is
                next.push(b.clone());
                continue;
            }
            for (i, a) in t.iter().enumerate() {
                let mut c = b.clone();
                c.excluded[i] |= a.bit();
                if c.excluded[i] != full {
                    next.push(c);
                }
            }
        }
        if options.subsume {
            prune(&mut next);
        } else {
            next.sort();
            next.dedup();
        }
        branches = next;
    }
    if options.subsume {
        prune(&mut branches);
    }
    Rule {
        op: op.name().to_string(),
        arity: r,
        sign,
        branches,
    }
}

/// Rules for every operation and sign, indexed `[op][sign]`.
#[derive(Clone, Debug)]
pub struct RuleSet {
    rules: Vec<Vec<Rule>>,
}

impl RuleSet {
    pub fn get(&self, op_index: usize, sign: Value) -> &Rule {
        &self.rules[op_index][sign.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.rules.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn generate_rules(m: &Matrix) -> RuleSet {
    generate_rules_with(m, RuleOptions::default())
}

pub fn generate_rules_with(m: &Matrix, options: RuleOptions) -> RuleSet {
    RuleSet {
        rules: (0..m.ops().len())
            .map(|i| m.values().map(|v| rule_for(m, i, v, options)).collect())
            .collect(),
    }
}
