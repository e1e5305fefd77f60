//! Distribution quantifiers induced by associative, commutative, idempotent
//! binary operations: the quantifier takes a set of values to their fold.

use crate::algebra::Verdict;
use crate::error::{AciLaw, Error, Result};
use crate::matrix::{Matrix, Value, ValueSet};

/// Dense tables are limited to this many values (about a million subsets).
pub const MAX_DISTRIBUTION_VALUES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AciWitness {
    pub law: AciLaw,
    pub args: Vec<Value>,
}

fn binary_op(m: &Matrix, op: &str) -> Result<usize> {
    m.resolve_op(op, 2)
}

pub fn is_aci(m: &Matrix, op: &str) -> Result<Verdict<AciWitness>> {
    let op = m.op(binary_op(m, op)?);
    let fail = |law, args: &[Value]| {
        Ok(Verdict::Fails(AciWitness {
            law,
            args: args.to_vec(),
        }))
    };
    for x in m.values() {
        if op.binary(x, x) != x {
            return fail(AciLaw::Idempotence, &[x]);
        }
    }
    for x in m.values() {
        for y in m.values() {
            if op.binary(x, y) != op.binary(y, x) {
                return fail(AciLaw::Commutativity, &[x, y]);
            }
        }
    }
    for x in m.values() {
        for y in m.values() {
            let xy = op.binary(x, y);
            for z in m.values() {
                if op.binary(xy, z) != op.binary(x, op.binary(y, z)) {
                    return fail(AciLaw::Associativity, &[x, y, z]);
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Folds of all non-empty subsets, indexed by bitmask over declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    op: String,
    size: usize,
    /// entry `mask - 1`
    folds: Vec<Value>,
}

impl DistributionTable {
    pub fn op(&self) -> &str {
        &self.op
    }

    /// `2^n - 1`.
    pub fn len(&self) -> usize {
        self.folds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.folds.is_empty()
    }

    pub fn get(&self, subset: ValueSet) -> Result<Value> {
        if subset == 0 {
            return Err(Error::domain("the empty set has no fold"));
        }
        self.folds
            .get((subset - 1) as usize)
            .copied()
            .ok_or_else(|| Error::domain(format!("subset mask {subset:#x} exceeds {} values", self.size)))
    }

    pub fn fold(&self, values: &[Value]) -> Result<Value> {
        let mask = values.iter().fold(0, |acc: ValueSet, v| acc | v.bit());
        self.get(mask)
    }

    /// `(mask, fold)` pairs in increasing mask order.
    pub fn iter(&self) -> impl Iterator<Item = (ValueSet, Value)> + '_ {
        self.folds.iter().enumerate().map(|(i, &v)| (i as ValueSet + 1, v))
    }

    /// Number of subsets whose fold differs from `v`.
    pub fn count_other_than(&self, v: Value) -> usize {
        self.folds.iter().filter(|&&x| x != v).count()
    }
}

pub fn distribution_table(m: &Matrix, op_name: &str) -> Result<DistributionTable> {
    if let Verdict::Fails(w) = is_aci(m, op_name)? {
        return Err(Error::NotAci {
            op: op_name.to_string(),
            law: w.law,
            witness: w.args.iter().map(|&v| m.value_name(v).to_string()).collect(),
        });
    }
    let n = m.len();
    if n > MAX_DISTRIBUTION_VALUES {
        return Err(Error::domain(format!(
            "distribution tables support at most {MAX_DISTRIBUTION_VALUES} values, {} has {n}",
            m.name()
        )));
    }
    let op = m.op(binary_op(m, op_name)?);
    let mut folds: Vec<Value> = Vec::with_capacity((1 << n) - 1);
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let v = if rest == 0 {
            Value::new(low)
        } else {
            op.binary(folds[rest - 1], Value::new(low))
        };
        folds.push(v);
    }
    Ok(DistributionTable {
        op: op_name.to_string(),
        size: n,
        folds,
    })
}
