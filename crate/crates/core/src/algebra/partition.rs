use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Value};

/// A partition of a matrix's value set, kept in canonical form: members of
/// each block in declaration order, blocks ordered by least member.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    matrix: String,
    blocks: Vec<Vec<Value>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Partition whose blocks are the classes of equal `labels[i]`.
    pub fn from_labels<L: PartialEq>(matrix: &str, labels: &[L]) -> Self {
        let mut blocks: Vec<Vec<Value>> = Vec::new();
        let mut firsts: Vec<usize> = Vec::new();
        let mut block_of = vec![0; labels.len()];
        for (i, l) in labels.iter().enumerate() {
            match firsts.iter().position(|&f| labels[f] == *l) {
                Some(b) => {
                    blocks[b].push(Value::new(i));
                    block_of[i] = b;
                }
                None => {
                    firsts.push(i);
                    block_of[i] = blocks.len();
                    blocks.push(vec![Value::new(i)]);
                }
            }
        }
        Partition {
            matrix: matrix.to_string(),
            blocks,
            block_of,
        }
    }

    /// Checks that `blocks` are non-empty, disjoint and cover `m`.
    pub fn from_blocks(m: &Matrix, blocks: Vec<Vec<Value>>) -> Result<Self> {
        let mut labels = vec![usize::MAX; m.len()];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &v in block {
                if !m.contains(v) {
                    return Err(Error::ForeignValue {
                        index: v.index(),
                        matrix: m.name().to_string(),
                    });
                }
                if labels[v.index()] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "value {} appears in more than one block",
                        m.value_name(v)
                    )));
                }
                labels[v.index()] = b;
            }
        }
        if let Some(i) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "value {} is in no block",
                m.value_names()[i]
            )));
        }
        Ok(Self::from_labels(m.name(), &labels))
    }

    /// All singletons.
    pub fn identity(m: &Matrix) -> Self {
        let labels: Vec<usize> = (0..m.len()).collect();
        Self::from_labels(m.name(), &labels)
    }

    /// Parses the literal syntax `{a,b|c|d,e}`.
    pub fn parse(m: &Matrix, literal: &str) -> Result<Self> {
        let inner = literal
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::InvalidPartition(format!("expected {{a,b|c}}, got {literal}")))?;
        let blocks = inner
            .split('|')
            .map(|block| {
                block
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|name| m.lookup(name))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_blocks(m, blocks)
    }

    pub fn matrix_name(&self) -> &str {
        &self.matrix
    }

    /// Number of values partitioned.
    pub fn size(&self) -> usize {
        self.block_of.len()
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<Value>] {
        &self.blocks
    }

    pub fn block_of(&self, v: Value) -> usize {
        self.block_of[v.index()]
    }

    pub fn same_block(&self, a: Value, b: Value) -> bool {
        self.block_of(a) == self.block_of(b)
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.len() == self.block_of.len()
    }

    /// Errors unless this partition was made for `m`.
    pub fn check_for(&self, m: &Matrix) -> Result<()> {
        if self.size() != m.len() || self.matrix != m.name() {
            Err(Error::ForeignPartition(m.name().to_string()))
        } else {
            Ok(())
        }
    }

    /// Canonical order: fewer blocks first, then blocks compared
    /// lexicographically.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.blocks.cmp(&other.blocks))
    }

    /// Renders the partition literal, e.g. `{Bb,Fb|Tn}`.
    pub fn to_literal(&self, m: &Matrix) -> String {
        let mut out = String::from("{");
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                out.push('|');
            }
            for (j, v) in block.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{}", m.value_name(*v));
            }
        }
        out.push('}');
        out
    }

    /// Block names joined with `·`, as used for factor matrix values.
    pub fn block_names(&self, m: &Matrix) -> Vec<String> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|v| m.value_name(*v)).collect::<Vec<_>>().join("·"))
            .collect()
    }
}
