use std::fmt;

use crate::algebra::Partition;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Operation, Tuples, Value};

/// Outcome of a check that, on failure, carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    Raw,
    Hom,
    Epi,
    Iso,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::Raw => "raw",
            MapKind::Hom => "hom",
            MapKind::Epi => "epi",
            MapKind::Iso => "iso",
        })
    }
}

/// A total function between the value sets of two matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValueMap {
    pub source: String,
    pub target: String,
    mapping: Vec<Value>,
    pub kind: MapKind,
}

impl ValueMap {
    /// An unchecked map; errors if it is not total from `source` into `target`.
    pub fn raw(source: &Matrix, target: &Matrix, mapping: Vec<Value>) -> Result<Self> {
        if mapping.len() != source.len() {
            return Err(Error::InvalidMap(format!(
                "map has {} entries, {} has {} values",
                mapping.len(),
                source.name(),
                source.len()
            )));
        }
        if let Some(v) = mapping.iter().find(|v| !target.contains(**v)) {
            return Err(Error::ForeignValue {
                index: v.index(),
                matrix: target.name().to_string(),
            });
        }
        Ok(Self::unchecked(source.name(), target.name(), mapping, MapKind::Raw))
    }

    pub(crate) fn unchecked(source: &str, target: &str, mapping: Vec<Value>, kind: MapKind) -> Self {
        ValueMap {
            source: source.to_string(),
            target: target.to_string(),
            mapping,
            kind,
        }
    }

    pub fn identity(m: &Matrix) -> Self {
        Self::unchecked(m.name(), m.name(), m.values().collect(), MapKind::Iso)
    }

    /// Builds a raw map from `(source name, target name)` pairs.
    pub fn from_names(source: &Matrix, target: &Matrix, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut mapping = vec![None; source.len()];
        for (s, t) in pairs {
            mapping[source.lookup(s)?.index()] = Some(target.lookup(t)?);
        }
        let mapping = mapping
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::InvalidMap(format!("no image for {}", source.value_names()[i]))))
            .collect::<Result<Vec<_>>>()?;
        Self::raw(source, target, mapping)
    }

    #[inline]
    pub fn apply(&self, v: Value) -> Value {
        self.mapping[v.index()]
    }

    pub fn mapping(&self) -> &[Value] {
        &self.mapping
    }

    /// `other ∘ self`: first this map, then `other`.
    pub fn then(&self, other: &ValueMap) -> Result<ValueMap> {
        if self.mapping.iter().any(|v| v.index() >= other.mapping.len()) {
            return Err(Error::InvalidMap(format!(
                "cannot compose {}→{} with {}→{}",
                self.source, self.target, other.source, other.target
            )));
        }
        let mapping = self.mapping.iter().map(|v| other.apply(*v)).collect();
        let kind = match (self.kind, other.kind) {
            (MapKind::Raw, _) | (_, MapKind::Raw) => MapKind::Raw,
            (MapKind::Iso, MapKind::Iso) => MapKind::Iso,
            (MapKind::Hom, _) | (_, MapKind::Hom) => MapKind::Hom,
            _ => MapKind::Epi,
        };
        Ok(Self::unchecked(&self.source, &other.target, mapping, kind))
    }

    pub fn is_surjective(&self, target_len: usize) -> bool {
        let mut hit = vec![false; target_len];
        for v in &self.mapping {
            hit[v.index()] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// `source-name -> target-name` pairs in source order.
    pub fn pairs<'a>(&'a self, source: &'a Matrix, target: &'a Matrix) -> impl Iterator<Item = (&'a str, &'a str)> {
        source
            .values()
            .map(move |v| (source.value_name(v), target.value_name(self.apply(v))))
    }
}

/// Why a map fails to be a strong homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomViolation {
    /// `f(op(args)) = image_of_result` but `op(f(args)) = result_of_images`.
    Operation {
        op: String,
        args: Vec<Value>,
        image_of_result: Value,
        result_of_images: Value,
    },
    /// `value` is designated in the source but its image is not, or the
    /// other way round.
    Designation { value: Value },
}

pub(crate) fn check_signatures(m1: &Matrix, m2: &Matrix) -> Result<Vec<usize>> {
    if m1.signature() != m2.signature() {
        return Err(Error::SignatureMismatch {
            left: m1.name().to_string(),
            right: m2.name().to_string(),
        });
    }
    Ok(m1
        .ops()
        .iter()
        .map(|o| m2.op_index(o.name(), o.arity()).expect("signatures agree"))
        .collect())
}

/// Checks that `f` commutes with every operation and preserves designation
/// in both directions.
pub fn is_strong_homomorphism(m1: &Matrix, m2: &Matrix, f: &ValueMap) -> Result<Verdict<HomViolation>> {
    if f.mapping.len() != m1.len() {
        return Err(Error::InvalidMap(format!("map is not total on {}", m1.name())));
    }
    if let Some(v) = f.mapping.iter().find(|v| !m2.contains(**v)) {
        return Err(Error::ForeignValue {
            index: v.index(),
            matrix: m2.name().to_string(),
        });
    }
    let op_map = check_signatures(m1, m2)?;
    for v in m1.values() {
        if m1.designates(v) != m2.designates(f.apply(v)) {
            return Ok(Verdict::Fails(HomViolation::Designation { value: v }));
        }
    }
    for (op1, &j) in m1.ops().iter().zip(&op_map) {
        let op2: &Operation = m2.op(j);
        let mut image = vec![Value::new(0); op1.arity()];
        for args in Tuples::new(m1.len(), op1.arity()) {
            for (slot, a) in image.iter_mut().zip(&args) {
                *slot = f.apply(*a);
            }
            let lhs = f.apply(op1.eval(&args));
            let rhs = op2.eval(&image);
            if lhs != rhs {
                return Ok(Verdict::Fails(HomViolation::Operation {
                    op: op1.name().to_string(),
                    args,
                    image_of_result: lhs,
                    result_of_images: rhs,
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Checks `f` and returns it relabelled as hom, epi or iso when it is a
/// strong homomorphism.
pub fn classify(m1: &Matrix, m2: &Matrix, f: &ValueMap) -> Result<Option<ValueMap>> {
    if !is_strong_homomorphism(m1, m2, f)?.holds() {
        return Ok(None);
    }
    let kind = if f.is_surjective(m2.len()) {
        if m1.len() == m2.len() {
            MapKind::Iso
        } else {
            MapKind::Epi
        }
    } else {
        MapKind::Hom
    };
    Ok(Some(ValueMap { kind, ..f.clone() }))
}

/// The fibres of `f`, as a partition of its source.
pub fn induced_partition(f: &ValueMap) -> Partition {
    Partition::from_labels(&f.source, &f.mapping)
}

/// Componentwise product; values are pairs in `m1`-major order, named by
/// concatenating component names.
pub fn direct_product(m1: &Matrix, m2: &Matrix) -> Result<Matrix> {
    let op_map = check_signatures(m1, m2)?;
    let (n1, n2) = (m1.len(), m2.len());
    if n1 * n2 > crate::matrix::MAX_VALUES {
        return Err(Error::domain(format!(
            "product would have {} values, at most {} supported",
            n1 * n2,
            crate::matrix::MAX_VALUES
        )));
    }
    let names: Vec<String> = m1
        .value_names()
        .iter()
        .flat_map(|a| m2.value_names().iter().map(move |b| format!("{a}{b}")))
        .collect();
    let designated: Vec<Value> = (0..n1 * n2)
        .filter(|i| m1.designates(Value::new(i / n2)) && m2.designates(Value::new(i % n2)))
        .map(Value::new)
        .collect();
    let ops = m1
        .ops()
        .iter()
        .zip(&op_map)
        .map(|(o1, &j)| {
            let o2 = m2.op(j);
            let mut left = vec![Value::new(0); o1.arity()];
            let mut right = vec![Value::new(0); o1.arity()];
            Operation::from_fn(o1.name(), o1.arity(), n1 * n2, |args| {
                for (k, a) in args.iter().enumerate() {
                    left[k] = Value::new(a.index() / n2);
                    right[k] = Value::new(a.index() % n2);
                }
                Value::new(o1.eval(&left).index() * n2 + o2.eval(&right).index())
            })
        })
        .collect();
    Matrix::from_parts(format!("{}×{}", m1.name(), m2.name()), names, &designated, ops)
}
