//! Logical matrices: named truth values, a designated subset and dense truth
//! tables for each operation.
//!
//! A [`Matrix`] is immutable once built and always well-formed. Arbitrary,
//! possibly broken candidate structures are represented by [`RawMatrix`] and
//! checked with [`validate_matrix`], which reports every problem it finds
//! instead of stopping at the first.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported number of truth values; value subsets fit in a `u128`.
pub const MAX_VALUES: usize = 128;

/// A set of values as a bitmask over declaration order.
pub type ValueSet = u128;

/// Largest table a single operation may have (entries).
pub const MAX_TABLE_ENTRIES: usize = 1 << 24;

/// A truth value, identified by its position in the matrix's declaration
/// order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value(u8);

impl Value {
    pub fn new(index: usize) -> Self {
        assert!(index < MAX_VALUES, "value index {index} out of range");
        Value(index as u8)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn bit(self) -> ValueSet {
        1 << self.0
    }
}

/// Iterates over all `arity`-tuples of values from `0..size` in row-major
/// order (first position most significant).
#[derive(Clone, Debug)]
pub struct Tuples {
    size: usize,
    current: Vec<Value>,
    done: bool,
}

impl Tuples {
    pub fn new(size: usize, arity: usize) -> Self {
        Tuples {
            size,
            current: vec![Value(0); arity],
            done: size == 0 && arity > 0,
        }
    }
}

impl Iterator for Tuples {
    type Item = Vec<Value>;

    fn next(&mut self) -> Option<Vec<Value>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        // odometer step
        let mut pos = self.current.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            if self.current[pos].index() + 1 < self.size {
                self.current[pos] = Value(self.current[pos].0 + 1);
                break;
            }
            self.current[pos] = Value(0);
        }
        Some(out)
    }
}

pub(crate) fn table_len(size: usize, arity: usize) -> Option<usize> {
    let mut len = 1usize;
    for _ in 0..arity {
        len = len.checked_mul(size)?;
        if len > MAX_TABLE_ENTRIES {
            return None;
        }
    }
    Some(len)
}

/// A named operation with a total, dense truth table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Operation {
    name: String,
    arity: usize,
    size: usize,
    table: Vec<Value>,
}

impl Operation {
    /// Builds the table by calling `f` on every argument tuple in row-major
    /// order.
    pub fn from_fn(name: impl Into<String>, arity: usize, size: usize, mut f: impl FnMut(&[Value]) -> Value) -> Self {
        let table = Tuples::new(size, arity).map(|t| f(&t)).collect();
        Operation {
            name: name.into(),
            arity,
            size,
            table,
        }
    }

    /// Wraps a row-major table. Length and outputs are checked when the
    /// operation is placed into a matrix.
    pub fn from_table(name: impl Into<String>, arity: usize, size: usize, table: Vec<Value>) -> Self {
        Operation {
            name: name.into(),
            arity,
            size,
            table,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The dense table, row-major in declaration order.
    pub fn table(&self) -> &[Value] {
        &self.table
    }

    #[inline]
    pub fn index_of(&self, args: &[Value]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        args.iter().fold(0, |acc, a| acc * self.size + a.index())
    }

    /// Table lookup without validation; `args` must have the right length and
    /// contain values of the owning matrix.
    #[inline]
    pub fn eval(&self, args: &[Value]) -> Value {
        self.table[self.index_of(args)]
    }

    #[inline]
    pub fn unary(&self, a: Value) -> Value {
        self.table[a.index()]
    }

    #[inline]
    pub fn binary(&self, a: Value, b: Value) -> Value {
        self.table[a.index() * self.size + b.index()]
    }
}

/// A finite logical matrix.
///
/// Equality is structural and order-sensitive: two matrices are equal when
/// they declare the same value names in the same order, the same designated
/// set and the same operations with the same tables. The matrix name is not
/// compared.
#[derive(Clone, Debug)]
pub struct Matrix {
    name: String,
    values: Vec<String>,
    designated: ValueSet,
    ops: Vec<Operation>,
    by_name: HashMap<String, Value>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && self.designated == other.designated && self.ops == other.ops
    }
}

impl Eq for Matrix {}

impl Matrix {
    /// Assembles a matrix from already-dense parts, checking every invariant.
    pub fn from_parts(
        name: impl Into<String>,
        values: Vec<String>,
        designated: &[Value],
        ops: Vec<Operation>,
    ) -> Result<Self> {
        let name = name.into();
        let mut raw = RawMatrix::new(name.clone());
        raw.values = values.iter().map(Token::new).collect();
        raw.designated = designated
            .iter()
            .map(|v| {
                Token::new(
                    values
                        .get(v.index())
                        .cloned()
                        .unwrap_or_else(|| format!("#{}", v.index())),
                )
            })
            .collect();
        // Check dense tables directly; building raw entries for them would be
        // wasteful for large products.
        let mut report = ValidationReport::default();
        check_header(&raw, &mut report);
        let mut seen_ops = HashSet::new();
        for op in &ops {
            let loc = format!("op {}/{}", op.name, op.arity);
            if !is_identifier(&op.name) {
                report.error(format!("invalid operation name {:?}", op.name), &loc);
            }
            if !seen_ops.insert((op.name.clone(), op.arity)) {
                report.error(format!("duplicate operation {}/{}", op.name, op.arity), &loc);
            }
            match table_len(values.len(), op.arity) {
                Some(len) if len == op.table.len() && op.size == values.len() => {}
                _ => report.error(format!("table of {}/{} has the wrong size", op.name, op.arity), &loc),
            }
            if op.table.iter().any(|v| v.index() >= values.len()) {
                report.error(
                    format!("table of {}/{} has an undeclared output", op.name, op.arity),
                    &loc,
                );
            }
        }
        if !report.ok() {
            return Err(Error::InvalidMatrix(report));
        }
        Ok(Self::assemble(name, values, designated, ops))
    }

    fn assemble(name: String, values: Vec<String>, designated: &[Value], ops: Vec<Operation>) -> Self {
        let by_name = values
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), Value::new(i)))
            .collect();
        let designated = designated.iter().fold(0, |m: ValueSet, v| m | v.bit());
        Matrix {
            name,
            values,
            designated,
            ops,
            by_name,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Same matrix under another name.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Matrix {
            name: name.into(),
            ..self.clone()
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> impl ExactSizeIterator<Item = Value> + Clone + '_ {
        (0..self.values.len()).map(Value::new)
    }

    pub fn value_names(&self) -> &[String] {
        &self.values
    }

    pub fn value_name(&self, v: Value) -> &str {
        &self.values[v.index()]
    }

    pub fn value(&self, name: &str) -> Option<Value> {
        self.by_name.get(name).copied()
    }

    /// Like [`Matrix::value`] but with a descriptive error.
    pub fn lookup(&self, name: &str) -> Result<Value> {
        self.value(name).ok_or_else(|| Error::UnknownValue {
            name: name.to_string(),
            matrix: self.name.clone(),
        })
    }

    pub fn contains(&self, v: Value) -> bool {
        v.index() < self.values.len()
    }

    fn check_value(&self, v: Value) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::ForeignValue {
                index: v.index(),
                matrix: self.name.clone(),
            })
        }
    }

    /// Bitmask of designated values (bit `i` for value `i`).
    pub fn designated_mask(&self) -> ValueSet {
        self.designated
    }

    /// Bitmask of all values.
    pub fn full_mask(&self) -> ValueSet {
        if self.values.len() == MAX_VALUES {
            ValueSet::MAX
        } else {
            (1 << self.values.len()) - 1
        }
    }

    pub fn designated(&self) -> impl Iterator<Item = Value> + '_ {
        self.values().filter(|v| self.designates(*v))
    }

    pub fn undesignated(&self) -> impl Iterator<Item = Value> + '_ {
        self.values().filter(|v| !self.designates(*v))
    }

    pub fn designated_count(&self) -> usize {
        self.designated.count_ones() as usize
    }

    /// Unchecked designation test.
    #[inline]
    pub fn designates(&self, v: Value) -> bool {
        self.designated & v.bit() != 0
    }

    pub fn is_designated(&self, v: Value) -> Result<bool> {
        self.check_value(v)?;
        Ok(self.designates(v))
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn op(&self, index: usize) -> &Operation {
        &self.ops[index]
    }

    pub fn op_index(&self, name: &str, arity: usize) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name && o.arity == arity)
    }

    /// Resolves `name` with the given arity, distinguishing unknown names
    /// from arity mismatches.
    pub fn resolve_op(&self, name: &str, arity: usize) -> Result<usize> {
        if let Some(i) = self.op_index(name, arity) {
            return Ok(i);
        }
        let arities: Vec<usize> = self.ops.iter().filter(|o| o.name == name).map(|o| o.arity).collect();
        if arities.is_empty() {
            Err(Error::UnknownOperation(name.to_string()))
        } else {
            Err(Error::ArityMismatch {
                name: name.to_string(),
                expected: arities,
                found: arity,
            })
        }
    }

    /// The `(name, arity)` pairs of all operations, sorted.
    pub fn signature(&self) -> Vec<(String, usize)> {
        let mut sig: Vec<_> = self.ops.iter().map(|o| (o.name.clone(), o.arity)).collect();
        sig.sort();
        sig
    }

    /// Looks up the table entry of `op` for `args`.
    pub fn apply_op(&self, op: &str, args: &[Value]) -> Result<Value> {
        let idx = self.resolve_op(op, args.len())?;
        for &a in args {
            self.check_value(a)?;
        }
        Ok(self.ops[idx].eval(args))
    }

    /// [`Matrix::apply_op`] with arguments and result given by name.
    pub fn apply_named(&self, op: &str, args: &[&str]) -> Result<&str> {
        let args = args.iter().map(|a| self.lookup(a)).collect::<Result<Vec<_>>>()?;
        let v = self.apply_op(op, &args)?;
        Ok(self.value_name(v))
    }

    /// Converts back to the unchecked form (entries in row-major order).
    pub fn to_raw(&self) -> RawMatrix {
        let mut raw = RawMatrix::new(self.name.clone());
        raw.values = self.values.iter().map(Token::new).collect();
        raw.designated = self.designated().map(|v| Token::new(self.value_name(v))).collect();
        raw.ops = self
            .ops
            .iter()
            .map(|op| RawOp {
                name: op.name.clone(),
                arity: op.arity,
                pos: None,
                entries: Tuples::new(self.len(), op.arity)
                    .map(|t| RawEntry {
                        args: t.iter().map(|a| Token::new(self.value_name(*a))).collect(),
                        result: Token::new(self.value_name(op.eval(&t))),
                        pos: None,
                    })
                    .collect(),
            })
            .collect();
        raw
    }
}

/// A source position (1-based line and column).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A name, optionally tagged with where it was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub pos: Option<Pos>,
}

impl Token {
    pub fn new(text: impl Into<String>) -> Self {
        Token {
            text: text.into(),
            pos: None,
        }
    }

    pub fn at(text: impl Into<String>, pos: Pos) -> Self {
        Token {
            text: text.into(),
            pos: Some(pos),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEntry {
    pub args: Vec<Token>,
    pub result: Token,
    pub pos: Option<Pos>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawOp {
    pub name: String,
    pub arity: usize,
    pub entries: Vec<RawEntry>,
    pub pos: Option<Pos>,
}

/// An unchecked candidate matrix, as read from text or assembled by hand.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawMatrix {
    pub name: String,
    pub values: Vec<Token>,
    pub designated: Vec<Token>,
    pub ops: Vec<RawOp>,
}

impl RawMatrix {
    pub fn new(name: impl Into<String>) -> Self {
        RawMatrix {
            name: name.into(),
            ..Default::default()
        }
    }

    /// Validates and builds the matrix. On success the report may still carry
    /// warnings.
    pub fn build(&self) -> std::result::Result<(Matrix, ValidationReport), ValidationReport> {
        let report = validate_matrix(self);
        if !report.ok() {
            return Err(report);
        }
        let values: Vec<String> = self.values.iter().map(|t| t.text.clone()).collect();
        let index: HashMap<&str, Value> = values
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), Value::new(i)))
            .collect();
        let mut designated: Vec<Value> = self.designated.iter().map(|t| index[t.text.as_str()]).collect();
        designated.sort();
        designated.dedup();
        let n = values.len();
        let ops = self
            .ops
            .iter()
            .map(|op| {
                let mut table = vec![Value(0); table_len(n, op.arity).unwrap_or(0)];
                for e in &op.entries {
                    let args: Vec<Value> = e.args.iter().map(|a| index[a.text.as_str()]).collect();
                    let at = args.iter().fold(0, |acc, a| acc * n + a.index());
                    table[at] = index[e.result.text.as_str()];
                }
                Operation::from_table(op.name.clone(), op.arity, n, table)
            })
            .collect();
        Ok((Matrix::assemble(self.name.clone(), values, &designated, ops), report))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Issue {
    pub severity: Severity,
    pub message: String,
    /// Where the problem is: a source position when known, otherwise the
    /// clause or operation concerned.
    pub location: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.location, self.severity, self.message)
    }
}

/// Outcome of [`validate_matrix`]. `ok()` is true iff no issue is an error.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.errors().next().is_none()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.severity == Severity::Warning)
    }

    fn push(&mut self, severity: Severity, message: String, location: &str) {
        self.issues.push(Issue {
            severity,
            message,
            location: location.to_string(),
        });
    }

    fn error(&mut self, message: String, location: &str) {
        self.push(Severity::Error, message, location)
    }

    fn warning(&mut self, message: String, location: &str) {
        self.push(Severity::Warning, message, location)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for issue in &self.issues {
            if !first {
                f.write_str("; ")?;
            }
            first = false;
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

/// Letter followed by letters, digits or underscores.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic()) && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Characters that may not appear in a value name. Besides the structural
/// characters of the spec language this excludes the separators used by the
/// formula, valuation, partition and signed-formula syntaxes.
const RESERVED: &[char] = &[
    ',', '{', '}', '(', ')', '.', '#', ':', '"', '|', '=', '/', ';', '~', '&',
];

pub fn is_value_name(s: &str) -> bool {
    !s.is_empty() && !s.contains("->") && !s.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c))
}

fn loc(pos: Option<Pos>, fallback: &str) -> String {
    match pos {
        Some(p) => format!("{p}"),
        None => fallback.to_string(),
    }
}

fn check_header(m: &RawMatrix, report: &mut ValidationReport) {
    if m.name.is_empty() {
        report.error("matrix name is empty".into(), "logic");
    } else if m.name.contains(['"', '\n', '\r']) {
        report.error(format!("invalid matrix name {:?}", m.name), "logic");
    }
    if m.values.is_empty() {
        report.error("no values declared".into(), "values");
    }
    if m.values.len() > MAX_VALUES {
        report.error(
            format!("{} values declared, at most {MAX_VALUES} supported", m.values.len()),
            "values",
        );
    }
    let mut seen = HashSet::new();
    for v in &m.values {
        let at = loc(v.pos, "values");
        if !is_value_name(&v.text) {
            report.error(format!("invalid value name {:?}", v.text), &at);
        }
        if !seen.insert(v.text.as_str()) {
            report.error(format!("duplicate value {}", v.text), &at);
        }
    }
    let mut designated = HashSet::new();
    for d in &m.designated {
        let at = loc(d.pos, "designated");
        if !seen.contains(d.text.as_str()) {
            report.error(format!("designated value {} is not declared", d.text), &at);
        } else if !designated.insert(d.text.as_str()) {
            report.warning(format!("value {} designated twice", d.text), &at);
        }
    }
    if m.designated.is_empty() {
        report.error("designated set empty".into(), "designated");
    } else if !seen.is_empty() && seen.iter().all(|v| designated.contains(v)) {
        report.error("every value is designated".into(), "designated");
    }
}

/// Checks every matrix invariant of `m`, listing all violations.
pub fn validate_matrix(m: &RawMatrix) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_header(m, &mut report);
    let declared: HashMap<&str, usize> = m.values.iter().enumerate().map(|(i, v)| (v.text.as_str(), i)).collect();
    let n = m.values.len();
    let mut seen_ops = HashSet::new();
    for op in &m.ops {
        let op_loc = loc(op.pos, &format!("op {}/{}", op.name, op.arity));
        if !is_identifier(&op.name) {
            report.error(format!("invalid operation name {:?}", op.name), &op_loc);
        }
        if !seen_ops.insert((op.name.as_str(), op.arity)) {
            report.error(format!("duplicate operation {}/{}", op.name, op.arity), &op_loc);
        }
        let Some(len) = table_len(n.max(1), op.arity) else {
            report.error(format!("table of {}/{} is too large", op.name, op.arity), &op_loc);
            continue;
        };
        // tuple (as indices) -> (result text, position)
        let mut filled: BTreeMap<Vec<usize>, &Token> = BTreeMap::new();
        for e in &op.entries {
            let at = loc(e.pos, &op_loc);
            if e.args.len() != op.arity {
                report.error(
                    format!("entry of {}/{} has {} argument(s)", op.name, op.arity, e.args.len()),
                    &at,
                );
                continue;
            }
            let mut args = Vec::with_capacity(op.arity);
            for a in &e.args {
                match declared.get(a.text.as_str()) {
                    Some(&i) => args.push(i),
                    None => report.error(format!("argument {} is not a declared value", a.text), &loc(a.pos, &at)),
                }
            }
            if !declared.contains_key(e.result.text.as_str()) {
                report.error(
                    format!("output {} is not a declared value", e.result.text),
                    &loc(e.result.pos, &at),
                );
            }
            if args.len() != op.arity {
                continue;
            }
            let tuple = describe(&op.name, e.args.iter().map(|t| t.text.as_str()));
            match filled.get(&args) {
                Some(prev) if prev.text != e.result.text => {
                    report.error(
                        format!("conflicting entries for {tuple}: {} and {}", prev.text, e.result.text),
                        &at,
                    );
                }
                Some(_) => report.warning(format!("duplicate entry for {tuple}"), &at),
                None => {
                    filled.insert(args, &e.result);
                }
            }
        }
        if n > 0 && filled.len() < len {
            for t in Tuples::new(n, op.arity) {
                let key: Vec<usize> = t.iter().map(|v| v.index()).collect();
                if !filled.contains_key(&key) {
                    let tuple = describe(&op.name, key.iter().map(|&i| m.values[i].text.as_str()));
                    report.error(format!("missing entry {tuple}"), &op_loc);
                }
            }
        }
    }
    report
}

fn describe<'a>(op: &str, args: impl Iterator<Item = &'a str>) -> String {
    format!("{op}({})", args.collect::<Vec<_>>().join(","))
}
