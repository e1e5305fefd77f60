use std::fmt;
use std::time::Duration;

use thiserror::Error;

use crate::algebra::{Congruence, ValueMap};
use crate::matrix::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A problem in spec or formula text, pointing at the offending position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceError {
    /// 1-based line.
    pub line: usize,
    /// 1-based column, counted in characters.
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for SourceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for SourceError {}

/// Which budget ran out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exhausted {
    Time(Duration),
    Nodes(u64),
}

impl fmt::Display for Exhausted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exhausted::Time(d) => write!(f, "time budget of {:.1}s exhausted", d.as_secs_f64()),
            Exhausted::Nodes(n) => write!(f, "node budget of {n} exhausted"),
        }
    }
}

/// Results gathered before a budget ran out. Never a complete answer.
#[derive(Clone, Debug, Default)]
pub enum Partial {
    #[default]
    Nothing,
    Congruences(Vec<Congruence>),
    Epimorphisms(Vec<ValueMap>),
}

impl Partial {
    pub fn len(&self) -> usize {
        match self {
            Partial::Nothing => 0,
            Partial::Congruences(c) => c.len(),
            Partial::Epimorphisms(e) => e.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Algebraic laws checked for distribution quantifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AciLaw {
    Associativity,
    Commutativity,
    Idempotence,
}

impl fmt::Display for AciLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AciLaw::Associativity => "associativity",
            AciLaw::Commutativity => "commutativity",
            AciLaw::Idempotence => "idempotence",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown operation {0}")]
    UnknownOperation(String),
    #[error("operation {name} takes {} argument(s), got {found}", join_usizes(expected))]
    ArityMismatch {
        name: String,
        expected: Vec<usize>,
        found: usize,
    },
    #[error("value #{index} does not belong to matrix {matrix}")]
    ForeignValue { index: usize, matrix: String },
    #[error("unknown value {name} in matrix {matrix}")]
    UnknownValue { name: String, matrix: String },
    #[error("unknown builtin {0}")]
    UnknownBuiltin(String),
    #[error("matrices {left} and {right} have different operation signatures")]
    SignatureMismatch { left: String, right: String },
    #[error("partition does not belong to matrix {0}")]
    ForeignPartition(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid value map: {0}")]
    InvalidMap(String),
    #[error("partition is not a congruence of {0}")]
    UnverifiedCongruence(String),
    #[error("{cause}; {} partial result(s) kept", partial.len())]
    BudgetExhausted { cause: Exhausted, partial: Partial },
    #[error("no value assigned to atom {0}")]
    MissingAtom(String),
    #[error("{atoms} atoms exceed the atom cap of {cap}")]
    AtomCapExceeded { atoms: usize, cap: usize },
    #[error("{valuations} valuations exceed the valuation cap of {cap}")]
    ValuationCapExceeded { valuations: u128, cap: u128 },
    #[error("operation {op} is not ACI: {law} fails at ({})", witness.join(", "))]
    NotAci {
        op: String,
        law: AciLaw,
        witness: Vec<String>,
    },
    #[error("{0}")]
    Domain(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(ValidationReport),
    #[error("node {0} is already expanded")]
    NodeAlreadyExpanded(usize),
    #[error("node {0} carries an atomic formula")]
    AtomicNode(usize),
    #[error("no tableau node {0}")]
    UnknownNode(usize),
    #[error("{0}")]
    Source(#[from] SourceError),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

fn join_usizes(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" or ")
}
