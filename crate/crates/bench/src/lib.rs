//! Shared fixtures for the benchmarks.

use manyval::{build_builtin, parse_formula, Formula, Matrix};

pub fn builtin(name: &str) -> Matrix {
    build_builtin(name).expect("builtin exists")
}

pub fn formulas(texts: &[&str]) -> Vec<Formula> {
    texts
        .iter()
        .map(|t| parse_formula(t).expect("formula parses"))
        .collect()
}

/// Entailments of increasing difficulty for NC: premises and conclusion.
pub const NC_CASES: [(&[&str], &str); 4] = [
    (&["A | B"], "B"),
    (&["A & (B | ~A)"], "B"),
    (&["A & B", "~(A | C)"], "C | ~C"),
    (&["~(A | ~B)", "A & (A | B & A)"], "B"),
];
