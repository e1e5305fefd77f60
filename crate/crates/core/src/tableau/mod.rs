//! Signed tableaux with rules generated from the truth tables.

mod prover;
mod rules;

pub use prover::{initial_set, prove_entailment, ProofResult, SignedFormula, Tableau, TableauStats};
pub use rules::{generate_rules, generate_rules_with, rule_for, Branch, Rule, RuleOptions, RuleSet};
