//! Evaluation, consequence by exhaustive valuation, and distribution
//! quantifiers.

mod agreement;
mod eval;
mod quantifier;

pub use agreement::{check_consequence_agreement, AgreementCase, AgreementReport};
pub use eval::{
    entails, entails_with, evaluate, is_countervaluation, is_tautology, EntailOptions, EntailmentVerdict, Valuation,
    DEFAULT_ATOM_CAP, DEFAULT_VALUATION_CAP,
};
pub use quantifier::{distribution_table, is_aci, AciWitness, DistributionTable, MAX_DISTRIBUTION_VALUES};
