//! Finite-valued logical matrices: construction, homomorphisms and
//! congruences, consequence, and signed tableau calculi.

pub mod algebra;
pub mod budget;
pub mod builtins;
pub mod error;
pub mod formula;
pub mod latex;
pub mod matrix;
pub mod mvl;
pub mod semantics;
pub mod tableau;

pub use algebra::{
    automorphisms, classify, direct_product, enumerate_congruences, factor_matrix, find_epimorphisms, find_isomorphism,
    induced_partition, is_congruence, is_strong_homomorphism, search_space_stats, Congruence, CongruenceOptions,
    EpiOptions, MapKind, Partition, SearchStats, ValueMap, Verdict,
};
pub use budget::Budget;
pub use builtins::{build_builtin, build_seven_valued, SevenValuedSpec};
pub use error::{Error, Exhausted, Partial, Result, SourceError};
pub use formula::{parse_formula, Formula};
pub use latex::{emit_latex_rules, emit_latex_tables};
pub use matrix::{validate_matrix, Matrix, Operation, Value, ValueSet};
pub use mvl::{parse_logic, serialize_logic};
pub use semantics::{entails, evaluate, is_tautology, EntailOptions, EntailmentVerdict, Valuation};
pub use tableau::{generate_rules, prove_entailment, SignedFormula, Tableau};
