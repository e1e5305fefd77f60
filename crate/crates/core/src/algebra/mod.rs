//! Homomorphisms, congruences, factor matrices and isomorphisms.

mod congruence;
mod hom;
mod iso;
mod partition;
pub mod stats;

pub use congruence::{
    congruence_search_nodes, enumerate_congruences, factor_matrix, is_congruence, Congruence, CongruenceOptions,
    CongruenceViolation,
};
pub use hom::{
    classify, direct_product, induced_partition, is_strong_homomorphism, HomViolation, MapKind, ValueMap, Verdict,
};
pub use iso::{automorphisms, find_epimorphisms, find_isomorphism, isomorphisms_with_stats, EpiOptions, IsoStats};
pub use partition::Partition;
pub use stats::{bell, factorial, search_space_stats, stirling2, surjections, SearchStats};
