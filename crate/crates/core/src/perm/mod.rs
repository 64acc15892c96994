//! Exact permutation-group arithmetic.

mod embed;
mod group;
mod permutation;
mod table;

pub use embed::{
    find_monomorphism, find_monomorphism_exhaustive, find_monomorphism_with_budget, is_isomorphic,
    subgroups_of_order, AbsenceReason, EmbeddingSearch, Monomorphism, DEFAULT_EMBEDDING_BUDGET,
    DEFINITIVE_EMBEDDING_CEILING, SUBGROUP_ENUMERATION_CEILING,
};
pub use group::{group_from_generators, PermGroup, DEFAULT_ORDER_CEILING, ELEMENT_CEILING};
pub use permutation::Permutation;
pub use table::{ConjugacyClass, GroupTable, MUL_TABLE_CEILING};
