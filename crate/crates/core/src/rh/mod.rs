//! Riemann–Hurwitz accounting and generating vectors.
//!
//! A finite group `G` acts faithfully on the closed surface of genus `σ ≥ 2`
//! with quotient signature `(ρ; m₁, …, m_r)` exactly when
//! `2σ − 2 = |G| (2ρ − 2 + Σ (1 − 1/mᵢ))` and `G` has a generating vector
//! of that signature.

mod action;
mod signature;
mod vector;

pub use action::{
    accola_maclachlan_action, acts_on, canonical_actions, cyclic_two_point_action,
    cyclic_unramified_action, free_action, free_action_auto, ActionRecord, ActionSearch, GroupRef,
    Provenance,
};
pub use signature::{
    divisors, enumerate_signatures, required_measure, rh_genus, rh_measure, RhMeasure, Signature,
};
pub use vector::{
    find_generating_vector, find_generating_vector_with_budget, verify_vector, GeneratingVector,
    VectorSearch, Verdict, VerificationReport, DEFAULT_NODE_BUDGET,
};
