//! Per-genus certificates that no finite group contains every group acting
//! on a surface of that genus, and the singular-set classifier for
//! locally symmetric manifolds.

mod bounds;
mod trichotomy;
mod verdict;

pub use bounds::{
    accola_maclachlan_bound, fallback_bound, generic_bound, hurwitz_bound, lcm_all,
    lcm_certificate, minimal_positive_measures, standard_orders, GenericBound, LcmCertificate,
    LcmVerdict, MeasureScan, MeasureValue,
};
pub use trichotomy::{
    trichotomy_classify, Context, GeometryProfile, Singular, TrichotomyCase, TrichotomyOutcome,
};
pub use verdict::{
    arithmetic_notes, audit_witness, catalog_check, divisibility_certificate,
    embedding_certificate, second_measure_note, sl2_7_published_triple, supplementary_witness,
    sylow_refutation, sylow_refutation_sigma8, weakly_exclusive_verdict, ArithmeticNote,
    CatalogCandidate, CatalogCheck, Certificate, DivisibilityCertificate, EmbeddingCertificate,
    EmbeddingResult, ExclusivityVerdict, Outcome, SubgroupCountCertificate,
    SupplementaryCertificate, SylowCertificate, VerdictOptions, WitnessAudit,
};
