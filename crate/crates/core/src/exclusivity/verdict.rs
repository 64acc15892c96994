use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, Family};
use crate::error::{Error, Result};
use crate::exclusivity::bounds::{
    fallback_bound, generic_bound, hurwitz_bound, lcm_all, lcm_certificate,
    minimal_positive_measures, standard_orders, GenericBound, LcmCertificate,
};
use crate::fp::accola_maclachlan_group;
use crate::perm::{
    find_monomorphism_exhaustive, find_monomorphism_with_budget, subgroups_of_order, AbsenceReason,
    EmbeddingSearch, PermGroup, Permutation, DEFAULT_EMBEDDING_BUDGET,
};
use crate::rh::{
    accola_maclachlan_action, acts_on, canonical_actions, verify_vector, ActionRecord,
    ActionSearch, GeneratingVector, GroupRef, Provenance, Signature, Verdict, DEFAULT_NODE_BUDGET,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Impossible,
    /// Impossible provided the listed statements hold; they were not checked.
    Conditional {
        assumptions: Vec<String>,
    },
    Inconclusive {
        missing: Vec<String>,
    },
}

/// `ℓ = 2^a · odd` must divide `|G|`. A cyclic witness with an element of
/// order `2^a` and a witness containing a Klein four-group force a
/// non-cyclic Sylow 2-subgroup of order at least `2^(a+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowCertificate {
    pub genus: u64,
    #[serde(with = "crate::serde_u128")]
    pub lcm: u128,
    #[serde(with = "crate::serde_u128")]
    pub two_part: u128,
    #[serde(with = "crate::serde_u128")]
    pub odd_part: u128,
    pub cyclic_witness: GroupRef,
    pub cyclic_element: String,
    pub cyclic_element_order: u64,
    pub klein_witness: GroupRef,
    pub klein_generators: Vec<String>,
    pub klein_four: bool,
    #[serde(with = "crate::serde_u128")]
    pub sylow_lower: u128,
    #[serde(with = "crate::serde_u128")]
    pub lower_bound: u128,
    #[serde(with = "crate::serde_u128")]
    pub bound: u128,
    pub contradiction: bool,
}

/// Orders `n` with `lcm | n` that survive the bounds: either `n` equals the
/// Hurwitz bound, or `n` is at most the bound for the second-smallest measure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityCertificate {
    pub genus: u64,
    #[serde(with = "crate::serde_u128::vec")]
    pub orders: Vec<u128>,
    #[serde(with = "crate::serde_u128")]
    pub lcm: u128,
    #[serde(with = "crate::serde_u128")]
    pub hurwitz_bound: u128,
    pub hurwitz_divisible: bool,
    pub second_measure: String,
    #[serde(with = "crate::serde_u128")]
    pub fallback_bound: u128,
    #[serde(with = "crate::serde_u128::vec")]
    pub candidates: Vec<u128>,
    pub contradiction: bool,
}

/// Re-verification of a published generating vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessAudit {
    pub group: GroupRef,
    /// Periods in the order stated for `c₁, c₂, …`.
    pub declared_periods: Vec<u64>,
    pub elements: Vec<String>,
    pub measured_orders: Vec<u64>,
    pub product_is_identity: bool,
    pub generates: bool,
    pub verdict: Verdict,
    pub measured_signature: Signature,
    pub measured_genus: Option<u64>,
    pub attains_bound: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingResult {
    Found,
    Absent,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingCertificate {
    pub subgroup: GroupRef,
    pub group: GroupRef,
    pub result: EmbeddingResult,
    pub reason: Option<AbsenceReason>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupCountCertificate {
    pub group: GroupRef,
    #[serde(with = "crate::serde_u128")]
    pub order: u128,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogCandidate {
    pub id: String,
    #[serde(with = "crate::serde_u128")]
    pub order: u128,
    /// `None` when the search was inconclusive.
    pub acts: Option<bool>,
    pub contains_required: Option<bool>,
}

impl CatalogCandidate {
    fn survives(&self) -> bool {
        self.acts != Some(false) && self.contains_required != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogCheck {
    pub genus: u64,
    #[serde(with = "crate::serde_u128::vec")]
    pub candidate_orders: Vec<u128>,
    pub required: Vec<String>,
    pub examined: Vec<CatalogCandidate>,
    /// Coverage claims of the catalog, as written.
    pub coverage: Vec<String>,
    pub covered: bool,
    pub survivors: Vec<String>,
}

/// An extra acting group whose order sharpens the divisibility step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupplementaryCertificate {
    pub record: ActionRecord,
    pub divisibility: DivisibilityCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Certificate {
    Generic(GenericBound),
    Lcm(LcmCertificate),
    Sylow(SylowCertificate),
    Divisibility(DivisibilityCertificate),
    WitnessAudit(WitnessAudit),
    Embedding(EmbeddingCertificate),
    SubgroupCount(SubgroupCountCertificate),
    CatalogCheck(CatalogCheck),
    Supplementary(SupplementaryCertificate),
}

impl Certificate {
    pub fn step(&self) -> &'static str {
        match self {
            Certificate::Generic(_) => "generic",
            Certificate::Lcm(_) => "lcm",
            Certificate::Sylow(_) => "sylow",
            Certificate::Divisibility(_) => "divisibility",
            Certificate::WitnessAudit(_) => "witness_audit",
            Certificate::Embedding(_) => "embedding",
            Certificate::SubgroupCount(_) => "subgroup_count",
            Certificate::CatalogCheck(_) => "catalog_check",
            Certificate::Supplementary(_) => "supplementary",
        }
    }

    /// Whether this step on its own rules out every group.
    pub fn is_decisive(&self) -> bool {
        match self {
            Certificate::Generic(c) => c.contradiction,
            Certificate::Lcm(c) => c.is_contradiction(),
            Certificate::Sylow(c) => c.contradiction,
            Certificate::Divisibility(c) => c.contradiction,
            Certificate::CatalogCheck(c) => c.covered && c.survivors.is_empty(),
            Certificate::Supplementary(c) => c.divisibility.contradiction,
            _ => false,
        }
    }
}

/// A printed constant next to its recomputed value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithmeticNote {
    pub expression: String,
    pub printed: String,
    pub recomputed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusivityVerdict {
    pub genus: u64,
    pub outcome: Outcome,
    pub certificates: Vec<Certificate>,
    pub notes: Vec<ArithmeticNote>,
}

#[derive(Debug, Clone, Copy)]
pub struct VerdictOptions<'a> {
    pub catalog: Option<&'a Catalog>,
    /// Also try the cyclic group of order `4σ + 2`, which acts with signature `(0; 2, 2σ+1, 4σ+2)`.
    pub supplementary: bool,
    pub node_budget: u64,
    pub embedding_budget: u64,
}

impl Default for VerdictOptions<'_> {
    fn default() -> Self {
        VerdictOptions {
            catalog: None,
            supplementary: true,
            node_budget: DEFAULT_NODE_BUDGET,
            embedding_budget: DEFAULT_EMBEDDING_BUDGET,
        }
    }
}

fn err(msg: impl Into<String>) -> std::result::Result<(), String> {
    Err(msg.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn parse_in(g: &GroupRef, s: &str) -> std::result::Result<Permutation, String> {
    Permutation::parse_with_degree(s, Some(g.degree)).map_err(|e| e.to_string())
}

fn realize(g: &GroupRef) -> std::result::Result<PermGroup, String> {
    let grp = g.realize().map_err(|e| e.to_string())?;
    ensure(grp.order() == g.order, || {
        format!("{} has order {}, recorded {}", g.id, grp.order(), g.order)
    })?;
    Ok(grp)
}

// ---------------------------------------------------------------- Sylow

fn two_adic(n: u128) -> (u128, u128) {
    let tz = n.trailing_zeros();
    (1u128 << tz, n >> tz)
}

/// Klein four-group generators for a witness: `(c₁c₂, c₁⁻¹c₂)` for a
/// triangle vector when those generate one, else any Klein four-group.
fn klein_pair(rec: &ActionRecord, g: &PermGroup) -> Result<Option<[Permutation; 2]>> {
    if let [c1, c2, _] = rec.vector.elliptic.as_slice() {
        if rec.vector.hyperbolic.is_empty() {
            let a = c1.compose(c2)?;
            let b = c1.inverse().compose(c2)?;
            let v = PermGroup::new(vec![a.clone(), b.clone()])?;
            if v.order() == 4 && v.has_klein_four()? {
                return Ok(Some([a, b]));
            }
        }
    }
    Ok(g.klein_four_witness()?.map(|(a, b)| [a, b]))
}

/// Sylow 2-subgroup argument over an inventory of actions on genus `σ`.
/// `None` when the inventory lacks a cyclic witness of full 2-power order
/// or a Klein four-group.
pub fn sylow_refutation(
    genus: u64,
    inventory: &[ActionRecord],
) -> Result<Option<SylowCertificate>> {
    let lcm = lcm_all(&standard_orders(genus));
    let (two_part, odd_part) = two_adic(lcm);
    let bound = hurwitz_bound(genus)?;
    let mut cyclic = None;
    let mut klein = None;
    for rec in inventory.iter().filter(|r| r.genus == genus) {
        let g = rec.group.realize()?;
        if cyclic.is_none() {
            if let Some(x) = g.element_of_order(two_part as u64)? {
                cyclic = Some((rec.group.clone(), x));
            }
        }
        if klein.is_none() {
            if let Some(pair) = klein_pair(rec, &g)? {
                klein = Some((rec.group.clone(), pair));
            }
        }
    }
    let (Some((cg, x)), Some((kg, pair))) = (cyclic, klein) else {
        return Ok(None);
    };
    let sylow_lower = 2 * two_part;
    let lower_bound = sylow_lower * odd_part;
    Ok(Some(SylowCertificate {
        genus,
        lcm,
        two_part,
        odd_part,
        cyclic_witness: cg,
        cyclic_element_order: x.order(),
        cyclic_element: x.to_string(),
        klein_witness: kg,
        klein_generators: pair.iter().map(Permutation::to_string).collect(),
        klein_four: true,
        sylow_lower,
        lower_bound,
        bound,
        contradiction: lower_bound > bound,
    }))
}

/// Sylow certificate for genus 8 from the standard witnesses `C₈` and `H₈`.
pub fn sylow_refutation_sigma8() -> Result<Option<SylowCertificate>> {
    let inventory = vec![
        canonical_actions(8)?.remove(1),
        accola_maclachlan_action(8)?,
    ];
    sylow_refutation(8, &inventory)
}

impl SylowCertificate {
    pub fn verify(&self) -> std::result::Result<(), String> {
        let lcm = lcm_all(&standard_orders(self.genus));
        let (two, odd) = two_adic(lcm);
        ensure(
            (self.lcm, self.two_part, self.odd_part) == (lcm, two, odd),
            || {
                format!(
                    "Sylow: lcm split {}·{} of {} does not recompute",
                    self.two_part, self.odd_part, self.lcm
                )
            },
        )?;
        let cg = realize(&self.cyclic_witness)?;
        let x = parse_in(&self.cyclic_witness, &self.cyclic_element)?;
        ensure(cg.contains(&x), || {
            "Sylow: cyclic element not in witness".into()
        })?;
        ensure(
            x.order() == self.cyclic_element_order && x.order() as u128 == two,
            || format!("Sylow: element order {} is not {}", x.order(), two),
        )?;
        let kg = realize(&self.klein_witness)?;
        let pair = self
            .klein_generators
            .iter()
            .map(|s| parse_in(&self.klein_witness, s))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ensure(pair.iter().all(|p| kg.contains(p)), || {
            "Sylow: Klein generators outside witness".into()
        })?;
        let v = PermGroup::new(pair).map_err(|e| e.to_string())?;
        let klein = v.order() == 4 && v.has_klein_four().map_err(|e| e.to_string())?;
        ensure(klein == self.klein_four && klein, || {
            "Sylow: no Klein four-group".into()
        })?;
        let bound = hurwitz_bound(self.genus).map_err(|e| e.to_string())?;
        ensure(
            self.sylow_lower == 2 * two && self.lower_bound == 2 * two * odd && self.bound == bound,
            || format!("Sylow: lower bound {} does not recompute", self.lower_bound),
        )?;
        ensure(
            self.contradiction == (self.lower_bound > self.bound),
            || "Sylow: verdict flag".into(),
        )
    }
}

// --------------------------------------------------------- divisibility

fn second_measure() -> Result<BigRational> {
    let scan = minimal_positive_measures(2, 2)?;
    Ok(scan.values[1].measure.clone())
}

pub fn divisibility_certificate(genus: u64, orders: &[u128]) -> Result<DivisibilityCertificate> {
    let lcm = lcm_all(orders);
    let hurwitz = hurwitz_bound(genus)?;
    let second = second_measure()?;
    // |G| · μ = 2σ − 2 with μ ≥ second ⇒ |G| ≤ (2σ − 2)/second
    let fb = BigRational::from_integer(BigInt::from(2 * genus - 2)) / &second;
    let fb = fb.floor().to_integer();
    let fallback =
        u128::try_from(fb).map_err(|_| Error::Precondition("fallback bound overflow".into()))?;
    debug_assert_eq!(fallback, fallback_bound(genus)?);
    let candidates: Vec<u128> = (1..=hurwitz / lcm)
        .map(|k| k * lcm)
        .filter(|&n| n == hurwitz || n <= fallback)
        .collect();
    Ok(DivisibilityCertificate {
        genus,
        orders: orders.to_vec(),
        lcm,
        hurwitz_bound: hurwitz,
        hurwitz_divisible: hurwitz % lcm == 0,
        second_measure: second.to_string(),
        fallback_bound: fallback,
        contradiction: candidates.is_empty(),
        candidates,
    })
}

impl DivisibilityCertificate {
    pub fn verify(&self) -> std::result::Result<(), String> {
        let fresh =
            divisibility_certificate(self.genus, &self.orders).map_err(|e| e.to_string())?;
        ensure(fresh == *self, || {
            format!("divisibility step for σ={} does not recompute", self.genus)
        })
    }
}

// ------------------------------------------------------------ witnesses

/// The triple `T = [[1,1],[0,1]]`, `S = [[0,1],[−1,0]]`, `(TS)⁻¹` in `SL₂(7)`,
/// declared with periods `(7, 2, 3)`.
pub fn sl2_7_published_triple() -> Result<(PermGroup, Vec<u64>, GeneratingVector)> {
    let g = Family::Sl2 { p: 7 }.realize()?;
    let t = crate::catalog::Matrix2::new(1, 1, 0, 1, 7).on_vectors();
    let s = crate::catalog::Matrix2::new(0, 1, -1, 0, 7).on_vectors();
    let c3 = t.compose(&s)?.inverse();
    Ok((
        g,
        vec![7, 2, 3],
        GeneratingVector::new(vec![], vec![t, s, c3]),
    ))
}

pub fn audit_witness(
    id: &str,
    g: &PermGroup,
    genus: u64,
    declared_periods: &[u64],
    v: &GeneratingVector,
) -> Result<WitnessAudit> {
    let declared = Signature::new(v.hyperbolic.len() as u64, declared_periods.to_vec())?;
    let rep = verify_vector(g, &declared, v)?;
    Ok(WitnessAudit {
        group: GroupRef::new(id, g),
        declared_periods: declared_periods.to_vec(),
        elements: v.elements().iter().map(|p| p.to_string()).collect(),
        measured_orders: rep.measured_orders.clone(),
        product_is_identity: rep.product_is_identity,
        generates: rep.generates,
        verdict: rep.verdict,
        attains_bound: rep.is_valid() && rep.declared_genus == Some(genus),
        measured_signature: rep.measured_signature,
        measured_genus: rep.measured_genus,
    })
}

impl WitnessAudit {
    pub fn verify(&self, genus: u64) -> std::result::Result<(), String> {
        let g = realize(&self.group)?;
        let els = self
            .elements
            .iter()
            .map(|s| parse_in(&self.group, s))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let r = self.declared_periods.len();
        if els.len() < r || (els.len() - r) % 2 != 0 {
            return err("witness audit: element count");
        }
        let k = (els.len() - r) / 2;
        let v = GeneratingVector::new(
            (0..k)
                .map(|j| (els[2 * j].clone(), els[2 * j + 1].clone()))
                .collect(),
            els[2 * k..].to_vec(),
        );
        let fresh = audit_witness(&self.group.id, &g, genus, &self.declared_periods, &v)
            .map_err(|e| e.to_string())?;
        ensure(fresh == *self, || "witness audit does not recompute".into())
    }
}

// ------------------------------------------------------------ embedding

pub fn embedding_certificate(
    sub_id: &str,
    h: &PermGroup,
    g_id: &str,
    g: &PermGroup,
    budget: u64,
    exhaustive: bool,
) -> Result<EmbeddingCertificate> {
    let search = if exhaustive {
        find_monomorphism_exhaustive(h, g, budget)?
    } else {
        find_monomorphism_with_budget(h, g, budget)?
    };
    let (result, reason) = match search {
        EmbeddingSearch::Found(m) => {
            if !m.verify() {
                return Err(Error::Precondition(
                    "monomorphism failed verification".into(),
                ));
            }
            (EmbeddingResult::Found, None)
        }
        EmbeddingSearch::Absent(r) => (EmbeddingResult::Absent, Some(r)),
        EmbeddingSearch::Inconclusive { .. } => (EmbeddingResult::Inconclusive, None),
    };
    Ok(EmbeddingCertificate {
        subgroup: GroupRef::new(sub_id, h),
        group: GroupRef::new(g_id, g),
        result,
        reason,
    })
}

impl EmbeddingCertificate {
    pub fn verify(&self, budget: u64) -> std::result::Result<(), String> {
        let h = realize(&self.subgroup)?;
        let g = realize(&self.group)?;
        let exhaustive = self.reason == Some(AbsenceReason::ExhaustiveSearch);
        let fresh = embedding_certificate(
            &self.subgroup.id,
            &h,
            &self.group.id,
            &g,
            budget,
            exhaustive,
        )
        .map_err(|e| e.to_string())?;
        ensure(fresh == *self, || {
            format!(
                "embedding {} → {} does not recompute",
                self.subgroup.id, self.group.id
            )
        })
    }
}

impl SubgroupCountCertificate {
    pub fn verify(&self) -> std::result::Result<(), String> {
        let g = realize(&self.group)?;
        let n = subgroups_of_order(&g, self.order)
            .map_err(|e| e.to_string())?
            .len();
        ensure(n == self.count, || {
            format!(
                "{} has {n} subgroup classes of order {}",
                self.group.id, self.order
            )
        })
    }
}

// -------------------------------------------------------------- catalog

struct Required {
    id: String,
    group: PermGroup,
}

fn standard_witness_groups(genus: u64) -> Result<Vec<Required>> {
    let mut out = Vec::new();
    for n in [genus - 1, genus] {
        if n >= 2 {
            out.push(Required {
                id: format!("C{n}"),
                group: Family::Cyclic { n }.realize()?,
            });
        }
    }
    out.push(Required {
        id: format!("H{genus}"),
        group: accola_maclachlan_group(genus)?.group,
    });
    Ok(out)
}

pub fn catalog_check(
    genus: u64,
    candidates: &[u128],
    catalog: &Catalog,
    opts: &VerdictOptions,
) -> Result<CatalogCheck> {
    let required = standard_witness_groups(genus)?;
    let entries: Vec<_> = catalog
        .entries()
        .iter()
        .filter(|e| candidates.contains(&e.order()))
        .collect();
    let examined: Vec<CatalogCandidate> = entries
        .par_iter()
        .map(|e| -> Result<CatalogCandidate> {
            let acts = match acts_on(&e.id, &e.group, genus, opts.node_budget)? {
                ActionSearch::Found(_) => Some(true),
                ActionSearch::Absent { .. } => Some(false),
                ActionSearch::Inconclusive { .. } => None,
            };
            let mut contains = Some(true);
            for r in &required {
                match find_monomorphism_with_budget(&r.group, &e.group, opts.embedding_budget)? {
                    EmbeddingSearch::Found(_) => {}
                    EmbeddingSearch::Absent(_) => {
                        contains = Some(false);
                        break;
                    }
                    EmbeddingSearch::Inconclusive { .. } => contains = None,
                }
            }
            Ok(CatalogCandidate {
                id: e.id.clone(),
                order: e.order(),
                acts,
                contains_required: contains,
            })
        })
        .collect::<Result<_>>()?;
    let coverage = catalog.coverage().to_vec();
    let covered = candidates
        .iter()
        .all(|n| coverage.iter().any(|c| *c == format!("all-of-order:{n}")));
    let survivors = examined
        .iter()
        .filter(|c| c.survives())
        .map(|c| c.id.clone())
        .collect();
    Ok(CatalogCheck {
        genus,
        candidate_orders: candidates.to_vec(),
        required: required.iter().map(|r| r.id.clone()).collect(),
        examined,
        coverage,
        covered,
        survivors,
    })
}

impl CatalogCheck {
    pub fn verify(&self) -> std::result::Result<(), String> {
        let ids: BTreeSet<&str> = self.examined.iter().map(|c| c.id.as_str()).collect();
        ensure(ids.len() == self.examined.len(), || {
            "catalog check: duplicate ids".into()
        })?;
        ensure(
            self.examined
                .iter()
                .all(|c| self.candidate_orders.contains(&c.order)),
            || "catalog check: examined entry of non-candidate order".into(),
        )?;
        let survivors: Vec<String> = self
            .examined
            .iter()
            .filter(|c| c.survives())
            .map(|c| c.id.clone())
            .collect();
        ensure(survivors == self.survivors, || {
            "catalog check: survivors do not recompute".into()
        })?;
        let covered = self.candidate_orders.iter().all(|n| {
            self.coverage
                .iter()
                .any(|c| *c == format!("all-of-order:{n}"))
        });
        ensure(covered == self.covered, || {
            "catalog check: coverage flag".into()
        })
    }
}

// -------------------------------------------------------- supplementary

/// `C_{4σ+2}` on genus `σ` with signature `(0; 2, 2σ+1, 4σ+2)`, found by search.
pub fn supplementary_witness(genus: u64, budget: u64) -> Result<Option<ActionRecord>> {
    let n = 4 * genus + 2;
    let g = Family::Cyclic { n }.realize()?;
    let id = format!("C{n}");
    let target = Signature::new(0, vec![2, 2 * genus + 1, n])?;
    match crate::rh::find_generating_vector_with_budget(&g, &target, budget)? {
        crate::rh::VectorSearch::Found(v) => {
            ActionRecord::new(id, &g, genus, target, v, Provenance::Search).map(Some)
        }
        _ => Ok(None),
    }
}

impl SupplementaryCertificate {
    pub fn verify(&self, genus: u64) -> std::result::Result<(), String> {
        ensure(self.record.genus == genus, || {
            "supplementary witness on wrong genus".into()
        })?;
        let rep = self.record.verify().map_err(|e| e.to_string())?;
        ensure(rep.is_valid(), || {
            "supplementary witness does not verify".into()
        })?;
        let mut orders = standard_orders(genus).to_vec();
        orders.push(self.record.group.order);
        ensure(self.divisibility.orders == orders, || {
            "supplementary orders do not recompute".into()
        })?;
        self.divisibility.verify()
    }
}

// ---------------------------------------------------------------- notes

pub fn arithmetic_notes(genus: u64) -> Vec<ArithmeticNote> {
    let s = genus as u128 - 1;
    let note = |e: String, p: &str, r: String| ArithmeticNote {
        expression: e,
        printed: p.into(),
        recomputed: r,
    };
    match genus {
        4 => vec![
            note(format!("84·{s}"), "254", (84 * s).to_string()),
            note(format!("48·{s}"), "154", (48 * s).to_string()),
        ],
        5 => {
            let h = 8 * (genus as u128 + 1);
            vec![
                note(format!("336 mod {h}"), "nonzero", (336 % h).to_string()),
                note(
                    "order of [[0,1],[-1,0]] in SL2(7)".into(),
                    "2",
                    crate::catalog::Matrix2::new(0, 1, -1, 0, 7)
                        .order()
                        .to_string(),
                ),
            ]
        }
        _ => Vec::new(),
    }
}

/// The printed third period list for the second-smallest measure against the
/// exhaustively determined one.
pub fn second_measure_note() -> Result<ArithmeticNote> {
    let scan = minimal_positive_measures(2, 2)?;
    let v = &scan.values[1];
    let sigs: Vec<String> = v.signatures.iter().map(Signature::to_string).collect();
    Ok(ArithmeticNote {
        expression: format!("signature of measure {}", v.measure),
        printed: "(0;1,2,8)".into(),
        recomputed: sigs.join(" "),
    })
}

// ------------------------------------------------------------- pipeline

pub fn weakly_exclusive_verdict(genus: u64, opts: &VerdictOptions) -> Result<ExclusivityVerdict> {
    if genus < 2 {
        return Err(Error::LowGenus(genus as i64));
    }
    let mut certs = Vec::new();
    let notes = arithmetic_notes(genus);
    let generic = generic_bound(genus)?;
    if generic.contradiction {
        certs.push(Certificate::Generic(generic));
        return Ok(ExclusivityVerdict {
            genus,
            outcome: Outcome::Impossible,
            certificates: certs,
            notes,
        });
    }
    let lcm = lcm_certificate(genus)?;
    let decisive = lcm.is_contradiction();
    certs.push(Certificate::Lcm(lcm));
    if decisive {
        return Ok(ExclusivityVerdict {
            genus,
            outcome: Outcome::Impossible,
            certificates: certs,
            notes,
        });
    }

    let mut outcome = None;
    let mut missing = Vec::new();
    let mut assumptions = Vec::new();
    let orders = standard_orders(genus).to_vec();

    if genus == 8 {
        match sylow_refutation_sigma8()? {
            Some(c) => {
                let d = c.contradiction;
                certs.push(Certificate::Sylow(c));
                if d {
                    outcome = Some(Outcome::Impossible);
                }
            }
            None => missing.push("C8 and H8 witnesses for the Sylow step".to_string()),
        }
    }

    if outcome.is_none() && genus == 5 {
        let (g, declared, v) = sl2_7_published_triple()?;
        let audit = audit_witness("SL2(7)", &g, genus, &declared, &v)?;
        certs.push(Certificate::WitnessAudit(audit));
        let h = accola_maclachlan_group(genus)?.group;
        certs.push(Certificate::Embedding(embedding_certificate(
            "H5",
            &h,
            "SL2(7)",
            &g,
            opts.embedding_budget,
            false,
        )?));
    }

    let mut candidates = Vec::new();
    if outcome.is_none() {
        let div = divisibility_certificate(genus, &orders)?;
        candidates = div.candidates.clone();
        let d = div.contradiction;
        certs.push(Certificate::Divisibility(div));
        if d {
            outcome = Some(Outcome::Impossible);
        }
    }

    let mut sym5_refuted = false;
    if outcome.is_none() && genus == 4 && candidates == [120] {
        let s5 = Family::Symmetric { n: 5 }.realize()?;
        let h4 = accola_maclachlan_group(4)?.group;
        let emb = embedding_certificate("H4", &h4, "Sym(5)", &s5, opts.embedding_budget, true)?;
        let absent = emb.result == EmbeddingResult::Absent;
        certs.push(Certificate::Embedding(emb));
        let count = subgroups_of_order(&s5, 40)?.len();
        certs.push(Certificate::SubgroupCount(SubgroupCountCertificate {
            group: GroupRef::new("Sym(5)", &s5),
            order: 40,
            count,
        }));
        sym5_refuted = absent && count == 0;
    }

    if outcome.is_none() {
        if let Some(cat) = opts.catalog {
            let check = catalog_check(genus, &candidates, cat, opts)?;
            let decisive = check.covered && check.survivors.is_empty();
            if !check.covered {
                missing.push(format!(
                    "catalog coverage of all groups of order {}",
                    join(&candidates)
                ));
            }
            if !check.survivors.is_empty() {
                missing.push(format!(
                    "refutation of catalog entries {}",
                    check.survivors.join(", ")
                ));
            }
            certs.push(Certificate::CatalogCheck(check));
            if decisive {
                outcome = Some(Outcome::Impossible);
            }
        } else if sym5_refuted {
            assumptions.push(
                "every group of order 120 acting on genus 4 is isomorphic to Sym(5)".to_string(),
            );
        } else {
            missing.push(format!(
                "catalog of all groups of order {}",
                join(&candidates)
            ));
        }
    }

    if outcome.is_none() && opts.supplementary {
        if let Some(rec) = supplementary_witness(genus, opts.node_budget)? {
            let mut ords = orders.clone();
            ords.push(rec.group.order);
            let div = divisibility_certificate(genus, &ords)?;
            let d = div.contradiction;
            certs.push(Certificate::Supplementary(SupplementaryCertificate {
                record: rec,
                divisibility: div,
            }));
            if d {
                outcome = Some(Outcome::Impossible);
            }
        }
    }

    let outcome = outcome.unwrap_or(if !assumptions.is_empty() && missing.is_empty() {
        Outcome::Conditional { assumptions }
    } else {
        if missing.is_empty() {
            missing.push("no route applies".into());
        }
        Outcome::Inconclusive { missing }
    });
    Ok(ExclusivityVerdict {
        genus,
        outcome,
        certificates: certs,
        notes,
    })
}

fn join(xs: &[u128]) -> String {
    xs.iter()
        .map(u128::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

impl ExclusivityVerdict {
    /// Recomputes every certificate and note and checks the outcome follows.
    pub fn verify(&self) -> std::result::Result<(), String> {
        ensure(self.genus >= 2, || "genus below 2".into())?;
        for c in &self.certificates {
            match c {
                Certificate::Generic(x) => {
                    ensure(x.genus == self.genus, || "generic: genus".into())?;
                    x.verify()?
                }
                Certificate::Lcm(x) => {
                    ensure(x.genus == self.genus, || "lcm: genus".into())?;
                    x.verify()?
                }
                Certificate::Sylow(x) => {
                    ensure(x.genus == self.genus, || "sylow: genus".into())?;
                    x.verify()?
                }
                Certificate::Divisibility(x) => {
                    ensure(x.genus == self.genus, || "divisibility: genus".into())?;
                    ensure(x.orders == standard_orders(self.genus), || {
                        "divisibility: orders".into()
                    })?;
                    x.verify()?
                }
                Certificate::WitnessAudit(x) => x.verify(self.genus)?,
                Certificate::Embedding(x) => x.verify(DEFAULT_EMBEDDING_BUDGET)?,
                Certificate::SubgroupCount(x) => x.verify()?,
                Certificate::CatalogCheck(x) => {
                    ensure(x.genus == self.genus, || "catalog check: genus".into())?;
                    x.verify()?
                }
                Certificate::Supplementary(x) => x.verify(self.genus)?,
            }
        }
        ensure(arithmetic_notes(self.genus) == self.notes, || {
            "arithmetic notes do not recompute".into()
        })?;
        let decisive = self.certificates.iter().any(Certificate::is_decisive);
        match &self.outcome {
            Outcome::Impossible => ensure(decisive, || {
                "impossible without a decisive certificate".into()
            }),
            Outcome::Conditional { assumptions } => {
                ensure(!assumptions.is_empty(), || {
                    "conditional without assumptions".into()
                })?;
                ensure(!decisive, || {
                    "conditional despite a decisive certificate".into()
                })?;
                let refuted = self.certificates.iter().any(|c| {
                    matches!(c, Certificate::Embedding(e) if e.result == EmbeddingResult::Absent)
                });
                ensure(refuted, || {
                    "conditional without an embedding refutation".into()
                })
            }
            Outcome::Inconclusive { .. } => ensure(!decisive, || {
                "inconclusive despite a decisive certificate".into()
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bare() -> VerdictOptions<'static> {
        VerdictOptions {
            supplementary: false,
            ..VerdictOptions::default()
        }
    }

    #[test]
    fn genus_six_is_one_lcm_step() {
        let v = weakly_exclusive_verdict(6, &bare()).unwrap();
        assert_eq!(v.outcome, Outcome::Impossible);
        assert_eq!(v.certificates.len(), 1);
        assert!(matches!(&v.certificates[0], Certificate::Lcm(c) if c.lcm == 840));
        v.verify().unwrap();
    }

    #[test]
    fn genus_eight_uses_sylow() {
        let v = weakly_exclusive_verdict(8, &bare()).unwrap();
        assert_eq!(v.outcome, Outcome::Impossible);
        match v.certificates.last().unwrap() {
            Certificate::Sylow(c) => assert_eq!((c.lower_bound, c.bound), (1008, 588)),
            other => panic!("unexpected {other:?}"),
        }
        v.verify().unwrap();
    }

    #[test]
    fn genus_four_without_catalog_is_conditional() {
        let v = weakly_exclusive_verdict(4, &bare()).unwrap();
        assert!(matches!(v.outcome, Outcome::Conditional { .. }));
        assert_eq!(v.notes.len(), 2);
        assert_eq!(v.notes[0].recomputed, "252");
        assert_eq!(v.notes[1].recomputed, "144");
        v.verify().unwrap();
    }

    #[test]
    fn genus_five_divisibility_gap() {
        let v = weakly_exclusive_verdict(5, &bare()).unwrap();
        assert_eq!(v.outcome, Outcome::Impossible);
        let audit = v
            .certificates
            .iter()
            .find_map(|c| match c {
                Certificate::WitnessAudit(a) => Some(a),
                _ => None,
            })
            .unwrap();
        assert_eq!(audit.measured_orders, [7, 4, 3]);
        assert_eq!(audit.verdict, Verdict::InvalidAsDeclared);
        v.verify().unwrap();
    }

    #[test]
    fn small_genera_need_more_input() {
        for genus in [2, 3] {
            let v = weakly_exclusive_verdict(genus, &bare()).unwrap();
            assert!(
                matches!(v.outcome, Outcome::Inconclusive { .. }),
                "σ={genus}"
            );
            v.verify().unwrap();
            let v = weakly_exclusive_verdict(genus, &VerdictOptions::default()).unwrap();
            assert_eq!(v.outcome, Outcome::Impossible, "σ={genus}");
            v.verify().unwrap();
        }
    }

    #[test]
    fn corrupted_certificate_fails() {
        let mut v = weakly_exclusive_verdict(7, &bare()).unwrap();
        if let Certificate::Lcm(c) = &mut v.certificates[0] {
            c.lcm += 1;
        }
        assert!(v.verify().is_err());
    }

    #[test]
    fn sl2_7_witness_measurements() {
        let (g, _, v) = sl2_7_published_triple().unwrap();
        assert_eq!(g.order(), 336);
        let orders: Vec<u64> = v.elliptic.iter().map(Permutation::order).collect();
        assert_eq!(orders, [7, 4, 3]);
    }
}
