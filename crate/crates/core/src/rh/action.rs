use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{is_two_generated, Family};
use crate::error::{Error, Result};
use crate::fp::accola_maclachlan_group;
use crate::perm::{PermGroup, Permutation};
use crate::rh::signature::{enumerate_signatures, rh_measure, Signature};
use crate::rh::vector::{
    find_generating_vector_with_budget, verify_vector, GeneratingVector, VectorSearch,
    VerificationReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Search,
    Constructed,
    Ingested,
}

/// Group data carried by a record so it can be re-verified on its own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "wire::Group", into = "wire::Group")]
pub struct GroupRef {
    pub id: String,
    pub order: u128,
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl GroupRef {
    pub fn new(id: impl Into<String>, g: &PermGroup) -> Self {
        GroupRef {
            id: id.into(),
            order: g.order(),
            degree: g.degree(),
            generators: g.generators().to_vec(),
        }
    }

    pub fn realize(&self) -> Result<PermGroup> {
        PermGroup::new(self.generators.clone())
    }
}

/// A faithful action of `group` on the closed surface of genus `genus`,
/// witnessed by a generating vector of the given signature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "wire::Record", into = "wire::Record")]
pub struct ActionRecord {
    pub group: GroupRef,
    pub genus: u64,
    pub signature: Signature,
    pub vector: GeneratingVector,
    pub provenance: Provenance,
}

impl ActionRecord {
    /// Checks `2σ − 2 = |G| · measure` exactly and that the vector is valid.
    pub fn new(
        id: impl Into<String>,
        g: &PermGroup,
        genus: u64,
        signature: Signature,
        vector: GeneratingVector,
        provenance: Provenance,
    ) -> Result<Self> {
        let rec = ActionRecord {
            group: GroupRef::new(id, g),
            genus,
            signature,
            vector: vector.extend(g.degree()),
            provenance,
        };
        rec.check_equation()?;
        let report = verify_vector(g, &rec.signature, &rec.vector)?;
        if !report.is_valid() {
            return Err(Error::Precondition(format!(
                "vector for {} on {} is {:?}",
                rec.group.id, rec.signature, report.verdict
            )));
        }
        Ok(rec)
    }

    pub fn check_equation(&self) -> Result<()> {
        if self.genus < 2 {
            return Err(Error::LowGenus(self.genus as i64));
        }
        let lhs = BigRational::from_integer(BigInt::from(2 * self.genus - 2));
        let rhs =
            rh_measure(&self.signature) * BigRational::from_integer(BigInt::from(self.group.order));
        if lhs != rhs {
            return Err(Error::Precondition(format!(
                "2σ−2 = {lhs} but |G|·measure = {rhs} for {} on {}",
                self.group.id, self.signature
            )));
        }
        Ok(())
    }

    /// Recomputes everything from the stored generators.
    pub fn verify(&self) -> Result<VerificationReport> {
        self.check_equation()?;
        let g = self.group.realize()?;
        if g.order() != self.group.order {
            return Err(Error::DeclaredOrderMismatch {
                id: self.group.id.clone(),
                declared: self.group.order,
                computed: g.order(),
            });
        }
        verify_vector(&g, &self.signature, &self.vector)
    }
}

mod wire {
    use super::*;

    #[derive(Serialize, Deserialize)]
    pub struct Group {
        pub id: String,
        pub order: String,
        pub degree: usize,
        pub generators: Vec<String>,
    }

    #[derive(Serialize, Deserialize)]
    pub struct Vector {
        pub hyperbolic: Vec<[String; 2]>,
        pub elliptic: Vec<String>,
    }

    #[derive(Serialize, Deserialize)]
    pub struct Record {
        pub group: GroupRef,
        pub genus: u64,
        pub signature: Signature,
        pub vector: Vector,
        pub provenance: Provenance,
    }

    impl From<GroupRef> for Group {
        fn from(g: GroupRef) -> Self {
            Group {
                id: g.id,
                order: g.order.to_string(),
                degree: g.degree,
                generators: g.generators.iter().map(Permutation::to_string).collect(),
            }
        }
    }

    impl TryFrom<Group> for GroupRef {
        type Error = Error;

        fn try_from(g: Group) -> Result<Self> {
            let d = g.degree;
            let order = g
                .order
                .parse::<u128>()
                .map_err(|_| Error::Precondition(format!("bad order '{}'", g.order)))?;
            Ok(GroupRef {
                id: g.id,
                order,
                degree: d,
                generators: g
                    .generators
                    .iter()
                    .map(|s| Permutation::parse_with_degree(s, Some(d)))
                    .collect::<Result<_>>()?,
            })
        }
    }

    impl From<ActionRecord> for Record {
        fn from(r: ActionRecord) -> Self {
            let s = |p: &Permutation| p.to_string();
            Record {
                group: r.group,
                genus: r.genus,
                signature: r.signature,
                vector: Vector {
                    hyperbolic: r
                        .vector
                        .hyperbolic
                        .iter()
                        .map(|(a, b)| [s(a), s(b)])
                        .collect(),
                    elliptic: r.vector.elliptic.iter().map(s).collect(),
                },
                provenance: r.provenance,
            }
        }
    }

    impl TryFrom<Record> for ActionRecord {
        type Error = Error;

        fn try_from(w: Record) -> Result<Self> {
            let d = w.group.degree;
            let p = |s: &String| Permutation::parse_with_degree(s, Some(d));
            Ok(ActionRecord {
                group: w.group,
                genus: w.genus,
                signature: w.signature,
                vector: GeneratingVector {
                    hyperbolic: w
                        .vector
                        .hyperbolic
                        .iter()
                        .map(|[a, b]| Ok((p(a)?, p(b)?)))
                        .collect::<Result<_>>()?,
                    elliptic: w.vector.elliptic.iter().map(p).collect::<Result<_>>()?,
                },
                provenance: w.provenance,
            })
        }
    }
}

fn require_genus(genus: u64) -> Result<()> {
    if genus < 2 {
        Err(Error::LowGenus(genus as i64))
    } else {
        Ok(())
    }
}

/// `C_{σ−1}` with signature `(2;)` and vector `(g, e, e, e)`.
pub fn cyclic_unramified_action(genus: u64) -> Result<ActionRecord> {
    require_genus(genus)?;
    let family = Family::Cyclic { n: genus - 1 };
    let g = family.realize()?;
    let x = g.generators()[0].clone();
    let e = g.identity();
    let v = GeneratingVector::new(vec![(x, e.clone()), (e.clone(), e)], vec![]);
    ActionRecord::new(
        family.to_string(),
        &g,
        genus,
        Signature::new(2, vec![])?,
        v,
        Provenance::Constructed,
    )
}

/// `C_σ` with signature `(1; σ, σ)` and vector `(e, e, g, g⁻¹)`.
pub fn cyclic_two_point_action(genus: u64) -> Result<ActionRecord> {
    require_genus(genus)?;
    let family = Family::Cyclic { n: genus };
    let g = family.realize()?;
    let x = g.generators()[0].clone();
    let e = g.identity();
    let v = GeneratingVector::new(vec![(e.clone(), e)], vec![x.clone(), x.inverse()]);
    ActionRecord::new(
        family.to_string(),
        &g,
        genus,
        Signature::new(1, vec![genus, genus])?,
        v,
        Provenance::Constructed,
    )
}

/// `H_σ` with signature `(0; 2, 4, 2(σ+1))` and vector `(x, y, (xy)⁻¹)`.
pub fn accola_maclachlan_action(genus: u64) -> Result<ActionRecord> {
    require_genus(genus)?;
    let h = accola_maclachlan_group(genus)?;
    let c3 = h.xy().inverse();
    let v = GeneratingVector::new(vec![], vec![h.x.clone(), h.y.clone(), c3]);
    let s = Signature::new(0, vec![4, 2 * (genus + 1), 2])?;
    ActionRecord::new(
        format!("H{genus}"),
        &h.group,
        genus,
        s,
        v,
        Provenance::Constructed,
    )
}

/// The two cyclic actions every genus admits.
pub fn canonical_actions(genus: u64) -> Result<Vec<ActionRecord>> {
    Ok(vec![
        cyclic_unramified_action(genus)?,
        cyclic_two_point_action(genus)?,
    ])
}

/// Free action of a 2-generated `G = ⟨x, y⟩` of order `n` on genus `n + 1`
/// with signature `(2;)` and vector `(x, y, y, x)`; `[x,y]·[y,x] = 1`.
pub fn free_action(
    id: impl Into<String>,
    g: &PermGroup,
    x: &Permutation,
    y: &Permutation,
) -> Result<ActionRecord> {
    let genus = u64::try_from(g.order() + 1).map_err(|_| Error::OrderCeiling {
        ceiling: u64::MAX as u128,
    })?;
    let v = GeneratingVector::new(vec![(x.clone(), y.clone()), (y.clone(), x.clone())], vec![]);
    ActionRecord::new(
        id,
        g,
        genus,
        Signature::new(2, vec![])?,
        v,
        Provenance::Constructed,
    )
}

/// [`free_action`] with a generating pair found by [`is_two_generated`].
pub fn free_action_auto(id: impl Into<String>, g: &PermGroup) -> Result<Option<ActionRecord>> {
    match is_two_generated(g)? {
        Some((x, y)) => free_action(id, g, &x, &y).map(Some),
        None => Ok(None),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionSearch {
    Found(ActionRecord),
    /// Every candidate signature was searched exhaustively.
    Absent {
        signatures: usize,
    },
    /// No action found, and these signatures hit the node budget.
    Inconclusive {
        unresolved: Vec<Signature>,
    },
}

impl ActionSearch {
    pub fn record(&self) -> Option<&ActionRecord> {
        match self {
            ActionSearch::Found(r) => Some(r),
            _ => None,
        }
    }
}

/// Searches the signatures of [`enumerate_signatures`] in order and returns
/// the first action found. Signatures are searched in parallel batches; the
/// answer does not depend on the number of threads.
pub fn acts_on(id: &str, g: &PermGroup, genus: u64, budget: u64) -> Result<ActionSearch> {
    require_genus(genus)?;
    let order = g.order();
    let sigs = enumerate_signatures(genus, order);
    let present: Vec<u64> = g.order_statistics()?.iter().map(|&(o, _)| o).collect();
    let candidates: Vec<&Signature> = sigs
        .iter()
        .filter(|s| s.periods().iter().all(|m| present.contains(m)))
        .collect();
    let batch = rayon::current_num_threads().max(1);
    let mut unresolved = Vec::new();
    for chunk in candidates.chunks(batch) {
        let results: Vec<Result<VectorSearch>> = chunk
            .par_iter()
            .map(|s| find_generating_vector_with_budget(g, s, budget))
            .collect();
        for (s, r) in chunk.iter().zip(results) {
            match r? {
                VectorSearch::Found(v) => {
                    return ActionRecord::new(id, g, genus, (*s).clone(), v, Provenance::Search)
                        .map(ActionSearch::Found);
                }
                VectorSearch::Absent => {}
                VectorSearch::BudgetExceeded { .. } => unresolved.push((*s).clone()),
            }
        }
    }
    Ok(if unresolved.is_empty() {
        ActionSearch::Absent {
            signatures: sigs.len(),
        }
    } else {
        ActionSearch::Inconclusive { unresolved }
    })
}
