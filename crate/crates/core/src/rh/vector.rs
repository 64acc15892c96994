use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{GroupTable, PermGroup, Permutation};
use crate::rh::signature::{rh_genus, Signature};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// `(a₁, b₁, …, a_ρ, b_ρ; c₁, …, c_r)` satisfying
/// `[a₁,b₁]⋯[a_ρ,b_ρ]·c₁⋯c_r = 1` with `[a,b] = a b a⁻¹ b⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratingVector {
    pub hyperbolic: Vec<(Permutation, Permutation)>,
    pub elliptic: Vec<Permutation>,
}

impl GeneratingVector {
    pub fn new(hyperbolic: Vec<(Permutation, Permutation)>, elliptic: Vec<Permutation>) -> Self {
        GeneratingVector {
            hyperbolic,
            elliptic,
        }
    }

    pub fn len(&self) -> usize {
        2 * self.hyperbolic.len() + self.elliptic.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All entries in order `a₁, b₁, …, c₁, …`.
    pub fn elements(&self) -> Vec<&Permutation> {
        self.hyperbolic
            .iter()
            .flat_map(|(a, b)| [a, b])
            .chain(self.elliptic.iter())
            .collect()
    }

    /// Long-relation product `Π[aⱼ,bⱼ]·Πcᵢ`.
    pub fn relation_product(&self, degree: usize) -> Permutation {
        let mut acc = Permutation::identity(degree);
        for (a, b) in &self.hyperbolic {
            let comm = a
                .compose_unchecked(b)
                .compose_unchecked(&a.inverse())
                .compose_unchecked(&b.inverse());
            acc = acc.compose_unchecked(&comm);
        }
        for c in &self.elliptic {
            acc = acc.compose_unchecked(c);
        }
        acc
    }

    /// Pads every entry to `degree` points.
    pub fn extend(&self, degree: usize) -> GeneratingVector {
        GeneratingVector {
            hyperbolic: self
                .hyperbolic
                .iter()
                .map(|(a, b)| (a.extend(degree), b.extend(degree)))
                .collect(),
            elliptic: self.elliptic.iter().map(|c| c.extend(degree)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    Valid,
    /// Relation and generation hold, but the measured orders are not the declared periods.
    InvalidAsDeclared,
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub declared: Signature,
    /// Order of each `cᵢ`, in vector order.
    pub measured_orders: Vec<u64>,
    pub orders_match: bool,
    pub in_group: bool,
    pub product_is_identity: bool,
    pub generates: bool,
    pub measured_signature: Signature,
    pub declared_genus: Option<u64>,
    pub measured_genus: Option<u64>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.verdict == Verdict::Valid
    }
}

/// Checks a vector against a declared signature. Periods are compared as
/// multisets since signatures keep them sorted.
pub fn verify_vector(
    g: &PermGroup,
    s: &Signature,
    v: &GeneratingVector,
) -> Result<VerificationReport> {
    if v.hyperbolic.len() as u64 != s.orbit_genus() || v.elliptic.len() != s.branch_points() {
        return Err(Error::Precondition(format!(
            "vector has {} pairs and {} elliptic entries, signature {s} needs {} and {}",
            v.hyperbolic.len(),
            v.elliptic.len(),
            s.orbit_genus(),
            s.branch_points()
        )));
    }
    let degree = g.degree();
    let v = v.extend(degree);
    let elements = v.elements();
    let in_group = elements
        .iter()
        .all(|e| e.degree() == degree && g.contains(e));
    let measured_orders: Vec<u64> = v.elliptic.iter().map(Permutation::order).collect();
    let mut sorted = measured_orders.clone();
    sorted.sort_unstable();
    let orders_match = sorted == s.periods();
    let product_is_identity = in_group && v.relation_product(degree).is_identity();
    let generates = in_group && {
        let gens: Vec<Permutation> = elements.iter().map(|&e| e.clone()).collect();
        g.is_generated_by(&gens)?
    };
    let measured_signature = Signature::new(s.orbit_genus(), measured_orders.clone())?;
    let order = g.order();
    let verdict = match (in_group && product_is_identity && generates, orders_match) {
        (true, true) => Verdict::Valid,
        (true, false) => Verdict::InvalidAsDeclared,
        _ => Verdict::Invalid,
    };
    Ok(VerificationReport {
        declared: s.clone(),
        measured_genus: rh_genus(order, &measured_signature),
        declared_genus: rh_genus(order, s),
        measured_orders,
        orders_match,
        in_group,
        product_is_identity,
        generates,
        measured_signature,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VectorSearch {
    Found(GeneratingVector),
    /// The search space was exhausted.
    Absent,
    BudgetExceeded {
        nodes: u64,
    },
}

impl VectorSearch {
    pub fn vector(&self) -> Option<&GeneratingVector> {
        match self {
            VectorSearch::Found(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, VectorSearch::Absent)
    }
}

pub fn find_generating_vector(g: &PermGroup, s: &Signature) -> Result<VectorSearch> {
    find_generating_vector_with_budget(g, s, DEFAULT_NODE_BUDGET)
}

/// Backtracking search. The relation is searched in the cyclically rotated
/// form `c₁⋯c_r·Π[aⱼ,bⱼ] = 1`, which is equivalent. `c₁` (or `a₁` when
/// `r = 0`) runs over conjugacy-class representatives only; `c_r` is forced.
pub fn find_generating_vector_with_budget(
    g: &PermGroup,
    s: &Signature,
    budget: u64,
) -> Result<VectorSearch> {
    if rh_genus(g.order(), s).is_none() {
        return Err(Error::Precondition(format!(
            "no genus σ ≥ 2 satisfies the Riemann-Hurwitz equation for |G| = {} and {s}",
            g.order()
        )));
    }
    let t = g.table()?;
    let mut search = Search::new(t, s, budget);
    let outcome = search.run();
    Ok(match outcome {
        Step::Found => {
            let el = |i: usize| t.element(i).clone();
            let rho = s.orbit_genus() as usize;
            let r = s.branch_points();
            let (cs, abs) = search.stack.split_at(r);
            VectorSearch::Found(GeneratingVector {
                hyperbolic: (0..rho)
                    .map(|j| (el(abs[2 * j]), el(abs[2 * j + 1])))
                    .collect(),
                elliptic: cs.iter().map(|&i| el(i)).collect(),
            })
        }
        Step::Exhausted => VectorSearch::Absent,
        Step::Budget => VectorSearch::BudgetExceeded {
            nodes: search.nodes,
        },
    })
}

#[derive(Debug, PartialEq, Eq)]
enum Step {
    Found,
    Exhausted,
    Budget,
}

/// Slots: `c₁ … c_{r−1}`, then `a₁, b₁, …`, then `c_r` (forced).
struct Search<'a> {
    t: &'a GroupTable,
    periods: Vec<u32>,
    rho: usize,
    by_order: Vec<Vec<usize>>,
    reps_by_order: Vec<Vec<usize>>,
    all: Vec<usize>,
    reps: Vec<usize>,
    stack: Vec<usize>,
    budget: u64,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(t: &'a GroupTable, s: &Signature, budget: u64) -> Self {
        let max_order = (0..t.len()).map(|i| t.order(i)).max().unwrap_or(1) as usize;
        let mut by_order = vec![Vec::new(); max_order + 1];
        for i in 0..t.len() {
            by_order[t.order(i) as usize].push(i);
        }
        let mut reps_by_order = vec![Vec::new(); max_order + 1];
        let mut reps = Vec::new();
        for c in t.classes() {
            reps_by_order[c.order as usize].push(c.rep);
            reps.push(c.rep);
        }
        Search {
            t,
            periods: s
                .periods()
                .iter()
                .map(|&m| m.min(u32::MAX as u64) as u32)
                .collect(),
            rho: s.orbit_genus() as usize,
            by_order,
            reps_by_order,
            all: (0..t.len()).collect(),
            reps,
            stack: Vec::new(),
            budget,
            nodes: 0,
        }
    }

    fn with_order(&self, m: u32, first: bool) -> &[usize] {
        let table = if first {
            &self.reps_by_order
        } else {
            &self.by_order
        };
        table.get(m as usize).map_or(&[], Vec::as_slice)
    }

    fn run(&mut self) -> Step {
        let r = self.periods.len();
        if r == 0 && self.rho == 0 {
            return Step::Exhausted;
        }
        self.descend(0)
    }

    fn descend(&mut self, slot: usize) -> Step {
        let r = self.periods.len();
        let free_c = r.saturating_sub(1);
        let total_free = free_c + 2 * self.rho;
        if slot == total_free {
            return self.close();
        }
        let candidates: Vec<usize> = if slot < free_c {
            self.with_order(self.periods[slot], slot == 0).to_vec()
        } else if slot == 0 {
            // r = 0: a₁ up to conjugacy
            self.reps.clone()
        } else {
            self.all.clone()
        };
        for x in candidates {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::Budget;
            }
            self.stack.push(x);
            match self.descend(slot + 1) {
                Step::Exhausted => {}
                other => return other,
            }
            self.stack.pop();
        }
        Step::Exhausted
    }

    fn close(&mut self) -> Step {
        let r = self.periods.len();
        let free_c = r.saturating_sub(1);
        let mut p = GroupTable::IDENTITY;
        for j in 0..self.rho {
            let a = self.stack[free_c + 2 * j];
            let b = self.stack[free_c + 2 * j + 1];
            p = self.t.mul(p, self.t.commutator(a, b));
        }
        if r == 0 {
            if p != GroupTable::IDENTITY || !self.t.generates(&self.stack) {
                return Step::Exhausted;
            }
            return Step::Found;
        }
        // c₁⋯c_{r−1}·c_r·P = 1 with P = Π[a,b]
        let mut cpart = GroupTable::IDENTITY;
        for &c in &self.stack[..free_c] {
            cpart = self.t.mul(cpart, c);
        }
        let last = self.t.inv(self.t.mul(p, cpart));
        if self.t.order(last) != self.periods[r - 1] {
            return Step::Exhausted;
        }
        let mut gens = self.stack.clone();
        gens.push(last);
        if !self.t.generates(&gens) {
            return Step::Exhausted;
        }
        // store as c₁ … c_r, a₁, b₁, …
        self.stack.insert(free_c, last);
        Step::Found
    }
}
