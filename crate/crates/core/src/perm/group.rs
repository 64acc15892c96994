use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::perm::permutation::Permutation;
use crate::perm::table::GroupTable;

/// Default ceiling on group orders accepted by [`PermGroup::new`].
pub const DEFAULT_ORDER_CEILING: u128 = 1_000_000_000_000_000_000;

/// Ceiling on the number of elements that may be listed explicitly.
pub const ELEMENT_CEILING: u128 = 1_000_000;

/// One level of a stabilizer chain: the orbit of `base` under `gens`
/// together with a transversal `u_p` satisfying `u_p(base) = p`.
#[derive(Clone)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    transversal: Vec<Option<Permutation>>,
    // Schreier generators for orbit[..checked_points] x gens[..checked_gens] are done.
    checked_points: usize,
    checked_gens: usize,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
            checked_points: 0,
            checked_gens: 0,
        }
    }

    fn extend_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            for s in &self.gens {
                let q = s.apply(p);
                if self.transversal[q].is_none() {
                    let u = s.compose_unchecked(self.transversal[p].as_ref().unwrap());
                    self.transversal[q] = Some(u);
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }
}

/// Deterministic Schreier–Sims stabilizer chain.
#[derive(Clone)]
struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn build(degree: usize, gens: &[Permutation], ceiling: u128) -> Result<Self> {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            let (residue, depth) = chain.sift(g, 0);
            if !residue.is_identity() {
                chain.add_generator(depth, residue, ceiling)?;
            }
        }
        Ok(chain)
    }

    /// Strips `g` through levels `from..`; returns the residue and the level where it stopped.
    fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let p = h.apply(level.base);
            match &level.transversal[p] {
                Some(u) => h = u.inverse().compose_unchecked(&h),
                None => return (h, i),
            }
        }
        let depth = self.levels.len();
        (h, depth)
    }

    /// Adds `g`, which fixes the first `depth` base points, as a strong generator.
    /// Level `i` acts with every strong generator fixing its first `i` base points,
    /// so `g` joins levels `0..=depth`.
    fn add_generator(&mut self, depth: usize, g: Permutation, ceiling: u128) -> Result<()> {
        if depth == self.levels.len() {
            let base = (0..self.degree)
                .find(|&x| g.apply(x) != x)
                .expect("non-identity residue moves a point");
            self.levels.push(Level::new(base, self.degree));
        }
        for level in &mut self.levels[..=depth] {
            level.gens.push(g.clone());
            level.extend_orbit();
        }
        if self.order() > ceiling {
            return Err(Error::OrderCeiling { ceiling });
        }
        for i in (0..=depth).rev() {
            self.close_level(i, ceiling)?;
        }
        Ok(())
    }

    /// Sifts every unchecked Schreier generator of level `i` through the deeper levels.
    fn close_level(&mut self, i: usize, ceiling: u128) -> Result<()> {
        loop {
            let level = &self.levels[i];
            let (np, ng) = (level.orbit.len(), level.gens.len());
            if level.checked_points == np && level.checked_gens == ng {
                return Ok(());
            }
            let (cp, cg) = (level.checked_points, level.checked_gens);
            let mut pending = Vec::new();
            for pi in 0..np {
                for si in 0..ng {
                    if pi < cp && si < cg {
                        continue;
                    }
                    let p = level.orbit[pi];
                    let s = &level.gens[si];
                    let q = s.apply(p);
                    let u_p = level.transversal[p].as_ref().unwrap();
                    let u_q = level.transversal[q].as_ref().unwrap();
                    let schreier = u_q.inverse().compose_unchecked(&s.compose_unchecked(u_p));
                    if !schreier.is_identity() {
                        pending.push(schreier);
                    }
                }
            }
            {
                let level = &mut self.levels[i];
                level.checked_points = np;
                level.checked_gens = ng;
            }
            for h in pending {
                let (residue, at) = self.sift(&h, i + 1);
                if !residue.is_identity() {
                    self.add_generator(at, residue, ceiling)?;
                }
            }
        }
    }

    fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    fn contains(&self, g: &Permutation) -> bool {
        let (residue, _) = self.sift(g, 0);
        residue.is_identity()
    }

    fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &p in &level.orbit {
                let u = level.transversal[p].as_ref().unwrap();
                for g in &out {
                    next.push(u.compose_unchecked(g));
                }
            }
            out = next;
        }
        out
    }
}

/// A permutation group given by generators, with an exact order and a
/// membership test backed by a stabilizer chain.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    table: OnceLock<std::result::Result<Arc<GroupTable>, Error>>,
}

impl PermGroup {
    pub fn new(generators: Vec<Permutation>) -> Result<Self> {
        Self::with_ceiling(generators, DEFAULT_ORDER_CEILING)
    }

    pub fn with_ceiling(generators: Vec<Permutation>, ceiling: u128) -> Result<Self> {
        let degree = generators.first().ok_or(Error::NoGenerators)?.degree();
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: bad.degree(),
            });
        }
        let chain = StabChain::build(degree, &generators, ceiling)?;
        Ok(PermGroup {
            degree,
            generators,
            chain,
            table: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(vec![Permutation::identity(degree.max(1))]).expect("identity generates")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain.contains(g)
    }

    /// Base points of the stabilizer chain (zero-based).
    pub fn base(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.base).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.compose_unchecked(b) == b.compose_unchecked(a))
        })
    }

    /// The explicit element table, built on first use. Fails above [`ELEMENT_CEILING`].
    pub fn table(&self) -> Result<&GroupTable> {
        self.table
            .get_or_init(|| {
                let order = self.order();
                if order > ELEMENT_CEILING {
                    return Err(Error::EnumerationCeiling {
                        what: "element enumeration",
                        order,
                        ceiling: ELEMENT_CEILING,
                    });
                }
                Ok(Arc::new(GroupTable::new(
                    self.chain.elements(),
                    &self.generators,
                    self.base(),
                )))
            })
            .as_ref()
            .map(|t| t.as_ref())
            .map_err(Clone::clone)
    }

    pub fn elements(&self) -> Result<&[Permutation]> {
        Ok(self.table()?.elements())
    }

    /// Conjugacy-class representatives with class sizes, ordered by
    /// (element order, lexicographically least image sequence).
    pub fn conjugacy_class_reps(&self) -> Result<Vec<(Permutation, usize)>> {
        let t = self.table()?;
        Ok(t.classes()
            .iter()
            .map(|c| (t.element(c.rep).clone(), c.size))
            .collect())
    }

    /// Any element of exact order `n`.
    pub fn element_of_order(&self, n: u64) -> Result<Option<Permutation>> {
        let t = self.table()?;
        Ok((0..t.len())
            .find(|&i| t.order(i) as u64 == n)
            .map(|i| t.element(i).clone()))
    }

    /// Two distinct commuting involutions, if any.
    pub fn klein_four_witness(&self) -> Result<Option<(Permutation, Permutation)>> {
        let t = self.table()?;
        let invols: Vec<usize> = (0..t.len()).filter(|&i| t.order(i) == 2).collect();
        for (k, &a) in invols.iter().enumerate() {
            for &b in &invols[k + 1..] {
                if t.mul(a, b) == t.mul(b, a) {
                    return Ok(Some((t.element(a).clone(), t.element(b).clone())));
                }
            }
        }
        Ok(None)
    }

    pub fn has_klein_four(&self) -> Result<bool> {
        Ok(self.klein_four_witness()?.is_some())
    }

    /// Whether `elements` generate the whole group.
    pub fn is_generated_by(&self, elements: &[Permutation]) -> Result<bool> {
        if elements.iter().any(|e| !self.contains(e)) {
            return Ok(false);
        }
        if self.order() == 1 {
            return Ok(true);
        }
        let nontrivial: Vec<Permutation> = elements
            .iter()
            .filter(|e| !e.is_identity())
            .cloned()
            .collect();
        if nontrivial.is_empty() {
            return Ok(false);
        }
        Ok(PermGroup::new(nontrivial)?.order() == self.order())
    }

    /// The subgroup generated by `elements` (identity when empty).
    pub fn subgroup(&self, elements: &[Permutation]) -> Result<PermGroup> {
        if elements.is_empty() {
            return Ok(PermGroup::trivial(self.degree));
        }
        PermGroup::new(elements.to_vec())
    }

    /// Multiset of element orders, as sorted (order, count) pairs.
    pub fn order_statistics(&self) -> Result<Vec<(u64, usize)>> {
        let t = self.table()?;
        let mut counts = std::collections::BTreeMap::new();
        for i in 0..t.len() {
            *counts.entry(t.order(i) as u64).or_insert(0usize) += 1;
        }
        Ok(counts.into_iter().collect())
    }
}

/// Builds a group from a nonempty list of generators of equal degree.
pub fn group_from_generators(gens: Vec<Permutation>) -> Result<PermGroup> {
    PermGroup::new(gens)
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}
