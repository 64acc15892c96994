//! Embedding search between permutation groups and subgroup enumeration.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::group::PermGroup;
use crate::perm::permutation::Permutation;
use crate::perm::table::GroupTable;

/// Groups up to this order are searched exhaustively, so an absent embedding is definitive.
pub const DEFINITIVE_EMBEDDING_CEILING: u128 = 2000;

/// Ceiling on `|G|` for [`subgroups_of_order`].
pub const SUBGROUP_ENUMERATION_CEILING: u128 = 2000;

/// Default node budget for [`find_monomorphism`].
pub const DEFAULT_EMBEDDING_BUDGET: u64 = 10_000_000;

/// An injective homomorphism given by the images of the source generators.
#[derive(Debug, Clone)]
pub struct Monomorphism {
    pub source: PermGroup,
    pub target: PermGroup,
    pub images: Vec<Permutation>,
}

impl Monomorphism {
    /// Independent check: the graph `⟨(h_i, φ(h_i))⟩ ≤ H × G` has order `|H|`
    /// (well-defined homomorphism) and the image has order `|H|` (injective).
    pub fn verify(&self) -> bool {
        let h = &self.source;
        let g = &self.target;
        if self.images.len() != h.generators().len() {
            return false;
        }
        if self.images.iter().any(|x| !g.contains(x)) {
            return false;
        }
        let dh = h.degree();
        let graph_gens: Vec<Permutation> = h
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(a, b)| {
                let mut img: Vec<u32> = a.images().to_vec();
                img.extend(b.images().iter().map(|&x| x + dh as u32));
                Permutation::from_images(img).expect("disjoint union is a permutation")
            })
            .collect();
        let graph = match PermGroup::new(graph_gens) {
            Ok(gr) => gr,
            Err(_) => return false,
        };
        let image = match PermGroup::new(self.images.clone()) {
            Ok(im) => im,
            Err(_) => return false,
        };
        let ok = graph.order() == h.order() && image.order() == h.order();
        debug_assert!(!ok || g.order() % h.order() == 0, "Lagrange");
        ok
    }
}

/// Why an embedding was ruled out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbsenceReason {
    /// `|H|` does not divide `|G|`.
    Lagrange,
    /// Some element order of `H` is missing from `G`, or occurs less often.
    ElementOrders,
    /// Exhaustive search over generator images.
    ExhaustiveSearch,
}

#[derive(Debug, Clone)]
pub enum EmbeddingSearch {
    Found(Monomorphism),
    Absent(AbsenceReason),
    Inconclusive { nodes: u64 },
}

impl EmbeddingSearch {
    pub fn is_found(&self) -> bool {
        matches!(self, EmbeddingSearch::Found(_))
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, EmbeddingSearch::Absent(_))
    }

    pub fn monomorphism(&self) -> Option<&Monomorphism> {
        match self {
            EmbeddingSearch::Found(m) => Some(m),
            _ => None,
        }
    }
}

/// Searches for an injective homomorphism `H → G` with the default budget.
pub fn find_monomorphism(h: &PermGroup, g: &PermGroup) -> Result<EmbeddingSearch> {
    find_monomorphism_with_budget(h, g, DEFAULT_EMBEDDING_BUDGET)
}

pub fn find_monomorphism_with_budget(
    h: &PermGroup,
    g: &PermGroup,
    budget: u64,
) -> Result<EmbeddingSearch> {
    search_embedding(h, g, budget, true)
}

/// Like [`find_monomorphism_with_budget`] but skips the element-order
/// shortcut: unless Lagrange already rules it out, absence is decided by the
/// backtracking search itself.
pub fn find_monomorphism_exhaustive(
    h: &PermGroup,
    g: &PermGroup,
    budget: u64,
) -> Result<EmbeddingSearch> {
    search_embedding(h, g, budget, false)
}

fn search_embedding(
    h: &PermGroup,
    g: &PermGroup,
    budget: u64,
    shortcuts: bool,
) -> Result<EmbeddingSearch> {
    if h.order() > g.order() || g.order() % h.order() != 0 {
        return Ok(EmbeddingSearch::Absent(AbsenceReason::Lagrange));
    }
    let ht = h.table()?;
    let gt = g.table()?;
    if shortcuts && !order_statistics_fit(ht, gt) {
        return Ok(EmbeddingSearch::Absent(AbsenceReason::ElementOrders));
    }

    let mut hgens: Vec<usize> = Vec::new();
    for &s in ht.generator_indices() {
        if s != GroupTable::IDENTITY && !hgens.contains(&s) {
            hgens.push(s);
        }
    }
    let mut search = MonoSearch::new(ht, gt, hgens, budget);
    match search.run() {
        Some(images) => {
            let mono = Monomorphism {
                source: h.clone(),
                target: g.clone(),
                images: h
                    .generators()
                    .iter()
                    .map(|x| {
                        let xi = ht.index_of(x).expect("generator in table");
                        gt.element(search.phi_of(xi, &images)).clone()
                    })
                    .collect(),
            };
            debug_assert!(mono.verify());
            Ok(EmbeddingSearch::Found(mono))
        }
        None if search.exhausted_budget => Ok(EmbeddingSearch::Inconclusive {
            nodes: search.nodes,
        }),
        None => Ok(EmbeddingSearch::Absent(AbsenceReason::ExhaustiveSearch)),
    }
}

fn order_statistics_fit(ht: &GroupTable, gt: &GroupTable) -> bool {
    let mut hc = std::collections::BTreeMap::new();
    for i in 0..ht.len() {
        *hc.entry(ht.order(i)).or_insert(0usize) += 1;
    }
    let mut gc = std::collections::BTreeMap::new();
    for i in 0..gt.len() {
        *gc.entry(gt.order(i)).or_insert(0usize) += 1;
    }
    hc.iter()
        .all(|(d, &c)| gc.get(d).copied().unwrap_or(0) >= c)
}

struct MonoSearch<'a> {
    ht: &'a GroupTable,
    gt: &'a GroupTable,
    hgens: Vec<usize>,
    // BFS spanning tree of the Cayley graph of H: (element, parent, generator slot)
    tree: Vec<(usize, usize, usize)>,
    candidates: Vec<Vec<usize>>,
    budget: u64,
    nodes: u64,
    exhausted_budget: bool,
}

impl<'a> MonoSearch<'a> {
    fn new(ht: &'a GroupTable, gt: &'a GroupTable, hgens: Vec<usize>, budget: u64) -> Self {
        let mut seen = vec![false; ht.len()];
        seen[GroupTable::IDENTITY] = true;
        let mut tree = Vec::with_capacity(ht.len());
        let mut queue = std::collections::VecDeque::from([GroupTable::IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for (slot, &s) in hgens.iter().enumerate() {
                let y = ht.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    tree.push((y, x, slot));
                    queue.push_back(y);
                }
            }
        }
        let candidates = hgens
            .iter()
            .enumerate()
            .map(|(k, &s)| {
                let d = ht.order(s);
                if k == 0 {
                    // conjugating an embedding gives an embedding
                    gt.classes()
                        .iter()
                        .filter(|c| c.order == d)
                        .map(|c| c.rep)
                        .collect()
                } else {
                    (0..gt.len()).filter(|&x| gt.order(x) == d).collect()
                }
            })
            .collect();
        MonoSearch {
            ht,
            gt,
            hgens,
            tree,
            candidates,
            budget,
            nodes: 0,
            exhausted_budget: false,
        }
    }

    fn run(&mut self) -> Option<Vec<usize>> {
        if self.hgens.is_empty() {
            return Some(Vec::new());
        }
        let mut chosen = Vec::with_capacity(self.hgens.len());
        self.dfs(&mut chosen).then_some(chosen)
    }

    fn dfs(&mut self, chosen: &mut Vec<usize>) -> bool {
        let k = chosen.len();
        if k == self.hgens.len() {
            return self.check(chosen);
        }
        for ci in 0..self.candidates[k].len() {
            let c = self.candidates[k][ci];
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted_budget = true;
                return false;
            }
            if !self.pairwise_consistent(chosen, c) {
                continue;
            }
            chosen.push(c);
            if self.dfs(chosen) {
                return true;
            }
            chosen.pop();
            if self.exhausted_budget {
                return false;
            }
        }
        false
    }

    fn pairwise_consistent(&self, chosen: &[usize], c: usize) -> bool {
        let k = chosen.len();
        let hk = self.hgens[k];
        chosen.iter().enumerate().all(|(i, &g)| {
            let hi = self.hgens[i];
            self.ht.order(self.ht.mul(hi, hk)) == self.gt.order(self.gt.mul(g, c))
                && self.ht.order(self.ht.mul(self.ht.inv(hi), hk))
                    == self.gt.order(self.gt.mul(self.gt.inv(g), c))
        })
    }

    fn images_along_tree(&self, chosen: &[usize]) -> Vec<usize> {
        let mut phi = vec![usize::MAX; self.ht.len()];
        phi[GroupTable::IDENTITY] = GroupTable::IDENTITY;
        for &(y, x, slot) in &self.tree {
            phi[y] = self.gt.mul(phi[x], chosen[slot]);
        }
        phi
    }

    fn check(&self, chosen: &[usize]) -> bool {
        let phi = self.images_along_tree(chosen);
        for x in 0..self.ht.len() {
            if x != GroupTable::IDENTITY && phi[x] == GroupTable::IDENTITY {
                return false;
            }
            for (slot, &s) in self.hgens.iter().enumerate() {
                if phi[self.ht.mul(x, s)] != self.gt.mul(phi[x], chosen[slot]) {
                    return false;
                }
            }
        }
        true
    }

    fn phi_of(&self, x: usize, chosen: &[usize]) -> usize {
        self.images_along_tree(chosen)[x]
    }
}

/// `H ≅ G`: equal orders and element-order statistics, then embeddings both ways.
pub fn is_isomorphic(h: &PermGroup, g: &PermGroup) -> Result<Option<bool>> {
    if h.order() != g.order() {
        return Ok(Some(false));
    }
    if h.order_statistics()? != g.order_statistics()? {
        return Ok(Some(false));
    }
    let forward = find_monomorphism(h, g)?;
    let backward = find_monomorphism(g, h)?;
    Ok(match (forward, backward) {
        (EmbeddingSearch::Found(_), EmbeddingSearch::Found(_)) => Some(true),
        (EmbeddingSearch::Absent(_), _) | (_, EmbeddingSearch::Absent(_)) => Some(false),
        _ => None,
    })
}

/// Subgroups of order `k`, one per conjugacy class, in a deterministic order.
pub fn subgroups_of_order(g: &PermGroup, k: u128) -> Result<Vec<PermGroup>> {
    if k == 0 || g.order() % k != 0 {
        return Ok(Vec::new());
    }
    if g.order() > SUBGROUP_ENUMERATION_CEILING {
        return Err(Error::EnumerationCeiling {
            what: "subgroup enumeration",
            order: g.order(),
            ceiling: SUBGROUP_ENUMERATION_CEILING,
        });
    }
    let t = g.table()?;
    let n = t.len();
    let k = k as usize;

    // Every subgroup of order k is reached by a chain of cyclic extensions
    // whose orders all divide k; conjugacy-class representatives suffice.
    let mut seen_sets: HashSet<Vec<usize>> = HashSet::new();
    let mut classes: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut reps: Vec<(Vec<usize>, Vec<usize>)> = Vec::new(); // (elements, generators)
    let trivial = vec![GroupTable::IDENTITY];
    classes.insert(trivial.clone());
    seen_sets.insert(trivial.clone());
    let mut frontier = vec![(trivial, Vec::<usize>::new())];
    if k == 1 {
        reps.push((vec![GroupTable::IDENTITY], Vec::new()));
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (elems, gens) in &frontier {
            let mut member = vec![false; n];
            for &e in elems {
                member[e] = true;
            }
            for x in 0..n {
                if member[x] {
                    continue;
                }
                let mut ng = gens.clone();
                ng.push(x);
                let sub = t.closure(&ng);
                if k % sub.len() != 0 || !seen_sets.insert(sub.clone()) {
                    continue;
                }
                let canon = canonical_conjugate(t, &sub);
                if classes.insert(canon) {
                    if sub.len() == k {
                        reps.push((sub.clone(), ng.clone()));
                    } else {
                        next.push((sub, ng));
                    }
                }
            }
        }
        frontier = next;
    }
    reps.sort_by(|a, b| canonical_conjugate(t, &a.0).cmp(&canonical_conjugate(t, &b.0)));
    reps.into_iter()
        .map(|(_, gens)| {
            let perms: Vec<Permutation> = if gens.is_empty() {
                vec![g.identity()]
            } else {
                gens.iter().map(|&i| t.element(i).clone()).collect()
            };
            PermGroup::new(perms)
        })
        .collect()
}

fn canonical_conjugate(t: &GroupTable, sub: &[usize]) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for g in 0..t.len() {
        let mut conj: Vec<usize> = sub.iter().map(|&x| t.conjugate(x, g)).collect();
        conj.sort_unstable();
        if best.as_ref().is_none_or(|b| conj < *b) {
            best = Some(conj);
        }
    }
    best.expect("nonempty group")
}
