use std::collections::HashMap;
use std::sync::OnceLock;

use crate::perm::permutation::Permutation;

/// Largest group for which a full multiplication table is stored.
pub const MUL_TABLE_CEILING: usize = 2048;

/// A conjugacy class inside a [`GroupTable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub rep: usize,
    pub size: usize,
    pub order: u32,
    pub members: Vec<usize>,
}

/// Explicit element list of a finite permutation group, indexed `0..n` in
/// lexicographic order of image sequences (index 0 is the identity).
pub struct GroupTable {
    elements: Vec<Permutation>,
    base: Vec<usize>,
    // keyed by base images, which determine a group element
    index: HashMap<Vec<u32>, u32>,
    mul: Option<Vec<u32>>,
    inv: Vec<u32>,
    order: Vec<u32>,
    gens: Vec<usize>,
    classes: OnceLock<Vec<ConjugacyClass>>,
}

impl GroupTable {
    pub(crate) fn new(
        mut elements: Vec<Permutation>,
        generators: &[Permutation],
        base: Vec<usize>,
    ) -> Self {
        elements.sort();
        let n = elements.len();
        let key =
            |p: &Permutation| -> Vec<u32> { base.iter().map(|&b| p.apply(b) as u32).collect() };
        let index: HashMap<Vec<u32>, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (key(e), i as u32))
            .collect();
        let mul = (n <= MUL_TABLE_CEILING).then(|| {
            let mut m = vec![0u32; n * n];
            let mut k = vec![0u32; base.len()];
            for i in 0..n {
                for j in 0..n {
                    for (slot, &b) in k.iter_mut().zip(&base) {
                        *slot = elements[i].apply(elements[j].apply(b)) as u32;
                    }
                    m[i * n + j] = index[&k];
                }
            }
            m
        });
        let inv = elements.iter().map(|e| index[&key(&e.inverse())]).collect();
        let order = elements.iter().map(|e| e.order() as u32).collect();
        let gens = generators.iter().map(|g| index[&key(g)] as usize).collect();
        GroupTable {
            elements,
            base,
            index,
            mul,
            inv,
            order,
            gens,
            classes: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.elements[0].degree() {
            return None;
        }
        let i = *self.index.get(&self.key(p))? as usize;
        (self.elements[i] == *p).then_some(i)
    }

    fn key(&self, p: &Permutation) -> Vec<u32> {
        self.base.iter().map(|&b| p.apply(b) as u32).collect()
    }

    /// Indices of the defining generators.
    pub fn generator_indices(&self) -> &[usize] {
        &self.gens
    }

    pub const IDENTITY: usize = 0;

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul {
            Some(m) => m[a * self.elements.len() + b] as usize,
            None => {
                let (x, y) = (&self.elements[a], &self.elements[b]);
                let k: Vec<u32> = self
                    .base
                    .iter()
                    .map(|&p| x.apply(y.apply(p)) as u32)
                    .collect();
                self.index[&k] as usize
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn order(&self, a: usize) -> u32 {
        self.order[a]
    }

    /// Commutator `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ab_ai = self.mul(ab, self.inv(a));
        self.mul(ab_ai, self.inv(b))
    }

    pub fn product(&self, elems: &[usize]) -> usize {
        elems
            .iter()
            .fold(Self::IDENTITY, |acc, &x| self.mul(acc, x))
    }

    /// Order of the subgroup generated by `gens`.
    pub fn generated_order(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.len()];
        self.closure_into(gens, &mut seen)
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.generated_order(gens) == self.len()
    }

    /// Marks the subgroup generated by `gens` in `seen` (all false on entry);
    /// returns its size.
    pub fn closure_into(&self, gens: &[usize], seen: &mut [bool]) -> usize {
        let mut stack = vec![Self::IDENTITY];
        seen[Self::IDENTITY] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }

    /// Subgroup elements (sorted indices) generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        self.closure_into(gens, &mut seen);
        (0..self.len()).filter(|&i| seen[i]).collect()
    }

    /// `g x g⁻¹`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        self.classes.get_or_init(|| self.compute_classes())
    }

    /// Class index of every element.
    pub fn class_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for (ci, c) in self.classes().iter().enumerate() {
            for &m in &c.members {
                out[m] = ci;
            }
        }
        out
    }

    fn compute_classes(&self) -> Vec<ConjugacyClass> {
        let n = self.len();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        let conjugators: Vec<usize> = if self.gens.is_empty() {
            vec![Self::IDENTITY]
        } else {
            self.gens.clone()
        };
        for start in 0..n {
            if assigned[start] {
                continue;
            }
            assigned[start] = true;
            let mut members = vec![start];
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for &g in &conjugators {
                    let y = self.conjugate(x, g);
                    if !assigned[y] {
                        assigned[y] = true;
                        members.push(y);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            classes.push(ConjugacyClass {
                rep: start,
                size: members.len(),
                order: self.order(start),
                members,
            });
        }
        classes.sort_by_key(|c| (c.order, c.rep));
        classes
    }
}
