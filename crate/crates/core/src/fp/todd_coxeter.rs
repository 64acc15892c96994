//! HLT coset enumeration over the trivial subgroup, with coincidence processing.

use crate::error::{Error, Result};
use crate::fp::presentation::{Letter, Presentation};
use crate::perm::{PermGroup, Permutation};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetStatus {
    Complete,
    Overflow,
}

/// Result of an enumeration. When complete, `action[c][col]` is the coset
/// `c · letter(col)` with columns `2g` (generator) and `2g + 1` (inverse).
#[derive(Debug, Clone)]
pub struct CosetTable {
    pub cosets: usize,
    pub action: Vec<Vec<usize>>,
    pub status: CosetStatus,
    /// Number of cosets defined during the run, including ones later identified.
    pub defined: usize,
}

impl CosetTable {
    pub fn is_complete(&self) -> bool {
        self.status == CosetStatus::Complete
    }

    /// Every column is a bijection and every relator fixes every coset.
    pub fn verify(&self, p: &Presentation) -> bool {
        if !self.is_complete() {
            return false;
        }
        let cols = 2 * p.generator_count();
        for col in 0..cols {
            let mut hit = vec![false; self.cosets];
            for c in 0..self.cosets {
                let d = self.action[c][col];
                if d >= self.cosets || hit[d] || self.action[d][col ^ 1] != c {
                    return false;
                }
                hit[d] = true;
            }
        }
        p.relators().iter().all(|r| {
            (0..self.cosets).all(|c| r.iter().fold(c, |x, l| self.action[x][l.column()]) == c)
        })
    }

    /// Permutation of the cosets induced by a generator, as a left action:
    /// the returned permutation sends `c` to `c · g⁻¹`, so that words compose
    /// in the rightmost-first convention of [`Permutation::compose`].
    pub fn generator_permutation(&self, generator: usize) -> Permutation {
        let images = (0..self.cosets)
            .map(|c| self.action[c][2 * generator + 1] as u32)
            .collect();
        Permutation::from_images(images).expect("complete coset table columns are bijections")
    }

    /// The permutation group generated by the coset action of every generator.
    pub fn to_perm_group(&self, p: &Presentation) -> Result<PermGroup> {
        if !self.is_complete() {
            return Err(Error::CosetOverflow {
                max_cosets: self.defined,
            });
        }
        PermGroup::new(
            (0..p.generator_count())
                .map(|g| self.generator_permutation(g))
                .collect(),
        )
    }
}

struct Enumerator<'a> {
    relators: &'a [Vec<Letter>],
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    next: usize,
    max: usize,
    queue: Vec<usize>,
}

#[derive(Debug)]
struct Overflow;

impl<'a> Enumerator<'a> {
    fn entry(&self, c: usize, col: usize) -> u32 {
        self.table[c * self.cols + col]
    }

    fn set(&mut self, c: usize, col: usize, v: u32) {
        self.table[c * self.cols + col] = v;
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, col: usize) -> std::result::Result<usize, Overflow> {
        if self.next >= self.max {
            return Err(Overflow);
        }
        let d = self.next;
        self.next += 1;
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.parent.push(d as u32);
        self.set(c, col, d as u32);
        self.set(d, col ^ 1, c as u32);
        Ok(d)
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut x = c;
        while self.parent[x] as usize != root {
            let nx = self.parent[x] as usize;
            self.parent[x] = root as u32;
            x = nx;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo as u32;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for col in 0..self.cols {
                let d = self.entry(g, col);
                if d == NONE {
                    continue;
                }
                let d = d as usize;
                self.set(d, col ^ 1, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.entry(mu, col) != NONE {
                    let t = self.entry(mu, col) as usize;
                    self.merge(nu, t);
                } else if self.entry(nu, col ^ 1) != NONE {
                    let t = self.entry(nu, col ^ 1) as usize;
                    self.merge(mu, t);
                } else {
                    self.set(mu, col, nu as u32);
                    self.set(nu, col ^ 1, mu as u32);
                }
            }
        }
    }

    fn scan_and_fill(
        &mut self,
        alpha: usize,
        word: &[Letter],
    ) -> std::result::Result<(), Overflow> {
        let mut f = alpha;
        let mut b = alpha;
        let mut i = 0usize;
        let mut j = word.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.entry(f, word[i].column()) != NONE {
                f = self.entry(f, word[i].column()) as usize;
                i += 1;
            }
            if (i as isize) > j {
                if f != alpha {
                    self.coincidence(f, alpha);
                }
                return Ok(());
            }
            while j >= i as isize && self.entry(b, word[j as usize].inv().column()) != NONE {
                b = self.entry(b, word[j as usize].inv().column()) as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let col = word[i].column();
                self.set(f, col, b as u32);
                self.set(b, col ^ 1, f as u32);
                return Ok(());
            }
            self.define(f, word[i].column())?;
        }
    }

    fn run(&mut self) -> std::result::Result<(), Overflow> {
        let mut c = 0;
        while c < self.next {
            if self.live(c) {
                for r in 0..self.relators.len() {
                    if !self.live(c) {
                        break;
                    }
                    let rel = self.relators[r].clone();
                    self.scan_and_fill(c, &rel)?;
                }
                if self.live(c) {
                    for col in 0..self.cols {
                        if self.entry(c, col) == NONE {
                            self.define(c, col)?;
                        }
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }
}

/// Enumerates cosets of the trivial subgroup, defining at most `max_cosets` cosets.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> CosetTable {
    let cols = 2 * p.generator_count();
    let mut e = Enumerator {
        relators: p.relators(),
        cols,
        table: vec![NONE; cols],
        parent: vec![0],
        next: 1,
        max: max_cosets.max(1),
        queue: Vec::new(),
    };
    let outcome = e.run();
    if outcome.is_err() {
        return CosetTable {
            cosets: 0,
            action: Vec::new(),
            status: CosetStatus::Overflow,
            defined: e.next,
        };
    }
    // compact live cosets, keeping their relative order
    let live: Vec<usize> = (0..e.next).filter(|&c| e.live(c)).collect();
    let mut renumber = vec![usize::MAX; e.next];
    for (k, &c) in live.iter().enumerate() {
        renumber[c] = k;
    }
    let action = live
        .iter()
        .map(|&c| {
            (0..cols)
                .map(|col| {
                    let d = e.entry(c, col);
                    let d = e.rep(d as usize);
                    renumber[d]
                })
                .collect()
        })
        .collect();
    CosetTable {
        cosets: live.len(),
        action,
        status: CosetStatus::Complete,
        defined: e.next,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_presentations() {
        for n in 1..=200usize {
            let p: Presentation = format!("<x | x^{n}>").parse().unwrap();
            let t = todd_coxeter(&p, 1000);
            assert!(t.is_complete());
            assert_eq!(t.cosets, n, "n = {n}");
            assert!(t.verify(&p));
        }
    }

    #[test]
    fn infinite_dihedral_overflows() {
        let p: Presentation = "<x,y | x^2, y^2>".parse().unwrap();
        let t = todd_coxeter(&p, 10_000);
        assert_eq!(t.status, CosetStatus::Overflow);
    }

    #[test]
    fn symmetric_group_s3() {
        let p: Presentation = "<a,b | a^2, b^3, (a*b)^2>".parse().unwrap();
        let t = todd_coxeter(&p, 100);
        assert_eq!(t.cosets, 6);
        assert!(t.verify(&p));
        assert_eq!(t.to_perm_group(&p).unwrap().order(), 6);
    }

    #[test]
    fn quaternion_group() {
        let p: Presentation = "<a,b | a^4, a^2*b^-2, b^-1*a*b*a>".parse().unwrap();
        let t = todd_coxeter(&p, 1000);
        assert_eq!(t.cosets, 8);
        assert!(t.verify(&p));
    }
}
