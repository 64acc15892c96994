//! Brute-force oracles shared by the integration tests. They use only
//! permutation images and plain integer arithmetic.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use surface_actions::perm::Permutation;

pub type Img = Vec<u32>;

pub fn mul(p: &[u32], q: &[u32]) -> Img {
    // p after q
    q.iter().map(|&x| p[x as usize]).collect()
}

pub fn images(p: &Permutation) -> Img {
    p.images().to_vec()
}

/// All elements generated by `gens`, identity first.
pub fn closure(gens: &[Img], degree: usize) -> Vec<Img> {
    let id: Img = (0..degree as u32).collect();
    let mut seen: HashSet<Img> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul(g, &x);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out
}

/// A multiplication table over an explicit element list.
pub struct Table {
    pub elems: Vec<Img>,
    pub mul: Vec<Vec<usize>>,
    pub order: Vec<u64>,
}

impl Table {
    pub fn new(gens: &[Img], degree: usize) -> Table {
        let elems = closure(gens, degree);
        let index: HashMap<&Img, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mul_t: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&mul(a, b)]).collect())
            .collect();
        let order = (0..elems.len())
            .map(|a| {
                let (mut x, mut k) = (a, 1u64);
                while x != 0 {
                    x = mul_t[x][a];
                    k += 1;
                }
                k
            })
            .collect();
        Table {
            elems,
            mul: mul_t,
            order,
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.len()).find(|&b| self.mul[a][b] == 0).unwrap()
    }

    pub fn generated(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut n = 1;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul[g][x];
                if !seen[y] {
                    seen[y] = true;
                    n += 1;
                    stack.push(y);
                }
            }
        }
        n
    }
}

/// Whether some tuple `(a₁, b₁, …, a_ρ, b_ρ, c₁, …, c_r)` satisfies
/// `Π[aᵢ, bᵢ] · Π cⱼ = e`, `ord(cⱼ) = mⱼ` and generates the group.
pub fn vector_exists(t: &Table, rho: usize, periods: &[u64]) -> bool {
    let n = 2 * rho + periods.len();
    let mut slots: Vec<Vec<usize>> = Vec::with_capacity(n);
    for _ in 0..2 * rho {
        slots.push((0..t.len()).collect());
    }
    for &m in periods {
        slots.push((0..t.len()).filter(|&x| t.order[x] == m).collect());
    }
    if n == 0 {
        return t.len() == 1;
    }
    let mut tuple = vec![0usize; n];
    rec(t, rho, &slots, 0, &mut tuple)
}

fn rec(t: &Table, rho: usize, slots: &[Vec<usize>], k: usize, tuple: &mut Vec<usize>) -> bool {
    if k == slots.len() {
        let mut p = 0usize;
        for i in 0..rho {
            let (a, b) = (tuple[2 * i], tuple[2 * i + 1]);
            let c = t.mul[t.mul[a][b]][t.mul[t.inv(a)][t.inv(b)]];
            p = t.mul[p][c];
        }
        for &c in &tuple[2 * rho..] {
            p = t.mul[p][c];
        }
        return p == 0 && t.generated(tuple) == t.len();
    }
    for &x in &slots[k] {
        tuple[k] = x;
        if rec(t, rho, slots, k + 1, tuple) {
            return true;
        }
    }
    false
}

pub fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

/// `Some(σ)` when `2σ − 2 = n (2ρ − 2 + Σ(1 − 1/m))` has a solution `σ ≥ 2`,
/// for periods dividing `n`.
pub fn genus_of(n: u128, rho: u64, periods: &[u64]) -> Option<u64> {
    let mut total = n as i128 * (2 * rho as i128 - 2);
    for &m in periods {
        if n % m as u128 != 0 {
            return None;
        }
        total += n as i128 - (n / m as u128) as i128;
    }
    (total >= 2 && total % 2 == 0).then(|| (total / 2 + 1) as u64)
}

/// Every `(ρ, sorted periods)` with `2ρ + r ≤ max_len`, periods dividing `n`
/// and at least 2, with a genus.
pub fn short_signatures(n: u128, max_len: usize) -> Vec<(u64, Vec<u64>)> {
    let divs: Vec<u64> = (2..=n as u64).filter(|d| n % *d as u128 == 0).collect();
    let mut out = Vec::new();
    for rho in 0..=(max_len / 2) as u64 {
        let r_max = max_len - 2 * rho as usize;
        for r in 0..=r_max {
            let mut acc = Vec::new();
            multisets(&divs, r, 0, &mut acc, &mut |ps| {
                if genus_of(n, rho, ps).is_some() {
                    out.push((rho, ps.to_vec()));
                }
            });
        }
    }
    out
}

fn multisets(divs: &[u64], r: usize, start: usize, acc: &mut Vec<u64>, f: &mut dyn FnMut(&[u64])) {
    if acc.len() == r {
        f(acc);
        return;
    }
    for i in start..divs.len() {
        acc.push(divs[i]);
        multisets(divs, r, i, acc, f);
        acc.pop();
    }
}
