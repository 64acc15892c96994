use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::accola_maclachlan_group;
use crate::perm::{PermGroup, Permutation};

/// Built-in group families with concrete permutation realizations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum Family {
    Cyclic {
        n: u64,
    },
    Dihedral {
        n: u64,
    },
    Abelian {
        factors: Vec<u64>,
    },
    Symmetric {
        n: u64,
    },
    Alternating {
        n: u64,
    },
    Sl2 {
        p: u64,
    },
    Psl2 {
        p: u64,
    },
    AccolaMaclachlan {
        genus: u64,
    },
    DirectProduct {
        left: Box<Family>,
        right: Box<Family>,
    },
}

const MAX_DEGREE_N: u64 = 5000;
const MAX_SYMMETRIC_N: u64 = 12;

fn invalid(family: &str, message: impl Into<String>) -> Error {
    Error::InvalidParameters {
        family: family.into(),
        message: message.into(),
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl Family {
    /// Orders from the closed-form formulas.
    pub fn closed_form_order(&self) -> u128 {
        match self {
            Family::Cyclic { n } => *n as u128,
            Family::Dihedral { n } => 2 * *n as u128,
            Family::Abelian { factors } => factors.iter().map(|&f| f as u128).product(),
            Family::Symmetric { n } => (1..=*n as u128).product(),
            Family::Alternating { n } => {
                let f: u128 = (1..=*n as u128).product();
                if *n >= 2 {
                    f / 2
                } else {
                    f
                }
            }
            Family::Sl2 { p } => {
                let p = *p as u128;
                p * (p * p - 1)
            }
            Family::Psl2 { p } => {
                let q = *p as u128;
                let full = q * (q * q - 1);
                if *p == 2 {
                    full
                } else {
                    full / 2
                }
            }
            Family::AccolaMaclachlan { genus } => 8 * (*genus as u128 + 1),
            Family::DirectProduct { left, right } => {
                left.closed_form_order() * right.closed_form_order()
            }
        }
    }

    /// Concrete permutation generators.
    pub fn generators(&self) -> Result<Vec<Permutation>> {
        match self {
            Family::Cyclic { n } => {
                if *n == 0 || *n > MAX_DEGREE_N {
                    return Err(invalid(
                        "cyclic",
                        format!("n = {n} outside 1..={MAX_DEGREE_N}"),
                    ));
                }
                Ok(vec![cycle(*n as usize, 0, *n as usize)])
            }
            Family::Dihedral { n } => match *n {
                0 => Err(invalid("dihedral", "n = 0")),
                1 => Ok(vec![cycle(2, 0, 2)]),
                2 => Ok(vec![
                    perm(4, &[vec![1, 2], vec![3, 4]]),
                    perm(4, &[vec![1, 3], vec![2, 4]]),
                ]),
                n if n > MAX_DEGREE_N => Err(invalid("dihedral", format!("n = {n} too large"))),
                n => {
                    let n = n as usize;
                    let rot = cycle(n, 0, n);
                    let refl: Vec<Vec<u32>> = (1..=n / 2)
                        .filter(|&i| i != n + 1 - i)
                        .map(|i| vec![i as u32, (n + 1 - i) as u32])
                        .collect();
                    Ok(vec![rot, perm(n, &refl)])
                }
            },
            Family::Abelian { factors } => {
                if factors.is_empty() || factors.iter().any(|&f| f == 0) {
                    return Err(invalid("abelian", "factors must be positive and nonempty"));
                }
                let degree: u64 = factors.iter().sum();
                if degree > MAX_DEGREE_N {
                    return Err(invalid("abelian", "total degree too large"));
                }
                let degree = degree as usize;
                let mut offset = 0;
                let gens = factors
                    .iter()
                    .map(|&f| {
                        let g = cycle(degree, offset, f as usize);
                        offset += f as usize;
                        g
                    })
                    .collect();
                Ok(gens)
            }
            Family::Symmetric { n } => match *n {
                0 => Err(invalid("symmetric", "n = 0")),
                1 => Ok(vec![Permutation::identity(1)]),
                n if n > MAX_SYMMETRIC_N => {
                    Err(invalid("symmetric", format!("n = {n} > {MAX_SYMMETRIC_N}")))
                }
                n => {
                    let n = n as usize;
                    Ok(vec![perm(n, &[vec![1, 2]]), cycle(n, 0, n)])
                }
            },
            Family::Alternating { n } => match *n {
                0 => Err(invalid("alternating", "n = 0")),
                1 | 2 => Ok(vec![Permutation::identity(*n as usize)]),
                3 => Ok(vec![cycle(3, 0, 3)]),
                n if n > MAX_SYMMETRIC_N => Err(invalid(
                    "alternating",
                    format!("n = {n} > {MAX_SYMMETRIC_N}"),
                )),
                n => {
                    let n = n as usize;
                    let long = if n % 2 == 1 {
                        cycle(n, 0, n)
                    } else {
                        cycle(n, 1, n - 1)
                    };
                    Ok(vec![perm(n, &[vec![1, 2, 3]]), long])
                }
            },
            Family::Sl2 { p } | Family::Psl2 { p } => {
                let name = if matches!(self, Family::Sl2 { .. }) {
                    "sl2"
                } else {
                    "psl2"
                };
                if !is_prime(*p) || *p > 31 {
                    return Err(invalid(name, format!("p = {p} is not a prime ≤ 31")));
                }
                let t = Matrix2::new(1, 1, 0, 1, *p);
                let s = Matrix2::new(0, 1, -1, 0, *p);
                Ok(if matches!(self, Family::Sl2 { .. }) {
                    vec![t.on_vectors(), s.on_vectors()]
                } else {
                    vec![t.on_projective_line(), s.on_projective_line()]
                })
            }
            Family::AccolaMaclachlan { genus } => {
                let h = accola_maclachlan_group(*genus)?;
                Ok(vec![h.x, h.y])
            }
            Family::DirectProduct { left, right } => {
                let a = left.generators()?;
                let b = right.generators()?;
                let (da, db) = (a[0].degree(), b[0].degree());
                let degree = da + db;
                Ok(a.iter()
                    .map(|g| g.extend(degree))
                    .chain(b.iter().map(|g| g.shifted(da, degree)))
                    .collect())
            }
        }
    }

    pub fn realize(&self) -> Result<PermGroup> {
        PermGroup::new(self.generators()?)
    }

    /// Parses names such as `C5`, `cyclic(5)`, `D4`, `S5`, `Sym(5)`, `A5`,
    /// `SL2(7)`, `PSL2(7)`, `H4`, `abelian(2,2,2)`, `C2xC4`, `direct_product(S3,C2)`.
    pub fn parse(spec: &str) -> Option<Family> {
        let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(inner) = strip_call(&s, &["direct_product", "DirectProduct"]) {
            let (l, r) = split_top_level_comma(inner)?;
            return Some(Family::DirectProduct {
                left: Box::new(Family::parse(l)?),
                right: Box::new(Family::parse(r)?),
            });
        }
        if let Some(parts) = split_top_level_times(&s) {
            let mut fams = parts.into_iter().map(Family::parse);
            let first = fams.next()??;
            return fams.try_fold(first, |acc, f| {
                Some(Family::DirectProduct {
                    left: Box::new(acc),
                    right: Box::new(f?),
                })
            });
        }
        if let Some(inner) = strip_call(&s, &["abelian", "Abelian"]) {
            let factors: Option<Vec<u64>> = inner.split(',').map(|t| t.parse().ok()).collect();
            return Some(Family::Abelian { factors: factors? });
        }
        let num = |names: &[&str]| -> Option<u64> {
            if let Some(inner) = strip_call(&s, names) {
                return inner.parse().ok();
            }
            None
        };
        if let Some(n) = num(&["cyclic", "Cyclic", "C"]) {
            return Some(Family::Cyclic { n });
        }
        if let Some(n) = num(&["dihedral", "Dihedral", "D"]) {
            return Some(Family::Dihedral { n });
        }
        if let Some(n) = num(&["symmetric", "Symmetric", "Sym", "S"]) {
            return Some(Family::Symmetric { n });
        }
        if let Some(n) = num(&["alternating", "Alternating", "Alt", "A"]) {
            return Some(Family::Alternating { n });
        }
        if let Some(p) = num(&["psl2", "PSL2", "PSL"]) {
            return Some(Family::Psl2 { p });
        }
        if let Some(p) = num(&["sl2", "SL2", "SL"]) {
            return Some(Family::Sl2 { p });
        }
        if let Some(genus) = num(&["accola_maclachlan", "AccolaMaclachlan", "H"]) {
            return Some(Family::AccolaMaclachlan { genus });
        }
        // bare prefix + number: C5, S5, A5, D4, H4
        for (prefix, make) in [
            ("PSL2_", (|n| Family::Psl2 { p: n }) as fn(u64) -> Family),
            ("SL2_", |n| Family::Sl2 { p: n }),
            ("Sym", |n| Family::Symmetric { n }),
            ("Alt", |n| Family::Alternating { n }),
            ("C", |n| Family::Cyclic { n }),
            ("D", |n| Family::Dihedral { n }),
            ("S", |n| Family::Symmetric { n }),
            ("A", |n| Family::Alternating { n }),
            ("H", |genus| Family::AccolaMaclachlan { genus }),
        ] {
            if let Some(rest) = s.strip_prefix(prefix) {
                if let Ok(n) = rest.parse::<u64>() {
                    return Some(make(n));
                }
            }
        }
        None
    }
}

fn strip_call<'a>(s: &'a str, names: &[&str]) -> Option<&'a str> {
    for name in names {
        if let Some(rest) = s.strip_prefix(name) {
            if let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
                return Some(inner);
            }
        }
    }
    None
}

fn split_top_level_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

fn split_top_level_times(s: &str) -> Option<Vec<&str>> {
    let mut depth = 0i32;
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' | '×' if depth == 0 && i > start => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if parts.is_empty() {
        return None;
    }
    parts.push(&s[start..]);
    Some(parts)
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic { n } => write!(f, "C{n}"),
            Family::Dihedral { n } => write!(f, "D{n}"),
            Family::Abelian { factors } => {
                let parts: Vec<String> = factors.iter().map(u64::to_string).collect();
                write!(f, "abelian({})", parts.join(","))
            }
            Family::Symmetric { n } => write!(f, "Sym({n})"),
            Family::Alternating { n } => write!(f, "Alt({n})"),
            Family::Sl2 { p } => write!(f, "SL2({p})"),
            Family::Psl2 { p } => write!(f, "PSL2({p})"),
            Family::AccolaMaclachlan { genus } => write!(f, "H{genus}"),
            Family::DirectProduct { left, right } => write!(f, "{left}x{right}"),
        }
    }
}

fn cycle(degree: usize, offset: usize, len: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    if len > 1 {
        for i in 0..len {
            images[offset + i] = (offset + (i + 1) % len) as u32;
        }
    }
    Permutation::from_images(images).expect("cycle")
}

fn perm(degree: usize, cycles: &[Vec<u32>]) -> Permutation {
    Permutation::from_cycles(degree, cycles).expect("valid cycles")
}

/// A 2×2 matrix over the prime field of order `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Matrix2 {
    pub entries: [[u64; 2]; 2],
    pub p: u64,
}

impl Matrix2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64, p: u64) -> Self {
        let r = |x: i64| x.rem_euclid(p as i64) as u64;
        Matrix2 {
            entries: [[r(a), r(b)], [r(c), r(d)]],
            p,
        }
    }

    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        let p = self.p;
        let e = |i: usize, j: usize| {
            (self.entries[i][0] * o.entries[0][j] + self.entries[i][1] * o.entries[1][j]) % p
        };
        Matrix2 {
            entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
            p,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.entries == [[1, 0], [0, 1]]
    }

    /// Multiplicative order by direct powering.
    pub fn order(&self) -> u64 {
        let mut acc = *self;
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.mul(self);
            k += 1;
            assert!(
                k <= self.p * self.p * self.p * self.p,
                "matrix is not invertible"
            );
        }
        k
    }

    /// Action `v ↦ Mv` on the `p² − 1` nonzero column vectors; the vector
    /// `(a, b)` is point `a·p + b` (one-based after subtracting the zero vector).
    pub fn on_vectors(&self) -> Permutation {
        let p = self.p;
        let idx = |a: u64, b: u64| (a * p + b - 1) as u32;
        let mut images = vec![0u32; (p * p - 1) as usize];
        for a in 0..p {
            for b in 0..p {
                if a == 0 && b == 0 {
                    continue;
                }
                let na = (self.entries[0][0] * a + self.entries[0][1] * b) % p;
                let nb = (self.entries[1][0] * a + self.entries[1][1] * b) % p;
                images[idx(a, b) as usize] = idx(na, nb);
            }
        }
        Permutation::from_images(images).expect("invertible matrix")
    }

    /// Action on the `p + 1` points of the projective line: `[a : 1]` is point
    /// `a`, `[1 : 0]` is point `p` (zero-based).
    pub fn on_projective_line(&self) -> Permutation {
        let p = self.p;
        let inv = |x: u64| -> u64 { (1..p).find(|y| x * y % p == 1).expect("unit") };
        let normalize = |a: u64, b: u64| -> u32 {
            if b == 0 {
                p as u32
            } else {
                (a * inv(b) % p) as u32
            }
        };
        let mut images = vec![0u32; (p + 1) as usize];
        for pt in 0..=p {
            let (a, b) = if pt == p { (1, 0) } else { (pt, 1) };
            let na = (self.entries[0][0] * a + self.entries[0][1] * b) % p;
            let nb = (self.entries[1][0] * a + self.entries[1][1] * b) % p;
            images[pt as usize] = normalize(na, nb);
        }
        Permutation::from_images(images).expect("invertible matrix")
    }
}
