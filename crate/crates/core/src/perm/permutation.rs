use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of the points `1..=degree`.
///
/// Points are stored zero-based internally. Products follow the functional
/// convention: `p.compose(q)` maps `x` to `p(q(x))`, so the rightmost factor
/// acts first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from zero-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "images {images:?} are not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from one-based images (`images[i]` is the image of `i + 1`).
    pub fn from_one_based(images: &[u32]) -> Result<Self> {
        if images.iter().any(|&x| x == 0) {
            return Err(Error::InvalidPermutation(
                "point 0 in one-based images".into(),
            ));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// Builds a permutation of the given degree from one-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt as usize > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} outside 1..={degree}"
                    )));
                }
                let idx = (pt - 1) as usize;
                if touched[idx] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} appears twice"
                    )));
                }
                touched[idx] = true;
                let next = cycle[(k + 1) % cycle.len()];
                images[idx] = next - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(1,2,3)(4,5)`; the identity is `()`.
    /// The degree is the largest point mentioned, or `degree` when given and larger.
    pub fn parse_with_degree(text: &str, degree: Option<usize>) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        let max_pt = cycles.iter().flatten().copied().max().unwrap_or(0) as usize;
        let deg = match degree {
            Some(d) if d < max_pt => {
                return Err(Error::InvalidPermutation(format!(
                    "point {max_pt} exceeds degree {d}"
                )))
            }
            Some(d) => d,
            None => max_pt.max(1),
        };
        Self::from_cycles(deg, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Zero-based images.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a zero-based point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&sq);
            }
            sq = sq.compose_unchecked(&sq);
            e >>= 1;
        }
        acc
    }

    /// Conjugate `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.compose_unchecked(self).compose_unchecked(&g.inverse())
    }

    /// Cycles of length ≥ 2, one-based, each starting at its smallest point,
    /// ordered by smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32 + 1);
                x = self.images[x] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles().iter().map(Vec::len).collect()
    }

    /// Least `k ≥ 1` with `self^k = e`: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, len| acc.lcm(&(len as u64)))
    }

    /// Same permutation on `degree ≥ self.degree()` points, fixing the new ones.
    pub fn extend(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    /// Shifts the support by `offset` points inside a permutation of `degree` points.
    pub(crate) fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u32;
        }
        Permutation { images }
    }
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<u32>>> {
    let err = |m: String| Error::InvalidPermutation(format!("{m} in '{text}'"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty text".into()));
    }
    let mut cycles = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| err("expected '('".into()))?;
        let close = body.find(')').ok_or_else(|| err("missing ')'".into()))?;
        let inner = &body[..close];
        rest = &body[close + 1..];
        if inner.is_empty() {
            continue;
        }
        let pts = inner
            .split(',')
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| err(format!("bad point '{t}'")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if pts.len() > 1 {
            cycles.push(pts);
        } else if pts[0] == 0 {
            return Err(err("point 0".into()));
        }
    }
    Ok(cycles)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, pt) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{pt}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with_degree(s, None)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
