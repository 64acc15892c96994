use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact value of `2ρ − 2 + Σ (1 − 1/mᵢ)`.
pub type RhMeasure = BigRational;

/// Orbifold datum `(ρ; m₁, …, m_r)` with sorted periods, each at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    orbit_genus: u64,
    periods: Vec<u64>,
}

impl Signature {
    /// Sorts the periods and drops entries equal to 1. A zero period is an error.
    pub fn new(orbit_genus: u64, periods: Vec<u64>) -> Result<Self> {
        Self::normalized(orbit_genus, periods).map(|(s, _)| s)
    }

    /// Like [`Signature::new`], also returning how many unit periods were removed.
    pub fn normalized(orbit_genus: u64, mut periods: Vec<u64>) -> Result<(Self, usize)> {
        if periods.contains(&0) {
            return Err(Error::Precondition("signature period 0".into()));
        }
        let before = periods.len();
        periods.retain(|&m| m != 1);
        periods.sort_unstable();
        let dropped = before - periods.len();
        Ok((
            Signature {
                orbit_genus,
                periods,
            },
            dropped,
        ))
    }

    pub fn orbit_genus(&self) -> u64 {
        self.orbit_genus
    }

    pub fn periods(&self) -> &[u64] {
        &self.periods
    }

    pub fn branch_points(&self) -> usize {
        self.periods.len()
    }

    /// Number of entries of a generating vector: `2ρ + r`.
    pub fn vector_len(&self) -> usize {
        2 * self.orbit_genus as usize + self.periods.len()
    }

    /// Parses a signature and reports dropped unit periods.
    pub fn parse_normalized(s: &str) -> Result<(Self, usize)> {
        let bad = || Error::Precondition(format!("bad signature '{s}'"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (rho, rest) = inner.split_once(';').ok_or_else(bad)?;
        let rho: u64 = rho.parse().map_err(|_| bad())?;
        let rest = rest.trim_start_matches(['—', '-']);
        let periods = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(',')
                .map(|m| m.parse::<u64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        };
        Self::normalized(rho, periods)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.periods.iter().map(u64::to_string).collect();
        write!(f, "({};{})", self.orbit_genus, ps.join(","))
    }
}

impl FromStr for Signature {
    type Err = Error;

    /// Accepts `(ρ;m₁,…,m_r)`; an empty period list may be written `(ρ;)` or `(ρ;—)`.
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_normalized(s).map(|(sig, _)| sig)
    }
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn ratio(n: i64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rh_measure(s: &Signature) -> RhMeasure {
    let mut m = BigRational::from_integer(BigInt::from(2 * s.orbit_genus as i64 - 2));
    for &p in &s.periods {
        m += BigRational::one() - ratio(1, p);
    }
    m
}

/// The genus `σ ≥ 2` with `2σ − 2 = order · measure`, if there is one.
pub fn rh_genus(order: u128, s: &Signature) -> Option<u64> {
    let total = rh_measure(s) * BigRational::from_integer(BigInt::from(order));
    if !total.is_integer() {
        return None;
    }
    let n = total.to_integer();
    if n.is_negative() || n.is_odd() {
        return None;
    }
    let genus = (n / 2u32 + 1u32).to_u64()?;
    (genus >= 2).then_some(genus)
}

/// The measure a group of `order` needs to act on genus `σ`: `(2σ − 2)/order`.
pub fn required_measure(genus: u64, order: u128) -> RhMeasure {
    BigRational::new(BigInt::from(2 * genus - 2), BigInt::from(order))
}

pub fn divisors(n: u128) -> Vec<u128> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Every signature whose periods divide `order` and whose genus at `order` is
/// `genus`, sorted by orbit genus, then number of periods, then periods.
///
/// Each period term `1 − 1/m` lies in `[1/2, 1)`, so with target measure `μ`
/// the orbit genus is at most `(μ + 2)/2` and there are at most `2μ + 4`
/// periods: the search below is finite.
pub fn enumerate_signatures(genus: u64, order: u128) -> Vec<Signature> {
    if genus < 2 || order == 0 {
        return Vec::new();
    }
    let mu = required_measure(genus, order);
    let periods: Vec<u64> = divisors(order)
        .into_iter()
        .filter(|&d| d >= 2)
        .map(|d| d as u64)
        .collect();
    let half = ratio(1, 2);
    let mut out = Vec::new();
    let mut rho = 0u64;
    loop {
        let rest = &mu + BigRational::from_integer(BigInt::from(2 - 2 * rho as i64));
        if rest.is_negative() {
            break;
        }
        let mut acc = Vec::new();
        fill_periods(&periods, 0, &rest, &half, &mut acc, &mut |ps| {
            out.push(Signature {
                orbit_genus: rho,
                periods: ps.to_vec(),
            })
        });
        rho += 1;
    }
    out.sort_by(|a, b| {
        (a.orbit_genus, a.periods.len(), &a.periods).cmp(&(
            b.orbit_genus,
            b.periods.len(),
            &b.periods,
        ))
    });
    out
}

fn fill_periods(
    periods: &[u64],
    from: usize,
    rest: &BigRational,
    half: &BigRational,
    acc: &mut Vec<u64>,
    emit: &mut dyn FnMut(&[u64]),
) {
    if rest.is_zero() {
        emit(acc);
        return;
    }
    if rest < half {
        return;
    }
    for (i, &m) in periods.iter().enumerate().skip(from) {
        let term = BigRational::one() - ratio(1, m);
        if &term > rest {
            break;
        }
        acc.push(m);
        fill_periods(periods, i, &(rest - term), half, acc, emit);
        acc.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn measures() {
        assert_eq!(rh_measure(&sig("(0;2,3,7)")), ratio(1, 42));
        assert_eq!(rh_measure(&sig("(2;)")), ratio(2, 1));
        assert_eq!(rh_measure(&sig("(0;2,3,8)")), ratio(1, 24));
    }

    #[test]
    fn genera() {
        assert_eq!(rh_genus(120, &sig("(0;5,2,4)")), Some(4));
        assert_eq!(rh_genus(2, &sig("(0;2,2,2)")), None);
        assert_eq!(rh_genus(5, &sig("(0;5,5,5)")), Some(2));
        assert_eq!(rh_genus(4, &sig("(0;2,2,2)")), None);
        assert_eq!(rh_genus(1, &sig("(1;)")), None);
    }

    #[test]
    fn parse_and_display() {
        let s = sig("(0; 5, 2, 4)");
        assert_eq!(s.periods(), [2, 4, 5]);
        assert_eq!(s.to_string(), "(0;2,4,5)");
        assert_eq!(sig("(2;—)").to_string(), "(2;)");
        let (s, dropped) = Signature::parse_normalized("(0;1,2,8)").unwrap();
        assert_eq!((s.to_string(), dropped), ("(0;2,8)".to_string(), 1));
        assert!("(0;2,0)".parse::<Signature>().is_err());
        assert!("0;2,3".parse::<Signature>().is_err());
    }

    #[test]
    fn genus_two_small_orders() {
        let two: Vec<String> = enumerate_signatures(2, 2)
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(two, ["(0;2,2,2,2,2,2)", "(1;2,2)"]);
        assert_eq!(enumerate_signatures(2, 1), vec![sig("(2;)")]);
        assert!(enumerate_signatures(2, 48).contains(&sig("(0;2,3,8)")));
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), [1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), [1]);
    }
}
