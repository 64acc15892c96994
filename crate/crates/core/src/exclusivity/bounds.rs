use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rh::{rh_measure, RhMeasure, Signature};

fn check(genus: u64) -> Result<()> {
    if genus < 2 {
        Err(Error::LowGenus(genus as i64))
    } else {
        Ok(())
    }
}

/// `84(σ − 1)`.
pub fn hurwitz_bound(genus: u64) -> Result<u128> {
    check(genus)?;
    Ok(84 * (genus as u128 - 1))
}

/// `48(σ − 1)`: the bound for groups whose signature measure is not minimal.
pub fn fallback_bound(genus: u64) -> Result<u128> {
    check(genus)?;
    Ok(48 * (genus as u128 - 1))
}

/// `8(σ + 1)`, the order of `H_σ`.
pub fn accola_maclachlan_bound(genus: u64) -> Result<u128> {
    check(genus)?;
    Ok(8 * (genus as u128 + 1))
}

pub fn lcm_all(xs: &[u128]) -> u128 {
    xs.iter().fold(1u128, |a, &b| a.lcm(&b))
}

/// The orders `(σ − 1, σ, 8(σ + 1))` of the three standard acting groups.
pub fn standard_orders(genus: u64) -> [u128; 3] {
    let s = genus as u128;
    [s - 1, s, 8 * (s + 1)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LcmVerdict {
    Contradiction,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcmCertificate {
    pub genus: u64,
    #[serde(with = "crate::serde_u128::vec")]
    pub orders: Vec<u128>,
    #[serde(with = "crate::serde_u128")]
    pub lcm: u128,
    #[serde(with = "crate::serde_u128")]
    pub bound: u128,
    pub verdict: LcmVerdict,
}

impl LcmCertificate {
    pub fn is_contradiction(&self) -> bool {
        self.verdict == LcmVerdict::Contradiction
    }

    pub fn verify(&self) -> std::result::Result<(), String> {
        let fresh = lcm_certificate(self.genus).map_err(|e| e.to_string())?;
        if fresh != *self {
            return Err(format!(
                "lcm certificate for σ={} does not recompute",
                self.genus
            ));
        }
        Ok(())
    }
}

pub fn lcm_certificate(genus: u64) -> Result<LcmCertificate> {
    let bound = hurwitz_bound(genus)?;
    let orders = standard_orders(genus).to_vec();
    let lcm = lcm_all(&orders);
    Ok(LcmCertificate {
        genus,
        orders,
        lcm,
        bound,
        verdict: if lcm > bound {
            LcmVerdict::Contradiction
        } else {
            LcmVerdict::Inconclusive
        },
    })
}

/// `lcm(σ−1, σ, 8(σ+1)) ≥ (σ−1)σ(σ+1)/2`; when the right side alone exceeds
/// `84(σ−1)` (every `σ ≥ 13`) no group can contain all three.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericBound {
    pub genus: u64,
    #[serde(with = "crate::serde_u128")]
    pub lcm: u128,
    #[serde(with = "crate::serde_u128")]
    pub cubic_lower: u128,
    #[serde(with = "crate::serde_u128")]
    pub bound: u128,
    pub contradiction: bool,
}

impl GenericBound {
    pub fn verify(&self) -> std::result::Result<(), String> {
        let fresh = generic_bound(self.genus).map_err(|e| e.to_string())?;
        if fresh != *self {
            return Err(format!(
                "generic bound for σ={} does not recompute",
                self.genus
            ));
        }
        if self.lcm < self.cubic_lower {
            return Err(format!(
                "lcm {} below cubic lower bound {}",
                self.lcm, self.cubic_lower
            ));
        }
        Ok(())
    }
}

pub fn generic_bound(genus: u64) -> Result<GenericBound> {
    let bound = hurwitz_bound(genus)?;
    let s = genus as u128;
    let cubic_lower = (s - 1) * s * (s + 1) / 2;
    Ok(GenericBound {
        genus,
        lcm: lcm_all(&standard_orders(genus)),
        cubic_lower,
        bound,
        contradiction: cubic_lower > bound,
    })
}

/// A distinct positive measure value with every signature attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureValue {
    pub measure: RhMeasure,
    pub signatures: Vec<Signature>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureScan {
    pub values: Vec<MeasureValue>,
    /// Largest period the final exhaustive scan used.
    pub max_period: u64,
}

/// The `k` smallest positive values of `2ρ − 2 + Σ(1 − 1/mᵢ)` with all
/// signatures attaining each.
///
/// Completeness. Each period term is at least `1/2`, so a positive measure
/// below `1/2` needs `ρ = 0` and `r ∈ {3, 4}`; with `r = 4` the minimum is
/// `(0;2,2,2,3) = 1/6`. For `r = 3`, if some period exceeds `P` then either
/// the other two are `(2, 2)` (measure negative) or their contribution is at
/// least `1/6`, giving a measure above `1/6 − 1/P`. Every positive value
/// below `1/6` is therefore found by scanning periods up to `P` once the
/// `k`-th value found is at most `1/6 − 1/P`. Infinitely many values lie
/// below `1/6`, so growing `P` (starting from `max_period`) terminates.
pub fn minimal_positive_measures(k: usize, max_period: u64) -> Result<MeasureScan> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    if max_period < 2 {
        return Err(Error::Precondition("max_period must be at least 2".into()));
    }
    let sixth = BigRational::new(BigInt::one(), BigInt::from(6));
    let mut p = max_period;
    loop {
        let cap = &sixth - BigRational::new(BigInt::one(), BigInt::from(p));
        if cap.is_positive() {
            let values = scan_below(p, &cap);
            if values.len() >= k {
                return Ok(MeasureScan {
                    values: values.into_iter().take(k).collect(),
                    max_period: p,
                });
            }
        }
        p = p
            .checked_mul(2)
            .ok_or(Error::Precondition("period scan overflow".into()))?;
    }
}

/// All signatures `(0; a, b, c)` and `(0; a, b, c, d)` with periods `≤ p` and
/// measure in `(0, cap]`, grouped by value.
fn scan_below(p: u64, cap: &BigRational) -> Vec<MeasureValue> {
    let mut found: Vec<(RhMeasure, Signature)> = Vec::new();
    for r in 3..=4usize {
        let mut acc = Vec::with_capacity(r);
        scan_rec(r, p, cap, &mut acc, &mut found);
    }
    found.sort();
    let mut values: Vec<MeasureValue> = Vec::new();
    for (m, s) in found {
        match values.last_mut() {
            Some(v) if v.measure == m => v.signatures.push(s),
            _ => values.push(MeasureValue {
                measure: m,
                signatures: vec![s],
            }),
        }
    }
    values
}

fn scan_rec(
    r: usize,
    p: u64,
    cap: &BigRational,
    acc: &mut Vec<u64>,
    out: &mut Vec<(RhMeasure, Signature)>,
) {
    if acc.len() == r {
        let s = Signature::new(0, acc.clone()).expect("periods ≥ 2");
        let m = rh_measure(&s);
        if m.is_positive() && &m <= cap {
            out.push((m, s));
        }
        return;
    }
    let start = acc.last().copied().unwrap_or(2);
    let remaining = (r - acc.len()) as i64;
    let used: BigRational = acc
        .iter()
        .map(|&m| BigRational::new(BigInt::one(), BigInt::from(m)))
        .fold(BigRational::zero(), |a, b| a + b);
    for m in start..=p {
        // the remaining periods are all ≥ m, so the measure is at least this
        let lower = BigRational::from_integer(BigInt::from(r as i64 - 2))
            - &used
            - BigRational::new(BigInt::from(remaining), BigInt::from(m));
        if &lower > cap {
            break;
        }
        acc.push(m);
        scan_rec(r, p, cap, acc, out);
        acc.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn bounds_by_substitution() {
        assert_eq!(
            (
                hurwitz_bound(2).unwrap(),
                fallback_bound(2).unwrap(),
                accola_maclachlan_bound(2).unwrap()
            ),
            (84, 48, 24)
        );
        assert_eq!(
            (
                hurwitz_bound(7).unwrap(),
                fallback_bound(7).unwrap(),
                accola_maclachlan_bound(7).unwrap()
            ),
            (504, 288, 64)
        );
        assert_eq!(
            (
                hurwitz_bound(5).unwrap(),
                fallback_bound(5).unwrap(),
                accola_maclachlan_bound(5).unwrap()
            ),
            (336, 192, 48)
        );
        assert!(hurwitz_bound(1).is_err());
    }

    #[test]
    fn smallest_measures() {
        let scan = minimal_positive_measures(2, 2).unwrap();
        assert_eq!(scan.values[0].measure, q(1, 42));
        assert_eq!(
            scan.values[0].signatures,
            vec!["(0;2,3,7)".parse().unwrap()]
        );
        assert_eq!(scan.values[1].measure, q(1, 24));
        assert_eq!(
            scan.values[1].signatures,
            vec!["(0;2,3,8)".parse().unwrap()]
        );
    }

    #[test]
    fn more_measures_are_increasing() {
        let scan = minimal_positive_measures(8, 2).unwrap();
        assert_eq!(scan.values.len(), 8);
        assert!(scan.values.windows(2).all(|w| w[0].measure < w[1].measure));
        let third = &scan.values[2];
        assert_eq!(third.measure, q(1, 20));
        assert_eq!(third.signatures, vec!["(0;2,4,5)".parse().unwrap()]);
    }

    #[test]
    fn lcm_examples() {
        let c = lcm_certificate(6).unwrap();
        assert_eq!(
            (c.lcm, c.bound, c.verdict),
            (840, 420, LcmVerdict::Contradiction)
        );
        let c = lcm_certificate(8).unwrap();
        assert_eq!(
            (c.lcm, c.bound, c.verdict),
            (504, 588, LcmVerdict::Inconclusive)
        );
        let c = lcm_certificate(2).unwrap();
        assert_eq!(
            (c.lcm, c.bound, c.verdict),
            (24, 84, LcmVerdict::Inconclusive)
        );
    }

    #[test]
    fn generic_cutoff_at_thirteen() {
        assert!(!generic_bound(12).unwrap().contradiction);
        assert!(generic_bound(13).unwrap().contradiction);
    }
}
