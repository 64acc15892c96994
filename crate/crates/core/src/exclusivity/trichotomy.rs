use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "dim", rename_all = "snake_case")]
pub enum Singular {
    Empty,
    ZeroDim,
    /// Positive-dimensional, optionally with its dimension.
    PositiveDim(Option<u32>),
}

impl FromStr for Singular {
    type Err = Error;

    /// `empty`, `0`, `positive`, or a dimension `d ≥ 1`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "empty" | "none" => Ok(Singular::Empty),
            "0" | "zero" | "zero_dim" => Ok(Singular::ZeroDim),
            "positive" | "positive_dim" => Ok(Singular::PositiveDim(None)),
            d => d
                .parse::<u32>()
                .ok()
                .filter(|&d| d >= 1)
                .map(|d| Singular::PositiveDim(Some(d)))
                .ok_or_else(|| Error::InvalidProfile(format!("singular set '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Context {
    Manifold,
    Lattice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeometryProfile {
    pub ambient_dim: u32,
    pub singular: Singular,
    pub has_order_two_with_fixed_points: bool,
    pub context: Context,
}

impl GeometryProfile {
    pub fn new(ambient_dim: u32, singular: Singular, involution_fixes: bool) -> Self {
        GeometryProfile {
            ambient_dim,
            singular,
            has_order_two_with_fixed_points: involution_fixes,
            context: Context::Manifold,
        }
    }

    /// Fixed sets of orientation-preserving isometries have even codimension.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidProfile(m));
        let n = self.ambient_dim;
        if n < 2 {
            return bad(format!("ambient dimension {n} < 2"));
        }
        match self.singular {
            Singular::Empty if self.has_order_two_with_fixed_points => {
                bad("an involution with fixed points makes the singular set nonempty".into())
            }
            Singular::ZeroDim if n % 2 == 1 => bad(format!("dimension {n} minus 0 is odd")),
            Singular::PositiveDim(Some(d)) if d >= n => {
                bad(format!("singular dimension {d} ≥ {n}"))
            }
            Singular::PositiveDim(Some(d)) if (n - d) % 2 == 1 => {
                bad(format!("codimension {} is odd", n - d))
            }
            Singular::PositiveDim(_) if n == 2 => {
                bad("a surface has no positive-dimensional singular set".into())
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrichotomyCase {
    UniqueClass,
    CountablyMany,
    Continuum,
    Dim4PositiveContinuum,
    Dim4DiscreteUnknown,
    Dim2Regime,
}

impl TrichotomyCase {
    pub fn as_str(self) -> &'static str {
        match self {
            TrichotomyCase::UniqueClass => "unique_class",
            TrichotomyCase::CountablyMany => "countably_many",
            TrichotomyCase::Continuum => "continuum",
            TrichotomyCase::Dim4PositiveContinuum => "dim4_positive_continuum",
            TrichotomyCase::Dim4DiscreteUnknown => "dim4_discrete_unknown",
            TrichotomyCase::Dim2Regime => "dim2_regime",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrichotomyOutcome {
    pub case: TrichotomyCase,
    pub locally_rigid: bool,
}

impl fmt::Display for TrichotomyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}; locally_rigid={}",
            self.case.as_str(),
            self.locally_rigid
        )
    }
}

/// Number of conjugacy classes of maximal finite subgroups of the
/// homeomorphism group, from the singular set of the isometry group.
pub fn trichotomy_classify(p: &GeometryProfile) -> Result<TrichotomyOutcome> {
    p.validate()?;
    let n = p.ambient_dim;
    let discrete = matches!(p.singular, Singular::Empty | Singular::ZeroDim);
    let case = match (n, p.singular) {
        (2, _) => TrichotomyCase::Dim2Regime,
        (4, Singular::PositiveDim(_)) => TrichotomyCase::Dim4PositiveContinuum,
        (4, _) => TrichotomyCase::Dim4DiscreteUnknown,
        (_, Singular::Empty) => TrichotomyCase::UniqueClass,
        (_, Singular::ZeroDim) if n % 4 == 2 && p.has_order_two_with_fixed_points => {
            TrichotomyCase::CountablyMany
        }
        (_, Singular::ZeroDim) => TrichotomyCase::UniqueClass,
        (_, Singular::PositiveDim(_)) => TrichotomyCase::Continuum,
    };
    Ok(TrichotomyOutcome {
        case,
        locally_rigid: discrete,
    })
}
