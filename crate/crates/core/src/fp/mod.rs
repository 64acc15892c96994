//! Finitely presented groups realized as permutation groups by coset enumeration.

mod presentation;
mod todd_coxeter;

pub use presentation::{free_reduce, Letter, Presentation, Word};
pub use todd_coxeter::{todd_coxeter, CosetStatus, CosetTable};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// The group `H_σ = ⟨x, y | x⁴, y^{2(σ+1)}, (xy)², (x⁻¹y)²⟩` of order `8(σ+1)`,
/// in its regular permutation representation, with the named elements used
/// by the genus-σ action.
#[derive(Debug, Clone)]
pub struct AccolaMaclachlan {
    pub genus: u64,
    pub group: PermGroup,
    pub x: Permutation,
    pub y: Permutation,
}

impl AccolaMaclachlan {
    pub fn xy(&self) -> Permutation {
        self.x.compose_unchecked(&self.y)
    }

    pub fn x_inv_y(&self) -> Permutation {
        self.x.inverse().compose_unchecked(&self.y)
    }
}

/// Realizes `H_σ` for `σ ≥ 2`. The coset budget starts at `16(σ+1)` times a
/// safety factor of 4 and doubles on overflow up to a hard limit.
pub fn accola_maclachlan_group(genus: u64) -> Result<AccolaMaclachlan> {
    if genus < 2 {
        return Err(Error::InvalidParameters {
            family: "accola_maclachlan".into(),
            message: format!("genus {genus} < 2"),
        });
    }
    let p = Presentation::accola_maclachlan(genus);
    let mut budget = 4 * 16 * (genus as usize + 1);
    let limit = budget * 64;
    let table = loop {
        let t = todd_coxeter(&p, budget);
        if t.is_complete() {
            break t;
        }
        if budget >= limit {
            return Err(Error::CosetOverflow { max_cosets: budget });
        }
        budget *= 2;
    };
    debug_assert!(table.verify(&p));
    let x = table.generator_permutation(0);
    let y = table.generator_permutation(1);
    let group = PermGroup::new(vec![x.clone(), y.clone()])?;
    debug_assert_eq!(group.order() as usize, table.cosets);
    Ok(AccolaMaclachlan { genus, group, x, y })
}
