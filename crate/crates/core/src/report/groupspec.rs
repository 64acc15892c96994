use std::path::PathBuf;

use crate::catalog::{builtin, default_catalog_path, load_catalog, Catalog, Family};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

#[derive(Debug, Clone)]
pub struct ResolvedGroup {
    pub id: String,
    pub group: PermGroup,
}

/// Merges the given catalog files, or the `HF_CATALOG` file when none are
/// given. `None` when there is nothing to load.
pub fn load_catalogs(paths: &[PathBuf]) -> Result<Option<Catalog>> {
    let paths: Vec<PathBuf> = if paths.is_empty() {
        default_catalog_path().into_iter().collect()
    } else {
        paths.to_vec()
    };
    if paths.is_empty() {
        return Ok(None);
    }
    let mut merged = Catalog::new();
    for p in paths {
        merged.merge(load_catalog(&p)?)?;
    }
    Ok(Some(merged))
}

/// A catalog id, a builtin family name (`S5`, `SL2(7)`, `H4`, ...), or
/// semicolon-separated generators in cycle notation such as `(1,2,3);(1,2)`.
pub fn resolve_group(spec: &str, catalog: Option<&Catalog>) -> Result<ResolvedGroup> {
    let spec = spec.trim();
    if let Some(e) = catalog.and_then(|c| c.get(spec)) {
        return Ok(ResolvedGroup {
            id: e.id.clone(),
            group: e.group.clone(),
        });
    }
    if spec.starts_with('(') {
        return inline(spec);
    }
    if let Some(f) = Family::parse(spec) {
        let e = builtin(&f)?;
        return Ok(ResolvedGroup {
            id: e.id,
            group: e.group,
        });
    }
    Err(Error::UnknownGroup(spec.to_string()))
}

fn inline(spec: &str) -> Result<ResolvedGroup> {
    let perms = spec
        .split(';')
        .map(|g| Permutation::parse_with_degree(g.trim(), None))
        .collect::<Result<Vec<_>>>()?;
    let degree = perms.iter().map(Permutation::degree).max().unwrap_or(1);
    let perms: Vec<Permutation> = perms.iter().map(|p| p.extend(degree)).collect();
    let id = perms
        .iter()
        .map(Permutation::to_string)
        .collect::<Vec<_>>()
        .join(";");
    Ok(ResolvedGroup {
        id,
        group: PermGroup::new(perms)?,
    })
}
