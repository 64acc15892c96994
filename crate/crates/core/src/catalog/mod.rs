//! Candidate groups: built-in families and ingested inventories.
//!
//! Catalog files hold one group per non-blank line (a stanza) made of
//! whitespace-separated `key=value` fields; `#` starts a comment line.
//!
//! ```text
//! # all groups of order 40
//! id=C40 degree=40 gens=(1,2,...,40) order=40 coverage=all-of-order:40
//! id=C3 degree=3 gens=(1,2,3) order=3 tags=cyclic,small
//! ```
//!
//! Required keys: `id`, `degree`, `gens` (semicolon-separated cycle
//! notation), `order`. Optional: `coverage` (echoed verbatim, never checked)
//! and `tags` (comma-separated).

mod builtin;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub use builtin::{Family, Matrix2};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Source {
    Builtin,
    File { path: String, line: usize },
}

#[derive(Debug, Clone)]
pub struct GroupEntry {
    pub id: String,
    pub group: PermGroup,
    pub tags: BTreeSet<String>,
    pub source: Source,
    /// Raw `coverage=` value of the stanza, if any.
    pub coverage: Option<String>,
}

impl GroupEntry {
    pub fn new(id: impl Into<String>, group: PermGroup) -> Self {
        GroupEntry {
            id: id.into(),
            group,
            tags: BTreeSet::new(),
            source: Source::Builtin,
            coverage: None,
        }
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }
}

/// Realizes a built-in family as a catalog entry.
pub fn builtin(family: &Family) -> Result<GroupEntry> {
    let group = family.realize()?;
    let mut entry = GroupEntry::new(family.to_string(), group);
    entry.tags.insert(family_tag(family).to_string());
    Ok(entry)
}

fn family_tag(f: &Family) -> &'static str {
    match f {
        Family::Cyclic { .. } => "cyclic",
        Family::Dihedral { .. } => "dihedral",
        Family::Abelian { .. } => "abelian",
        Family::Symmetric { .. } => "symmetric",
        Family::Alternating { .. } => "alternating",
        Family::Sl2 { .. } => "sl2",
        Family::Psl2 { .. } => "psl2",
        Family::AccolaMaclachlan { .. } => "accola_maclachlan",
        Family::DirectProduct { .. } => "direct_product",
    }
}

#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: Vec<GroupEntry>,
    coverage: Vec<String>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: GroupEntry) -> Result<()> {
        if self.get(&entry.id).is_some() {
            return Err(Error::DuplicateId(entry.id));
        }
        if let Some(c) = &entry.coverage {
            if !self.coverage.contains(c) {
                self.coverage.push(c.clone());
            }
        }
        self.entries.push(entry);
        Ok(())
    }

    pub fn entries(&self) -> &[GroupEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Coverage claims exactly as written in the ingested files.
    pub fn coverage(&self) -> &[String] {
        &self.coverage
    }

    pub fn get(&self, id: &str) -> Option<&GroupEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn of_order(&self, order: u128) -> impl Iterator<Item = &GroupEntry> {
        self.entries.iter().filter(move |e| e.order() == order)
    }

    /// Appends every entry of `other`; ids must stay unique.
    pub fn merge(&mut self, other: Catalog) -> Result<()> {
        for e in other.entries {
            self.push(e)?;
        }
        Ok(())
    }

    pub fn parse(text: &str, path: &str) -> Result<Catalog> {
        let mut cat = Catalog::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let entry = parse_stanza(trimmed, path, line)?;
            cat.push(entry).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
        }
        Ok(cat)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let gens: Vec<String> = e
                .group
                .generators()
                .iter()
                .map(Permutation::to_string)
                .collect();
            write!(
                out,
                "id={} degree={} gens={} order={}",
                e.id,
                e.group.degree(),
                gens.join(";"),
                e.order()
            )
            .unwrap();
            if let Some(c) = &e.coverage {
                write!(out, " coverage={c}").unwrap();
            }
            if !e.tags.is_empty() {
                let tags: Vec<&str> = e.tags.iter().map(String::as_str).collect();
                write!(out, " tags={}", tags.join(",")).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

fn parse_stanza(text: &str, path: &str, line: usize) -> Result<GroupEntry> {
    let perr = |message: String| Error::Parse { line, message };
    let (mut id, mut degree, mut gens, mut order, mut coverage, mut tags) =
        (None, None, None, None, None, BTreeSet::new());
    for field in text.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| perr(format!("field '{field}' is not key=value")))?;
        if value.is_empty() {
            return Err(perr(format!("empty value for '{key}'")));
        }
        match key {
            "id" => id = Some(value.to_string()),
            "degree" => {
                degree = Some(
                    value
                        .parse::<usize>()
                        .ok()
                        .filter(|&d| d >= 1)
                        .ok_or_else(|| perr(format!("bad degree '{value}'")))?,
                )
            }
            "gens" => gens = Some(value.to_string()),
            "order" => {
                order = Some(
                    value
                        .parse::<u128>()
                        .map_err(|_| perr(format!("bad order '{value}'")))?,
                )
            }
            "coverage" => {
                let n = value
                    .strip_prefix("all-of-order:")
                    .and_then(|n| n.parse::<u64>().ok());
                if n.is_none() {
                    return Err(perr(format!("bad coverage '{value}'")));
                }
                coverage = Some(value.to_string());
            }
            "tags" => tags.extend(value.split(',').map(str::to_string)),
            other => return Err(perr(format!("unknown key '{other}'"))),
        }
    }
    let id = id.ok_or_else(|| perr("missing id".into()))?;
    let degree = degree.ok_or_else(|| perr("missing degree".into()))?;
    let gens = gens.ok_or_else(|| perr("missing gens".into()))?;
    let declared = order.ok_or_else(|| perr("missing order".into()))?;
    let perms = gens
        .split(';')
        .map(|g| Permutation::parse_with_degree(g, Some(degree)))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| perr(e.to_string()))?;
    let group = PermGroup::new(perms).map_err(|e| perr(e.to_string()))?;
    if group.order() != declared {
        return Err(Error::DeclaredOrderMismatch {
            id,
            declared,
            computed: group.order(),
        });
    }
    Ok(GroupEntry {
        id,
        group,
        tags,
        source: Source::File {
            path: path.to_string(),
            line,
        },
        coverage,
    })
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Catalog> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    Catalog::parse(&text, &path.display().to_string())
}

pub fn save_catalog(catalog: &Catalog, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, catalog.to_text())?;
    Ok(())
}

/// Default catalog path from the `HF_CATALOG` environment variable.
pub fn default_catalog_path() -> Option<PathBuf> {
    std::env::var_os("HF_CATALOG").map(PathBuf::from)
}

/// A generating pair, if the group is 2-generated. The first element ranges
/// over conjugacy-class representatives, the second over all elements.
pub fn is_two_generated(g: &PermGroup) -> Result<Option<(Permutation, Permutation)>> {
    let t = g.table()?;
    if t.len() == 1 {
        return Ok(Some((g.identity(), g.identity())));
    }
    let reps: Vec<usize> = t.classes().iter().map(|c| c.rep).collect();
    // larger element orders first: generating pairs are found sooner
    let mut order_desc: Vec<usize> = (0..t.len()).collect();
    order_desc.sort_by_key(|&i| (std::cmp::Reverse(t.order(i)), i));
    for &x in reps.iter().rev() {
        for &y in &order_desc {
            if t.generates(&[x, y]) {
                return Ok(Some((t.element(x).clone(), t.element(y).clone())));
            }
        }
    }
    Ok(None)
}
