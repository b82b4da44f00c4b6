//! Named finite groups shipped as permutation groups.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup, DEFAULT_DEGREE_LIMIT};

const GROUPS_JSON: &str = include_str!("../data/groups.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl CatalogEntry {
    /// Catalog entries may exceed the default enumeration limit; the limit is
    /// raised to the entry's own degree.
    pub fn group(&self) -> PermutationGroup {
        PermutationGroup::new(self.name.clone(), self.degree, self.generators.clone())
            .expect("catalog entries are well formed")
            .with_degree_limit(self.degree.max(DEFAULT_DEGREE_LIMIT))
    }
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let entries: Vec<CatalogEntry> = serde_json::from_str(text)?;
    for e in &entries {
        if e.generators.iter().any(|g| g.degree() != e.degree) {
            return Err(Error::Validation(format!(
                "catalog entry {} has a generator of the wrong degree",
                e.name
            )));
        }
    }
    Ok(entries)
}

/// The built-in catalog.
pub fn builtin() -> Vec<CatalogEntry> {
    parse_catalog(GROUPS_JSON).expect("built-in catalog parses")
}

pub fn group(name: &str) -> Result<PermutationGroup> {
    builtin()
        .into_iter()
        .find(|e| e.name == name)
        .map(|e| e.group())
        .ok_or_else(|| Error::NotCataloged(format!("finite group {name}")))
}
