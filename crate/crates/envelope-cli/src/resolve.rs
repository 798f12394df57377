//! Resolution of [`GroupSpec`]s to concrete groups: catalog dispatch, file
//! ingestion, Cayley-table persistence, and a canonical-key cache.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use envelope_core::catalog;
use envelope_core::group::DEFAULT_ORDER_CAP;
use envelope_core::FiniteGroup;

use crate::spec::{canonical_catalog_name, GroupSpec, SpecKind};

/// Environment variable overriding the enumeration order cap.
pub const ORDER_CAP_ENV: &str = "ENVELOPE_ORDER_CAP";

/// The order cap currently in force: the environment override, or the
/// built-in default.
pub fn effective_order_cap() -> usize {
    std::env::var(ORDER_CAP_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ORDER_CAP)
}

/// Resolves specs to shared groups, caching by canonical spec string.
pub struct Resolver {
    order_cap: usize,
    cache: BTreeMap<String, Arc<FiniteGroup>>,
}

impl Resolver {
    pub fn new(order_cap: usize) -> Self {
        Resolver {
            order_cap,
            cache: BTreeMap::new(),
        }
    }

    pub fn order_cap(&self) -> usize {
        self.order_cap
    }

    pub fn resolve(&mut self, spec: &GroupSpec) -> Result<Arc<FiniteGroup>> {
        let key = spec.canonical();
        if let Some(g) = self.cache.get(&key) {
            return Ok(Arc::clone(g));
        }
        let group = self
            .build(spec)
            .with_context(|| format!("resolving {key}"))?;
        if group.order() > self.order_cap {
            bail!(
                "group {key} has order {} beyond the cap {}",
                group.order(),
                self.order_cap
            );
        }
        let group = Arc::new(group);
        self.cache.insert(key, Arc::clone(&group));
        Ok(group)
    }

    fn build(&mut self, spec: &GroupSpec) -> Result<FiniteGroup> {
        match spec.kind {
            SpecKind::Catalog => {
                let n = spec.param_n()? as usize;
                build_catalog(&spec.name_or_path, n)
            }
            SpecKind::CayleyFile => load_cayley_file(Path::new(&spec.name_or_path)),
            SpecKind::PermutationFile => {
                load_permutation_file(Path::new(&spec.name_or_path), self.order_cap)
            }
            SpecKind::Product => {
                let mut factors = spec.factors.iter();
                let first = factors
                    .next()
                    .ok_or_else(|| anyhow!("direct product needs at least one factor"))?;
                let mut acc = self.resolve(first)?.as_ref().clone_table()?;
                for f in factors {
                    let g = self.resolve(f)?;
                    acc = acc.direct_product(&g)?;
                }
                Ok(acc)
            }
        }
    }
}

/// Dispatches one catalog family.
pub fn build_catalog(name: &str, n: usize) -> Result<FiniteGroup> {
    let family =
        canonical_catalog_name(name).ok_or_else(|| anyhow!("unknown catalog name {name:?}"))?;
    let group = match family {
        "C" => catalog::cyclic(n),
        "D" => catalog::dihedral(n),
        "Q" => catalog::generalized_quaternion(n),
        "S" => catalog::symmetric(n),
        "A" => catalog::alternating(n),
        "Heis" => catalog::heisenberg(n),
        _ => unreachable!("canonical names are exhaustive"),
    };
    group.map_err(|e| anyhow!("{e}"))
}

/// JSON Cayley-table file: `{"order": n, "table": [[...]], "labels": [...]}`,
/// row-major, ids 0-based.
#[derive(Serialize, Deserialize)]
struct CayleyFile {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

pub fn load_cayley_file(path: &Path) -> Result<FiniteGroup> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: CayleyFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if file.table.len() != file.order {
        bail!(
            "{}: declared order {} but the table has {} rows",
            path.display(),
            file.order,
            file.table.len()
        );
    }
    FiniteGroup::from_cayley_table_labeled(&file.table, file.labels)
        .map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Writes a group in the Cayley-table file format.
pub fn save_cayley_file(group: &FiniteGroup, path: &Path) -> Result<()> {
    let n = group.order();
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| group.mul(a, b)).collect())
        .collect();
    let file = CayleyFile {
        order: n,
        table,
        labels: Some(group.labels().to_vec()),
    };
    fs::write(path, serde_json::to_string(&file)?)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Plain-text permutation file: first line `degree d`, then one generator
/// per line in cycle notation.
pub fn load_permutation_file(path: &Path, order_cap: usize) -> Result<FiniteGroup> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines
        .next()
        .ok_or_else(|| anyhow!("{}: empty permutation file", path.display()))?;
    let degree: usize = first
        .trim()
        .strip_prefix("degree")
        .map(str::trim)
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| {
            anyhow!(
                "{}: line 1: expected \"degree d\", got {first:?}",
                path.display()
            )
        })?;
    let mut generators = Vec::new();
    for (idx, line) in lines {
        generators.push((idx + 1, line.trim()));
    }
    let gen_strs: Vec<&str> = generators.iter().map(|(_, g)| *g).collect();
    FiniteGroup::from_permutation_generators(degree, &gen_strs, order_cap).map_err(|e| {
        // name the offending line where the parse failure says which input it was
        let context = generators
            .iter()
            .find(|(_, g)| format!("{e}").contains(*g))
            .map(|(line, _)| format!(" (line {line})"))
            .unwrap_or_default();
        anyhow!("{}{context}: {e}", path.display())
    })
}

/// Owned copy of a group through its multiplication table, used to seed a
/// direct product without borrowing from the cache.
trait CloneTable {
    fn clone_table(&self) -> Result<FiniteGroup>;
}

impl CloneTable for FiniteGroup {
    fn clone_table(&self) -> Result<FiniteGroup> {
        let n = self.order();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| self.mul(a, b)).collect())
            .collect();
        FiniteGroup::from_cayley_table_labeled(&table, Some(self.labels().to_vec()))
            .map_err(|e| anyhow!("{e}"))
    }
}
