//! Group specifications: how a corpus names its groups.
//!
//! A spec is either a catalog entry (`catalog:D:8`), a Cayley-table file
//! (`cayley:path.json`), a permutation-generator file (`perm:path.txt`), or
//! a direct product of further specs. JSON form mirrors the same fields;
//! `factors` present means a direct product of the listed specs.

use std::collections::BTreeMap;
use std::fmt;

use anyhow::{anyhow, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecKind {
    Catalog,
    CayleyFile,
    PermutationFile,
    Product,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub kind: SpecKind,
    #[serde(default, alias = "name", skip_serializing_if = "String::is_empty")]
    pub name_or_path: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<GroupSpec>,
}

impl GroupSpec {
    pub fn catalog(name: &str, n: u64) -> Self {
        GroupSpec {
            kind: SpecKind::Catalog,
            name_or_path: name.to_string(),
            parameters: BTreeMap::from([(String::from("n"), n)]),
            factors: Vec::new(),
        }
    }

    pub fn product(factors: Vec<GroupSpec>) -> Self {
        GroupSpec {
            kind: SpecKind::Product,
            name_or_path: String::new(),
            parameters: BTreeMap::new(),
            factors,
        }
    }

    /// The `n` parameter, where the spec carries one.
    pub fn param_n(&self) -> Result<u64> {
        self.parameters
            .get("n")
            .copied()
            .ok_or_else(|| anyhow!("catalog spec {self} is missing the parameter n"))
    }

    /// Canonical string, stable across runs; doubles as the cache key.
    pub fn canonical(&self) -> String {
        match self.kind {
            SpecKind::Catalog => {
                let n = self.parameters.get("n").copied().unwrap_or(0);
                format!("catalog:{}:{n}", self.name_or_path)
            }
            SpecKind::CayleyFile => format!("cayley:{}", self.name_or_path),
            SpecKind::PermutationFile => format!("perm:{}", self.name_or_path),
            SpecKind::Product => {
                let inner: Vec<String> = self.factors.iter().map(|f| f.canonical()).collect();
                format!("product({})", inner.join(" x "))
            }
        }
    }

    /// Short display name for reports: `D8`, `S5`, `Heis3`, `C2xC2`,
    /// or the file stem.
    pub fn display_name(&self) -> String {
        match self.kind {
            SpecKind::Catalog => {
                let n = self.parameters.get("n").copied().unwrap_or(0);
                let name = canonical_catalog_name(&self.name_or_path)
                    .unwrap_or(self.name_or_path.as_str());
                format!("{name}{n}")
            }
            SpecKind::CayleyFile | SpecKind::PermutationFile => {
                std::path::Path::new(&self.name_or_path)
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| self.name_or_path.clone())
            }
            SpecKind::Product => {
                let inner: Vec<String> = self.factors.iter().map(|f| f.display_name()).collect();
                inner.join("x")
            }
        }
    }

    /// Parses the command line grammar:
    /// `catalog:D:8`, `cayley:path.json`, `perm:path.txt`,
    /// `product:D:8,C:2`.
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("cayley:") {
            return Ok(GroupSpec {
                kind: SpecKind::CayleyFile,
                name_or_path: rest.to_string(),
                parameters: BTreeMap::new(),
                factors: Vec::new(),
            });
        }
        if let Some(rest) = text.strip_prefix("perm:") {
            return Ok(GroupSpec {
                kind: SpecKind::PermutationFile,
                name_or_path: rest.to_string(),
                parameters: BTreeMap::new(),
                factors: Vec::new(),
            });
        }
        if let Some(rest) = text.strip_prefix("product:") {
            let factors: Result<Vec<GroupSpec>> = rest
                .split(',')
                .map(|item| parse_catalog_item(item.trim()))
                .collect();
            return Ok(GroupSpec::product(factors?));
        }
        let rest = text.strip_prefix("catalog:").unwrap_or(text);
        parse_catalog_item(rest)
    }
}

fn parse_catalog_item(item: &str) -> Result<GroupSpec> {
    let (name, n) = item
        .rsplit_once(':')
        .ok_or_else(|| anyhow!("expected NAME:N in group spec, got {item:?}"))?;
    let n: u64 = n
        .parse()
        .map_err(|_| anyhow!("bad parameter in group spec {item:?}"))?;
    canonical_catalog_name(name).ok_or_else(|| anyhow!("unknown catalog name {name:?}"))?;
    Ok(GroupSpec::catalog(name, n))
}

/// Maps catalog aliases onto the short family letter.
pub fn canonical_catalog_name(name: &str) -> Option<&'static str> {
    match name {
        "C" | "c" | "cyclic" => Some("C"),
        "D" | "d" | "dihedral" => Some("D"),
        "Q" | "q" | "quaternion" => Some("Q"),
        "S" | "s" | "symmetric" => Some("S"),
        "A" | "a" | "alternating" => Some("A"),
        "H" | "h" | "Heis" | "heisenberg" => Some("Heis"),
        _ => None,
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_grammar_round_trips() {
        let d8 = GroupSpec::parse("catalog:D:8").unwrap();
        assert_eq!(d8, GroupSpec::catalog("D", 8));
        assert_eq!(d8.display_name(), "D8");
        assert_eq!(d8.canonical(), "catalog:D:8");

        // the catalog prefix is optional on the command line
        assert_eq!(GroupSpec::parse("S:5").unwrap(), GroupSpec::catalog("S", 5));

        let v4 = GroupSpec::parse("product:C:2,C:2").unwrap();
        assert_eq!(v4.factors.len(), 2);
        assert_eq!(v4.display_name(), "C2xC2");

        let f = GroupSpec::parse("cayley:groups/e.json").unwrap();
        assert_eq!(f.kind, SpecKind::CayleyFile);
        assert_eq!(f.display_name(), "e");

        assert!(GroupSpec::parse("catalog:X:3").is_err());
        assert!(GroupSpec::parse("catalog:D:x").is_err());
    }

    #[test]
    fn json_form_accepts_the_name_alias() {
        let spec: GroupSpec =
            serde_json::from_str(r#"{"kind":"catalog","name":"S","parameters":{"n":3}}"#).unwrap();
        assert_eq!(spec, GroupSpec::catalog("S", 3));
        // and serializes deterministically
        let text = serde_json::to_string(&spec).unwrap();
        let again: GroupSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(spec, again);
    }
}
