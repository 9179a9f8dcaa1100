//! The JSON algebra file.
//!
//! Canonical form: object keys in alphabetical order, bracket entries sorted
//! by `(i, j)`, p-map entries by `i`, zero coefficients and zero entries
//! omitted, two-space indentation and a trailing newline.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::AlgebraSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleBlock>,
    pub name: String,
    pub p: u32,
    #[serde(default)]
    pub pmap: Vec<PmapEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub c: BTreeMap<usize, u32>,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PmapEntry {
    pub c: BTreeMap<usize, u32>,
    pub i: usize,
}

/// Optional representation block: one `dim_v x dim_v` matrix (list of rows)
/// per basis element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleBlock {
    pub dim_v: usize,
    pub rho: Vec<Vec<Vec<u32>>>,
}

fn sparse(v: &[u32]) -> BTreeMap<usize, u32> {
    v.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| (k, c))
        .collect()
}

impl AlgebraFile {
    pub fn from_spec(spec: &AlgebraSpec) -> Self {
        let brackets = spec
            .bracket_terms()
            .into_iter()
            .map(|((i, j), c)| BracketEntry { c: sparse(&c), i, j })
            .collect();
        let pmap = (0..spec.dim())
            .filter_map(|i| {
                let c = sparse(spec.basis_pmap(i));
                (!c.is_empty()).then_some(PmapEntry { c, i })
            })
            .collect();
        AlgebraFile {
            basis: spec.basis_names().to_vec(),
            brackets,
            dim: spec.dim(),
            module: None,
            name: spec.name().to_string(),
            p: spec.p(),
            pmap,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("malformed algebra file: {e}")))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    fn dense(&self, field: &str, c: &BTreeMap<usize, u32>) -> Result<Vec<u32>> {
        let mut v = vec![0u32; self.dim];
        for (&k, &x) in c {
            if k >= self.dim {
                return Err(Error::Invalid(format!(
                    "{field}: basis index {k} out of range (dim {})",
                    self.dim
                )));
            }
            if x >= self.p {
                return Err(Error::Invalid(format!(
                    "{field}: coefficient {x} is not in [0, {}]",
                    self.p.saturating_sub(1)
                )));
            }
            v[k] = x;
        }
        Ok(v)
    }

    /// Converts to an algebra without checking the restricted axioms.
    pub fn to_spec_unverified(&self) -> Result<AlgebraSpec> {
        if self.basis.len() != self.dim {
            return Err(Error::Invalid(format!(
                "basis has {} names but dim is {}",
                self.basis.len(),
                self.dim
            )));
        }
        let mut brackets = Vec::with_capacity(self.brackets.len());
        for (n, b) in self.brackets.iter().enumerate() {
            let c = self.dense(&format!("brackets[{n}]"), &b.c)?;
            brackets.push(((b.i, b.j), c));
        }
        let mut pmap = vec![vec![0u32; self.dim]; self.dim];
        let mut seen = vec![false; self.dim];
        for (n, e) in self.pmap.iter().enumerate() {
            if e.i >= self.dim {
                return Err(Error::Invalid(format!("pmap[{n}]: index {} out of range", e.i)));
            }
            if seen[e.i] {
                return Err(Error::Invalid(format!("pmap[{n}]: duplicate entry for {}", e.i)));
            }
            seen[e.i] = true;
            pmap[e.i] = self.dense(&format!("pmap[{n}]"), &e.c)?;
        }
        AlgebraSpec::new_unverified(self.p, self.name.clone(), self.basis.clone(), &brackets, pmap)
    }

    /// Converts and validates the restricted axioms on the basis.
    pub fn to_spec(&self) -> Result<AlgebraSpec> {
        let s = self.to_spec_unverified()?;
        AlgebraSpec::new(
            s.p(),
            s.name().to_string(),
            s.basis_names().to_vec(),
            &s.bracket_terms(),
            s.pmap_table().to_vec(),
        )
    }
}

impl AlgebraSpec {
    pub fn to_json(&self) -> String {
        AlgebraFile::from_spec(self).to_json()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        AlgebraFile::parse(text)?.to_spec()
    }
}
