//! The on-disk group-spec format: a JSON document with the prime, the
//! dimension, a name, and the generators as row-major integer matrices.

use std::path::Path;

use serde::{Deserialize, Serialize};

use orbdiam_core::{FpMatrix, GroupSpec, PrimeField};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupSpecFile {
    pub p: u64,
    pub d: usize,
    pub name: String,
    /// each generator as d*d entries, row-major
    pub generators: Vec<Vec<u64>>,
}

impl GroupSpecFile {
    pub fn from_group(group: &GroupSpec) -> Self {
        GroupSpecFile {
            p: group.p(),
            d: group.dim(),
            name: group.name().to_string(),
            generators: group
                .generators()
                .iter()
                .map(|m| m.entries().to_vec())
                .collect(),
        }
    }

    pub fn to_group(&self) -> orbdiam_core::Result<GroupSpec> {
        let field = PrimeField::new(self.p)?;
        let gens = self
            .generators
            .iter()
            .map(|flat| FpMatrix::from_flat(field, self.d, flat.clone()))
            .collect::<orbdiam_core::Result<Vec<_>>>()?;
        GroupSpec::new(field, self.d, gens, self.name.clone())
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}
