//! JSON forms of groups, partitions, records and catalogs.

use std::collections::BTreeMap;

use latcol_core::crystgeom::{AffineMap, CrystGroup, GroupFingerprint, IntegerLattice};
use latcol_core::orbits::OrbitPartition;
use latcol_core::partitions::{PartitionCertificate, PartitionFlags, PartitionRecord};
use serde::{Deserialize, Serialize};

use crate::error::{CatalogError, Result};

pub const CATALOG_FORMAT: &str = "latcol-catalog/1";

/// A crystallographic group as its translation lattice and a generating set
/// of affine maps in text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    /// Hermite normal form entries of the translation lattice.
    pub lattice: Vec<i64>,
    pub generators: Vec<String>,
}

impl GroupJson {
    pub fn from_group(g: &CrystGroup) -> Self {
        GroupJson {
            lattice: g.lattice().hnf_entries(),
            generators: g.generators().iter().map(AffineMap::to_text).collect(),
        }
    }

    /// Regenerates the group from its generators. The stored lattice is
    /// returned separately so callers can compare.
    pub fn to_group(&self, dim: usize) -> Result<(CrystGroup, IntegerLattice)> {
        let gens = self
            .generators
            .iter()
            .map(|t| AffineMap::parse(t))
            .collect::<latcol_core::Result<Vec<_>>>()?;
        if let Some(g) = gens.iter().find(|g| g.dim() != dim) {
            return Err(CatalogError::Schema(format!("generator of dimension {} in a {dim}-dimensional catalog", g.dim())));
        }
        let lattice = IntegerLattice::from_hnf_entries(dim, &self.lattice)?;
        Ok((CrystGroup::from_generators(dim, &gens)?, lattice))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub lattice: Vec<i64>,
    pub orbit_count: usize,
    pub colors: Vec<u32>,
    pub orbit_sizes: Vec<usize>,
}

impl PartitionJson {
    pub fn from_partition(p: &OrbitPartition) -> Self {
        PartitionJson {
            lattice: p.lattice().hnf_entries(),
            orbit_count: p.orbit_count(),
            colors: p.colors().to_vec(),
            orbit_sizes: p.orbit_sizes(),
        }
    }

    pub fn to_partition(&self, dim: usize) -> Result<OrbitPartition> {
        let lattice = IntegerLattice::from_hnf_entries(dim, &self.lattice)?;
        Ok(OrbitPartition::new(lattice, self.colors.clone())?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagsJson {
    pub proper_colouring: bool,
    pub swap_symmetric: bool,
    pub superposed: bool,
}

impl From<PartitionFlags> for FlagsJson {
    fn from(f: PartitionFlags) -> Self {
        FlagsJson { proper_colouring: f.proper_colouring, swap_symmetric: f.swap_symmetric, superposed: f.superposed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FingerprintJson {
    pub order: usize,
    pub abelian_invariants: Vec<usize>,
    pub order_histogram: BTreeMap<usize, usize>,
    pub center_order: usize,
}

impl From<&GroupFingerprint> for FingerprintJson {
    fn from(f: &GroupFingerprint) -> Self {
        FingerprintJson {
            order: f.order,
            abelian_invariants: f.abelian_invariants.clone(),
            order_histogram: f.order_histogram.clone(),
            center_order: f.center_order,
        }
    }
}

/// Per-colour neighbour counts (`counts[c][c']`) and sorted star words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighbourhoodJson {
    pub radius1: Vec<Vec<u32>>,
    pub radius2: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordJson {
    pub certificate: String,
    pub i_t: usize,
    pub i_k: usize,
    pub flags: FlagsJson,
    pub partition: PartitionJson,
    pub generating_subgroup: GroupJson,
    pub aut: GroupJson,
    /// Affine map taking `partition` to the canonical partition.
    pub witness: String,
    pub signatures: NeighbourhoodJson,
    pub configurations: NeighbourhoodJson,
    pub stabilizers: Vec<FingerprintJson>,
}

impl RecordJson {
    pub fn from_record(r: &PartitionRecord) -> Self {
        RecordJson {
            certificate: hex::encode(r.certificate.as_bytes()),
            i_t: r.i_t,
            i_k: r.i_k,
            flags: r.flags.into(),
            partition: PartitionJson::from_partition(&r.partition()),
            generating_subgroup: GroupJson::from_group(&r.generating_subgroup),
            aut: GroupJson::from_group(&r.aut),
            witness: r.witness.to_text(),
            signatures: NeighbourhoodJson {
                radius1: r.signature_radius1.counts.clone(),
                radius2: r.signature_radius2.counts.clone(),
            },
            configurations: NeighbourhoodJson {
                radius1: r.configurations_radius1.clone(),
                radius2: r.configurations_radius2.clone(),
            },
            stabilizers: r.stabilizers.iter().map(FingerprintJson::from).collect(),
        }
    }

    pub fn certificate(&self) -> Result<PartitionCertificate> {
        let bytes = hex::decode(&self.certificate)
            .map_err(|e| CatalogError::Schema(format!("certificate {}: {e}", self.certificate)))?;
        Ok(PartitionCertificate::from_bytes(bytes))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool_version: String,
    pub method: String,
    /// The presentation of `Aut(Z^d)`, one relator per line.
    pub presentation: String,
    pub index_bound: usize,
    pub subgroups_visited: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogJson {
    pub format: String,
    pub dimension: usize,
    pub orbit_count: usize,
    pub provenance: Provenance,
    pub records: Vec<RecordJson>,
}

impl CatalogJson {
    pub fn to_string_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("catalog serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let c: CatalogJson = serde_json::from_str(text)?;
        if c.format != CATALOG_FORMAT {
            return Err(CatalogError::Schema(format!("unknown format {:?}", c.format)));
        }
        if !(1..=4).contains(&c.dimension) {
            return Err(CatalogError::Schema(format!("dimension {}", c.dimension)));
        }
        Ok(c)
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CatalogError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn write(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_string_pretty()).map_err(|e| CatalogError::io(path, e))
    }

    pub fn record(&self, certificate: &str) -> Result<&RecordJson> {
        self.records
            .iter()
            .find(|r| r.certificate == certificate)
            .ok_or_else(|| CatalogError::UnknownRecord(certificate.to_string()))
    }
}
