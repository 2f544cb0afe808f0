use alloc::vec::Vec;

use super::aut::aut_partition;
use super::certificate::{canonical_form, PartitionCertificate};
use super::invariants::{
    is_proper_colouring, is_superposed, is_swap_symmetric, neighbourhood_configurations, neighbourhood_signature,
    NeighbourhoodSignature,
};
use crate::crystgeom::{group_fingerprint, AffineMap, CrystGroup, GroupFingerprint, SignedPerm};
use crate::orbits::{orbit_partition, stabilizer, OrbitPartition};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct PartitionFlags {
    pub proper_colouring: bool,
    pub swap_symmetric: bool,
    pub superposed: bool,
}

/// Everything the catalog reports about one partition class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionRecord {
    pub certificate: PartitionCertificate,
    pub generating_subgroup: CrystGroup,
    /// `Aut(Π)` of the partition as induced by `generating_subgroup`.
    pub aut: CrystGroup,
    /// Maps the partition of `generating_subgroup` to the canonical one.
    pub witness: AffineMap,
    pub i_t: usize,
    pub i_k: usize,
    pub flags: PartitionFlags,
    pub signature_radius1: NeighbourhoodSignature,
    pub signature_radius2: NeighbourhoodSignature,
    pub configurations_radius1: Vec<Vec<u32>>,
    pub configurations_radius2: Vec<Vec<u32>>,
    /// Stabilizer in `Aut(Π)` of a representative of each colour.
    pub stabilizers: Vec<GroupFingerprint>,
}

impl PartitionRecord {
    /// The colouring induced by `generating_subgroup`.
    pub fn partition(&self) -> OrbitPartition {
        orbit_partition(&self.generating_subgroup)
    }
}

pub fn stabilizer_fingerprint(g: &CrystGroup, x: &crate::crystgeom::Vector) -> GroupFingerprint {
    let linear: Vec<SignedPerm> = stabilizer(g, x).elements.iter().map(|m| m.linear).collect();
    group_fingerprint(&linear, |a, b| a.compose(b)).expect("stabilizers are closed")
}

/// Computes the full record for the partition induced by `h`.
pub fn analyze(h: &CrystGroup) -> Result<PartitionRecord> {
    let p = orbit_partition(h);
    analyze_partition(h, &p)
}

pub fn analyze_partition(h: &CrystGroup, p: &OrbitPartition) -> Result<PartitionRecord> {
    let (certificate, witness) = canonical_form(p);
    let aut = aut_partition(h, p)?;
    let (i_t, i_k) = aut.index_decomposition();
    let flags = PartitionFlags {
        proper_colouring: is_proper_colouring(p),
        swap_symmetric: is_swap_symmetric(p),
        superposed: is_superposed(p),
    };
    let stabilizers = p.representatives().iter().map(|x| stabilizer_fingerprint(&aut, x)).collect();
    Ok(PartitionRecord {
        certificate,
        generating_subgroup: h.clone(),
        aut,
        witness,
        i_t,
        i_k,
        flags,
        signature_radius1: neighbourhood_signature(p, 1),
        signature_radius2: neighbourhood_signature(p, 2),
        configurations_radius1: neighbourhood_configurations(p, 1),
        configurations_radius2: neighbourhood_configurations(p, 2),
        stabilizers,
    })
}
