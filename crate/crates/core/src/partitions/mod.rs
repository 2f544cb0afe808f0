//! Partition-level invariants: certificates, colour-fixing groups, flags
//! and neighbourhoods.

mod aut;
mod certificate;
mod invariants;
mod record;

pub use aut::{aut_partition, aut_partition_by_inclusion, aut_partition_steps, colour_fixing_subgroup, AutSteps};
pub use certificate::{
    canonical_certificate, canonical_form, max_translation_lattice, transform_partition, PartitionCertificate,
};
pub use invariants::{
    color_permutation_group, is_proper_colouring, is_superposed, is_swap_symmetric, neighbour_offsets,
    neighbourhood_configurations, neighbourhood_signature, superposition_lift, ColourPermutationGroup,
    NeighbourhoodSignature,
};
pub use record::{analyze, analyze_partition, stabilizer_fingerprint, PartitionFlags, PartitionRecord};

use crate::crystgeom::CrystGroup;

/// `(i_t, i_k)` of a group.
pub fn index_decomposition(g: &CrystGroup) -> (usize, usize) {
    g.index_decomposition()
}
