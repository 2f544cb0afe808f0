//! Affine geometry of `Z^d`: signed permutations, affine maps, lattices in
//! Hermite normal form and crystallographic groups.

mod affine;
mod fingerprint;
mod group;
mod images;
mod lattice;
mod signed_perm;

pub use affine::{add, neg, sub, unit, vector, AffineMap};
pub use fingerprint::{group_fingerprint, GroupFingerprint};
pub use group::{lattice_normalizer, CrystGroup};
pub use images::{generator_images, word_to_affine};
pub use lattice::IntegerLattice;
pub use signed_perm::{hyperoctahedral_group, hyperoctahedral_order, SignedPerm, Vector, MAX_DIM};
