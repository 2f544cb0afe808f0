//! Exact group theory for orbit colourings of the cubic lattices `Z^d`, `d <= 4`.
//!
//! The crate is `no_std` and only needs `alloc`. It is organised bottom-up:
//!
//! * [`fpgroup`]: words, presentations, coset enumeration, low-index subgroups
//!   and Reidemeister–Schreier presentations.
//! * [`crystgeom`]: signed-permutation affine maps, integer lattices in Hermite
//!   normal form and crystallographic groups stored as point-group cosets.
//! * [`orbits`]: actions on the torus `Z^d / T`.
//! * [`partitions`]: certificates, colour-fixing groups and partition invariants.
//! * [`subgroups`]: the bridge from coset tables of `Aut(Z^d)` to crystallographic groups.
//! * [`typed_search`]: subgroups with a prescribed number of orbits, searched by
//!   the stabilizer types of their orbits.
//! * [`maximal`]: maximal subgroups of bounded index of a crystallographic group.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod crystgeom;
mod error;
pub mod fpgroup;
pub mod orbits;
pub mod partitions;
pub mod subgroups;
pub mod maximal;
pub mod typed_search;

pub use error::{Error, Result};
