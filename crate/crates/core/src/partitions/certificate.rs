use alloc::vec::Vec;
use core::fmt;

use crate::crystgeom::{hyperoctahedral_group, sub, AffineMap, IntegerLattice, SignedPerm};
use crate::orbits::{relabel_first_seen, torus_points, OrbitPartition};
use crate::{Error, Result};

/// Canonical byte string of a partition up to `Aut(Z^d)` and colour
/// permutations: dimension, colour count, the HNF of the transformed maximal
/// translation lattice and the colour word over its torus.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionCertificate(Vec<u8>);

impl PartitionCertificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        PartitionCertificate(bytes)
    }

    /// The canonical partition the certificate describes.
    pub fn decode(&self) -> Result<OrbitPartition> {
        let bad = || Error::Parse("malformed certificate".into());
        let b = &self.0;
        let d = *b.first().ok_or_else(bad)? as usize;
        let hnf_len = d * (d + 1) / 2;
        if b.len() < 2 + 4 * hnf_len {
            return Err(bad());
        }
        let entries: Vec<i64> =
            b[2..2 + 4 * hnf_len].chunks(4).map(|c| u32::from_be_bytes([c[0], c[1], c[2], c[3]]) as i64).collect();
        let lattice = IntegerLattice::from_hnf_entries(d, &entries)?;
        let colors: Vec<u32> = b[2 + 4 * hnf_len..].iter().map(|&c| c as u32).collect();
        let p = OrbitPartition::new(lattice, colors)?;
        if p.orbit_count() != b[1] as usize {
            return Err(bad());
        }
        Ok(p)
    }
}

impl fmt::Debug for PartitionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// The lattice of all periods of the colouring.
pub fn max_translation_lattice(p: &OrbitPartition) -> IntegerLattice {
    let mut vs = p.lattice().basis_vectors();
    vs.extend(torus_points(p.lattice()).into_iter().filter(|v| p.is_period(v)));
    IntegerLattice::hnf(p.dim(), &vs).expect("contains a full-rank lattice")
}

fn encode(d: usize, n: usize, lattice: &IntegerLattice, word: &[u32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(2 + 4 * d * (d + 1) / 2 + word.len());
    out.push(d as u8);
    out.push(n as u8);
    for e in lattice.hnf_entries() {
        out.extend_from_slice(&(e as u32).to_be_bytes());
    }
    out.extend(word.iter().map(|&c| c as u8));
    out
}

/// The certificate together with a transform `x -> B x + t` taking `p` to
/// the canonical partition.
pub fn canonical_form(p: &OrbitPartition) -> (PartitionCertificate, AffineMap) {
    let d = p.dim();
    let reduced = p.coarsen_to(&max_translation_lattice(p)).expect("colouring is periodic modulo its periods");
    let star = *reduced.lattice();
    let mut candidates: Vec<(IntegerLattice, SignedPerm)> =
        hyperoctahedral_group(d).into_iter().map(|b| (star.transform(&b), b)).collect();
    let best_lattice = candidates.iter().map(|(l, _)| l.hnf_entries()).min().expect("nonempty group");
    candidates.retain(|(l, _)| l.hnf_entries() == best_lattice);
    let lattice = candidates[0].0;
    let points = torus_points(&lattice);
    let mut best: Option<(Vec<u32>, AffineMap)> = None;
    let mut word = Vec::with_capacity(points.len());
    for (_, b) in &candidates {
        let bi = b.inverse();
        let pre: Vec<_> = points.iter().map(|y| bi.apply(y)).collect();
        for t in &points {
            let shift = bi.apply(t);
            word.clear();
            word.extend(pre.iter().map(|x| reduced.color_of(&sub(x, &shift))));
            relabel_first_seen(&mut word);
            if best.as_ref().is_none_or(|(w, _)| word < *w) {
                best = Some((word.clone(), AffineMap::new(*b, *t)));
            }
        }
    }
    let (word, witness) = best.expect("nonempty torus");
    (PartitionCertificate(encode(d, reduced.orbit_count(), &lattice, &word)), witness)
}

pub fn canonical_certificate(p: &OrbitPartition) -> PartitionCertificate {
    canonical_form(p).0
}

/// The image of `p` under `x -> m(x)`, written modulo the transformed lattice.
pub fn transform_partition(p: &OrbitPartition, m: &AffineMap) -> OrbitPartition {
    let lattice = p.lattice().transform(&m.linear);
    let mi = m.inverse();
    let colors = torus_points(&lattice).iter().map(|y| p.color_of(&mi.apply(y))).collect();
    OrbitPartition::new(lattice, colors).expect("torus sizes agree")
}
