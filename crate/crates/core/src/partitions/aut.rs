use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::certificate::{max_translation_lattice, PartitionCertificate};
use crate::crystgeom::{hyperoctahedral_order, lattice_normalizer, AffineMap, CrystGroup, SignedPerm};
use crate::orbits::{torus_points, OrbitPartition};
use crate::{Error, Result};

/// Elements `(B, t)` with `B` from `linear` that fix every colour class.
/// Every `B` must preserve the modulus of `p`.
pub fn colour_fixing_subgroup(linear: &[SignedPerm], p: &OrbitPartition) -> CrystGroup {
    let d = p.dim();
    let lattice = max_translation_lattice(p);
    let points = torus_points(p.lattice());
    let mut reps = vec![None; hyperoctahedral_order(d)];
    for b in linear {
        debug_assert!(p.lattice().is_invariant_under(b));
        let images: Vec<_> = points.iter().map(|x| b.apply(x)).collect();
        let found = points.iter().find(|t| {
            points.iter().zip(&images).all(|(x, bx)| p.color_of(&crate::crystgeom::add(bx, t)) == p.color_of(x))
        });
        if let Some(t) = found {
            reps[b.code()] = Some(lattice.reduce(t));
        }
    }
    CrystGroup::from_raw(lattice, reps)
}

/// The intermediate group `S` and `Aut(Π)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutSteps {
    pub intermediate: CrystGroup,
    pub aut: CrystGroup,
}

/// `Aut(Π)` in two steps: the colour-fixing subgroup `S` of the normalizer
/// of `T(H)`, then the colour-fixing subgroup of the normalizer of `T(S)`.
pub fn aut_partition_steps(h: &CrystGroup, p: &OrbitPartition) -> Result<AutSteps> {
    let on_h = if p.lattice() == h.lattice() {
        p.clone()
    } else {
        p.refine_to(h.lattice())
            .map_err(|_| Error::InconsistentPartition("partition is not periodic modulo T(H)".into()))?
    };
    if !h.coset_representatives().iter().all(|m| on_h.is_fixed_by(m)) {
        return Err(Error::InconsistentPartition("H does not fix the colour classes".into()));
    }
    let n1 = lattice_normalizer(h.lattice());
    let intermediate = colour_fixing_subgroup(&n1.point_group(), &on_h);
    let on_s = on_h.coarsen_to(intermediate.lattice())?;
    let n2 = lattice_normalizer(intermediate.lattice());
    let aut = colour_fixing_subgroup(&n2.point_group(), &on_s);
    debug_assert!(h.is_subgroup_of(&aut));
    Ok(AutSteps { intermediate, aut })
}

pub fn aut_partition(h: &CrystGroup, p: &OrbitPartition) -> Result<CrystGroup> {
    Ok(aut_partition_steps(h, p)?.aut)
}

/// For each certificate, the largest group among the given groups after
/// conjugating each by the transform that canonicalizes its partition.
/// Fails if the largest group does not contain all others.
pub fn aut_partition_by_inclusion(
    records: &[(CrystGroup, PartitionCertificate, AffineMap)],
) -> Result<BTreeMap<PartitionCertificate, CrystGroup>> {
    let mut classes: BTreeMap<&PartitionCertificate, Vec<CrystGroup>> = BTreeMap::new();
    for (g, cert, witness) in records {
        classes.entry(cert).or_default().push(g.conjugate_by(witness));
    }
    let mut out = BTreeMap::new();
    for (cert, groups) in classes {
        let best = groups.iter().min_by_key(|g| g.index()).expect("nonempty class");
        if !groups.iter().all(|g| g.is_subgroup_of(best)) {
            return Err(Error::NoUniqueMaximum(groups.len()));
        }
        out.insert(cert.clone(), best.clone());
    }
    Ok(out)
}
