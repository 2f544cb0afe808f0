use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::certificate::max_translation_lattice;
use crate::crystgeom::{add, hyperoctahedral_group, lattice_normalizer, unit, vector, AffineMap, IntegerLattice, Vector};
use crate::orbits::{is_congruence, torus_points, OrbitPartition};
use crate::Result;

/// Colour permutations induced by symmetries of `Z^d` that map the
/// partition onto itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColourPermutationGroup {
    pub colours: usize,
    /// Sorted, including the identity.
    pub permutations: Vec<Vec<u32>>,
}

impl ColourPermutationGroup {
    pub fn order(&self) -> usize {
        self.permutations.len()
    }

    pub fn is_transitive(&self) -> bool {
        let mut reached = vec![false; self.colours];
        for p in &self.permutations {
            reached[p[0] as usize] = true;
        }
        reached.iter().all(|&r| r)
    }
}

pub fn color_permutation_group(p: &OrbitPartition) -> ColourPermutationGroup {
    let reduced = p.coarsen_to(&max_translation_lattice(p)).expect("periodic modulo its periods");
    let n = reduced.orbit_count();
    let points = torus_points(reduced.lattice());
    let reps = representatives_by_colour(&reduced);
    let mut perms = BTreeSet::new();
    for b in lattice_normalizer(reduced.lattice()).point_group() {
        for t in &points {
            let m = AffineMap::new(b, *t);
            if is_congruence(&reduced, &m) {
                perms.insert(reps.iter().map(|x| reduced.color_of(&m.apply(x))).collect::<Vec<u32>>());
            }
        }
    }
    debug_assert!(perms.iter().all(|q| q.len() == n));
    ColourPermutationGroup { colours: n, permutations: perms.into_iter().collect() }
}

fn representatives_by_colour(p: &OrbitPartition) -> Vec<Vector> {
    p.representatives()
}

/// True if the colour permutation group is transitive on colours.
pub fn is_swap_symmetric(p: &OrbitPartition) -> bool {
    color_permutation_group(p).is_transitive()
}

/// True if no two adjacent nodes share a colour.
pub fn is_proper_colouring(p: &OrbitPartition) -> bool {
    torus_points(p.lattice())
        .iter()
        .all(|x| (0..p.dim()).all(|j| p.color_of(x) != p.color_of(&add(x, &unit(j)))))
}

/// True if translation along some coordinate axis preserves every colour class.
pub fn is_superposed(p: &OrbitPartition) -> bool {
    (0..p.dim()).any(|j| p.is_period(&unit(j)))
}

/// The partition of `Z^{d+1}` that ignores the last coordinate.
pub fn superposition_lift(p: &OrbitPartition) -> Result<OrbitPartition> {
    let d = p.dim() + 1;
    let mut vs = p.lattice().basis_vectors();
    vs.push(unit(d - 1));
    let lattice = IntegerLattice::hnf(d, &vs)?;
    let colors = torus_points(&lattice)
        .iter()
        .map(|x| {
            let mut y = *x;
            y[d - 1] = 0;
            p.color_of(&y)
        })
        .collect();
    OrbitPartition::new(lattice, colors)
}

/// Offsets `v` with `1 <= |v|_1 <= radius`, in a fixed order.
pub fn neighbour_offsets(dim: usize, radius: i64) -> Vec<Vector> {
    let mut out = Vec::new();
    let range: Vec<i64> = (-radius..=radius).collect();
    let mut idx = vec![0usize; dim];
    loop {
        let v: Vec<i64> = idx.iter().map(|&k| range[k]).collect();
        let l1: i64 = v.iter().map(|x| x.abs()).sum();
        if (1..=radius).contains(&l1) {
            out.push(vector(&v));
        }
        let mut k = 0;
        loop {
            if k == dim {
                out.sort_by_key(|v| (v.iter().map(|x| x.abs()).sum::<i64>(), *v));
                return out;
            }
            idx[k] += 1;
            if idx[k] < range.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Colour counts around one representative of each colour.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NeighbourhoodSignature {
    pub radius: u32,
    /// `counts[c][c']`: nodes of colour `c'` within the radius of a node of colour `c`.
    pub counts: Vec<Vec<u32>>,
}

impl NeighbourhoodSignature {
    /// Invariant under renaming colours: the least count matrix over all
    /// simultaneous row and column permutations.
    pub fn class_key(&self) -> Vec<Vec<u32>> {
        let n = self.counts.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<Vec<u32>>> = None;
        loop {
            let m: Vec<Vec<u32>> = perm.iter().map(|&i| perm.iter().map(|&j| self.counts[i][j]).collect()).collect();
            if best.as_ref().is_none_or(|b| m < *b) {
                best = Some(m);
            }
            if !next_permutation(&mut perm) {
                return best.expect("at least one permutation");
            }
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn neighbourhood_signature(p: &OrbitPartition, radius: u32) -> NeighbourhoodSignature {
    let n = p.orbit_count();
    let offsets = neighbour_offsets(p.dim(), radius as i64);
    let counts = p
        .representatives()
        .iter()
        .map(|x| {
            let mut row = vec![0u32; n];
            for o in &offsets {
                row[p.color_of(&add(x, o)) as usize] += 1;
            }
            row
        })
        .collect();
    NeighbourhoodSignature { radius, counts }
}

/// Geometric neighbourhood of each colour: the pattern of colours on the
/// offsets around a representative, with the centre's colour written 0 and
/// other colours numbered by first appearance, minimized over the point
/// symmetries of `Z^d`. Returned sorted, so it does not depend on colour names.
pub fn neighbourhood_configurations(p: &OrbitPartition, radius: u32) -> Vec<Vec<u32>> {
    let offsets = neighbour_offsets(p.dim(), radius as i64);
    let group = hyperoctahedral_group(p.dim());
    let mut out: Vec<Vec<u32>> = p
        .representatives()
        .iter()
        .map(|x| {
            let centre = p.color_of(x);
            group
                .iter()
                .map(|b| {
                    let mut word: Vec<u32> = Vec::with_capacity(offsets.len() + 1);
                    word.push(centre);
                    word.extend(offsets.iter().map(|o| p.color_of(&add(x, &b.apply(o)))));
                    crate::orbits::relabel_first_seen(&mut word);
                    word.remove(0);
                    word
                })
                .min()
                .expect("nonempty group")
        })
        .collect();
    out.sort();
    out
}
