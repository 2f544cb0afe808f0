//! Orbits of crystallographic groups on the torus `Z^d / T`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::crystgeom::{AffineMap, CrystGroup, IntegerLattice, Vector};
use crate::{Error, Result};

/// Canonical representatives of `Z^d / L` in lexicographic order.
pub fn torus_points(lattice: &IntegerLattice) -> Vec<Vector> {
    (0..lattice.torus_size()).map(|k| lattice.torus_point(k)).collect()
}

/// A colouring of `Z^d` that is periodic modulo `lattice`.
///
/// `colors[k]` is the colour of torus point `k`. Colours are numbered
/// `0..orbit_count` in order of first appearance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitPartition {
    lattice: IntegerLattice,
    colors: Vec<u32>,
    orbit_count: usize,
}

/// Relabels colours by first appearance; returns the number of colours.
pub(crate) fn relabel_first_seen(colors: &mut [u32]) -> usize {
    let mut map: Vec<(u32, u32)> = Vec::new();
    for c in colors.iter_mut() {
        let new = match map.iter().find(|(old, _)| old == c) {
            Some(&(_, n)) => n,
            None => {
                let n = map.len() as u32;
                map.push((*c, n));
                n
            }
        };
        *c = new;
    }
    map.len()
}

impl OrbitPartition {
    /// A colouring with arbitrary labels, renumbered by first appearance.
    pub fn new(lattice: IntegerLattice, mut colors: Vec<u32>) -> Result<Self> {
        if colors.len() != lattice.torus_size() {
            return Err(Error::InconsistentPartition("colour array does not match the torus".into()));
        }
        let orbit_count = relabel_first_seen(&mut colors);
        Ok(OrbitPartition { lattice, colors, orbit_count })
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_count
    }

    /// Colour of an arbitrary lattice node.
    pub fn color_of(&self, x: &Vector) -> u32 {
        self.colors[self.lattice.class_of(x)]
    }

    /// Number of torus points of each colour.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.orbit_count];
        for &c in &self.colors {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// First torus point of each colour.
    pub fn representatives(&self) -> Vec<Vector> {
        let mut reps = vec![None; self.orbit_count];
        for (k, &c) in self.colors.iter().enumerate() {
            if reps[c as usize].is_none() {
                reps[c as usize] = Some(self.lattice.torus_point(k));
            }
        }
        reps.into_iter().map(|r| r.expect("every colour occurs")).collect()
    }

    /// The same colouring written modulo a sublattice of the current modulus.
    pub fn refine_to(&self, finer: &IntegerLattice) -> Result<OrbitPartition> {
        if !self.lattice.contains_lattice(finer) {
            return Err(Error::InconsistentPartition("target lattice is not a sublattice".into()));
        }
        let colors = torus_points(finer).iter().map(|x| self.color_of(x)).collect();
        OrbitPartition::new(*finer, colors)
    }

    /// The same colouring written modulo a superlattice of the current
    /// modulus; fails unless the colouring is periodic modulo `coarser`.
    pub fn coarsen_to(&self, coarser: &IntegerLattice) -> Result<OrbitPartition> {
        if !coarser.contains_lattice(&self.lattice) {
            return Err(Error::InconsistentPartition("target lattice is not a superlattice".into()));
        }
        let mut colors = vec![u32::MAX; coarser.torus_size()];
        for (k, &c) in self.colors.iter().enumerate() {
            let slot = &mut colors[coarser.class_of(&self.lattice.torus_point(k))];
            if *slot == u32::MAX {
                *slot = c;
            } else if *slot != c {
                return Err(Error::InconsistentPartition("colouring is not periodic modulo the lattice".into()));
            }
        }
        OrbitPartition::new(*coarser, colors)
    }

    /// True if translation by `v` maps every colour class onto itself.
    pub fn is_period(&self, v: &Vector) -> bool {
        torus_points(&self.lattice).iter().all(|x| {
            let y = crate::crystgeom::add(x, v);
            self.color_of(&y) == self.color_of(x)
        })
    }

    /// Colour of `m(x)` equals colour of `x` for every node.
    pub fn is_fixed_by(&self, m: &AffineMap) -> bool {
        torus_points(&self.lattice).iter().all(|x| self.color_of(&m.apply(x)) == self.color_of(x))
    }
}

/// Orbits of `g` on `Z^d / T(g)`, numbered by first appearance.
pub fn orbit_partition(g: &CrystGroup) -> OrbitPartition {
    let lattice = *g.lattice();
    let reps = g.coset_representatives();
    let n = lattice.torus_size();
    let mut colors = vec![u32::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if colors[start] != u32::MAX {
            continue;
        }
        colors[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(k) = queue.pop_front() {
            let x = lattice.torus_point(k);
            for m in &reps {
                let y = lattice.class_of(&m.apply(&x));
                if colors[y] == u32::MAX {
                    colors[y] = next;
                    queue.push_back(y);
                }
            }
        }
        next += 1;
    }
    OrbitPartition { lattice, colors, orbit_count: next as usize }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerInfo {
    pub point: Vector,
    pub order: usize,
    /// Elements fixing `point` exactly.
    pub elements: Vec<AffineMap>,
}

/// `Stab_g(x)`; finite because the point group is.
pub fn stabilizer(g: &CrystGroup, x: &Vector) -> StabilizerInfo {
    let elements = g.stabilizer_elements(x);
    StabilizerInfo { point: *x, order: elements.len(), elements }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proposition1Term {
    /// Least torus point (modulo `T(H)`) of the `H`-orbit.
    pub representative: Vector,
    /// Index of the `G`-orbit containing the representative.
    pub g_orbit: u32,
    pub g_stabilizer: usize,
    pub h_stabilizer: usize,
}

impl Proposition1Term {
    pub fn ratio(&self) -> usize {
        self.g_stabilizer / self.h_stabilizer
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proposition1Report {
    pub index: usize,
    pub terms: Vec<Proposition1Term>,
    /// Sum of the stabilizer ratios over the `H`-orbits inside each `G`-orbit.
    pub sums: Vec<usize>,
}

impl Proposition1Report {
    pub fn holds(&self) -> bool {
        self.terms.iter().all(|t| t.g_stabilizer % t.h_stabilizer == 0)
            && self.sums.iter().all(|&s| s == self.index)
    }
}

/// For `H <= G`, checks `[G:H] = sum_k |Stab_G(x_k) : Stab_H(x_k)|` over the
/// `H`-orbits `x_k` inside each `G`-orbit.
pub fn proposition1_check(g: &CrystGroup, h: &CrystGroup) -> Result<Proposition1Report> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    let (gi, hi) = (g.index(), h.index());
    if hi % gi != 0 {
        return Err(Error::NotSubgroup);
    }
    let index = hi / gi;
    let gp = orbit_partition(g);
    let hp = orbit_partition(h);
    let mut sums = vec![0; gp.orbit_count()];
    let mut terms = Vec::new();
    for x in hp.representatives() {
        let g_orbit = gp.color_of(&x);
        let term = Proposition1Term {
            representative: x,
            g_orbit,
            g_stabilizer: stabilizer(g, &x).order,
            h_stabilizer: stabilizer(h, &x).order,
        };
        sums[g_orbit as usize] += term.g_stabilizer / term.h_stabilizer;
        terms.push(term);
    }
    Ok(Proposition1Report { index, terms, sums })
}

/// Orbit-stabilizer on the torus: `|orbit_k| * |Stab_H(x_k)| = |P_H|` for
/// every orbit.
pub fn orbit_stabilizer_holds(h: &CrystGroup, p: &OrbitPartition) -> bool {
    let sizes = p.orbit_sizes();
    let order = h.point_group_order();
    p.representatives()
        .iter()
        .zip(&sizes)
        .all(|(x, &s)| s * stabilizer(h, x).order == order)
}

/// True if `a` and `b` split `Z^d` into the same classes.
pub fn same_classes(a: &OrbitPartition, b: &OrbitPartition) -> bool {
    if a.dim() != b.dim() || a.orbit_count() != b.orbit_count() {
        return false;
    }
    let periodic = a.lattice().basis_vectors().iter().all(|v| b.is_period(v))
        && b.lattice().basis_vectors().iter().all(|v| a.is_period(v));
    if !periodic {
        return false;
    }
    let mut map = vec![u32::MAX; a.orbit_count()];
    let mut back = vec![u32::MAX; b.orbit_count()];
    for x in torus_points(a.lattice()) {
        let (ca, cb) = (a.color_of(&x) as usize, b.color_of(&x) as usize);
        if map[ca] == u32::MAX && back[cb] == u32::MAX {
            map[ca] = cb as u32;
            back[cb] = ca as u32;
        } else if map[ca] != cb as u32 || back[cb] != ca as u32 {
            return false;
        }
    }
    true
}

/// True if `m` maps colour classes of `p` onto colour classes. The linear
/// part of `m` must preserve the modulus of `p`; otherwise `false`.
pub fn is_congruence(p: &OrbitPartition, m: &AffineMap) -> bool {
    if !p.lattice().is_invariant_under(&m.linear) {
        return false;
    }
    let mut image = vec![u32::MAX; p.orbit_count()];
    let mut hit = vec![false; p.orbit_count()];
    for x in torus_points(p.lattice()) {
        let (c, d) = (p.color_of(&x) as usize, p.color_of(&m.apply(&x)));
        if image[c] == u32::MAX {
            if hit[d as usize] {
                return false;
            }
            hit[d as usize] = true;
            image[c] = d;
        } else if image[c] != d {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystgeom::{generator_images, vector, word_to_affine};
    use crate::fpgroup::Word;

    fn d1(words: &[&[usize]]) -> CrystGroup {
        let images = generator_images(1).unwrap();
        let gens: Vec<AffineMap> =
            words.iter().map(|w| word_to_affine(&Word::from_generators(w), &images).unwrap()).collect();
        CrystGroup::from_generators(1, &gens).unwrap()
    }

    fn chessboard() -> CrystGroup {
        let even = IntegerLattice::hnf(3, &[vector(&[1, 1, 0]), vector(&[1, -1, 0]), vector(&[0, 1, 1])]).unwrap();
        let reps: Vec<AffineMap> =
            crate::crystgeom::hyperoctahedral_group(3).into_iter().map(AffineMap::linear).collect();
        CrystGroup::from_parts(even, &reps).unwrap()
    }

    #[test]
    fn torus_point_lists() {
        assert_eq!(torus_points(&IntegerLattice::standard(2)), vec![[0; 4]]);
        let l = IntegerLattice::hnf(1, &[vector(&[3])]).unwrap();
        assert_eq!(torus_points(&l), vec![vector(&[0]), vector(&[1]), vector(&[2])]);
    }

    #[test]
    fn three_periodic_line() {
        let h = d1(&[&[0, 0, 0], &[1]]);
        let p = orbit_partition(&h);
        assert_eq!(p.colors(), &[0, 1, 1]);
        assert_eq!(stabilizer(&h, &vector(&[0])).order, 2);
        assert_eq!(stabilizer(&h, &vector(&[1])).order, 1);
        assert!(orbit_stabilizer_holds(&h, &p));
        let r = proposition1_check(&CrystGroup::full(1), &h).unwrap();
        assert_eq!(r.index, 3);
        assert_eq!(r.terms.iter().map(|t| t.ratio()).collect::<Vec<_>>(), vec![1, 2]);
        assert!(r.holds());
    }

    #[test]
    fn full_group_is_transitive() {
        for d in 1..=4 {
            let f = CrystGroup::full(d);
            assert_eq!(orbit_partition(&f).orbit_count(), 1);
            assert_eq!(stabilizer(&f, &[0; 4]).order, crate::crystgeom::hyperoctahedral_order(d));
            let r = proposition1_check(&f, &f).unwrap();
            assert_eq!((r.index, r.terms.len()), (1, 1));
        }
    }

    #[test]
    fn chessboard_parity() {
        let h = chessboard();
        let p = orbit_partition(&h);
        assert_eq!(p.orbit_count(), 2);
        assert_eq!(h.index_decomposition(), (2, 1));
        for x in torus_points(p.lattice()) {
            assert_eq!(p.color_of(&x) as i64, (x[0] + x[1] + x[2]).rem_euclid(2));
        }
        let r = proposition1_check(&CrystGroup::full(3), &h).unwrap();
        assert_eq!(r.terms.iter().map(|t| (t.g_stabilizer, t.h_stabilizer)).collect::<Vec<_>>(), vec![(48, 48); 2]);
        assert!(r.holds());
        assert!(matches!(proposition1_check(&h, &CrystGroup::full(3)), Err(Error::NotSubgroup)));
    }

    #[test]
    fn refine_and_coarsen() {
        let h = d1(&[&[0, 0, 0], &[1]]);
        let p = orbit_partition(&h);
        let fine = IntegerLattice::hnf(1, &[vector(&[6])]).unwrap();
        let q = p.refine_to(&fine).unwrap();
        assert_eq!(q.colors(), &[0, 1, 1, 0, 1, 1]);
        assert!(same_classes(&p, &q));
        assert_eq!(q.coarsen_to(p.lattice()).unwrap(), p);
        assert!(q.coarsen_to(&IntegerLattice::standard(1)).is_err());
        assert!(q.is_period(&vector(&[3])));
        assert!(!q.is_period(&vector(&[2])));
    }

    #[test]
    fn colours_form_a_congruence() {
        let h = d1(&[&[0, 0, 0], &[1]]);
        let p = orbit_partition(&h);
        for g in h.generators() {
            assert!(p.is_fixed_by(&g));
            assert!(is_congruence(&p, &g));
        }
    }
}
