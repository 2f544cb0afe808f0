use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::affine::{sub, AffineMap};
use super::lattice::IntegerLattice;
use super::signed_perm::{hyperoctahedral_group, hyperoctahedral_order, SignedPerm, Vector, MAX_DIM};
use crate::{Error, Result};

/// A subgroup of `Aut(Z^d)` with a full-rank translation lattice, stored as
/// its translation lattice `T` and one coset representative of `T` for each
/// element of the point group.
///
/// Representatives are reduced modulo `T`, so two groups are equal exactly
/// when their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CrystGroup {
    lattice: IntegerLattice,
    /// Indexed by [`SignedPerm::code`].
    reps: Vec<Option<Vector>>,
}

impl CrystGroup {
    /// `Aut(Z^d)`.
    pub fn full(dim: usize) -> Self {
        CrystGroup { lattice: IntegerLattice::standard(dim), reps: vec![Some([0; MAX_DIM]); hyperoctahedral_order(dim)] }
    }

    /// The pure translation group of `lattice`.
    pub fn translations(lattice: IntegerLattice) -> Self {
        let mut reps = vec![None; hyperoctahedral_order(lattice.dim())];
        reps[SignedPerm::identity(lattice.dim()).code()] = Some([0; MAX_DIM]);
        CrystGroup { lattice, reps }
    }

    /// Closes `generators` under composition. The point group is finite, so
    /// this always terminates; the translations of the closure are collected
    /// from Schreier generators and must span a full-rank lattice.
    pub fn from_generators(dim: usize, generators: &[AffineMap]) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&dim) {
            return Err(Error::DimensionOutOfRange(dim));
        }
        if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch { left: dim, right: g.dim() });
        }
        let mut reps: Vec<Option<Vector>> = vec![None; hyperoctahedral_order(dim)];
        let id = SignedPerm::identity(dim);
        reps[id.code()] = Some([0; MAX_DIM]);
        let mut queue = VecDeque::from([AffineMap::identity(dim)]);
        let mut kernel = Vec::new();
        while let Some(e) = queue.pop_front() {
            for g in generators {
                let x = e.compose(g);
                match reps[x.linear.code()] {
                    Some(t) => {
                        let diff = sub(&x.translation, &t);
                        if diff.iter().any(|&c| c != 0) {
                            kernel.push(diff);
                        }
                    }
                    None => {
                        reps[x.linear.code()] = Some(x.translation);
                        queue.push_back(x);
                    }
                }
            }
        }
        let lattice = IntegerLattice::hnf(dim, &kernel)?;
        for r in reps.iter_mut().flatten() {
            *r = lattice.reduce(r);
        }
        Ok(CrystGroup { lattice, reps })
    }

    /// Builds a group from its translation lattice and point-group coset
    /// representatives, checking closure.
    pub fn from_parts(lattice: IntegerLattice, representatives: &[AffineMap]) -> Result<Self> {
        let dim = lattice.dim();
        let mut reps = vec![None; hyperoctahedral_order(dim)];
        reps[SignedPerm::identity(dim).code()] = Some([0; MAX_DIM]);
        for r in representatives {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: r.dim() });
            }
            let t = lattice.reduce(&r.translation);
            match reps[r.linear.code()] {
                Some(old) if old != t => return Err(Error::NotClosed),
                _ => reps[r.linear.code()] = Some(t),
            }
        }
        let g = CrystGroup { lattice, reps };
        if !g.is_closed() {
            return Err(Error::NotClosed);
        }
        Ok(g)
    }

    /// Trusted constructor for representatives already reduced modulo `lattice`.
    pub(crate) fn from_raw(lattice: IntegerLattice, reps: Vec<Option<Vector>>) -> Self {
        debug_assert_eq!(reps.len(), hyperoctahedral_order(lattice.dim()));
        CrystGroup { lattice, reps }
    }

    pub(crate) fn is_closed(&self) -> bool {
        let reps = self.coset_representatives();
        reps.iter().all(|a| self.lattice.is_invariant_under(&a.linear))
            && reps.iter().all(|a| reps.iter().all(|b| self.contains(&a.compose(b))))
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    /// `T(G)`.
    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    /// `T(G)` with the point group, in code order.
    pub fn translation_subgroup(&self) -> (IntegerLattice, Vec<SignedPerm>) {
        (self.lattice, self.point_group())
    }

    pub fn point_group(&self) -> Vec<SignedPerm> {
        self.coset_representatives().into_iter().map(|m| m.linear).collect()
    }

    pub fn point_group_order(&self) -> usize {
        self.reps.iter().filter(|r| r.is_some()).count()
    }

    /// One element `(A, t)` per point-group element `A`, with `t` reduced
    /// modulo `T(G)`, ordered by the code of `A`.
    pub fn coset_representatives(&self) -> Vec<AffineMap> {
        let d = self.dim();
        self.reps
            .iter()
            .enumerate()
            .filter_map(|(code, r)| r.map(|t| AffineMap::new(SignedPerm::from_code(d, code), t)))
            .collect()
    }

    /// The stored representative with linear part `a`, if `a` is in the point group.
    pub fn representative(&self, a: &SignedPerm) -> Option<AffineMap> {
        self.reps.get(a.code()).copied().flatten().map(|t| AffineMap::new(*a, t))
    }

    pub fn contains(&self, m: &AffineMap) -> bool {
        if m.dim() != self.dim() {
            return false;
        }
        match self.reps[m.linear.code()] {
            Some(t) => self.lattice.contains(&sub(&m.translation, &t)),
            None => false,
        }
    }

    pub fn is_subgroup_of(&self, other: &CrystGroup) -> bool {
        self.dim() == other.dim()
            && other.lattice.contains_lattice(&self.lattice)
            && self.coset_representatives().iter().all(|m| other.contains(m))
    }

    /// `g G g^-1`.
    pub fn conjugate_by(&self, g: &AffineMap) -> CrystGroup {
        let lattice = self.lattice.transform(&g.linear);
        let mut reps = vec![None; self.reps.len()];
        let gi = g.inverse();
        for m in self.coset_representatives() {
            let c = g.compose(&m).compose(&gi);
            reps[c.linear.code()] = Some(lattice.reduce(&c.translation));
        }
        CrystGroup { lattice, reps }
    }

    /// `(i_t, i_k)`: the index of `T(G)` in `Z^d` and of the point group in
    /// the full hyperoctahedral group.
    pub fn index_decomposition(&self) -> (usize, usize) {
        (self.lattice.index(), hyperoctahedral_order(self.dim()) / self.point_group_order())
    }

    /// `[Aut(Z^d) : G]`.
    pub fn index(&self) -> usize {
        let (it, ik) = self.index_decomposition();
        it * ik
    }

    /// A small generating set: point-group representatives chosen greedily in
    /// code order, followed by the lattice basis vectors still missing.
    pub fn generators(&self) -> Vec<AffineMap> {
        let d = self.dim();
        let mut gens: Vec<AffineMap> = Vec::new();
        let mut linear_closure = vec![false; self.reps.len()];
        linear_closure[SignedPerm::identity(d).code()] = true;
        for m in self.coset_representatives() {
            if linear_closure[m.linear.code()] {
                continue;
            }
            gens.push(m);
            close_linear(&mut linear_closure, d, &gens);
        }
        let mut current = if gens.is_empty() {
            None
        } else {
            CrystGroup::from_generators(d, &gens).ok().map(|g| g.lattice)
        };
        for v in self.lattice.basis_vectors() {
            let covered = current.is_some_and(|l| l.contains(&v));
            if !covered {
                gens.push(AffineMap::translation(d, v));
                let mut vs: Vec<Vector> = gens.iter().filter(|g| g.is_translation()).map(|g| g.translation).collect();
                if let Some(l) = current {
                    vs.extend(l.basis_vectors());
                }
                current = IntegerLattice::hnf(d, &vs).ok();
            }
        }
        gens
    }

    /// Elements `(A, t)` mapping `x` to itself modulo `T(G)`.
    pub fn stabilizer_elements(&self, x: &Vector) -> Vec<AffineMap> {
        self.coset_representatives()
            .into_iter()
            .filter(|m| self.lattice.contains(&sub(&m.apply(x), x)))
            .map(|m| {
                // shift the representative so that it fixes x exactly
                let shift = sub(x, &m.apply(x));
                AffineMap::new(m.linear, super::affine::add(&m.translation, &shift))
            })
            .collect()
    }
}

fn close_linear(seen: &mut [bool], dim: usize, gens: &[AffineMap]) {
    let mut queue: VecDeque<SignedPerm> =
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(c, _)| SignedPerm::from_code(dim, c)).collect();
    while let Some(a) = queue.pop_front() {
        for g in gens {
            let x = a.compose(&g.linear);
            if !seen[x.code()] {
                seen[x.code()] = true;
                queue.push_back(x);
            }
        }
    }
}

/// The normalizer of the translation group of `lattice` in `Aut(Z^d)`: all
/// translations and every signed permutation `B` with `B L = L`.
pub fn lattice_normalizer(lattice: &IntegerLattice) -> CrystGroup {
    let d = lattice.dim();
    let reps = hyperoctahedral_group(d)
        .iter()
        .map(|b| lattice.is_invariant_under(b).then_some([0; MAX_DIM]))
        .collect();
    CrystGroup { lattice: IntegerLattice::standard(d), reps }
}
