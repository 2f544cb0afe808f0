use alloc::vec::Vec;

use super::signed_perm::{SignedPerm, Vector, MAX_DIM};
use crate::{Error, Result};

/// A full-rank sublattice of `Z^d` in Hermite normal form.
///
/// Basis vector `k` vanishes in coordinates `0..k` and has a positive entry
/// `h_kk` in coordinate `k`; the entries of earlier basis vectors in
/// coordinate `k` are reduced into `[0, h_kk)`. Written as the rows of a
/// matrix the basis is upper triangular.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IntegerLattice {
    dim: u8,
    /// `basis[k]` is basis vector `k`.
    basis: [[i64; MAX_DIM]; MAX_DIM],
}

fn floor_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

impl IntegerLattice {
    /// `Z^d` itself.
    pub fn standard(dim: usize) -> Self {
        let mut basis = [[0; MAX_DIM]; MAX_DIM];
        for (i, row) in basis.iter_mut().enumerate().take(dim) {
            row[i] = 1;
        }
        IntegerLattice { dim: dim as u8, basis }
    }

    /// Hermite normal form of the lattice spanned by `vectors`.
    pub fn hnf(dim: usize, vectors: &[Vector]) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&dim) {
            return Err(Error::DimensionOutOfRange(dim));
        }
        let mut pool: Vec<Vector> = vectors.iter().filter(|v| v.iter().any(|&x| x != 0)).copied().collect();
        let mut basis = [[0i64; MAX_DIM]; MAX_DIM];
        for k in 0..dim {
            let pivot = loop {
                let best = pool
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| v[k] != 0)
                    .min_by_key(|(_, v)| v[k].abs())
                    .map(|(i, _)| i);
                let Some(p) = best else { return Err(Error::RankDeficient) };
                let pv = pool[p];
                let mut others = false;
                for (i, v) in pool.iter_mut().enumerate() {
                    if i != p && v[k] != 0 {
                        let q = floor_div(v[k], pv[k]);
                        for c in k..dim {
                            v[c] -= q * pv[c];
                        }
                        others |= v[k] != 0;
                    }
                }
                if !others {
                    break pool.swap_remove(p);
                }
            };
            pool.retain(|v| v.iter().any(|&x| x != 0));
            let sign = pivot[k].signum();
            for c in 0..dim {
                basis[k][c] = sign * pivot[c];
            }
        }
        let mut lattice = IntegerLattice { dim: dim as u8, basis };
        lattice.reduce_off_diagonal();
        Ok(lattice)
    }

    fn reduce_off_diagonal(&mut self) {
        let d = self.dim();
        for k in 0..d {
            let pivot = self.basis[k];
            for j in 0..k {
                let q = floor_div(self.basis[j][k], pivot[k]);
                if q != 0 {
                    for c in k..d {
                        self.basis[j][c] -= q * pivot[c];
                    }
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    /// Coordinate `c` of basis vector `k`.
    pub fn entry(&self, k: usize, c: usize) -> i64 {
        self.basis[k][c]
    }

    pub fn diagonal(&self, j: usize) -> i64 {
        self.basis[j][j]
    }

    /// `[Z^d : L]`, the product of the diagonal.
    pub fn index(&self) -> usize {
        (0..self.dim()).map(|j| self.basis[j][j] as usize).product()
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis[..self.dim()].to_vec()
    }

    /// Canonical representative of `v + L`, with coordinate `j` in `[0, h_jj)`.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut x = *v;
        for k in 0..self.dim() {
            let q = floor_div(x[k], self.basis[k][k]);
            if q != 0 {
                for c in k..self.dim() {
                    x[c] -= q * self.basis[k][c];
                }
            }
        }
        x
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_lattice(&self, other: &IntegerLattice) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    /// `B L` for a signed permutation `B`.
    pub fn transform(&self, b: &SignedPerm) -> IntegerLattice {
        let vs: Vec<Vector> = self.basis_vectors().iter().map(|v| b.apply(v)).collect();
        IntegerLattice::hnf(self.dim(), &vs).expect("unimodular image keeps full rank")
    }

    pub fn is_invariant_under(&self, b: &SignedPerm) -> bool {
        self.basis_vectors().iter().all(|v| self.contains(&b.apply(v)))
    }

    /// Lattice spanned by `self` and `extra`.
    pub fn join(&self, extra: &[Vector]) -> IntegerLattice {
        let mut vs = self.basis_vectors();
        vs.extend_from_slice(extra);
        IntegerLattice::hnf(self.dim(), &vs).expect("superlattice of a full-rank lattice")
    }

    /// Number of canonical torus points, i.e. the index.
    pub fn torus_size(&self) -> usize {
        self.index()
    }

    /// Position of a reduced point in the lexicographic order of the torus
    /// (first coordinate most significant).
    pub fn torus_index(&self, reduced: &Vector) -> usize {
        let mut idx = 0usize;
        for j in 0..self.dim() {
            idx = idx * self.basis[j][j] as usize + reduced[j] as usize;
        }
        idx
    }

    pub fn torus_point(&self, mut idx: usize) -> Vector {
        let mut v = [0; MAX_DIM];
        for j in (0..self.dim()).rev() {
            let h = self.basis[j][j] as usize;
            v[j] = (idx % h) as i64;
            idx /= h;
        }
        v
    }

    /// Torus index of the class of an arbitrary vector.
    pub fn class_of(&self, v: &Vector) -> usize {
        self.torus_index(&self.reduce(v))
    }

    /// The nonzero triangle of the basis, vector by vector.
    pub fn hnf_entries(&self) -> Vec<i64> {
        let d = self.dim();
        let mut out = Vec::with_capacity(d * (d + 1) / 2);
        for k in 0..d {
            out.extend_from_slice(&self.basis[k][k..d]);
        }
        out
    }

    pub fn from_hnf_entries(dim: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != dim * (dim + 1) / 2 {
            return Err(Error::Parse("wrong number of HNF entries".into()));
        }
        let mut vs = Vec::new();
        let mut rest = entries;
        for k in 0..dim {
            let mut v = [0; MAX_DIM];
            v[k..dim].copy_from_slice(&rest[..dim - k]);
            rest = &rest[dim - k..];
            vs.push(v);
        }
        let l = IntegerLattice::hnf(dim, &vs)?;
        if l.hnf_entries() != entries {
            return Err(Error::Parse("entries are not in Hermite normal form".into()));
        }
        Ok(l)
    }
}
