use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

pub const MAX_DIM: usize = 4;

/// Integer vector of length `MAX_DIM`; coordinates past the dimension are zero.
pub type Vector = [i64; MAX_DIM];

/// A signed permutation matrix: row `i` has the entry `±1` in column `perm[i]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    dim: u8,
    perm: [u8; MAX_DIM],
    /// Bit `i` set when row `i` carries `-1`.
    negative: u8,
}

const FACTORIAL: [usize; MAX_DIM + 1] = [1, 1, 2, 6, 24];

/// Order of the hyperoctahedral group `2^d d!`.
pub const fn hyperoctahedral_order(d: usize) -> usize {
    (1 << d) * FACTORIAL[d]
}

impl SignedPerm {
    pub fn identity(dim: usize) -> Self {
        assert!(dim <= MAX_DIM);
        let mut perm = [0u8; MAX_DIM];
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i as u8;
        }
        SignedPerm { dim: dim as u8, perm, negative: 0 }
    }

    /// Builds the matrix from `images[i] = (column, sign)` of each row.
    pub fn new(dim: usize, rows: &[(usize, i64)]) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&dim) {
            return Err(Error::DimensionOutOfRange(dim));
        }
        if rows.len() != dim {
            return Err(Error::DimensionMismatch { left: dim, right: rows.len() });
        }
        let mut perm = [0u8; MAX_DIM];
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i as u8;
        }
        let mut seen = 0u8;
        let mut negative = 0u8;
        for (i, &(col, sign)) in rows.iter().enumerate() {
            if col >= dim || seen & (1 << col) != 0 || !(sign == 1 || sign == -1) {
                return Err(Error::Parse("not a signed permutation".into()));
            }
            seen |= 1 << col;
            perm[i] = col as u8;
            if sign < 0 {
                negative |= 1 << i;
            }
        }
        Ok(SignedPerm { dim: dim as u8, perm, negative })
    }

    /// Parses a `dim x dim` matrix given row by row.
    pub fn from_matrix(dim: usize, m: &[[i64; MAX_DIM]]) -> Result<Self> {
        let mut rows = Vec::with_capacity(dim);
        for row in m.iter().take(dim) {
            let nz: Vec<usize> = (0..dim).filter(|&j| row[j] != 0).collect();
            if nz.len() != 1 || row[dim..].iter().any(|&x| x != 0) {
                return Err(Error::Parse("not a signed permutation".into()));
            }
            rows.push((nz[0], row[nz[0]]));
        }
        SignedPerm::new(dim, &rows)
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        if self.perm[row] as usize == col {
            self.sign(row)
        } else {
            0
        }
    }

    fn sign(&self, row: usize) -> i64 {
        if self.negative & (1 << row) != 0 {
            -1
        } else {
            1
        }
    }

    pub fn matrix(&self) -> [[i64; MAX_DIM]; MAX_DIM] {
        let mut m = [[0; MAX_DIM]; MAX_DIM];
        for (i, row) in m.iter_mut().enumerate().take(self.dim()) {
            row[self.perm[i] as usize] = self.sign(i);
        }
        m
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = [0; MAX_DIM];
        for (i, o) in out.iter_mut().enumerate().take(self.dim()) {
            *o = self.sign(i) * v[self.perm[i] as usize];
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        debug_assert_eq!(self.dim, other.dim);
        let mut perm = [0u8; MAX_DIM];
        let mut negative = 0u8;
        for i in 0..MAX_DIM {
            perm[i] = i as u8;
        }
        for i in 0..self.dim() {
            let j = self.perm[i] as usize;
            perm[i] = other.perm[j];
            if (self.negative >> i) & 1 != (other.negative >> j) & 1 {
                negative |= 1 << i;
            }
        }
        SignedPerm { dim: self.dim, perm, negative }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut perm = [0u8; MAX_DIM];
        let mut negative = 0u8;
        for i in 0..MAX_DIM {
            perm[i] = i as u8;
        }
        for i in 0..self.dim() {
            let j = self.perm[i] as usize;
            perm[j] = i as u8;
            if self.negative & (1 << i) != 0 {
                negative |= 1 << j;
            }
        }
        SignedPerm { dim: self.dim, perm, negative }
    }

    pub fn is_identity(&self) -> bool {
        *self == SignedPerm::identity(self.dim())
    }

    /// Dense index in `0..2^d d!`: rank of the permutation times `2^d`
    /// plus the sign mask.
    pub fn code(&self) -> usize {
        let d = self.dim();
        let mut rank = 0;
        for i in 0..d {
            let smaller = (i + 1..d).filter(|&j| self.perm[j] < self.perm[i]).count();
            rank += smaller * FACTORIAL[d - 1 - i];
        }
        (rank << d) | self.negative as usize
    }

    pub fn from_code(dim: usize, code: usize) -> SignedPerm {
        let mask = (1 << dim) - 1;
        let negative = (code & mask) as u8;
        let mut rank = code >> dim;
        let mut avail: Vec<u8> = (0..dim as u8).collect();
        let mut perm = [0u8; MAX_DIM];
        for i in 0..MAX_DIM {
            perm[i] = i as u8;
        }
        for i in 0..dim {
            let f = FACTORIAL[dim - 1 - i];
            let k = rank / f;
            rank %= f;
            perm[i] = avail.remove(k);
        }
        SignedPerm { dim: dim as u8, perm, negative }
    }

    pub fn order(&self) -> usize {
        let mut p = *self;
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }
}

/// All `2^d d!` signed permutation matrices, ordered by [`SignedPerm::code`].
pub fn hyperoctahedral_group(dim: usize) -> Vec<SignedPerm> {
    (0..hyperoctahedral_order(dim)).map(|c| SignedPerm::from_code(dim, c)).collect()
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ['x', 'y', 'z', 'w'];
        f.write_str("(")?;
        for i in 0..self.dim() {
            if i > 0 {
                f.write_str(",")?;
            }
            if self.sign(i) < 0 {
                f.write_str("-")?;
            }
            write!(f, "{}", names[self.perm[i] as usize])?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_are_a_bijection() {
        for d in 1..=4 {
            let all = hyperoctahedral_group(d);
            assert_eq!(all.len(), hyperoctahedral_order(d));
            for (c, p) in all.iter().enumerate() {
                assert_eq!(p.code(), c);
            }
        }
        assert_eq!(hyperoctahedral_order(3), 48);
        assert_eq!(hyperoctahedral_order(4), 384);
    }

    #[test]
    fn composition_matches_matrix_product() {
        let all = hyperoctahedral_group(3);
        for a in all.iter().step_by(5) {
            for b in all.iter().step_by(7) {
                let ab = a.compose(b);
                let (ma, mb, mab) = (a.matrix(), b.matrix(), ab.matrix());
                for i in 0..3 {
                    for j in 0..3 {
                        let s: i64 = (0..3).map(|k| ma[i][k] * mb[k][j]).sum();
                        assert_eq!(s, mab[i][j]);
                    }
                }
                assert!(a.compose(&a.inverse()).is_identity());
            }
        }
    }

    #[test]
    fn matrix_roundtrip_and_validation() {
        let swap = SignedPerm::new(2, &[(1, 1), (0, -1)]).unwrap();
        assert_eq!(SignedPerm::from_matrix(2, &swap.matrix()).unwrap(), swap);
        assert_eq!(swap.apply(&[3, 5, 0, 0]), [5, -3, 0, 0]);
        assert_eq!(swap.order(), 4);
        assert!(SignedPerm::new(2, &[(0, 1), (0, 1)]).is_err());
        assert!(SignedPerm::new(2, &[(0, 2), (1, 1)]).is_err());
        assert!(SignedPerm::from_matrix(2, &[[1, 1, 0, 0], [0, 1, 0, 0]]).is_err());
    }
}
