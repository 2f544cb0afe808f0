use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use super::signed_perm::{SignedPerm, Vector, MAX_DIM};
use crate::{Error, Result};

/// An isometry `x -> A x + t` of `Z^d` with a signed-permutation linear part.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMap {
    pub linear: SignedPerm,
    pub translation: Vector,
}

pub fn add(a: &Vector, b: &Vector) -> Vector {
    let mut out = [0; MAX_DIM];
    for i in 0..MAX_DIM {
        out[i] = a[i] + b[i];
    }
    out
}

pub fn sub(a: &Vector, b: &Vector) -> Vector {
    let mut out = [0; MAX_DIM];
    for i in 0..MAX_DIM {
        out[i] = a[i] - b[i];
    }
    out
}

pub fn neg(a: &Vector) -> Vector {
    let mut out = [0; MAX_DIM];
    for i in 0..MAX_DIM {
        out[i] = -a[i];
    }
    out
}

pub fn unit(j: usize) -> Vector {
    let mut v = [0; MAX_DIM];
    v[j] = 1;
    v
}

pub fn vector(coords: &[i64]) -> Vector {
    let mut v = [0; MAX_DIM];
    v[..coords.len()].copy_from_slice(coords);
    v
}

impl AffineMap {
    pub fn new(linear: SignedPerm, translation: Vector) -> Self {
        AffineMap { linear, translation }
    }

    pub fn identity(dim: usize) -> Self {
        AffineMap { linear: SignedPerm::identity(dim), translation: [0; MAX_DIM] }
    }

    pub fn translation(dim: usize, t: Vector) -> Self {
        AffineMap { linear: SignedPerm::identity(dim), translation: t }
    }

    pub fn linear(linear: SignedPerm) -> Self {
        AffineMap { linear, translation: [0; MAX_DIM] }
    }

    pub fn dim(&self) -> usize {
        self.linear.dim()
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        add(&self.linear.apply(x), &self.translation)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        debug_assert_eq!(self.dim(), other.dim());
        AffineMap {
            linear: self.linear.compose(&other.linear),
            translation: add(&self.linear.apply(&other.translation), &self.translation),
        }
    }

    pub fn try_compose(&self, other: &AffineMap) -> Result<AffineMap> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> AffineMap {
        let inv = self.linear.inverse();
        AffineMap { linear: inv, translation: neg(&inv.apply(&self.translation)) }
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation == [0; MAX_DIM]
    }

    pub fn is_translation(&self) -> bool {
        self.linear.is_identity()
    }

    /// Text form: `d` rows of the linear part, then the translation row.
    pub fn to_text(&self) -> String {
        let d = self.dim();
        let m = self.linear.matrix();
        let mut out = String::new();
        for row in m.iter().take(d) {
            let cells: Vec<String> = row[..d].iter().map(|x| alloc::format!("{x}")).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        let cells: Vec<String> = self.translation[..d].iter().map(|x| alloc::format!("{x}")).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
        out
    }

    pub fn parse(text: &str) -> Result<AffineMap> {
        let rows: Vec<Vec<i64>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|x| x.parse::<i64>().map_err(|_| Error::Parse(alloc::format!("bad integer {x:?}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let d = rows.len().saturating_sub(1);
        if !(1..=MAX_DIM).contains(&d) || rows.iter().any(|r| r.len() != d) {
            return Err(Error::Parse("expected d rows of d integers plus a translation row".into()));
        }
        let mut m = [[0i64; MAX_DIM]; MAX_DIM];
        for i in 0..d {
            m[i][..d].copy_from_slice(&rows[i]);
        }
        let linear = SignedPerm::from_matrix(d, &m)?;
        Ok(AffineMap { linear, translation: vector(&rows[d]) })
    }
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ['x', 'y', 'z', 'w'];
        let d = self.dim();
        f.write_str("(")?;
        for i in 0..d {
            if i > 0 {
                f.write_str(", ")?;
            }
            let t = self.translation[i];
            let mut wrote = false;
            if t != 0 {
                write!(f, "{t}")?;
                wrote = true;
            }
            for j in 0..d {
                match self.linear.entry(i, j) {
                    1 => write!(f, "{}{}", if wrote { "+" } else { "" }, names[j])?,
                    -1 => write!(f, "-{}", names[j])?,
                    _ => {}
                }
            }
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_map(d: usize) -> impl Strategy<Value = AffineMap> {
        (0..super::super::hyperoctahedral_order(d), proptest::collection::vec(-5i64..5, d)).prop_map(
            move |(code, t)| AffineMap::new(SignedPerm::from_code(d, code), vector(&t)),
        )
    }

    #[test]
    fn one_dimensional_conjugation() {
        let a = AffineMap::translation(1, vector(&[1]));
        let b = AffineMap::linear(SignedPerm::new(1, &[(0, -1)]).unwrap());
        assert_eq!(b.compose(&a).compose(&b), AffineMap::translation(1, vector(&[-1])));
        assert_eq!(AffineMap::identity(1).compose(&a), a);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = AffineMap::identity(2);
        let b = AffineMap::identity(3);
        assert!(a.try_compose(&b).is_err());
    }

    #[test]
    fn text_format() {
        let m = AffineMap::new(SignedPerm::new(2, &[(1, 1), (0, 1)]).unwrap(), vector(&[0, 1]));
        assert_eq!(m.to_text(), "0 1\n1 0\n0 1\n");
        assert_eq!(AffineMap::parse(&m.to_text()).unwrap(), m);
        assert!(AffineMap::parse("1 1\n0 1\n0 0\n").is_err());
        assert!(AffineMap::parse("1 0\n0 1\n").is_err());
    }

    proptest! {
        #[test]
        fn inverse_of_product(f in arb_map(3), g in arb_map(3), x in proptest::collection::vec(-9i64..9, 3)) {
            let fg = f.compose(&g);
            prop_assert_eq!(fg.inverse(), g.inverse().compose(&f.inverse()));
            prop_assert!(f.compose(&f.inverse()).is_identity());
            let x = vector(&x);
            prop_assert_eq!(fg.apply(&x), f.apply(&g.apply(&x)));
        }
    }
}
