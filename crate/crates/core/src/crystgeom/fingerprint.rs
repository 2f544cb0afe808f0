use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Isomorphism invariants of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupFingerprint {
    pub order: usize,
    /// Abelian invariants of `G / [G, G]` as prime powers, ascending.
    pub abelian_invariants: Vec<usize>,
    /// Element order -> number of elements of that order.
    pub order_histogram: BTreeMap<usize, usize>,
    pub center_order: usize,
}

/// Fingerprint of the finite group formed by `elements` under `mul`.
pub fn group_fingerprint<T, F>(elements: &[T], mul: F) -> Result<GroupFingerprint>
where
    T: Ord + Clone,
    F: Fn(&T, &T) -> T,
{
    let mut sorted: Vec<T> = elements.to_vec();
    sorted.sort();
    sorted.dedup();
    let n = sorted.len();
    if n == 0 {
        return Err(Error::NotClosed);
    }
    let index_of = |x: &T| sorted.binary_search(x).ok();
    let mut table = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = index_of(&mul(&sorted[i], &sorted[j])).ok_or(Error::NotClosed)?;
        }
    }
    let m = |i: usize, j: usize| table[i * n + j];
    let e = (0..n).find(|&i| (0..n).all(|j| m(i, j) == j)).ok_or(Error::NotClosed)?;
    let inv: Vec<usize> = (0..n)
        .map(|i| (0..n).find(|&j| m(i, j) == e).ok_or(Error::NotClosed))
        .collect::<Result<_>>()?;

    let order_of = |i: usize| {
        let (mut x, mut k) = (i, 1);
        while x != e {
            x = m(x, i);
            k += 1;
        }
        k
    };
    let mut order_histogram = BTreeMap::new();
    for i in 0..n {
        *order_histogram.entry(order_of(i)).or_insert(0) += 1;
    }
    let center_order = (0..n).filter(|&i| (0..n).all(|j| m(i, j) == m(j, i))).count();

    // derived subgroup: closure of all commutators
    let mut derived = vec![false; n];
    derived[e] = true;
    let mut members = vec![e];
    let commutators: Vec<usize> = {
        let mut c: Vec<usize> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| m(m(inv[i], inv[j]), m(i, j)))
            .collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    let mut k = 0;
    while k < members.len() {
        let x = members[k];
        k += 1;
        for &c in &commutators {
            let y = m(x, c);
            if !derived[y] {
                derived[y] = true;
                members.push(y);
            }
        }
    }
    // coset label of each element modulo the derived subgroup
    let mut label = vec![usize::MAX; n];
    let mut quotient = Vec::new();
    for i in 0..n {
        if label[i] == usize::MAX {
            let l = quotient.len();
            quotient.push(i);
            for &d in &members {
                label[m(i, d)] = l;
            }
        }
    }
    let q = quotient.len();
    let power_in_derived = |i: usize, p: usize| {
        let mut x = e;
        for _ in 0..p {
            x = m(x, i);
        }
        derived[x]
    };
    let mut abelian_invariants = Vec::new();
    let mut rest = q;
    let mut p = 2;
    while rest > 1 {
        if rest % p == 0 {
            let mut pk = 1;
            let mut counts = vec![0u32];
            while rest % p == 0 {
                rest /= p;
                pk *= p;
                let killed = quotient.iter().filter(|&&i| power_in_derived(i, pk)).count();
                counts.push(killed.ilog(p));
            }
            // cyclic factors of order >= p^k number counts[k] - counts[k-1]
            let ge: Vec<u32> = counts.windows(2).map(|w| w[1] - w[0]).collect();
            for k in 0..ge.len() {
                let exactly = ge[k] - ge.get(k + 1).copied().unwrap_or(0);
                for _ in 0..exactly {
                    abelian_invariants.push(p.pow(k as u32 + 1));
                }
            }
        }
        p += 1;
    }
    abelian_invariants.sort_unstable();
    Ok(GroupFingerprint { order: n, abelian_invariants, order_histogram, center_order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystgeom::{hyperoctahedral_group, SignedPerm};

    fn fp(d: usize) -> GroupFingerprint {
        group_fingerprint(&hyperoctahedral_group(d), |a: &SignedPerm, b| a.compose(b)).unwrap()
    }

    #[test]
    fn trivial_group() {
        let f = group_fingerprint(&[0u8], |_, _| 0).unwrap();
        assert_eq!(f.order, 1);
        assert!(f.abelian_invariants.is_empty());
        assert_eq!(f.center_order, 1);
    }

    #[test]
    fn dihedral_of_order_eight() {
        let f = fp(2);
        assert_eq!(f.order, 8);
        assert_eq!(f.order_histogram, BTreeMap::from([(1, 1), (2, 5), (4, 2)]));
        assert_eq!(f.center_order, 2);
        assert_eq!(f.abelian_invariants, vec![2, 2]);
    }

    #[test]
    fn cube_group() {
        let f = fp(3);
        assert_eq!(f.order, 48);
        assert_eq!(f.center_order, 2);
        // O_h = S4 x C2 has abelianization C2 x C2
        assert_eq!(f.abelian_invariants, vec![2, 2]);
        assert_eq!(f.order_histogram.values().sum::<usize>(), 48);
    }

    #[test]
    fn cyclic_groups() {
        let f = group_fingerprint(&(0..12u32).collect::<Vec<_>>(), |a, b| (a + b) % 12).unwrap();
        assert_eq!(f.abelian_invariants, vec![3, 4]);
        assert_eq!(f.center_order, 12);
        let g = group_fingerprint(&(0..8u32).collect::<Vec<_>>(), |a, b| a ^ b).unwrap();
        assert_eq!(g.abelian_invariants, vec![2, 2, 2]);
    }

    #[test]
    fn not_closed_is_reported() {
        assert_eq!(group_fingerprint(&[0u32, 1], |a, b| a + b), Err(Error::NotClosed));
    }
}
