//! Orbits of every subgroup of index at most 8 in `Aut(Z^2)`, against a
//! direct orbit closure on the torus `Z^2 / 24 Z^2`.

use std::collections::BTreeMap;

use latcol_core::crystgeom::{vector, IntegerLattice};
use latcol_core::fpgroup::low_index_subgroups;
use latcol_core::orbits::orbit_partition;
use latcol_core::subgroups::AutContext;

const M: i64 = 24;

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

#[test]
fn orbits_match_closure_on_the_24_torus() {
    let ctx = AutContext::new(2).unwrap();
    let big = IntegerLattice::hnf(2, &[vector(&[M, 0]), vector(&[0, M])]).unwrap();
    let subgroups = low_index_subgroups(ctx.presentation(), 8).unwrap();
    assert!(!subgroups.is_empty());
    for r in &subgroups {
        let h = ctx.group_from_table(&r.coset_table).unwrap();
        assert!(h.lattice().contains_lattice(&big), "24 Z^2 lies in every T(H) here");
        let gens = h.generators();
        let size = (M * M) as usize;
        let at = |x: i64, y: i64| (x.rem_euclid(M) * M + y.rem_euclid(M)) as usize;
        let mut parent: Vec<usize> = (0..size).collect();
        for x in 0..M {
            for y in 0..M {
                for g in &gens {
                    let img = g.apply(&vector(&[x, y]));
                    let (a, b) = (find(&mut parent, at(x, y)), find(&mut parent, at(img[0], img[1])));
                    parent[a] = b;
                }
            }
        }
        let p = orbit_partition(&h);
        let mut root_colour = BTreeMap::new();
        let mut colour_root = BTreeMap::new();
        for x in 0..M {
            for y in 0..M {
                let root = find(&mut parent, at(x, y));
                let colour = p.color_of(&vector(&[x, y]));
                assert_eq!(*root_colour.entry(root).or_insert(colour), colour);
                assert_eq!(*colour_root.entry(colour).or_insert(root), root);
            }
        }
        assert_eq!(root_colour.len(), p.orbit_count(), "index {}", r.index());
    }
}
