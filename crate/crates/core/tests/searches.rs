use std::collections::BTreeSet;

use latcol_core::crystgeom::{hyperoctahedral_order, CrystGroup};
use latcol_core::fpgroup::low_index_subgroups;
use latcol_core::maximal::{admissible_indices, MaximalSubgroups};
use latcol_core::orbits::{orbit_partition, proposition1_check};
use latcol_core::partitions::canonical_certificate;
use latcol_core::subgroups::AutContext;
use latcol_core::typed_search::TypedSearch;

#[test]
fn node_transitive_censuses() {
    for (d, expected) in [(1, 3), (2, 36), (3, 786)] {
        let ctx = AutContext::new(d).unwrap();
        let search = TypedSearch::new(&ctx, u64::MAX).unwrap();
        let mut forms = BTreeSet::new();
        search
            .for_each(1, |_, t| {
                assert_eq!(orbit_partition(&ctx.group_from_table(&t).unwrap()).orbit_count(), 1);
                forms.insert(t.canonical_form());
            })
            .unwrap();
        assert_eq!(forms.len(), expected, "d={d}");
    }
}

#[test]
fn line_census_is_the_three_listed_groups() {
    let ctx = AutContext::new(1).unwrap();
    let mut found = Vec::new();
    TypedSearch::new(&ctx, u64::MAX).unwrap().for_each(1, |_, t| found.push(ctx.group_from_table(&t).unwrap())).unwrap();
    found.sort_by_key(|g| g.index());
    let indices: Vec<usize> = found.iter().map(|g| g.index()).collect();
    assert_eq!(indices, vec![1, 2, 2]);
    assert_eq!(found[0], CrystGroup::full(1));
    let pure = found.iter().filter(|g| g.point_group_order() == 1).count();
    assert_eq!(pure, 1);
}

#[test]
fn proposition1_holds_on_small_subgroups() {
    for (d, max) in [(1, 8), (2, 16)] {
        let ctx = AutContext::new(d).unwrap();
        let full = CrystGroup::full(d);
        for r in low_index_subgroups(ctx.presentation(), max).unwrap() {
            let h = ctx.group_from_table(&r.coset_table).unwrap();
            let report = proposition1_check(&full, &h).unwrap();
            assert!(report.holds(), "d={d} index {}", r.index());
            assert_eq!(report.index, r.index());
        }
    }
}

#[test]
fn maximal_two_orbit_subgroups_cover_the_square_lattice() {
    // every two-orbit class of Z^2 comes from a maximal subgroup of a transitive group
    let ctx = AutContext::new(2).unwrap();
    let direct: BTreeSet<_> = low_index_subgroups(ctx.presentation(), 16)
        .unwrap()
        .into_iter()
        .map(|r| orbit_partition(&ctx.group_from_table(&r.coset_table).unwrap()))
        .filter(|p| p.orbit_count() == 2)
        .map(|p| canonical_certificate(&p))
        .collect();
    assert_eq!(direct.len(), 9);
    let maximal = MaximalSubgroups::new(2);
    let mut via = BTreeSet::new();
    TypedSearch::new(&ctx, u64::MAX)
        .unwrap()
        .for_each(1, |_, t| {
            let g = ctx.group_from_table(&t).unwrap();
            let stab = hyperoctahedral_order(2) / g.index();
            for k in maximal.maximal_subgroups(&g, &admissible_indices(stab, 2)).unwrap() {
                assert!(k.is_subgroup_of(&g));
                let p = orbit_partition(&k);
                if p.orbit_count() == 2 {
                    via.insert(canonical_certificate(&p));
                }
            }
        })
        .unwrap();
    assert_eq!(via, direct);
}
