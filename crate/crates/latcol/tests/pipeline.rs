use std::io::Write;

use latcol::{
    enumerate_node_transitive, enumerate_partitions, report_tables, two_step_enumerate, verify_catalog, CatalogJson,
    RunConfig, SubgroupStep, TwoStepConfig,
};
use latcol_core::crystgeom::{vector, CrystGroup, IntegerLattice};
use latcol::schema::GroupJson;

fn certificates(c: &CatalogJson) -> Vec<String> {
    c.records.iter().map(|r| r.certificate.clone()).collect()
}

fn square_catalog() -> CatalogJson {
    enumerate_partitions(&RunConfig::new(2, 2)).unwrap().to_json()
}

#[test]
fn two_step_agrees_with_direct_enumeration() {
    for d in 1..=2 {
        let direct = enumerate_partitions(&RunConfig::new(d, 2)).unwrap().to_json();
        for step in [SubgroupStep::Maximal, SubgroupStep::LowIndex] {
            let cfg = TwoStepConfig { dim: d, jobs: 2, node_budget: u64::MAX, checkpoint: None, step };
            let two = two_step_enumerate(&cfg).unwrap().to_json();
            assert_eq!(certificates(&two), certificates(&direct), "d={d} {step:?}");
            for (a, b) in two.records.iter().zip(&direct.records) {
                let orders = |r: &latcol::schema::RecordJson| {
                    let mut o: Vec<usize> = r.stabilizers.iter().map(|f| f.order).collect();
                    o.sort();
                    o
                };
                assert_eq!((a.i_t, a.i_k, a.flags, orders(a)), (b.i_t, b.i_k, b.flags, orders(b)));
            }
            assert!(verify_catalog(&two).passed());
        }
    }
}

#[test]
fn checkpoint_resumes_to_the_same_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.jsonl");
    let cfg = TwoStepConfig { dim: 2, jobs: 1, node_budget: u64::MAX, checkpoint: Some(path.clone()), step: SubgroupStep::Maximal };
    let first = two_step_enumerate(&cfg).unwrap().to_json().to_string_pretty();

    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 36);
    // keep the census and half of the transitive groups
    let mut f = std::fs::File::create(&path).unwrap();
    for l in &lines[..19] {
        writeln!(f, "{l}").unwrap();
    }
    drop(f);
    let resumed = two_step_enumerate(&cfg).unwrap().to_json().to_string_pretty();
    assert_eq!(resumed, first);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 1 + 36);
    let again = two_step_enumerate(&cfg).unwrap().to_json().to_string_pretty();
    assert_eq!(again, first);
}

#[test]
fn checkpoint_of_another_dimension_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.jsonl");
    let mut cfg = TwoStepConfig { dim: 1, jobs: 1, node_budget: u64::MAX, checkpoint: Some(path), step: SubgroupStep::Maximal };
    two_step_enumerate(&cfg).unwrap();
    cfg.dim = 2;
    assert!(two_step_enumerate(&cfg).is_err());
}

#[test]
fn worker_count_does_not_change_the_catalog() {
    let one = enumerate_partitions(&RunConfig { jobs: 1, ..RunConfig::new(2, 3) }).unwrap().to_json();
    let four = enumerate_partitions(&RunConfig { jobs: 4, ..RunConfig::new(2, 3) }).unwrap().to_json();
    assert_eq!(one.to_string_pretty(), four.to_string_pretty());
    assert_eq!(one.records.len(), 22);
}

#[test]
fn censuses_of_low_dimensions() {
    assert_eq!(enumerate_node_transitive(1, 1, u64::MAX).unwrap().len(), 3);
    assert_eq!(enumerate_node_transitive(2, 1, u64::MAX).unwrap().len(), 36);
}

#[test]
fn catalog_roundtrips_and_verifies() {
    let c = square_catalog();
    let text = c.to_string_pretty();
    let back = CatalogJson::parse(&text).unwrap();
    assert_eq!(back.to_string_pretty(), text);
    let report = verify_catalog(&back);
    assert_eq!(report.records_checked, 9);
    assert!(report.passed(), "{:?}", report.mismatches);
    let swap = back.records.iter().filter(|r| r.flags.swap_symmetric).count();
    assert_eq!(swap, 6);
}

#[test]
fn flipped_colour_is_detected() {
    let mut c = square_catalog();
    let r = &mut c.records[3];
    r.partition.colors[0] ^= 1;
    let report = verify_catalog(&c);
    assert!(!report.passed());
    let failed = report.failed_checks();
    assert!(failed.contains(&"partition"), "{failed:?}");
    assert!(failed.contains(&"certificate"), "{failed:?}");
}

#[test]
fn too_small_aut_is_detected() {
    let mut c = square_catalog();
    let k = c.records.iter().position(|r| r.flags.proper_colouring).expect("chessboard is listed");
    // the checkerboard translations induce the same two classes but are not
    // the whole colour-fixing group
    let even = IntegerLattice::hnf(2, &[vector(&[1, 1]), vector(&[0, 2])]).unwrap();
    let stored = c.records[k].partition.to_partition(2).unwrap();
    assert!(latcol_core::orbits::same_classes(
        &latcol_core::orbits::orbit_partition(&CrystGroup::translations(even)),
        &stored
    ));
    c.records[k].aut = GroupJson::from_group(&CrystGroup::translations(even));
    let failed = verify_catalog(&c).failed_checks();
    assert!(failed.contains(&"fixed-point"), "{failed:?}");
}

#[test]
fn unsorted_records_are_detected() {
    let mut c = square_catalog();
    c.records.swap(0, 1);
    assert!(verify_catalog(&c).failed_checks().contains(&"order"));
}

#[test]
fn report_of_empty_catalog_is_header_only() {
    let mut c = square_catalog();
    c.records.clear();
    let text = report_tables(&c);
    assert_eq!(text.lines().count(), 2);
    assert!(text.starts_with("d = 2, n = 2, 0 classes"));
}

#[test]
fn report_lists_every_record() {
    let c = square_catalog();
    let text = report_tables(&c);
    assert_eq!(text.lines().count(), 2 + 9 + 1);
    assert!(text.lines().last().unwrap().contains("swap-symmetric: 6"));
}
