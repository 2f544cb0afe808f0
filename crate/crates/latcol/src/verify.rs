//! Independent re-checking of a catalog file.

use latcol_core::crystgeom::{AffineMap, CrystGroup};
use latcol_core::orbits::{orbit_partition, proposition1_check, same_classes};
use latcol_core::partitions::{
    aut_partition, canonical_certificate, is_proper_colouring, is_superposed, is_swap_symmetric,
    neighbourhood_configurations, neighbourhood_signature, stabilizer_fingerprint, transform_partition,
};

use crate::error::Result;
use crate::schema::{CatalogJson, FingerprintJson, FlagsJson, RecordJson};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub record: usize,
    pub certificate: String,
    pub check: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub records_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn failed_checks(&self) -> Vec<&'static str> {
        let mut v: Vec<_> = self.mismatches.iter().map(|m| m.check).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

struct Checker<'a> {
    record: usize,
    certificate: &'a str,
    out: &'a mut Vec<Mismatch>,
}

impl Checker<'_> {
    fn expect(&mut self, ok: bool, check: &'static str, detail: impl FnOnce() -> String) -> bool {
        if !ok {
            self.out.push(Mismatch {
                record: self.record,
                certificate: self.certificate.to_string(),
                check,
                detail: detail(),
            });
        }
        ok
    }
}

/// Re-derives every record from its generators: the partition, certificate,
/// `Aut(Π)` as a fixed point of the colour-fixing construction, the
/// stabilizer-sum identity, the index decomposition, flags, neighbourhoods
/// and stabilizer fingerprints. Structural problems (unparseable groups)
/// are reported as mismatches too.
pub fn verify_catalog(c: &CatalogJson) -> VerifyReport {
    let mut out = Vec::new();
    for (k, w) in c.records.windows(2).enumerate() {
        if w[0].certificate >= w[1].certificate {
            out.push(Mismatch {
                record: k + 1,
                certificate: w[1].certificate.clone(),
                check: "order",
                detail: "records are not strictly sorted by certificate".into(),
            });
        }
    }
    for (k, r) in c.records.iter().enumerate() {
        let mut ck = Checker { record: k, certificate: &r.certificate, out: &mut out };
        if let Err(e) = verify_record(c, r, &mut ck) {
            ck.expect(false, "schema", || e.to_string());
        }
    }
    VerifyReport { records_checked: c.records.len(), mismatches: out }
}

fn verify_record(c: &CatalogJson, r: &RecordJson, ck: &mut Checker<'_>) -> Result<()> {
    let d = c.dimension;
    let (h, h_lattice) = r.generating_subgroup.to_group(d)?;
    ck.expect(*h.lattice() == h_lattice, "generating-lattice", || "generators span a different lattice".into());
    let p = orbit_partition(&h);
    let stored = r.partition.to_partition(d)?;
    ck.expect(same_classes(&p, &stored), "partition", || "stored colours differ from the orbits of the generators".into());
    ck.expect(p.orbit_count() == c.orbit_count, "orbit-count", || {
        format!("{} orbits, catalog says {}", p.orbit_count(), c.orbit_count)
    });
    let cert = r.certificate()?;
    ck.expect(canonical_certificate(&stored) == cert, "certificate", || "stored partition has another certificate".into());
    ck.expect(canonical_certificate(&p) == cert, "certificate", || "generated partition has another certificate".into());
    let witness = AffineMap::parse(&r.witness)?;
    let canonical = cert.decode()?;
    ck.expect(same_classes(&canonical, &transform_partition(&p, &witness)), "witness", || {
        "witness does not map the partition to the canonical one".into()
    });

    let (aut, aut_lattice) = r.aut.to_group(d)?;
    ck.expect(*aut.lattice() == aut_lattice, "aut-lattice", || "Aut generators span a different lattice".into());
    let included = ck.expect(h.is_subgroup_of(&aut), "inclusion", || "generating subgroup is not contained in Aut".into());
    if ck.expect(same_classes(&orbit_partition(&aut), &p), "aut-classes", || "Aut orbits differ from the colour classes".into()) {
        let fixed = aut_partition(&aut, &p)?;
        ck.expect(fixed == aut, "fixed-point", || {
            format!("colour-fixing group of the partition has index {}, stored Aut has {}", fixed.index(), aut.index())
        });
    }
    ck.expect(aut.index_decomposition() == (r.i_t, r.i_k), "index", || {
        format!("Aut has i_t*i_k = {:?}, stored {}*{}", aut.index_decomposition(), r.i_t, r.i_k)
    });
    let full = CrystGroup::full(d);
    let rep = proposition1_check(&full, &aut)?;
    ck.expect(rep.holds() && rep.index == r.i_t * r.i_k, "proposition1", || {
        format!("stabilizer sums {:?} against index {}", rep.sums, r.i_t * r.i_k)
    });
    if included {
        let rep_h = proposition1_check(&aut, &h)?;
        ck.expect(rep_h.holds(), "proposition1", || format!("H in Aut: sums {:?} against index {}", rep_h.sums, rep_h.index));
    }

    let flags = FlagsJson {
        proper_colouring: is_proper_colouring(&p),
        swap_symmetric: is_swap_symmetric(&p),
        superposed: is_superposed(&p),
    };
    ck.expect(flags == r.flags, "flags", || format!("recomputed {flags:?}"));
    ck.expect(
        neighbourhood_signature(&p, 1).counts == r.signatures.radius1
            && neighbourhood_signature(&p, 2).counts == r.signatures.radius2,
        "signatures",
        || "neighbour counts differ".into(),
    );
    ck.expect(
        neighbourhood_configurations(&p, 1) == r.configurations.radius1
            && neighbourhood_configurations(&p, 2) == r.configurations.radius2,
        "configurations",
        || "neighbourhood configurations differ".into(),
    );
    let stabs: Vec<FingerprintJson> =
        p.representatives().iter().map(|x| FingerprintJson::from(&stabilizer_fingerprint(&aut, x))).collect();
    ck.expect(stabs == r.stabilizers, "stabilizers", || "stabilizer fingerprints differ".into());
    Ok(())
}
