//! Plain-text tables of a catalog.

use std::fmt::Write;

use crate::schema::CatalogJson;

fn flag(b: bool, c: char) -> char {
    if b { c } else { '.' }
}

/// One row per record in certificate order: index decomposition, colour
/// class sizes on the generating torus, flags (`P` proper colouring, `S`
/// colour swap, `U` superposed), stabilizer orders in `Aut(Π)` and the
/// radius-1 neighbour counts.
pub fn report_tables(c: &CatalogJson) -> String {
    let mut s = String::new();
    writeln!(s, "d = {}, n = {}, {} classes", c.dimension, c.orbit_count, c.records.len()).unwrap();
    writeln!(s, "{:>4}  {:<10}  {:>5}  {:>10}  {:<5}  {:<12}  {:<16}  certificate", "no", "i_t*i_k", "index", "sizes", "flags", "stabilizers", "radius-1").unwrap();
    for (k, r) in c.records.iter().enumerate() {
        let sizes: Vec<String> = r.partition.orbit_sizes.iter().map(usize::to_string).collect();
        let stabs: Vec<String> = r.stabilizers.iter().map(|f| f.order.to_string()).collect();
        let r1: Vec<String> =
            r.signatures.radius1.iter().map(|row| row.iter().map(u32::to_string).collect::<Vec<_>>().join(",")).collect();
        let flags: String = [
            flag(r.flags.proper_colouring, 'P'),
            flag(r.flags.swap_symmetric, 'S'),
            flag(r.flags.superposed, 'U'),
        ]
        .iter()
        .collect();
        writeln!(
            s,
            "{:>4}  {:<10}  {:>5}  {:>10}  {:<5}  {:<12}  {:<16}  {}",
            k + 1,
            format!("{}*{}", r.i_t, r.i_k),
            r.i_t * r.i_k,
            sizes.join("+"),
            flags,
            stabs.join(","),
            r1.join(" | "),
            r.certificate
        )
        .unwrap();
    }
    let count = |f: fn(&crate::schema::FlagsJson) -> bool| c.records.iter().filter(|r| f(&r.flags)).count();
    if !c.records.is_empty() {
        writeln!(
            s,
            "proper colourings: {}, swap-symmetric: {}, superposed: {}",
            count(|f| f.proper_colouring),
            count(|f| f.swap_symmetric),
            count(|f| f.superposed)
        )
        .unwrap();
    }
    s
}
