//! HLT coset enumeration with lookahead and full coincidence processing.

use alloc::vec;
use alloc::vec::Vec;

use super::coset::{Columns, CosetTable, UNDEF};
use super::presentation::Presentation;
use super::word::Word;
use crate::{Error, Result};

struct Full;

struct Enumerator {
    cols: Columns,
    width: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    allocated: usize,
    max: usize,
    relators: Vec<Vec<usize>>,
    queue: Vec<u32>,
}

impl Enumerator {
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.width + col]
    }

    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.width + col] = v;
    }

    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, col: usize) -> Result<u32, Full> {
        if self.allocated == self.max {
            return Err(Full);
        }
        let n = self.allocated as u32;
        self.allocated += 1;
        self.table.resize(self.allocated * self.width, UNDEF);
        self.parent.push(n);
        self.set(c, col, n);
        self.set(n, self.cols.inv(col), c);
        Ok(n)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != root {
            let next = self.parent[c as usize];
            self.parent[c as usize] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let ra = self.rep(a);
        let rb = self.rep(b);
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.width {
                let d = self.get(dead, col);
                if d == UNDEF {
                    continue;
                }
                let icol = self.cols.inv(col);
                self.set(d, icol, UNDEF);
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mu_x = self.get(mu, col);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x);
                } else {
                    let nu_y = self.get(nu, icol);
                    if nu_y != UNDEF {
                        self.merge(mu, nu_y);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, icol, mu);
                    }
                }
            }
        }
    }

    /// Scans `word` at coset `start`, defining new cosets when `fill` is set.
    fn scan(&mut self, start: u32, word: &[usize], fill: bool) -> Result<(), Full> {
        let len = word.len();
        let mut f = start;
        let mut i = 0;
        let mut b = start;
        let mut j = len;
        loop {
            while i < len {
                let next = self.get(f, word[i]);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == len {
                if f != start {
                    self.coincidence(f, start);
                }
                return Ok(());
            }
            while j > i {
                let next = self.get(b, self.cols.inv(word[j - 1]));
                if next == UNDEF {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, word[i], b);
                self.set(b, self.cols.inv(word[i]), f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    fn live_count(&self) -> usize {
        (0..self.allocated as u32).filter(|&c| self.live(c)).count()
    }

    /// Applies all relators at all live cosets without defining anything,
    /// then compacts the table. Returns the remapped position of `cursor`.
    fn lookahead(&mut self, cursor: usize) -> usize {
        let relators = core::mem::take(&mut self.relators);
        for c in 0..self.allocated as u32 {
            for r in &relators {
                if !self.live(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
        }
        self.relators = relators;
        self.compact(cursor)
    }

    fn compact(&mut self, cursor: usize) -> usize {
        let mut map = vec![UNDEF; self.allocated];
        let mut next = 0u32;
        let mut new_cursor = None;
        for c in 0..self.allocated {
            if c >= cursor && new_cursor.is_none() {
                new_cursor = Some(next as usize);
            }
            if self.parent[c] == c as u32 {
                map[c] = next;
                next += 1;
            }
        }
        let mut table = vec![UNDEF; next as usize * self.width];
        for c in 0..self.allocated {
            if map[c] == UNDEF {
                continue;
            }
            for col in 0..self.width {
                let v = self.table[c * self.width + col];
                if v != UNDEF {
                    table[map[c] as usize * self.width + col] = map[v as usize];
                }
            }
        }
        self.table = table;
        self.allocated = next as usize;
        self.parent = (0..next).collect();
        new_cursor.unwrap_or(next as usize)
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the group
/// given by `pres`, using at most `max_cosets` table rows.
///
/// The result is closed and renumbered in breadth-first order from the
/// subgroup coset. Fails with [`Error::EnumerationOverflow`] if the table does
/// not close within the limit.
pub fn coset_enumerate(pres: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::EnumerationOverflow { limit: 0 });
    }
    let cols = Columns::new(pres);
    let width = cols.count();
    let relators: Vec<Vec<usize>> = pres.relators().iter().map(|r| cols.word_columns(r)).collect();
    let subgens: Vec<Vec<usize>> = subgroup.iter().map(|w| cols.word_columns(w)).collect();
    let mut e = Enumerator {
        cols,
        width,
        table: vec![UNDEF; width],
        parent: vec![0],
        allocated: 1,
        max: max_cosets,
        relators,
        queue: Vec::new(),
    };
    let overflow = Error::EnumerationOverflow { limit: max_cosets };

    let mut k = 0;
    while k < subgens.len() {
        let w = subgens[k].clone();
        match e.scan(0, &w, true) {
            Ok(()) => k += 1,
            Err(Full) => {
                let before = e.allocated;
                e.lookahead(0);
                if e.allocated == before {
                    return Err(overflow);
                }
            }
        }
    }

    let mut cursor = 0usize;
    while cursor < e.allocated {
        let c = cursor as u32;
        if !e.live(c) {
            cursor += 1;
            continue;
        }
        let mut full = false;
        let relators = core::mem::take(&mut e.relators);
        for r in &relators {
            if !e.live(c) {
                break;
            }
            if e.scan(c, r, true).is_err() {
                full = true;
                break;
            }
        }
        e.relators = relators;
        if !full && e.live(c) {
            for col in 0..width {
                if e.get(c, col) == UNDEF && e.define(c, col).is_err() {
                    full = true;
                    break;
                }
            }
        }
        if full {
            let before = e.allocated;
            cursor = e.lookahead(cursor);
            if e.allocated == before {
                return Err(overflow);
            }
            continue;
        }
        cursor += 1;
    }

    // the final lookahead pass also settles pending deductions
    e.compact(0);
    debug_assert_eq!(e.live_count(), e.allocated);
    let index = e.allocated;
    let mut action = vec![vec![0u32; index]; pres.generator_count()];
    for col in 0..width {
        let l = e.cols.letter(col);
        if l.is_inverse() {
            continue;
        }
        for c in 0..index {
            let v = e.get(c as u32, col);
            if v == UNDEF {
                return Err(overflow);
            }
            action[l.generator()][c] = v;
        }
    }
    let table = CosetTable::new(pres, action, Some(subgroup.to_vec()))?;
    Ok(table.standardize())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(pres: &Presentation, ws: &[&str]) -> Vec<Word> {
        ws.iter().map(|w| Word::parse(w, pres.names()).unwrap()).collect()
    }

    #[test]
    fn infinite_dihedral_index_two() {
        let p = Presentation::for_dimension(1).unwrap();
        let t = coset_enumerate(&p, &words(&p, &["a^2", "b"]), 100).unwrap();
        assert_eq!(t.index(), 2);
        assert_eq!(t.action(0), &[1, 0]);
        assert_eq!(t.action(1), &[0, 1]);
        assert!(t.is_closed_for(&p));
    }

    #[test]
    fn whole_group_has_index_one() {
        for d in 1..=4 {
            let p = Presentation::for_dimension(d).unwrap();
            let all: Vec<Word> = (0..p.generator_count()).map(Word::generator).collect();
            assert_eq!(coset_enumerate(&p, &all, 10).unwrap().index(), 1);
        }
    }

    #[test]
    fn trivial_subgroup_of_infinite_group_overflows() {
        let p = Presentation::for_dimension(2).unwrap();
        assert_eq!(coset_enumerate(&p, &[], 1000), Err(Error::EnumerationOverflow { limit: 1000 }));
        assert!(coset_enumerate(&p, &[], 0).is_err());
    }

    #[test]
    fn finite_groups() {
        // S_3 and the symmetric group S_4 as Coxeter groups
        let s3 = Presentation::parse("a^2\nb^2\n(ab)^3").unwrap();
        assert_eq!(coset_enumerate(&s3, &[], 100).unwrap().index(), 6);
        let s4 = Presentation::parse("a^2\nb^2\nc^2\n(ab)^3\n(bc)^3\n(ac)^2").unwrap();
        let t = coset_enumerate(&s4, &[], 200).unwrap();
        assert_eq!(t.index(), 24);
        assert!(t.is_closed_for(&s4));
        assert_eq!(coset_enumerate(&s4, &words(&s4, &["a", "b"]), 200).unwrap().index(), 4);
        // the hyperoctahedral group of order 48 inside Aut(Z^3): the stabilizer
        // of the origin drops the translating reflection b
        let p3 = Presentation::for_dimension(3).unwrap();
        let t = coset_enumerate(&p3, &words(&p3, &["a", "c", "d"]), 10_000);
        assert!(t.is_err());
    }

    #[test]
    fn needs_coincidences() {
        // <a, b | a^3, b^3, (ab)^2> is A_4; the subgroup <ab> has index 6
        let p = Presentation::parse("a^3\nb^3\n(ab)^2").unwrap();
        let t = coset_enumerate(&p, &words(&p, &["ab"]), 100).unwrap();
        assert_eq!(t.index(), 6);
        assert!(t.is_closed_for(&p));
        // small limits force lookahead and may still succeed or overflow, never truncate
        match coset_enumerate(&p, &[], 12) {
            Ok(t) => assert_eq!(t.index(), 12),
            Err(e) => assert_eq!(e, Error::EnumerationOverflow { limit: 12 }),
        }
    }
}
