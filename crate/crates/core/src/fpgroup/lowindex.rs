//! Low-index subgroups by backtracking over partial coset tables.
//!
//! Entries are defined in row-major order; every definition is followed by
//! relator scanning to force deductions, and a partial table is discarded as
//! soon as re-basing it at another coset yields a smaller standard table. The
//! survivors at completion are exactly the minimal standard tables, one per
//! conjugacy class of subgroups.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use super::coset::{encode_entries, Columns, CosetTable, UNDEF};
use super::presentation::Presentation;
use crate::{Error, Result};

/// One conjugacy class of subgroups, represented by its minimal standard table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupRecord {
    pub coset_table: CosetTable,
    pub canonical_table_form: Vec<u8>,
}

impl SubgroupRecord {
    pub fn index(&self) -> usize {
        self.coset_table.index()
    }
}

impl PartialOrd for SubgroupRecord {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubgroupRecord {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.index(), &self.canonical_table_form).cmp(&(other.index(), &other.canonical_table_form))
    }
}

/// A snapshot of the search tree used to split work between threads.
#[derive(Clone, Debug)]
pub struct SearchSeed {
    table: Vec<u32>,
    cosets: usize,
}

/// Reusable search context for one presentation and index bound.
pub struct LowIndexSearch<'a> {
    pres: &'a Presentation,
    cols: Columns,
    width: usize,
    max_index: usize,
    /// For each column, the cyclic conjugates of relators and their inverses
    /// starting with that column.
    rotations: Vec<Vec<Vec<usize>>>,
    budget: u64,
    spent: AtomicU64,
}

struct State {
    table: Vec<u32>,
    cosets: usize,
    trail: Vec<u32>,
    pending: Vec<(u32, usize)>,
    remap: Vec<u32>,
    order: Vec<u32>,
    nodes: u64,
}

const BUDGET_FLUSH: u64 = 4096;

impl<'a> LowIndexSearch<'a> {
    pub fn new(pres: &'a Presentation, max_index: usize, budget: u64) -> Self {
        let cols = Columns::new(pres);
        let width = cols.count();
        let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); width];
        for r in pres.relators() {
            for w in [r.clone(), r.inverse()] {
                let c = cols.word_columns(&w);
                for k in 0..c.len() {
                    let mut rot = Vec::with_capacity(c.len());
                    rot.extend_from_slice(&c[k..]);
                    rot.extend_from_slice(&c[..k]);
                    sets[rot[0]].insert(rot);
                }
            }
        }
        let rotations = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        LowIndexSearch {
            pres,
            cols,
            width,
            max_index,
            rotations,
            budget,
            spent: AtomicU64::new(0),
        }
    }

    pub fn nodes_spent(&self) -> u64 {
        self.spent.load(Ordering::Relaxed)
    }

    fn fresh_state(&self, table: Vec<u32>, cosets: usize) -> State {
        State {
            table,
            cosets,
            trail: Vec::new(),
            pending: Vec::new(),
            remap: vec![UNDEF; self.max_index],
            order: vec![0; self.max_index],
            nodes: 0,
        }
    }

    fn root(&self) -> Option<State> {
        if self.max_index == 0 {
            return None;
        }
        Some(self.fresh_state(vec![UNDEF; self.max_index * self.width], 1))
    }

    fn charge(&self, st: &mut State) -> Result<()> {
        st.nodes += 1;
        if st.nodes >= BUDGET_FLUSH {
            let total = self.spent.fetch_add(st.nodes, Ordering::Relaxed) + st.nodes;
            st.nodes = 0;
            if total > self.budget {
                return Err(Error::NodeBudgetExceeded { budget: self.budget });
            }
        }
        Ok(())
    }

    fn flush(&self, st: &mut State) -> Result<()> {
        let total = self.spent.fetch_add(st.nodes, Ordering::Relaxed) + st.nodes;
        st.nodes = 0;
        if total > self.budget {
            return Err(Error::NodeBudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    fn set(&self, st: &mut State, c: u32, col: usize, v: u32) {
        let pos = c as usize * self.width + col;
        st.table[pos] = v;
        st.trail.push(pos as u32);
        st.pending.push((c, col));
    }

    fn undo(&self, st: &mut State, mark: usize) {
        while st.trail.len() > mark {
            let pos = st.trail.pop().unwrap();
            st.table[pos as usize] = UNDEF;
        }
    }

    /// Defines `c^col = d` (and the inverse entry) and propagates deductions.
    /// Returns false on a contradiction.
    fn assign(&self, st: &mut State, c: u32, col: usize, d: u32) -> bool {
        st.pending.clear();
        self.set(st, c, col, d);
        let icol = self.cols.inv(col);
        if !(d == c && icol == col) {
            self.set(st, d, icol, c);
        }
        while let Some((c, col)) = st.pending.pop() {
            for rel in &self.rotations[col] {
                if !self.scan(st, c, rel) {
                    return false;
                }
            }
        }
        true
    }

    fn scan(&self, st: &mut State, start: u32, rel: &[usize]) -> bool {
        let w = self.width;
        let len = rel.len();
        let mut f = start;
        let mut i = 0;
        while i < len {
            let next = st.table[f as usize * w + rel[i]];
            if next == UNDEF {
                break;
            }
            f = next;
            i += 1;
        }
        if i == len {
            return f == start;
        }
        let mut b = start;
        let mut j = len;
        while j > i {
            let next = st.table[b as usize * w + self.cols.inv(rel[j - 1])];
            if next == UNDEF {
                break;
            }
            b = next;
            j -= 1;
        }
        if j == i {
            return false;
        }
        if j == i + 1 {
            let col = rel[i];
            let icol = self.cols.inv(col);
            // the backward entry is undefined, otherwise the scan would have continued
            if st.table[b as usize * w + icol] != UNDEF {
                return false;
            }
            self.set(st, f, col, b);
            if !(f == b && icol == col) {
                self.set(st, b, icol, f);
            }
        }
        true
    }

    /// False if re-basing the partial table at some other coset provably
    /// gives a lexicographically smaller standard table.
    fn is_minimal(&self, st: &mut State) -> bool {
        let n = st.cosets;
        let w = self.width;
        'base: for alpha in 1..n as u32 {
            for x in st.remap[..n].iter_mut() {
                *x = UNDEF;
            }
            st.remap[alpha as usize] = 0;
            st.order[0] = alpha;
            let mut next = 1u32;
            for row in 0..n {
                if row as u32 >= next {
                    continue 'base;
                }
                let old = st.order[row] as usize;
                for col in 0..w {
                    let a = st.table[old * w + col];
                    if a == UNDEF {
                        continue 'base;
                    }
                    let mut mapped = st.remap[a as usize];
                    if mapped == UNDEF {
                        mapped = next;
                        st.remap[a as usize] = next;
                        st.order[next as usize] = a;
                        next += 1;
                    }
                    let cur = st.table[row * w + col];
                    if cur == UNDEF {
                        continue 'base;
                    }
                    if mapped < cur {
                        return false;
                    }
                    if mapped > cur {
                        continue 'base;
                    }
                }
            }
        }
        true
    }

    fn first_undefined(&self, st: &State, from: usize) -> Option<usize> {
        let end = st.cosets * self.width;
        (from..end).find(|&p| st.table[p] == UNDEF)
    }

    fn emit(&self, st: &State) -> SubgroupRecord {
        let n = st.cosets;
        let mut action = vec![vec![0u32; n]; self.pres.generator_count()];
        for col in 0..self.width {
            let l = self.cols.letter(col);
            if l.is_inverse() {
                continue;
            }
            for c in 0..n {
                action[l.generator()][c] = st.table[c * self.width + col];
            }
        }
        let entries = &st.table[..n * self.width];
        let canonical_table_form = encode_entries(n, entries);
        let coset_table = CosetTable::new(self.pres, action, None).expect("complete table");
        SubgroupRecord { coset_table, canonical_table_form }
    }

    /// Candidate images for the undefined entry at `pos`.
    fn candidates(&self, st: &State, pos: usize) -> Vec<u32> {
        let c = (pos / self.width) as u32;
        let col = pos % self.width;
        let icol = self.cols.inv(col);
        let mut out: Vec<u32> = (0..st.cosets as u32)
            .filter(|&d| st.table[d as usize * self.width + icol] == UNDEF || (d == c && icol == col))
            .filter(|&d| !(d == c && icol != col && st.table[c as usize * self.width + icol] != UNDEF))
            .collect();
        if st.cosets < self.max_index {
            out.push(st.cosets as u32);
        }
        out
    }

    fn search<F: FnMut(SubgroupRecord)>(&self, st: &mut State, from: usize, emit: &mut F) -> Result<()> {
        self.charge(st)?;
        let Some(pos) = self.first_undefined(st, from) else {
            emit(self.emit(st));
            return Ok(());
        };
        let c = (pos / self.width) as u32;
        let col = pos % self.width;
        for d in self.candidates(st, pos) {
            let mark = st.trail.len();
            let saved = st.cosets;
            if d as usize == st.cosets {
                st.cosets += 1;
            }
            if self.assign(st, c, col, d) && self.is_minimal(st) {
                self.search(st, pos + 1, emit)?;
            }
            self.undo(st, mark);
            st.cosets = saved;
        }
        Ok(())
    }

    /// Runs the whole search sequentially, streaming each class to `emit` in
    /// search order.
    pub fn for_each<F: FnMut(SubgroupRecord)>(&self, mut emit: F) -> Result<()> {
        let Some(mut st) = self.root() else { return Ok(()) };
        self.search(&mut st, 0, &mut emit)?;
        self.flush(&mut st)
    }

    /// Expands the search tree breadth-first until at least `target` open
    /// nodes exist (or the tree is exhausted). Complete tables met on the way
    /// are passed to `emit`; the open nodes are returned for [`Self::explore`].
    pub fn split<F: FnMut(SubgroupRecord)>(&self, target: usize, mut emit: F) -> Result<Vec<SearchSeed>> {
        let Some(st) = self.root() else { return Ok(Vec::new()) };
        let mut frontier = vec![SearchSeed { table: st.table, cosets: st.cosets }];
        while !frontier.is_empty() && frontier.len() < target {
            let mut next = Vec::new();
            for seed in frontier {
                let mut st = self.fresh_state(seed.table, seed.cosets);
                self.charge(&mut st)?;
                let Some(pos) = self.first_undefined(&st, 0) else {
                    emit(self.emit(&st));
                    continue;
                };
                let c = (pos / self.width) as u32;
                let col = pos % self.width;
                for d in self.candidates(&st, pos) {
                    let mark = st.trail.len();
                    let saved = st.cosets;
                    if d as usize == st.cosets {
                        st.cosets += 1;
                    }
                    if self.assign(&mut st, c, col, d) && self.is_minimal(&mut st) {
                        next.push(SearchSeed { table: st.table.clone(), cosets: st.cosets });
                    }
                    self.undo(&mut st, mark);
                    st.cosets = saved;
                }
                self.flush(&mut st)?;
            }
            frontier = next;
        }
        Ok(frontier)
    }

    /// Exhausts the subtree below `seed`.
    pub fn explore<F: FnMut(SubgroupRecord)>(&self, seed: &SearchSeed, mut emit: F) -> Result<()> {
        let mut st = self.fresh_state(seed.table.clone(), seed.cosets);
        self.search(&mut st, 0, &mut emit)?;
        self.flush(&mut st)
    }
}

/// Default node ceiling for [`low_index_subgroups`].
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000_000;

/// One representative per conjugacy class of subgroups of index at most
/// `max_index`, sorted by index and canonical form.
pub fn low_index_subgroups(pres: &Presentation, max_index: usize) -> Result<Vec<SubgroupRecord>> {
    low_index_subgroups_with_budget(pres, max_index, DEFAULT_NODE_BUDGET)
}

pub fn low_index_subgroups_with_budget(
    pres: &Presentation,
    max_index: usize,
    budget: u64,
) -> Result<Vec<SubgroupRecord>> {
    let search = LowIndexSearch::new(pres, max_index, budget);
    let mut out = Vec::new();
    search.for_each(|r| out.push(r))?;
    out.sort();
    Ok(out)
}
