//! Subgroups of `Aut(Z^d)` with a prescribed number of orbits, found by
//! fixing the point-group part of the coset action.
//!
//! For `H` with orbit representatives `x_1, ..., x_n`, the right cosets of `H`
//! split under the point group `W` into `n` orbits isomorphic to
//! `S_k \ W`, where `S_k` is the stabilizer of `x_k` moved to the origin.
//! The action of the linear generators on `⊔ S_k \ W` is therefore known in
//! advance and only the generators carrying a translation are searched for.
//! Two tables describe conjugate subgroups exactly when they differ by an
//! automorphism of the `W`-set, which is how results are made unique.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::crystgeom::{hyperoctahedral_group, SignedPerm};
use crate::fpgroup::{CosetTable, Letter};
use crate::subgroups::AutContext;
use crate::{Error, Result};

pub(crate) const WORDS: usize = 6;
pub(crate) type Set = [u64; WORDS];

pub(crate) fn set_insert(s: &mut Set, i: usize) {
    s[i >> 6] |= 1 << (i & 63);
}

pub(crate) fn set_has(s: &Set, i: usize) -> bool {
    s[i >> 6] >> (i & 63) & 1 == 1
}

pub(crate) fn set_members(s: &Set) -> Vec<u16> {
    let mut out = Vec::new();
    for (w, &bits) in s.iter().enumerate() {
        let mut b = bits;
        while b != 0 {
            let t = b.trailing_zeros() as usize;
            out.push((w * 64 + t) as u16);
            b &= b - 1;
        }
    }
    out
}

/// Multiplication table of the signed permutation group by code.
#[derive(Clone, Debug)]
pub struct PointGroupTable {
    dim: usize,
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

impl PointGroupTable {
    pub fn new(dim: usize) -> Self {
        let elements = hyperoctahedral_group(dim);
        let order = elements.len();
        let mut mul = vec![0u16; order * order];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * order + j] = a.compose(b).code() as u16;
            }
        }
        let inv = elements.iter().map(|a| a.inverse().code() as u16).collect();
        PointGroupTable { dim, order, mul, inv }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub(crate) fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    pub(crate) fn conj(&self, x: usize, a: usize) -> usize {
        self.mul(self.mul(x, a), self.inv[x] as usize)
    }

    pub(crate) fn closure(&self, gens: &[usize]) -> Set {
        let mut s = [0u64; WORDS];
        set_insert(&mut s, 0);
        let mut members = vec![0usize];
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            k += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !set_has(&s, y) {
                    set_insert(&mut s, y);
                    members.push(y);
                }
            }
        }
        s
    }

    pub(crate) fn conjugate_set(&self, s: &Set, x: usize) -> Set {
        let mut out = [0u64; WORDS];
        for a in set_members(s) {
            set_insert(&mut out, self.conj(x, a as usize));
        }
        out
    }

    pub(crate) fn canonical_conjugate(&self, s: &Set) -> Set {
        (0..self.order).map(|x| self.conjugate_set(s, x)).min().expect("nonempty group")
    }
}

/// A subgroup of the point group, one per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSubgroup {
    pub(crate) set: Set,
    /// Element codes in increasing order.
    pub members: Vec<u16>,
    /// Codes of the normalizer in `W`.
    pub normalizer: Vec<u16>,
}

impl PointSubgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, code: usize) -> bool {
        set_has(&self.set, code)
    }

    pub fn elements(&self, dim: usize) -> Vec<SignedPerm> {
        self.members.iter().map(|&c| SignedPerm::from_code(dim, c as usize)).collect()
    }
}

/// Representatives of the conjugacy classes of subgroups of the point group,
/// by decreasing order and then by member set.
pub fn point_subgroup_classes(w: &PointGroupTable) -> Vec<PointSubgroup> {
    let trivial = w.closure(&[]);
    let mut classes: BTreeSet<Set> = BTreeSet::new();
    let mut seen_raw: BTreeSet<Set> = BTreeSet::new();
    classes.insert(trivial);
    let mut queue = vec![trivial];
    while let Some(h) = queue.pop() {
        let gens = set_members(&h);
        for g in 0..w.order {
            if set_has(&h, g) {
                continue;
            }
            let mut with = gens.iter().map(|&x| x as usize).collect::<Vec<_>>();
            with.push(g);
            let j = w.closure(&with);
            if !seen_raw.insert(j) {
                continue;
            }
            let c = w.canonical_conjugate(&j);
            if classes.insert(c) {
                queue.push(c);
            }
        }
    }
    let mut out: Vec<PointSubgroup> = classes
        .into_iter()
        .map(|set| {
            let normalizer = (0..w.order)
                .filter(|&x| w.conjugate_set(&set, x) == set)
                .map(|x| x as u16)
                .collect();
            PointSubgroup { set, members: set_members(&set), normalizer }
        })
        .collect();
    out.sort_by(|a, b| b.order().cmp(&a.order()).then(a.set.cmp(&b.set)));
    out
}

/// Column layout: every generator, followed by its inverse unless it is an
/// involution.
struct Layout {
    letters: Vec<Letter>,
    col_of: Vec<usize>,
    inv_col: Vec<usize>,
    /// Columns whose action is searched for.
    free: Vec<bool>,
}

impl Layout {
    fn col(&self, l: Letter) -> usize {
        self.col_of[2 * l.generator() + l.is_inverse() as usize]
    }
}

const UNDEF: u32 = u32::MAX;

/// Search context for one family of groups: the point-group subgroup classes
/// and relator data shared by all orbit types.
pub struct TypedSearch<'a> {
    ctx: &'a AutContext,
    w: PointGroupTable,
    classes: Vec<PointSubgroup>,
    layout: Layout,
    /// Code of the linear image of each generator, for linear generators.
    linear_code: Vec<Option<usize>>,
    /// For each column, the cyclic rotations of relators (and inverses)
    /// starting with that column, as column sequences.
    rotations: Vec<Vec<Vec<usize>>>,
    budget: u64,
}

/// Counters for one call of [`TypedSearch::for_each_with_types`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TypedSearchStats {
    pub nodes: u64,
    pub solutions: u64,
    pub emitted: u64,
}

impl<'a> TypedSearch<'a> {
    pub fn new(ctx: &'a AutContext, budget: u64) -> Result<Self> {
        let d = ctx.dim();
        let w = PointGroupTable::new(d);
        let classes = point_subgroup_classes(&w);
        let pres = ctx.presentation();
        let involutive = pres.involutions();
        let gens = pres.generator_count();
        let mut letters = Vec::new();
        let mut col_of = vec![0; 2 * gens];
        for g in 0..gens {
            col_of[2 * g] = letters.len();
            letters.push(Letter::new(g, false));
            if involutive[g] {
                col_of[2 * g + 1] = letters.len() - 1;
            } else {
                col_of[2 * g + 1] = letters.len();
                letters.push(Letter::new(g, true));
            }
        }
        let linear_code: Vec<Option<usize>> = ctx
            .images()
            .iter()
            .map(|m| m.translation.iter().all(|&x| x == 0).then(|| m.linear.code()))
            .collect();
        let free: Vec<bool> = letters.iter().map(|l| linear_code[l.generator()].is_none()).collect();
        let inv_col = letters.iter().map(|l| col_of[2 * l.generator() + !l.is_inverse() as usize]).collect();
        let layout = Layout { letters, col_of, inv_col, free };

        // the linear generators must generate the whole point group
        let lin: Vec<usize> = linear_code.iter().flatten().copied().collect();
        let span = w.closure(&lin);
        if set_members(&span).len() != w.order() {
            return Err(Error::InvalidPresentation("linear generators do not generate the point group".into()));
        }

        let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); layout.letters.len()];
        for r in pres.relators() {
            for word in [r.clone(), r.inverse()] {
                let c: Vec<usize> = word.letters().iter().map(|&l| layout.col(l)).collect();
                for k in 0..c.len() {
                    let mut rot = Vec::with_capacity(c.len());
                    rot.extend_from_slice(&c[k..]);
                    rot.extend_from_slice(&c[..k]);
                    sets[rot[0]].insert(rot);
                }
            }
        }
        let rotations = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        Ok(TypedSearch { ctx, w, classes, layout, linear_code, rotations, budget })
    }

    pub fn point_group(&self) -> &PointGroupTable {
        &self.w
    }

    pub fn classes(&self) -> &[PointSubgroup] {
        &self.classes
    }

    /// Every subgroup with exactly `orbits` orbits on `Z^d`, one per
    /// conjugacy class, passed to `emit` as a coset table over the
    /// presentation of the context.
    pub fn for_each<F: FnMut(&[usize], CosetTable)>(&self, orbits: usize, mut emit: F) -> Result<TypedSearchStats> {
        let mut total = TypedSearchStats::default();
        let mut types = vec![0usize; orbits];
        loop {
            let s = self.for_each_with_types(&types, |t| emit(&types, t))?;
            total.nodes += s.nodes;
            total.solutions += s.solutions;
            total.emitted += s.emitted;
            // next nondecreasing tuple
            let mut k = orbits;
            loop {
                if k == 0 {
                    return Ok(total);
                }
                k -= 1;
                if types[k] + 1 < self.classes.len() {
                    types[k] += 1;
                    for j in k + 1..orbits {
                        types[j] = types[k];
                    }
                    break;
                }
            }
        }
    }

    /// The subgroups whose orbit stabilizers are conjugate to the classes
    /// `types` (nondecreasing class indices).
    pub fn for_each_with_types<F: FnMut(CosetTable)>(&self, types: &[usize], mut emit: F) -> Result<TypedSearchStats> {
        let wset = WSet::new(self, types);
        let mut run = Run::new(self, &wset);
        run.search(&mut emit)?;
        Ok(run.stats)
    }
}

/// The `W`-set `⊔ S_k \ W` with the action of the linear generators.
struct WSet {
    /// Number of points.
    size: usize,
    /// `point[k][w]`: the point `S_k w` for `w` given by code.
    point: Vec<Vec<u32>>,
    /// Orbit index of every point.
    orbit_of: Vec<usize>,
    /// One element code `w` with point `S_k w` for every point.
    rep: Vec<u16>,
    /// Automorphisms as point permutations (identity first).
    automorphisms: Vec<Vec<u32>>,
}

impl WSet {
    fn new(search: &TypedSearch<'_>, types: &[usize]) -> Self {
        let w = &search.w;
        let mut point = Vec::new();
        let mut orbit_of = Vec::new();
        let mut rep = Vec::new();
        for (k, &t) in types.iter().enumerate() {
            let s = &search.classes[t];
            let mut label = vec![UNDEF; w.order];
            // breadth-first from S·1 under the linear generators
            let base = orbit_of.len() as u32;
            let mut queue = vec![0usize];
            let mut head = 0;
            let mut next = base;
            let assign = |label: &mut Vec<u32>, x: usize, id: u32| {
                for &m in &s.members {
                    label[w.mul(m as usize, x)] = id;
                }
            };
            assign(&mut label, 0, next);
            orbit_of.push(k);
            rep.push(0u16);
            next += 1;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                for g in search.linear_code.iter().flatten() {
                    let y = w.mul(x, *g);
                    if label[y] == UNDEF {
                        assign(&mut label, y, next);
                        orbit_of.push(k);
                        rep.push(y as u16);
                        next += 1;
                        queue.push(y);
                    }
                }
            }
            point.push(label);
        }
        let size = orbit_of.len();
        let mut ws = WSet { size, point, orbit_of, rep, automorphisms: Vec::new() };
        ws.automorphisms = ws.automorphism_group(search, types);
        ws
    }

    /// `S_k w ↦ S_k n w` for `n` in the normalizer of each `S_k`, combined
    /// with permutations of orbits of the same type.
    fn automorphism_group(&self, search: &TypedSearch<'_>, types: &[usize]) -> Vec<Vec<u32>> {
        let w = &search.w;
        // per-orbit maps
        let per_orbit: Vec<Vec<Vec<u32>>> = types
            .iter()
            .enumerate()
            .map(|(k, &t)| {
                search.classes[t]
                    .normalizer
                    .iter()
                    .filter(|&&n| {
                        // one representative per coset n S
                        let n = n as usize;
                        search.classes[t].members.iter().all(|&m| (m as usize) == 0 || n <= w.mul(n, m as usize))
                    })
                    .map(|&n| {
                        (0..self.size)
                            .filter(|&p| self.orbit_of[p] == k)
                            .map(|p| self.point[k][w.mul(n as usize, self.rep[p] as usize)])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let offsets: Vec<usize> = (0..types.len())
            .map(|k| self.orbit_of.iter().position(|&o| o == k).expect("orbit is nonempty"))
            .collect();
        // orbit permutations preserving types
        let mut perms = vec![Vec::new()];
        for k in 0..types.len() {
            let mut next = Vec::new();
            for p in &perms {
                for j in 0..types.len() {
                    if types[j] == types[k] && !p.contains(&j) {
                        let mut q = p.clone();
                        q.push(j);
                        next.push(q);
                    }
                }
            }
            perms = next;
        }
        let mut out = Vec::new();
        for sigma in &perms {
            let mut choice = vec![0usize; types.len()];
            loop {
                let mut map = vec![0u32; self.size];
                for k in 0..types.len() {
                    let target = sigma[k];
                    let m = &per_orbit[k][choice[k]];
                    for (i, &img) in m.iter().enumerate() {
                        // img lies in orbit k; move it to orbit `target`
                        let local = img as usize - offsets[k];
                        map[offsets[k] + i] = (offsets[target] + local) as u32;
                    }
                }
                out.push(map);
                let mut k = 0;
                loop {
                    if k == types.len() {
                        break;
                    }
                    choice[k] += 1;
                    if choice[k] < per_orbit[k].len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == types.len() {
                    break;
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

struct Run<'s, 'a> {
    search: &'s TypedSearch<'a>,
    wset: &'s WSet,
    width: usize,
    table: Vec<u32>,
    trail: Vec<usize>,
    pending: Vec<(u32, usize)>,
    stats: TypedSearchStats,
    free_cols: Vec<usize>,
}

impl<'s, 'a> Run<'s, 'a> {
    fn new(search: &'s TypedSearch<'a>, wset: &'s WSet) -> Self {
        let width = search.layout.letters.len();
        let n = wset.size;
        let mut table = vec![UNDEF; n * width];
        for (col, l) in search.layout.letters.iter().enumerate() {
            let Some(code) = search.linear_code[l.generator()] else { continue };
            let code = if l.is_inverse() { search.w.inv[code] as usize } else { code };
            for p in 0..n {
                let k = wset.orbit_of[p];
                let x = search.w.mul(wset.rep[p] as usize, code);
                table[p * width + col] = wset.point[k][x];
            }
        }
        let free_cols = (0..width).filter(|&c| search.layout.free[c]).collect();
        Run { search, wset, width, table, trail: Vec::new(), pending: Vec::new(), stats: TypedSearchStats::default(), free_cols }
    }

    fn get(&self, p: usize, col: usize) -> u32 {
        self.table[p * self.width + col]
    }

    /// Defines `p --col--> q` and the inverse entry; false on conflict.
    fn define(&mut self, p: usize, col: usize, q: usize) -> bool {
        let inv = self.search.layout.inv_col[col];
        let a = self.get(p, col);
        let b = self.get(q, inv);
        if (a != UNDEF && a as usize != q) || (b != UNDEF && b as usize != p) {
            return false;
        }
        if a == UNDEF {
            self.table[p * self.width + col] = q as u32;
            self.trail.push(p * self.width + col);
            self.pending.push((p as u32, col));
        }
        if b == UNDEF {
            self.table[q * self.width + inv] = p as u32;
            self.trail.push(q * self.width + inv);
            self.pending.push((q as u32, inv));
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let pos = self.trail.pop().expect("trail above mark");
            self.table[pos] = UNDEF;
        }
        self.pending.clear();
    }

    /// Scans relators through the newly defined entries, deducing forced
    /// entries. False on contradiction.
    fn propagate(&mut self) -> bool {
        while let Some((p, col)) = self.pending.pop() {
            let p = p as usize;
            for r in &self.search.rotations[col] {
                let len = r.len();
                let mut i = 0;
                let mut f = p;
                while i < len {
                    let t = self.get(f, r[i]);
                    if t == UNDEF {
                        break;
                    }
                    f = t as usize;
                    i += 1;
                }
                if i == len {
                    if f != p {
                        return false;
                    }
                    continue;
                }
                let mut j = len;
                let mut b = p;
                while j > i {
                    let t = self.get(b, self.search.layout.inv_col[r[j - 1]]);
                    if t == UNDEF {
                        break;
                    }
                    b = t as usize;
                    j -= 1;
                }
                if j == i {
                    if f != b {
                        return false;
                    }
                } else if j == i + 1 && !self.define(f, r[i], b) {
                    return false;
                }
            }
        }
        true
    }

    fn first_undefined(&self) -> Option<(usize, usize)> {
        for p in 0..self.wset.size {
            for &c in &self.free_cols {
                if self.get(p, c) == UNDEF {
                    return Some((p, c));
                }
            }
        }
        None
    }

    fn search<F: FnMut(CosetTable)>(&mut self, emit: &mut F) -> Result<()> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.search.budget {
            return Err(Error::NodeBudgetExceeded { budget: self.search.budget });
        }
        let Some((p, col)) = self.first_undefined() else {
            self.complete(emit);
            return Ok(());
        };
        let inv = self.search.layout.inv_col[col];
        for q in 0..self.wset.size {
            if self.get(q, inv) != UNDEF {
                continue;
            }
            let mark = self.trail.len();
            if self.define(p, col, q) && self.propagate() {
                self.search(emit)?;
            }
            self.undo(mark);
        }
        Ok(())
    }

    fn free_part(&self, map: Option<&[u32]>) -> Vec<u32> {
        let n = self.wset.size;
        let mut out = vec![0u32; n * self.free_cols.len()];
        for p in 0..n {
            for (i, &c) in self.free_cols.iter().enumerate() {
                let q = self.get(p, c);
                match map {
                    None => out[p * self.free_cols.len() + i] = q,
                    Some(m) => out[m[p] as usize * self.free_cols.len() + i] = m[q as usize],
                }
            }
        }
        out
    }

    fn complete<F: FnMut(CosetTable)>(&mut self, emit: &mut F) {
        self.stats.solutions += 1;
        let n = self.wset.size;
        // the action must be transitive
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(p) = stack.pop() {
            for c in 0..self.width {
                let q = self.get(p, c) as usize;
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return;
        }
        let mine = self.free_part(None);
        for a in &self.wset.automorphisms[1..] {
            if self.free_part(Some(a)) < mine {
                return;
            }
        }
        self.stats.emitted += 1;
        let pres = self.search.ctx.presentation();
        let mut action = vec![vec![0u32; n]; pres.generator_count()];
        for (col, l) in self.search.layout.letters.iter().enumerate() {
            if !l.is_inverse() {
                for p in 0..n {
                    action[l.generator()][p] = self.get(p, col);
                }
            }
        }
        let table = CosetTable::from_action(action, pres.involutions(), None)
            .expect("complete search tables are permutations");
        emit(table);
    }
}

/// Number of subgroups found per orbit type, for reporting.
pub fn type_histogram(types: &[(Vec<usize>, usize)]) -> BTreeMap<Vec<usize>, usize> {
    let mut out = BTreeMap::new();
    for (t, c) in types {
        *out.entry(t.clone()).or_insert(0) += c;
    }
    out
}
