//! Maximal subgroups of crystallographic groups with a bounded index.
//!
//! A maximal subgroup `K` of `G` either contains `T(G)`, and is the preimage
//! of a maximal subgroup of the point group, or satisfies `K T(G) = G`. In the
//! second case `T(K)` is a `G`-invariant sublattice with `T(G) / T(K)` an
//! irreducible module over some `F_p`, and `K / T(K)` is a complement of it,
//! described by a 1-cocycle of the point group.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::crystgeom::{add, AffineMap, CrystGroup, IntegerLattice, SignedPerm, Vector, MAX_DIM};
use crate::typed_search::{point_subgroup_classes, set_has, set_members, PointGroupTable, PointSubgroup, Set};
use crate::{Error, Result};

/// Largest number of cocycle classes tried for one sublattice.
const MAX_COMPLEMENTS: usize = 1 << 16;

/// Largest number of invariant lines enumerated in one eigenspace.
const MAX_LINES: usize = 1 << 20;

/// `n = p^k` as `(p, k)`.
fn prime_power(n: usize) -> Option<(usize, usize)> {
    let p = (2..=n).find(|&p| n.is_multiple_of(p))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Indices `[G:K]` for which `K` can have exactly `orbits` orbits when `G`
/// is transitive with stabilizers of order `stab`: sums of `orbits` numbers
/// `stab / a` with `a` dividing `stab`.
pub fn admissible_indices(stab: usize, orbits: usize) -> BTreeSet<usize> {
    let parts: Vec<usize> = (1..=stab).filter(|a| stab.is_multiple_of(*a)).map(|a| stab / a).collect();
    let mut sums = BTreeSet::from([0usize]);
    for _ in 0..orbits {
        sums = sums.iter().flat_map(|s| parts.iter().map(move |q| s + q)).collect();
    }
    sums
}

fn inv_mod(a: i64, p: i64) -> i64 {
    let (mut r0, mut r1, mut s0, mut s1) = (a.rem_euclid(p), p, 1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(p)
}

/// Row echelon form over `F_p` with a pivot column per row.
#[derive(Clone, Debug, Default)]
struct Echelon {
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn reduce(&self, v: &mut [i64], p: i64) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
    }

    /// Adds `v` if it is independent; returns whether it was.
    fn insert(&mut self, mut v: Vec<i64>, p: i64) -> bool {
        self.reduce(&mut v, p);
        let Some(c) = v.iter().position(|&x| x != 0) else { return false };
        let inv = inv_mod(v[c], p);
        for x in v.iter_mut() {
            *x = *x * inv % p;
        }
        for row in self.rows.iter_mut() {
            let f = row[c];
            if f != 0 {
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(c);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduced basis sorted by pivot, usable as a set key.
    fn key(&self) -> Vec<Vec<i64>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        order.into_iter().map(|i| self.rows[i].clone()).collect()
    }
}

/// Solutions of `x M = c` over `F_p`, where the equations are the columns:
/// each entry of `eqs` is `(coefficients, rhs)`. Returns a particular
/// solution and a nullspace basis, or `None` if inconsistent.
fn solve_mod(n: usize, eqs: &[(Vec<i64>, i64)], p: i64) -> Option<(Vec<i64>, Vec<Vec<i64>>)> {
    // augmented rows [coefficients | rhs]
    let mut ech = Echelon::default();
    for (coef, rhs) in eqs {
        let mut v = coef.clone();
        v.push(rhs.rem_euclid(p));
        ech.insert(v, p);
    }
    if ech.pivots.contains(&n) {
        return None;
    }
    let mut x = vec![0i64; n];
    for (row, &c) in ech.rows.iter().zip(&ech.pivots) {
        x[c] = row[n];
    }
    let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
    let null = free
        .iter()
        .map(|&f| {
            let mut v = vec![0i64; n];
            v[f] = 1;
            for (row, &c) in ech.rows.iter().zip(&ech.pivots) {
                v[c] = (-row[f]).rem_euclid(p);
            }
            v
        })
        .collect();
    Some((x, null))
}

/// Coordinates of a lattice vector in the HNF basis of `t`.
fn coords(t: &IntegerLattice, x: &Vector) -> [i64; MAX_DIM] {
    let mut x = *x;
    let mut c = [0i64; MAX_DIM];
    for k in 0..t.dim() {
        let h = t.entry(k, k);
        debug_assert_eq!(x[k] % h, 0);
        c[k] = x[k] / h;
        for j in k..t.dim() {
            x[j] -= c[k] * t.entry(k, j);
        }
    }
    c
}

/// `R[i][j]`: coordinate `j` of `s b_i` in the basis `b` of `t`, mod `p`.
fn basis_action(t: &IntegerLattice, s: &SignedPerm, p: i64) -> Vec<Vec<i64>> {
    t.basis_vectors()
        .iter()
        .map(|b| coords(t, &s.apply(b))[..t.dim()].iter().map(|x| x.rem_euclid(p)).collect())
        .collect()
}

fn mat_vec(m: &[Vec<i64>], v: &[i64], p: i64) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<i64>().rem_euclid(p)).collect()
}

/// An irreducible quotient `T / T'` over `F_p`, given by functionals
/// `f_1, ..., f_k` on the coordinates of `T`, in reduced form: `f_j` is 1 at
/// row `pivots[j]` and every other functional vanishes there.
struct Quotient {
    p: i64,
    functionals: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl Quotient {
    fn from_echelon(e: &Echelon, p: i64) -> Self {
        let mut order: Vec<usize> = (0..e.rows.len()).collect();
        order.sort_by_key(|&i| e.pivots[i]);
        Quotient {
            p,
            functionals: order.iter().map(|&i| e.rows[i].clone()).collect(),
            pivots: order.iter().map(|&i| e.pivots[i]).collect(),
        }
    }

    fn k(&self) -> usize {
        self.functionals.len()
    }

    fn project(&self, t: &IntegerLattice, x: &Vector) -> Vec<i64> {
        let c = coords(t, x);
        self.functionals
            .iter()
            .map(|f| f.iter().zip(&c).map(|(a, b)| a * b).sum::<i64>().rem_euclid(self.p))
            .collect()
    }

    /// `Q` with `π(s x) = π(x) Q`.
    fn action(&self, t: &IntegerLattice, s: &SignedPerm) -> Vec<Vec<i64>> {
        let r = basis_action(t, s, self.p);
        let images: Vec<Vec<i64>> = self.functionals.iter().map(|f| mat_vec(&r, f, self.p)).collect();
        // Q[l][j] = (R f_j)[pivot_l]
        (0..self.k()).map(|l| (0..self.k()).map(|j| images[j][self.pivots[l]]).collect()).collect()
    }

    fn sublattice(&self, t: &IntegerLattice) -> IntegerLattice {
        let d = t.dim();
        let b = t.basis_vectors();
        let mut vs: Vec<Vector> = b.iter().map(|v| v.map(|x| x * self.p)).collect();
        for i in (0..d).filter(|i| !self.pivots.contains(i)) {
            let mut v = b[i];
            for (j, &pv) in self.pivots.iter().enumerate() {
                let c = self.functionals[j][i];
                for (x, y) in v.iter_mut().zip(&b[pv]) {
                    *x -= c * y;
                }
            }
            vs.push(v);
        }
        IntegerLattice::hnf(d, &vs).expect("contains p T")
    }

    /// A lattice vector with projection `a`.
    fn lift(&self, t: &IntegerLattice, a: &[i64]) -> Vector {
        let b = t.basis_vectors();
        let mut v = [0i64; MAX_DIM];
        for (j, &pv) in self.pivots.iter().enumerate() {
            for (x, y) in v.iter_mut().zip(&b[pv]) {
                *x += a[j] * y;
            }
        }
        v
    }
}

/// Smallest generating set of a point group, greedily from its members.
fn generating_set(w: &PointGroupTable, set: &Set) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = w.closure(&gens);
    for m in set_members(set) {
        if !set_has(&span, m as usize) {
            gens.push(m as usize);
            span = w.closure(&gens);
        }
    }
    gens
}

fn point_set(g: &CrystGroup) -> Set {
    let mut s = [0u64; crate::typed_search::WORDS];
    for a in g.point_group() {
        crate::typed_search::set_insert(&mut s, a.code());
    }
    s
}

/// Maximal subgroups of crystallographic groups in a fixed dimension.
pub struct MaximalSubgroups {
    w: PointGroupTable,
    classes: Vec<PointSubgroup>,
    /// Maximal subgroups of each class representative, up to conjugacy in it.
    maximal: Vec<Vec<Set>>,
}

impl MaximalSubgroups {
    pub fn new(dim: usize) -> Self {
        let w = PointGroupTable::new(dim);
        let classes = point_subgroup_classes(&w);
        let maximal = classes.iter().map(|r| Self::maximal_of(&w, &classes, r)).collect();
        MaximalSubgroups { w, classes, maximal }
    }

    fn maximal_of(w: &PointGroupTable, classes: &[PointSubgroup], r: &PointSubgroup) -> Vec<Set> {
        let within = |s: &Set| s.iter().zip(&r.set).all(|(a, b)| a & !b == 0);
        let mut subs: BTreeSet<Set> = BTreeSet::new();
        for c in classes.iter().filter(|c| c.order() < r.order() && r.order().is_multiple_of(c.order())) {
            for x in 0..w.order() {
                let s = w.conjugate_set(&c.set, x);
                if within(&s) {
                    subs.insert(s);
                }
            }
        }
        let subs: Vec<Set> = subs.into_iter().collect();
        let proper_sub = |a: &Set, b: &Set| a != b && a.iter().zip(b).all(|(x, y)| x & !y == 0);
        let mut out = BTreeSet::new();
        for m in &subs {
            if subs.iter().any(|b| proper_sub(m, b)) {
                continue;
            }
            let rep = r.members.iter().map(|&x| w.conjugate_set(m, x as usize)).min().expect("nonempty");
            out.insert(rep);
        }
        out.into_iter().collect()
    }

    /// Maximal subgroups of the point group `set`, up to conjugacy in it.
    fn point_maximal(&self, set: &Set) -> Vec<Set> {
        let canonical = self.w.canonical_conjugate(set);
        let k = self.classes.iter().position(|c| c.set == canonical).expect("every subgroup has a class");
        let x = (0..self.w.order()).find(|&x| self.w.conjugate_set(set, x) == canonical).expect("conjugate exists");
        let back = SignedPerm::from_code(self.w.dim(), x).inverse().code();
        self.maximal[k].iter().map(|m| self.w.conjugate_set(m, back)).collect()
    }

    /// Maximal subgroups of `g` whose index lies in `indices`, at least one
    /// from each conjugacy class in `g`.
    pub fn maximal_subgroups(&self, g: &CrystGroup, indices: &BTreeSet<usize>) -> Result<Vec<CrystGroup>> {
        let d = g.dim();
        let t = *g.lattice();
        let pset = point_set(g);
        let gens = generating_set(&self.w, &pset);
        let lifts: Vec<AffineMap> = gens
            .iter()
            .map(|&c| g.representative(&SignedPerm::from_code(d, c)).expect("generator in point group"))
            .collect();
        let mut out = Vec::new();

        let order = g.point_group_order();
        for m in self.point_maximal(&pset) {
            if !indices.contains(&(order / set_members(&m).len())) {
                continue;
            }
            let mut generators: Vec<AffineMap> = t.basis_vectors().into_iter().map(|v| AffineMap::translation(d, v)).collect();
            for c in generating_set(&self.w, &m) {
                generators.push(g.representative(&SignedPerm::from_code(d, c)).expect("subgroup of point group"));
            }
            out.push(CrystGroup::from_generators(d, &generators)?);
        }

        let mut primes: BTreeSet<usize> = BTreeSet::new();
        for &n in indices {
            if let Some((p, _)) = prime_power(n) {
                primes.insert(p);
            }
        }
        for p in primes {
            let max_k = indices.iter().filter_map(|&n| prime_power(n)).filter(|&(q, _)| q == p).map(|(_, k)| k).max();
            let Some(max_k) = max_k else { continue };
            for q in self.irreducible_quotients(&t, &lifts, p as i64, max_k.min(d))? {
                if !indices.contains(&p.pow(q.k() as u32)) {
                    continue;
                }
                self.complements(g, &t, &lifts, &q, &mut out)?;
            }
        }
        Ok(out)
    }

    /// Irreducible quotients of `T` as a module over the point group, of
    /// dimension at most `max_k`.
    fn irreducible_quotients(&self, t: &IntegerLattice, lifts: &[AffineMap], p: i64, max_k: usize) -> Result<Vec<Quotient>> {
        let d = t.dim();
        let mats: Vec<Vec<Vec<i64>>> = lifts.iter().map(|g| basis_action(t, &g.linear, p)).collect();
        let span = |v: &[i64]| {
            let mut e = Echelon::default();
            e.insert(v.to_vec(), p);
            let mut k = 0;
            while k < e.rows.len() {
                let row = e.rows[k].clone();
                for m in &mats {
                    e.insert(mat_vec(m, &row, p), p);
                }
                k += 1;
            }
            e
        };
        let mut found: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
        let mut out = Vec::new();
        let mut consider = |e: Echelon, out: &mut Vec<Quotient>| {
            if e.rank() <= max_k && found.insert(e.key()) {
                out.push(Quotient::from_echelon(&e, p));
            }
        };
        if max_k >= 2 || (p as usize).pow(d as u32 - 1) <= 4096 {
            // every projective point, keeping the cyclic spans that are irreducible
            let points = projective_points(d, p);
            let mut spans: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
            for v in &points {
                let e = span(v);
                if e.rank() > max_k || !spans.insert(e.key()) {
                    continue;
                }
                let irreducible = projective_points(e.rank(), p).iter().all(|c| {
                    let mut u = vec![0i64; d];
                    for (ci, row) in c.iter().zip(&e.rows) {
                        for (x, y) in u.iter_mut().zip(row) {
                            *x = (*x + ci * y) % p;
                        }
                    }
                    span(&u).rank() == e.rank()
                });
                if irreducible {
                    consider(e, &mut out);
                }
            }
        } else {
            // one-dimensional: common eigenvectors
            let mut eigen: Vec<Vec<i64>> = vec![Vec::new(); mats.len()];
            for (i, m) in mats.iter().enumerate() {
                for lambda in 1..p {
                    let shifted = shift(m, lambda, p);
                    if !nullspace(&shifted, d, p).is_empty() {
                        eigen[i].push(lambda);
                    }
                }
            }
            let mut choice = vec![0usize; mats.len()];
            if eigen.iter().all(|e| !e.is_empty()) {
                loop {
                    let mut rows = Vec::new();
                    for (i, m) in mats.iter().enumerate() {
                        rows.extend(shift(m, eigen[i][choice[i]], p));
                    }
                    let space = nullspace(&rows, d, p);
                    if !space.is_empty() {
                        let lines = projective_points(space.len(), p);
                        if lines.len() > MAX_LINES {
                            return Err(Error::TooLarge("too many invariant lines"));
                        }
                        for c in lines {
                            let mut u = vec![0i64; d];
                            for (ci, row) in c.iter().zip(&space) {
                                for (x, y) in u.iter_mut().zip(row) {
                                    *x = (*x + ci * y) % p;
                                }
                            }
                            let mut e = Echelon::default();
                            e.insert(u, p);
                            consider(e, &mut out);
                        }
                    }
                    let mut k = 0;
                    while k < choice.len() {
                        choice[k] += 1;
                        if choice[k] < eigen[k].len() {
                            break;
                        }
                        choice[k] = 0;
                        k += 1;
                    }
                    if k == choice.len() {
                        break;
                    }
                }
            } else if mats.is_empty() {
                for c in projective_points(d, p) {
                    let mut e = Echelon::default();
                    e.insert(c, p);
                    consider(e, &mut out);
                }
            }
        }
        Ok(out)
    }

    /// Complements of `T / T'` in `G / T'`, one per conjugacy class under
    /// `T`, as subgroups of `G`.
    fn complements(
        &self,
        g: &CrystGroup,
        t: &IntegerLattice,
        lifts: &[AffineMap],
        q: &Quotient,
        out: &mut Vec<CrystGroup>,
    ) -> Result<()> {
        let d = g.dim();
        let p = q.p;
        let k = q.k();
        let r = lifts.len();
        let n = r * k;
        let sub = q.sublattice(t);
        let qs: Vec<Vec<Vec<i64>>> = lifts.iter().map(|l| q.action(t, &l.linear)).collect();

        // breadth-first over the point group: concrete translation and the
        // (n x k) matrix of the unknown contribution
        struct Node {
            map: AffineMap,
            unknown: Vec<Vec<i64>>,
        }
        let mut nodes: Vec<Option<Node>> = (0..self.w.order()).map(|_| None).collect();
        let id = SignedPerm::identity(d);
        nodes[id.code()] = Some(Node { map: AffineMap::identity(d), unknown: vec![vec![0; k]; n] });
        let mut queue = vec![id.code()];
        let mut eqs: Vec<(Vec<i64>, i64)> = Vec::new();
        let mut head = 0;
        while head < queue.len() {
            let code = queue[head];
            head += 1;
            let (map, unknown) = {
                let node = nodes[code].as_ref().expect("queued");
                (node.map, node.unknown.clone())
            };
            let qmat = q.action(t, &map.linear);
            for (i, l) in lifts.iter().enumerate() {
                let next = map.compose(l);
                let mut u = unknown.clone();
                // row block i gains Q_s
                for a in 0..k {
                    for b in 0..k {
                        u[i * k + a][b] = (u[i * k + a][b] + qmat[a][b]) % p;
                    }
                }
                let c = next.linear.code();
                match &nodes[c] {
                    None => {
                        nodes[c] = Some(Node { map: next, unknown: u });
                        queue.push(c);
                    }
                    Some(old) => {
                        let diff = crate::crystgeom::sub(&next.translation, &old.map.translation);
                        let rhs = q.project(t, &diff);
                        for j in 0..k {
                            let coef: Vec<i64> = (0..n).map(|x| (u[x][j] - old.unknown[x][j]).rem_euclid(p)).collect();
                            eqs.push((coef, (-rhs[j]).rem_euclid(p)));
                        }
                    }
                }
            }
        }
        let Some((base, null)) = solve_mod(n, &eqs, p) else { return Ok(()) };

        let mut cob = Echelon::default();
        for l in 0..k {
            let mut v = vec![0i64; n];
            for (i, qi) in qs.iter().enumerate() {
                for j in 0..k {
                    let delta = if l == j { 1 } else { 0 };
                    v[i * k + j] = (delta - qi[l][j]).rem_euclid(p);
                }
            }
            cob.insert(v, p);
        }
        let extra: Vec<Vec<i64>> = null.into_iter().filter(|v| cob.insert(v.clone(), p)).collect();
        let count = (p as usize).checked_pow(extra.len() as u32).filter(|&c| c <= MAX_COMPLEMENTS);
        let Some(count) = count else { return Err(Error::TooLarge("too many complements")) };
        let trans: Vec<AffineMap> = sub.basis_vectors().into_iter().map(|v| AffineMap::translation(d, v)).collect();
        for mut idx in 0..count {
            let mut a = base.clone();
            for e in &extra {
                let c = (idx % p as usize) as i64;
                idx /= p as usize;
                for (x, y) in a.iter_mut().zip(e) {
                    *x = (*x + c * y) % p;
                }
            }
            let mut generators = trans.clone();
            for (i, l) in lifts.iter().enumerate() {
                let shift = q.lift(t, &a[i * k..(i + 1) * k]);
                generators.push(AffineMap::new(l.linear, add(&l.translation, &shift)));
            }
            let kgroup = CrystGroup::from_generators(d, &generators)?;
            debug_assert_eq!(*kgroup.lattice(), sub);
            out.push(kgroup);
        }
        Ok(())
    }
}

fn shift(m: &[Vec<i64>], lambda: i64, p: i64) -> Vec<Vec<i64>> {
    m.iter()
        .enumerate()
        .map(|(i, row)| row.iter().enumerate().map(|(j, &x)| (x - if i == j { lambda } else { 0 }).rem_euclid(p)).collect())
        .collect()
}

/// Basis of `{v : M v = 0}` for the rows `m` of length `d`.
fn nullspace(m: &[Vec<i64>], d: usize, p: i64) -> Vec<Vec<i64>> {
    let eqs: Vec<(Vec<i64>, i64)> = m.iter().map(|row| (row.clone(), 0)).collect();
    solve_mod(d, &eqs, p).map(|(_, n)| n).unwrap_or_default()
}

/// Vectors of `F_p^n` whose first nonzero entry is 1.
fn projective_points(n: usize, p: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for lead in 0..n {
        let tail = n - lead - 1;
        let total = (p as usize).pow(tail as u32);
        for mut idx in 0..total {
            let mut v = vec![0i64; n];
            v[lead] = 1;
            for x in v[lead + 1..].iter_mut() {
                *x = (idx % p as usize) as i64;
                idx /= p as usize;
            }
            out.push(v);
        }
    }
    out
}
