use alloc::borrow::Cow;
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::presentation::Presentation;
use super::word::{Letter, Word};
use crate::{Error, Result};

pub(crate) const UNDEF: u32 = u32::MAX;

/// Column layout shared by the enumerators: one column per generator, plus an
/// inverse column for every generator that is not an involution.
#[derive(Clone, Debug)]
pub(crate) struct Columns {
    /// Column of `Letter(code)` indexed by the letter's raw code.
    of_letter: Vec<usize>,
    inverse: Vec<usize>,
    /// For each column, the letter it stands for.
    letter: Vec<Letter>,
}

impl Columns {
    pub(crate) fn new(pres: &Presentation) -> Self {
        let gens = pres.generator_count();
        let mut of_letter = vec![0; 2 * gens];
        let mut inverse = Vec::new();
        let mut letter = Vec::new();
        for g in 0..gens {
            let col = letter.len();
            of_letter[2 * g] = col;
            letter.push(Letter::new(g, false));
            if pres.is_involution(g) {
                of_letter[2 * g + 1] = col;
                inverse.push(col);
            } else {
                of_letter[2 * g + 1] = col + 1;
                letter.push(Letter::new(g, true));
                inverse.push(col + 1);
                inverse.push(col);
            }
        }
        Columns { of_letter, inverse, letter }
    }

    pub(crate) fn count(&self) -> usize {
        self.letter.len()
    }

    pub(crate) fn of(&self, l: Letter) -> usize {
        self.of_letter[l.generator() * 2 + l.is_inverse() as usize]
    }

    pub(crate) fn inv(&self, col: usize) -> usize {
        self.inverse[col]
    }

    pub(crate) fn letter(&self, col: usize) -> Letter {
        self.letter[col]
    }

    pub(crate) fn word_columns(&self, w: &Word) -> Vec<usize> {
        w.letters().iter().map(|&l| self.of(l)).collect()
    }
}

/// A complete coset table: the right action of each generator on the cosets
/// `0..index` of a subgroup, coset 0 being the subgroup itself.
#[derive(Clone, Debug)]
pub struct CosetTable {
    action: Vec<Vec<u32>>,
    inverse: Vec<Vec<u32>>,
    involutive: Vec<bool>,
    /// `None` stands for the Schreier generators.
    subgroup_words: Option<Vec<Word>>,
}

impl PartialEq for CosetTable {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action && self.involutive == other.involutive && self.subgroup_words() == other.subgroup_words()
    }
}

impl Eq for CosetTable {}

impl CosetTable {
    /// Builds a table over the generators of `pres`. The subgroup words
    /// default to the Schreier generators when `subgroup_words` is `None`.
    pub fn new(pres: &Presentation, action: Vec<Vec<u32>>, subgroup_words: Option<Vec<Word>>) -> Result<Self> {
        if action.len() != pres.generator_count() {
            return Err(Error::InvalidPresentation("generator count mismatch".into()));
        }
        let involutive = pres.involutions();
        for (g, perm) in action.iter().enumerate() {
            if involutive[g] && perm.iter().enumerate().any(|(i, &j)| perm.get(j as usize) != Some(&(i as u32))) {
                return Err(Error::InvalidPresentation("involution acts with a longer cycle".into()));
            }
        }
        Self::from_action(action, involutive, subgroup_words)
    }

    /// Like [`CosetTable::new`] without a presentation; `involutive[g]` marks
    /// generators known to be involutions in the group.
    pub fn from_action(
        action: Vec<Vec<u32>>,
        involutive: Vec<bool>,
        subgroup_words: Option<Vec<Word>>,
    ) -> Result<Self> {
        if involutive.len() != action.len() {
            return Err(Error::InvalidPresentation("generator count mismatch".into()));
        }
        let index = action.first().map(|a| a.len()).unwrap_or(0);
        if index == 0 {
            return Err(Error::InvalidPresentation("empty coset table".into()));
        }
        let mut inverse = Vec::with_capacity(action.len());
        for perm in &action {
            if perm.len() != index {
                return Err(Error::InvalidPresentation("ragged coset table".into()));
            }
            let mut inv = vec![UNDEF; index];
            for (i, &j) in perm.iter().enumerate() {
                let j = j as usize;
                if j >= index || inv[j] != UNDEF {
                    return Err(Error::InvalidPresentation("generator action is not a permutation".into()));
                }
                inv[j] = i as u32;
            }
            inverse.push(inv);
        }
        Ok(CosetTable { action, inverse, involutive, subgroup_words })
    }

    pub fn index(&self) -> usize {
        self.action[0].len()
    }

    pub fn generator_count(&self) -> usize {
        self.action.len()
    }

    pub fn action(&self, g: usize) -> &[u32] {
        &self.action[g]
    }

    pub fn involutive(&self) -> &[bool] {
        &self.involutive
    }

    pub fn subgroup_words(&self) -> Cow<'_, [Word]> {
        match &self.subgroup_words {
            Some(w) => Cow::Borrowed(w),
            None => Cow::Owned(self.schreier_generators()),
        }
    }

    pub fn apply(&self, coset: usize, l: Letter) -> usize {
        let g = l.generator();
        if l.is_inverse() {
            self.inverse[g][coset] as usize
        } else {
            self.action[g][coset] as usize
        }
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.apply(c, l))
    }

    /// True if every relator acts trivially on every coset and every subgroup
    /// word fixes coset 0.
    pub fn is_closed_for(&self, pres: &Presentation) -> bool {
        if pres.generator_count() != self.generator_count() {
            return false;
        }
        let relators_ok = pres
            .relators()
            .iter()
            .all(|r| (0..self.index()).all(|c| self.trace(c, r) == c));
        relators_ok && self.subgroup_words().iter().all(|w| self.trace(0, w) == 0)
    }

    /// Letters in column order: each generator followed by its inverse
    /// unless it is an involution. Matches the enumerators' layout.
    pub(crate) fn column_letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for g in 0..self.generator_count() {
            out.push(Letter::new(g, false));
            if !self.involutive[g] {
                out.push(Letter::new(g, true));
            }
        }
        out
    }

    /// Breadth-first renumbering starting from `base`, returned as the
    /// permutation `old -> new`.
    fn standard_numbering(&self, base: usize, letters: &[Letter]) -> Vec<u32> {
        let n = self.index();
        let mut map = vec![UNDEF; n];
        map[base] = 0;
        let mut order = Vec::with_capacity(n);
        order.push(base);
        let mut next = 1;
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            i += 1;
            for &l in letters {
                let t = self.apply(c, l);
                if map[t] == UNDEF {
                    map[t] = next;
                    next += 1;
                    order.push(t);
                }
            }
        }
        map
    }

    fn renumbered(&self, map: &[u32]) -> Vec<Vec<u32>> {
        let n = self.index();
        let mut action = vec![vec![0u32; n]; self.generator_count()];
        for (g, perm) in self.action.iter().enumerate() {
            for c in 0..n {
                action[g][map[c] as usize] = map[perm[c] as usize];
            }
        }
        action
    }

    /// The same subgroup with cosets renumbered in breadth-first discovery order.
    pub fn standardize(&self) -> CosetTable {
        let letters = self.column_letters();
        let map = self.standard_numbering(0, &letters);
        let action = self.renumbered(&map);
        CosetTable::from_action(action, self.involutive.clone(), self.subgroup_words.clone())
            .expect("renumbering preserves permutations")
    }

    fn encode_with(&self, base: usize, letters: &[Letter]) -> Vec<u32> {
        let map = self.standard_numbering(base, letters);
        let n = self.index();
        let mut inv_map = vec![0usize; n];
        for (old, &new) in map.iter().enumerate() {
            inv_map[new as usize] = old;
        }
        let mut out = Vec::with_capacity(n * letters.len());
        for &old in &inv_map {
            for &l in letters {
                out.push(map[self.apply(old, l)]);
            }
        }
        out
    }

    /// Canonical byte form: the lexicographically least standardized table
    /// over all choices of base coset. Equal exactly for conjugate subgroups.
    pub fn canonical_form(&self) -> Vec<u8> {
        let letters = self.column_letters();
        let best = (0..self.index())
            .map(|base| self.encode_with(base, &letters))
            .min()
            .expect("nonempty table");
        encode_entries(self.index(), &best)
    }

    /// Shortest-path coset representatives from the breadth-first spanning tree,
    /// together with the tree edges `(coset, letter)` that discovered each coset.
    pub fn coset_representatives(&self) -> Vec<Word> {
        self.spanning_tree().0
    }

    pub(crate) fn spanning_tree(&self) -> (Vec<Word>, Vec<Option<(usize, Letter)>>) {
        let n = self.index();
        let letters = self.column_letters();
        let mut reps: Vec<Option<Word>> = vec![None; n];
        let mut parent = vec![None; n];
        reps[0] = Some(Word::identity());
        let mut queue = VecDeque::new();
        queue.push_back(0usize);
        while let Some(c) = queue.pop_front() {
            for &l in &letters {
                let t = self.apply(c, l);
                if reps[t].is_none() {
                    let mut w = reps[c].clone().unwrap();
                    w.push(l);
                    reps[t] = Some(w);
                    parent[t] = Some((c, l));
                    queue.push_back(t);
                }
            }
        }
        (reps.into_iter().map(|w| w.expect("coset table is transitive")).collect(), parent)
    }

    /// Schreier generators `u_c g u_{cg}^-1` for the non-tree edges. For an
    /// involution only one of the two directions of each edge is kept.
    pub fn schreier_generators(&self) -> Vec<Word> {
        let (reps, parent) = self.spanning_tree();
        let mut out = Vec::new();
        for g in 0..self.generator_count() {
            let involution = self.involutive[g];
            for c in 0..self.index() {
                let t = self.action[g][c] as usize;
                if is_tree_edge(&parent, c, g, t, involution) || (involution && t < c) {
                    continue;
                }
                let w = reps[c].concat(&Word::generator(g)).concat(&reps[t].inverse()).free_reduce();
                if !w.is_empty() {
                    out.push(w);
                }
            }
        }
        out
    }
}

pub(crate) fn is_tree_edge(parent: &[Option<(usize, Letter)>], c: usize, g: usize, t: usize, involution: bool) -> bool {
    let pos = Letter::new(g, false);
    let back = if involution { pos } else { Letter::new(g, true) };
    parent[t] == Some((c, pos)) || parent[c] == Some((t, back))
}

pub(crate) fn encode_entries(index: usize, entries: &[u32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(4 + 4 * entries.len());
    out.extend_from_slice(&(index as u32).to_be_bytes());
    for e in entries {
        out.extend_from_slice(&e.to_be_bytes());
    }
    out
}
