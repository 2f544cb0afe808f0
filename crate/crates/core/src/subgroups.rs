//! From coset tables of `Aut(Z^d)` to crystallographic groups.

use alloc::collections::BTreeMap;
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::crystgeom::{
    generator_images, hyperoctahedral_order, neg, unit, word_to_affine, AffineMap, CrystGroup, IntegerLattice,
    SignedPerm, Vector, MAX_DIM,
};
use crate::fpgroup::{CosetTable, Letter, Presentation, Word};
use crate::Result;

/// The presentation of `Aut(Z^d)` together with words for the elements the
/// table-to-group conversion needs: every linear map `(A, 0)` and every unit
/// translation.
#[derive(Clone, Debug)]
pub struct AutContext {
    presentation: Presentation,
    images: Vec<AffineMap>,
    /// Indexed by [`SignedPerm::code`].
    linear_words: Vec<Word>,
    translation_words: Vec<Word>,
}

impl AutContext {
    pub fn new(dim: usize) -> Result<Self> {
        let presentation = Presentation::for_dimension(dim)?;
        let images = generator_images(dim)?;
        let involutive = presentation.involutions();
        let mut letters = Vec::new();
        for g in 0..presentation.generator_count() {
            letters.push(Letter::new(g, false));
            if !involutive[g] {
                letters.push(Letter::new(g, true));
            }
        }
        let letter_maps: Vec<AffineMap> = letters
            .iter()
            .map(|l| {
                let m = images[l.generator()];
                if l.is_inverse() { m.inverse() } else { m }
            })
            .collect();

        let mut radius = 2;
        loop {
            if let Some((linear_words, translation_words)) = shortest_words(dim, &letters, &letter_maps, radius) {
                return Ok(AutContext { presentation, images, linear_words, translation_words });
            }
            radius += 1;
        }
    }

    pub fn dim(&self) -> usize {
        self.images[0].dim()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn images(&self) -> &[AffineMap] {
        &self.images
    }

    /// A word for `(A, 0)`.
    pub fn linear_word(&self, a: &SignedPerm) -> &Word {
        &self.linear_words[a.code()]
    }

    /// A word for the unit translation along axis `j`.
    pub fn translation_word(&self, j: usize) -> &Word {
        &self.translation_words[j]
    }

    /// A word for an arbitrary element of `Aut(Z^d)`.
    pub fn word_for(&self, m: &AffineMap) -> Word {
        let mut w = Word::identity();
        for j in 0..self.dim() {
            w = w.concat(&self.translation_words[j].power(m.translation[j]));
        }
        w.concat(&self.linear_words[m.linear.code()])
    }

    /// The subgroup fixing coset 0 of `table`, read off the coset action: its
    /// translations are the stabilizer of coset 0 under the unit translations,
    /// and `(A, s)` lies in it exactly when `t_s` moves coset 0 to the coset
    /// reached by the inverse of `(A, 0)`.
    pub fn group_from_table(&self, table: &CosetTable) -> Result<CrystGroup> {
        let d = self.dim();
        let n = table.index();
        let mut label: Vec<Option<Vector>> = vec![None; n];
        label[0] = Some([0; MAX_DIM]);
        let mut queue = VecDeque::from([0usize]);
        let mut kernel = Vec::new();
        let inverse_words: Vec<Word> = self.translation_words.iter().map(Word::inverse).collect();
        while let Some(c) = queue.pop_front() {
            let v = label[c].expect("labelled before queued");
            for j in 0..d {
                for (w, step) in [(&self.translation_words[j], unit(j)), (&inverse_words[j], neg(&unit(j)))] {
                    let t = table.trace(c, w);
                    let u = crate::crystgeom::add(&v, &step);
                    match label[t] {
                        Some(old) => {
                            let diff = crate::crystgeom::sub(&u, &old);
                            if diff.iter().any(|&x| x != 0) {
                                kernel.push(diff);
                            }
                        }
                        None => {
                            label[t] = Some(u);
                            queue.push_back(t);
                        }
                    }
                }
            }
        }
        let lattice = IntegerLattice::hnf(d, &kernel)?;
        let mut reps = vec![None; hyperoctahedral_order(d)];
        for (code, w) in self.linear_words.iter().enumerate() {
            let c = table.trace(0, &w.inverse());
            if let Some(s) = label[c] {
                reps[code] = Some(lattice.reduce(&s));
            }
        }
        let g = CrystGroup::from_raw(lattice, reps);
        debug_assert_eq!(g.index(), n);
        Ok(g)
    }

    /// The group generated by the affine images of `words` together with
    /// nothing else.
    pub fn group_from_words(&self, words: &[Word]) -> Result<CrystGroup> {
        let gens: Vec<AffineMap> = words.iter().map(|w| word_to_affine(w, &self.images)).collect::<Result<_>>()?;
        CrystGroup::from_generators(self.dim(), &gens)
    }
}

/// Breadth-first search over elements whose translations stay within
/// `radius` (maximum norm), recording a shortest word for each target.
fn shortest_words(
    dim: usize,
    letters: &[Letter],
    maps: &[AffineMap],
    radius: i64,
) -> Option<(Vec<Word>, Vec<Word>)> {
    let order = hyperoctahedral_order(dim);
    let mut parent: BTreeMap<AffineMap, Option<(AffineMap, usize)>> = BTreeMap::new();
    let id = AffineMap::identity(dim);
    parent.insert(id, None);
    let mut queue = VecDeque::from([id]);
    let targets_total = order + dim;
    let is_target = |m: &AffineMap| {
        let t = m.translation;
        t == [0; MAX_DIM] || (m.linear.is_identity() && t.iter().filter(|&&x| x != 0).count() == 1 && t.iter().sum::<i64>() == 1)
    };
    let mut found = 1;
    while let Some(e) = queue.pop_front() {
        if found == targets_total {
            break;
        }
        for (k, m) in maps.iter().enumerate() {
            let x = e.compose(m);
            if x.translation.iter().any(|c| c.abs() > radius) || parent.contains_key(&x) {
                continue;
            }
            parent.insert(x, Some((e, k)));
            if is_target(&x) {
                found += 1;
            }
            queue.push_back(x);
        }
    }
    let word_of = |m: &AffineMap| -> Option<Word> {
        let mut letters_rev = Vec::new();
        let mut cur = *m;
        loop {
            match parent.get(&cur)? {
                None => break,
                Some((prev, k)) => {
                    letters_rev.push(letters[*k]);
                    cur = *prev;
                }
            }
        }
        letters_rev.reverse();
        Some(Word::from_letters(letters_rev))
    };
    let mut linear = Vec::with_capacity(order);
    for code in 0..order {
        linear.push(word_of(&AffineMap::linear(SignedPerm::from_code(dim, code)))?);
    }
    let mut translations = Vec::with_capacity(dim);
    for j in 0..dim {
        translations.push(word_of(&AffineMap::translation(dim, unit(j)))?);
    }
    Some((linear, translations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{coset_enumerate, low_index_subgroups};

    #[test]
    fn words_represent_their_targets() {
        for d in 1..=4 {
            let ctx = AutContext::new(d).unwrap();
            for code in 0..hyperoctahedral_order(d) {
                let a = SignedPerm::from_code(d, code);
                assert_eq!(word_to_affine(ctx.linear_word(&a), ctx.images()).unwrap(), AffineMap::linear(a));
            }
            for j in 0..d {
                let m = word_to_affine(ctx.translation_word(j), ctx.images()).unwrap();
                assert_eq!(m, AffineMap::translation(d, unit(j)));
            }
            let g = AffineMap::new(SignedPerm::from_code(d, 1), crate::crystgeom::vector(&[2, -1, 3, 0][..d]));
            assert_eq!(word_to_affine(&ctx.word_for(&g), ctx.images()).unwrap(), g);
        }
    }

    #[test]
    fn table_route_matches_generator_route() {
        for (d, max) in [(1, 6), (2, 12), (3, 8)] {
            let ctx = AutContext::new(d).unwrap();
            for s in low_index_subgroups(ctx.presentation(), max).unwrap() {
                let from_table = ctx.group_from_table(&s.coset_table).unwrap();
                let from_words = ctx.group_from_words(&s.coset_table.subgroup_words()).unwrap();
                assert_eq!(from_table, from_words);
                assert_eq!(from_table.index(), s.index());
                assert!(from_table.is_closed());
            }
        }
    }

    #[test]
    fn three_periodic_line() {
        let ctx = AutContext::new(1).unwrap();
        let w = [Word::from_generators(&[0, 0, 0]), Word::generator(1)];
        let t = coset_enumerate(ctx.presentation(), &w, 16).unwrap();
        let g = ctx.group_from_table(&t).unwrap();
        assert_eq!(g.index_decomposition(), (3, 1));
        assert_eq!(g, ctx.group_from_words(&w).unwrap());
    }

    #[test]
    fn words_for_group_elements_fix_coset_zero() {
        let ctx = AutContext::new(2).unwrap();
        for s in low_index_subgroups(ctx.presentation(), 8).unwrap() {
            let g = ctx.group_from_table(&s.coset_table).unwrap();
            for m in g.generators() {
                assert_eq!(s.coset_table.trace(0, &ctx.word_for(&m)), 0);
            }
        }
    }
}
