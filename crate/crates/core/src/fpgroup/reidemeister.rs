//! Reidemeister–Schreier presentations of finite-index subgroups.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::coset::{is_tree_edge, CosetTable};
use super::presentation::Presentation;
use super::word::{Letter, Word};
use crate::{Error, Result};

/// A presentation of a subgroup together with the data tying it to the parent.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    pub presentation: Presentation,
    /// Each subgroup generator as a word in the parent generators.
    pub generator_words: Vec<Word>,
    /// `edge_words[g][c]` rewrites the parent edge `c --g--> c^g` as the
    /// subgroup element `u_c g u_{c^g}^-1` in subgroup generators.
    edge_words: Vec<Vec<Word>>,
    parent_index: usize,
}

/// Generator names for presentations with many generators: `a..z`, then
/// code points from the CJK block.
pub fn default_names(count: usize) -> Vec<char> {
    (0..count)
        .map(|k| {
            if k < 26 {
                (b'a' + k as u8) as char
            } else {
                char::from_u32(0x4E00 + k as u32).expect("valid code point")
            }
        })
        .collect()
}

fn cyclic_reduce(w: &Word) -> Word {
    let mut letters: Vec<Letter> = w.free_reduce().letters().to_vec();
    while letters.len() >= 2 && letters[0] == letters[letters.len() - 1].inverse() {
        letters.pop();
        letters.remove(0);
    }
    Word::from_letters(letters)
}

/// Lexicographically least cyclic conjugate of `w` or of its inverse.
fn normal_relator(w: &Word) -> Word {
    let w = cyclic_reduce(w);
    let mut best: Option<Word> = None;
    for cand in [w.clone(), w.inverse()] {
        let l = cand.letters();
        for k in 0..l.len() {
            let mut rot = Vec::with_capacity(l.len());
            rot.extend_from_slice(&l[k..]);
            rot.extend_from_slice(&l[..k]);
            let rot = Word::from_letters(rot);
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

fn substitute(w: &Word, images: &[Word]) -> Word {
    let mut out = Word::identity();
    for &l in w.letters() {
        let img = &images[l.generator()];
        out = if l.is_inverse() { out.concat(&img.inverse()) } else { out.concat(img) };
    }
    out.free_reduce()
}

/// Presents the subgroup described by `table` on its Schreier generators.
///
/// The relators are all parent relators rewritten at every coset; the result
/// is not simplified (see [`SubgroupPresentation::simplify`]).
pub fn reidemeister_schreier(pres: &Presentation, table: &CosetTable) -> Result<SubgroupPresentation> {
    if table.generator_count() != pres.generator_count() || !table.is_closed_for(pres) {
        return Err(Error::InvalidPresentation("coset table does not belong to the presentation".into()));
    }
    let n = table.index();
    let (reps, parent) = table.spanning_tree();
    let involutive = pres.involutions();
    let gens = pres.generator_count();

    let mut generator_words = Vec::new();
    let mut edge_words = vec![vec![Word::identity(); n]; gens];
    let mut pending_inverse = Vec::new();
    for g in 0..gens {
        for c in 0..n {
            let t = table.action(g)[c] as usize;
            if is_tree_edge(&parent, c, g, t, involutive[g]) {
                continue;
            }
            if involutive[g] && t < c {
                pending_inverse.push((g, c, t));
                continue;
            }
            let k = generator_words.len();
            generator_words.push(reps[c].concat(&Word::generator(g)).concat(&reps[t].inverse()).free_reduce());
            edge_words[g][c] = Word::generator(k);
        }
    }
    for (g, c, t) in pending_inverse {
        edge_words[g][c] = edge_words[g][t].inverse();
    }

    let mut sp = SubgroupPresentation {
        presentation: Presentation::new(default_names(generator_words.len().max(1)), Vec::new())?,
        generator_words,
        edge_words,
        parent_index: n,
    };
    let mut relators = BTreeSet::new();
    for c in 0..n {
        for r in pres.relators() {
            let (w, end) = sp.rewrite(table, c, r);
            debug_assert_eq!(end, c);
            let w = normal_relator(&w);
            if !w.is_empty() {
                relators.insert(w);
            }
        }
    }
    if sp.generator_words.is_empty() {
        // the trivial group still needs one generator; kill it
        sp.generator_words.push(Word::identity());
        relators.insert(Word::generator(0));
    }
    sp.presentation = Presentation::new(default_names(sp.generator_words.len()), relators.into_iter().collect())?;
    Ok(sp)
}

impl SubgroupPresentation {
    pub fn parent_index(&self) -> usize {
        self.parent_index
    }

    /// Rewrites a parent word read from coset `start` as a subgroup word;
    /// also returns the coset reached.
    pub fn rewrite(&self, table: &CosetTable, start: usize, w: &Word) -> (Word, usize) {
        let mut out = Word::identity();
        let mut c = start;
        for &l in w.letters() {
            let g = l.generator();
            if l.is_inverse() {
                let prev = table.apply(c, l);
                out = out.concat(&self.edge_words[g][prev].inverse());
                c = prev;
            } else {
                out = out.concat(&self.edge_words[g][c]);
                c = table.apply(c, l);
            }
        }
        (out.free_reduce(), c)
    }

    /// Tietze elimination driven by relators of length one (`s = 1`) and
    /// length two (`s = t^±1`). Edge rewriting and generator words are kept
    /// consistent with the reduced generating set.
    pub fn simplify(mut self) -> Self {
        loop {
            let gens = self.generator_words.len();
            let relators: Vec<Word> = self.presentation.relators().to_vec();
            let mut elim: Option<(usize, Word)> = None;
            for r in &relators {
                let l = r.letters();
                if l.len() == 1 {
                    elim = Some((l[0].generator(), Word::identity()));
                    break;
                }
                if l.len() == 2 && l[0].generator() != l[1].generator() {
                    // x^e y^f = 1  =>  x = (y^f)^-e
                    let y = Word::from_letters(vec![l[1]]);
                    let img = if l[0].is_inverse() { y } else { y.inverse() };
                    elim = Some((l[0].generator(), img));
                    break;
                }
            }
            let Some((x, img)) = elim else { break };
            if gens == 1 {
                break;
            }
            // images of old generators in the new numbering (x removed)
            let renum = |g: usize| if g > x { g - 1 } else { g };
            let renumber = |w: &Word| {
                Word::from_letters(w.letters().iter().map(|l| Letter::new(renum(l.generator()), l.is_inverse())).collect())
            };
            let img = renumber(&img);
            let images: Vec<Word> = (0..gens)
                .map(|g| if g == x { img.clone() } else { Word::generator(renum(g)) })
                .collect();
            let mut rels = BTreeSet::new();
            for r in &relators {
                let w = normal_relator(&substitute(r, &images));
                if !w.is_empty() {
                    rels.insert(w);
                }
            }
            for row in &mut self.edge_words {
                for w in row.iter_mut() {
                    *w = substitute(w, &images);
                }
            }
            self.generator_words.remove(x);
            self.presentation = Presentation::new(default_names(gens - 1), rels.into_iter().collect())
                .expect("substitution keeps relators valid");
        }
        self
    }

    /// Coset table in the parent of a subgroup `K` of this subgroup, given
    /// the parent's table for this subgroup and `K`'s table over the
    /// subgroup presentation.
    pub fn induced_table(&self, parent: &Presentation, table: &CosetTable, sub: &CosetTable) -> Result<CosetTable> {
        let m = table.index();
        let k = sub.index();
        let mut action = vec![vec![0u32; m * k]; parent.generator_count()];
        for (g, perm) in action.iter_mut().enumerate() {
            for i in 0..m {
                let target = table.action(g)[i] as usize;
                let s = &self.edge_words[g][i];
                for j in 0..k {
                    let j2 = sub.trace(j, s);
                    perm[i * k + j] = (target * k + j2) as u32;
                }
            }
        }
        Ok(CosetTable::new(parent, action, None)?.standardize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystgeom::{generator_images, word_to_affine};
    use crate::fpgroup::{coset_enumerate, low_index_subgroups};

    #[test]
    fn index_one_gives_input_back() {
        for d in 1..=3 {
            let p = Presentation::for_dimension(d).unwrap();
            let all: Vec<Word> = (0..p.generator_count()).map(Word::generator).collect();
            let t = coset_enumerate(&p, &all, 4).unwrap();
            let sp = reidemeister_schreier(&p, &t).unwrap();
            assert_eq!(sp.generator_words, all);
            let mut expected: Vec<Word> = p.relators().iter().map(normal_relator).collect();
            expected.sort();
            expected.dedup();
            assert_eq!(sp.presentation.relators(), expected.as_slice());
        }
    }

    #[test]
    fn generator_words_lie_in_subgroup() {
        let p = Presentation::for_dimension(2).unwrap();
        for s in low_index_subgroups(&p, 8).unwrap() {
            let sp = reidemeister_schreier(&p, &s.coset_table).unwrap();
            for w in &sp.generator_words {
                assert_eq!(s.coset_table.trace(0, w), 0);
            }
            // the generator words generate the subgroup again
            let back = coset_enumerate(&p, &sp.generator_words, 64).unwrap();
            assert_eq!(back.index(), s.index());
        }
    }

    #[test]
    fn simplification_preserves_the_subgroup() {
        let p = Presentation::for_dimension(2).unwrap();
        for s in low_index_subgroups(&p, 8).unwrap() {
            let sp = reidemeister_schreier(&p, &s.coset_table).unwrap().simplify();
            assert!(sp.generator_words.len() <= s.index() * 3);
            for w in &sp.generator_words {
                assert_eq!(s.coset_table.trace(0, w), 0);
            }
            let back = coset_enumerate(&p, &sp.generator_words, 64).unwrap();
            assert_eq!(back.index(), s.index());
            // every subgroup relator maps to the identity of Aut(Z^2), checked
            // in the faithful affine representation
            let images = generator_images(2).unwrap();
            for r in sp.presentation.relators() {
                let parent_word = substitute(r, &sp.generator_words);
                assert!(word_to_affine(&parent_word, &images).unwrap().is_identity());
            }
        }
    }
}
