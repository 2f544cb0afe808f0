use alloc::vec::Vec;

use super::affine::{vector, AffineMap};
use super::signed_perm::SignedPerm;
use crate::fpgroup::Word;
use crate::{Error, Result};

/// Affine images of the generators of [`Presentation::for_dimension`], in
/// generator order.
///
/// [`Presentation::for_dimension`]: crate::fpgroup::Presentation::for_dimension
pub fn generator_images(d: usize) -> Result<Vec<AffineMap>> {
    // (row images as (column, sign), translation)
    let table: &[(&[(usize, i64)], &[i64])] = match d {
        1 => &[(&[(0, 1)], &[1]), (&[(0, -1)], &[0])],
        2 => &[
            (&[(0, -1), (1, 1)], &[0, 0]),
            (&[(0, 1), (1, -1)], &[0, 1]),
            (&[(1, 1), (0, 1)], &[0, 0]),
        ],
        3 => &[
            (&[(0, 1), (1, 1), (2, -1)], &[0, 0, 0]),
            (&[(0, -1), (1, 1), (2, 1)], &[1, 0, 0]),
            (&[(1, 1), (0, 1), (2, 1)], &[0, 0, 0]),
            (&[(0, 1), (2, 1), (1, 1)], &[0, 0, 0]),
        ],
        4 => &[
            (&[(1, 1), (0, 1), (2, 1), (3, 1)], &[0, 0, 0, 0]),
            (&[(0, 1), (1, 1), (2, -1), (3, 1)], &[0, 0, 0, 0]),
            (&[(0, -1), (1, 1), (2, 1), (3, 1)], &[1, 0, 0, 0]),
            (&[(0, 1), (2, 1), (1, 1), (3, 1)], &[0, 0, 0, 0]),
            (&[(0, 1), (1, 1), (3, 1), (2, 1)], &[0, 0, 0, 0]),
        ],
        _ => return Err(Error::DimensionOutOfRange(d)),
    };
    table.iter()
        .map(|(rows, t)| Ok(AffineMap::new(SignedPerm::new(d, rows)?, vector(t))))
        .collect()
}

/// The product of the generator images, read left to right: `w = x1 x2 ...`
/// maps to `f(x1) ∘ f(x2) ∘ ...`.
pub fn word_to_affine(w: &Word, images: &[AffineMap]) -> Result<AffineMap> {
    let dim = images.first().map(|m| m.dim()).ok_or(Error::UnknownGenerator(0))?;
    let mut out = AffineMap::identity(dim);
    for &l in w.letters() {
        let g = images.get(l.generator()).ok_or(Error::UnknownGenerator(l.generator()))?;
        out = if l.is_inverse() { out.compose(&g.inverse()) } else { out.compose(g) };
    }
    Ok(out)
}
