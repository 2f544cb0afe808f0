//! SVG pictures of plane colourings and text slices of space colourings.

use std::fmt::Write;

use latcol_core::crystgeom::vector;
use latcol_core::orbits::OrbitPartition;

use crate::error::{CatalogError, Result};

const CELL: usize = 16;

const PALETTE: [&str; 12] = [
    "#1b1b1b", "#f2f2f2", "#d1495b", "#00798c", "#edae49", "#66a182", "#2e4057", "#8d96a3", "#b56576", "#6d597a",
    "#e56b6f", "#355070",
];

pub fn colour_hex(c: u32) -> &'static str {
    PALETTE[c as usize % PALETTE.len()]
}

/// A `window x window` patch of the plane, one square per node, coloured by
/// class. Row `y = 0` is at the bottom.
pub fn render_svg(p: &OrbitPartition, window: usize) -> Result<String> {
    if p.dim() != 2 {
        return Err(CatalogError::Unsupported(format!("SVG rendering needs d = 2, got d = {}", p.dim())));
    }
    let side = window * CELL;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}" shape-rendering="crispEdges">"#
    )
    .unwrap();
    for y in 0..window {
        for x in 0..window {
            let c = p.color_of(&vector(&[x as i64, y as i64]));
            let top = (window - 1 - y) * CELL;
            writeln!(
                s,
                r#"<rect x="{}" y="{top}" width="{CELL}" height="{CELL}" fill="{}" data-colour="{c}"/>"#,
                x * CELL,
                colour_hex(c)
            )
            .unwrap();
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// Layers `z = 0 .. window` of a colouring of `Z^3`, each a grid of colour
/// digits with `y` increasing downwards.
pub fn render_slices(p: &OrbitPartition, window: usize) -> Result<String> {
    if p.dim() != 3 {
        return Err(CatalogError::Unsupported(format!("slices need d = 3, got d = {}", p.dim())));
    }
    let mut s = String::new();
    for z in 0..window {
        writeln!(s, "z = {z}").unwrap();
        for y in 0..window {
            let row: Vec<String> =
                (0..window).map(|x| p.color_of(&vector(&[x as i64, y as i64, z as i64])).to_string()).collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
        s.push('\n');
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use latcol_core::crystgeom::IntegerLattice;

    fn chessboard() -> OrbitPartition {
        OrbitPartition::new(IntegerLattice::hnf(2, &[vector(&[1, 1]), vector(&[0, 2])]).unwrap(), vec![0, 1]).unwrap()
    }

    #[test]
    fn chessboard_window_eight() {
        let svg = render_svg(&chessboard(), 8).unwrap();
        assert_eq!(svg.matches(r#"data-colour="0""#).count(), 32);
        assert_eq!(svg.matches(r#"data-colour="1""#).count(), 32);
        assert_eq!(svg.matches("<rect").count(), 64);
    }

    #[test]
    fn wrong_dimension() {
        let line = OrbitPartition::new(IntegerLattice::hnf(1, &[vector(&[2])]).unwrap(), vec![0, 1]).unwrap();
        assert!(render_svg(&line, 4).is_err());
        assert!(render_slices(&chessboard(), 4).is_err());
    }
}
