use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use super::word::{Letter, Word};
use crate::{Error, Result};

/// A finitely presented group `<generators | relators>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<char>,
    relators: Vec<Word>,
}

/// Generator names and relators of the Coxeter-type presentations of `Aut(Z^d)`.
const TABLE: [(&str, &[&str]); 4] = [
    ("ab", &["b^2", "abab"]),
    ("abc", &["a^2", "b^2", "c^2", "(ba)^2", "(cb)^4", "(ca)^4"]),
    (
        "abcd",
        &["a^2", "b^2", "c^2", "d^2", "(ac)^2", "(bd)^2", "(ba)^2", "(cd)^3", "(da)^4", "(cb)^4"],
    ),
    (
        "abcdf",
        &[
            "a^2", "b^2", "c^2", "d^2", "f^2", "(ba)^2", "(cd)^2", "(cb)^2", "(af)^2", "(cf)^2",
            "(df)^3", "(da)^3", "(dfbf)^2", "(ca)^4", "(db)^4", "(bf)^4",
        ],
    ),
];

impl Presentation {
    pub fn new(names: Vec<char>, relators: Vec<Word>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidPresentation("no generators".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidPresentation(alloc::format!("duplicate generator '{n}'")));
            }
        }
        for r in &relators {
            if r.is_empty() {
                return Err(Error::InvalidPresentation("empty relator".into()));
            }
            if r.letters().iter().any(|l| l.generator() >= names.len()) {
                return Err(Error::InvalidPresentation("generator index out of range".into()));
            }
        }
        Ok(Presentation { names, relators })
    }

    /// Presentation of `Aut(Z^d)` for `d` in `1..=4`.
    ///
    /// For `d = 1` the generators are the unit translation `a` and the
    /// inversion `b`; for `d >= 2` all generators are reflections.
    pub fn for_dimension(d: usize) -> Result<Self> {
        if !(1..=4).contains(&d) {
            return Err(Error::DimensionOutOfRange(d));
        }
        let (names, relators) = TABLE[d - 1];
        let names: Vec<char> = names.chars().collect();
        let relators = relators
            .iter()
            .map(|r| Word::parse(r, &names))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(names, relators)
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// True if `g^2` (or `g^-2`) is one of the relators.
    pub fn is_involution(&self, g: usize) -> bool {
        self.relators.iter().any(|r| {
            r.len() == 2 && r.letters()[0].generator() == g && r.letters()[0] == r.letters()[1]
        })
    }

    pub fn involutions(&self) -> Vec<bool> {
        (0..self.generator_count()).map(|g| self.is_involution(g)).collect()
    }

    pub fn generator_word(&self, g: usize) -> Word {
        Word::from_letters(alloc::vec![Letter::new(g, false)])
    }

    /// Parses the text form: an optional `generators: a b c` header followed
    /// by one relator per line. `#` starts a comment. Without a header the
    /// generators are `a` up to the largest letter used.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Option<Vec<char>> = None;
        let mut lines = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("generators:") {
                let list: Vec<char> = rest.chars().filter(|c| c.is_ascii_lowercase()).collect();
                names = Some(list);
            } else {
                lines.push(line);
            }
        }
        let names = match names {
            Some(n) => n,
            None => {
                let max = lines
                    .iter()
                    .flat_map(|l| l.chars())
                    .filter(|c| c.is_ascii_alphabetic())
                    .map(|c| c.to_ascii_lowercase())
                    .max()
                    .ok_or_else(|| Error::Parse("no generators".into()))?;
                ('a'..=max).collect()
            }
        };
        let relators = lines
            .iter()
            .map(|l| Word::parse(l, &names))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(names, relators)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("generators:");
        for n in &self.names {
            let _ = write!(out, " {n}");
        }
        out.push('\n');
        for r in &self.relators {
            out.push_str(&r.display_with(&self.names));
            out.push('\n');
        }
        out
    }
}
