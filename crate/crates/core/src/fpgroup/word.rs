use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A generator or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u16);

impl Letter {
    pub const fn new(generator: usize, inverse: bool) -> Self {
        Letter(((generator as u16) << 1) | inverse as u16)
    }

    pub const fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub const fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub const fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }
}

/// A word in the generators of a presentation; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// Word made of positive generator letters.
    pub fn from_generators(gens: &[usize]) -> Self {
        Word {
            letters: gens.iter().map(|&g| Letter::new(g, false)).collect(),
        }
    }

    pub fn generator(g: usize) -> Self {
        Word::from_generators(&[g])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn power(&self, exponent: i64) -> Word {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * exponent.unsigned_abs() as usize);
        for _ in 0..exponent.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// Cancels adjacent `x x^-1` pairs.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Removes involutive letters occurring twice in a row and rewrites
    /// inverses of involutions as the generator itself.
    pub fn reduce_involutions(&self, involutive: &[bool]) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            let l = if involutive.get(l.generator()).copied().unwrap_or(false) {
                Letter::new(l.generator(), false)
            } else {
                l
            };
            if out.last() == Some(&l.inverse())
                || (out.last() == Some(&l) && involutive.get(l.generator()).copied().unwrap_or(false))
            {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Renders the word with the given generator names; inverses are upper case.
    pub fn display_with(&self, names: &[char]) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|l| {
                let c = names.get(l.generator()).copied().unwrap_or('?');
                if l.is_inverse() {
                    c.to_ascii_uppercase()
                } else {
                    c
                }
            })
            .collect()
    }

    /// Parses a word such as `(cb)^4`, `abAB` or `a^-2 b`.
    ///
    /// Upper-case letters denote inverses; `1` is the empty word.
    pub fn parse(text: &str, names: &[char]) -> Result<Word> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let word = parse_sequence(&chars, &mut pos, names)?;
        if pos != chars.len() {
            return Err(Error::Parse(alloc::format!("unexpected '{}' in {text:?}", chars[pos])));
        }
        Ok(word)
    }
}

fn parse_sequence(chars: &[char], pos: &mut usize, names: &[char]) -> Result<Word> {
    let mut word = Word::identity();
    while *pos < chars.len() && chars[*pos] != ')' {
        let atom = match chars[*pos] {
            '(' => {
                *pos += 1;
                let inner = parse_sequence(chars, pos, names)?;
                if chars.get(*pos) != Some(&')') {
                    return Err(Error::Parse("unbalanced parenthesis".to_string()));
                }
                *pos += 1;
                inner
            }
            '1' => {
                *pos += 1;
                Word::identity()
            }
            c if c.is_ascii_alphabetic() => {
                *pos += 1;
                let lower = c.to_ascii_lowercase();
                let g = names
                    .iter()
                    .position(|&n| n == lower)
                    .ok_or_else(|| Error::Parse(alloc::format!("unknown generator '{c}'")))?;
                Word::from_letters(alloc::vec![Letter::new(g, c.is_ascii_uppercase())])
            }
            c => return Err(Error::Parse(alloc::format!("unexpected '{c}'"))),
        };
        let atom = if chars.get(*pos) == Some(&'^') {
            *pos += 1;
            let start = *pos;
            if chars.get(*pos) == Some(&'-') {
                *pos += 1;
            }
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let digits: String = chars[start..*pos].iter().collect();
            let exponent: i64 = digits
                .parse()
                .map_err(|_| Error::Parse(alloc::format!("bad exponent {digits:?}")))?;
            atom.power(exponent)
        } else {
            atom
        };
        word = word.concat(&atom);
    }
    Ok(word)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<char> = ('a'..='z').collect();
        f.write_str(&self.display_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NAMES: [char; 3] = ['a', 'b', 'c'];

    #[test]
    fn parse_powers_and_inverses() {
        let w = Word::parse("(cb)^2", &NAMES).unwrap();
        assert_eq!(w, Word::from_generators(&[2, 1, 2, 1]));
        let w = Word::parse("a^-2b", &NAMES).unwrap();
        assert_eq!(w.display_with(&NAMES), "AAb");
        assert_eq!(Word::parse("1", &NAMES).unwrap(), Word::identity());
        assert!(Word::parse("ax", &NAMES).is_err());
        assert!(Word::parse("(ab", &NAMES).is_err());
    }

    #[test]
    fn free_reduction() {
        let w = Word::parse("abBAc", &NAMES).unwrap();
        assert_eq!(w.free_reduce(), Word::generator(2));
        let w = Word::parse("abbc", &NAMES).unwrap();
        assert_eq!(w.reduce_involutions(&[false, true, false]).display_with(&NAMES), "ac");
    }

    #[test]
    fn inverse_reverses() {
        let w = Word::parse("abC", &NAMES).unwrap();
        assert_eq!(w.inverse().display_with(&NAMES), "cBA");
        assert_eq!(w.concat(&w.inverse()).free_reduce(), Word::identity());
    }
}
