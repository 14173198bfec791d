//! Words over signed generator letters.
//!
//! Generators are numbered from zero and printed as `a, b, c, ...`; an
//! inverse letter is printed in upper case, so `aBAb` is `a b⁻¹ a⁻¹ b`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u8,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: u8, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn gen(generator: u8) -> Self {
        Letter::new(generator, false)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    pub fn to_char(self) -> char {
        let c = (b'a' + self.generator) as char;
        if self.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        if c.is_ascii_lowercase() {
            Some(Letter::gen(c as u8 - b'a'))
        } else if c.is_ascii_uppercase() {
            Some(Letter::new(c.to_ascii_lowercase() as u8 - b'a', true))
        } else {
            None
        }
    }
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// Builds a word and freely reduces it.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn generator(g: u8) -> Self {
        Word {
            letters: vec![Letter::gen(g)],
        }
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

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Self {
        Word::new(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`.
    pub fn commutator(x: &Word, y: &Word) -> Self {
        x.inverse().mul(&y.inverse()).mul(x).mul(y)
    }

    /// Largest generator index used plus one.
    pub fn rank(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.generator as usize + 1)
            .max()
            .unwrap_or(0)
    }

    /// Exponent sum of each generator, for `num_generators` generators.
    pub fn exponent_sums(&self, num_generators: usize) -> Vec<i64> {
        let mut sums = vec![0i64; num_generators.max(self.rank())];
        for l in &self.letters {
            sums[l.generator as usize] += if l.inverse { -1 } else { 1 };
        }
        sums
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" || s == "e" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            let l = Letter::from_char(c).ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: format!("unexpected character `{c}`"),
            })?;
            letters.push(l);
        }
        Ok(Word::new(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction_cancels_adjacent_inverses() {
        let w = Word::parse("abBA").unwrap();
        assert!(w.is_empty());
        assert_eq!(Word::parse("aAb").unwrap().to_string(), "b");
    }

    #[test]
    fn commutator_of_generators() {
        let a = Word::generator(0);
        let b = Word::generator(1);
        assert_eq!(Word::commutator(&a, &b).to_string(), "ABab");
        assert!(Word::commutator(&a, &a).is_empty());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Word::parse("a-b").is_err());
    }
}
