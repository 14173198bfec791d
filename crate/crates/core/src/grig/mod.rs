//! The first Grigorchuk group `Γ = <a, b, c, d>` acting on the binary tree.
//!
//! Wreath recursion: `a` swaps the two subtrees, `b = (a, c)`, `c = (a, d)`
//! and `d = (1, b)`. Words act left to right: in `gh` the element `g` acts
//! first, so `(gh)|_x = g|_x h|_{g(x)}`. The base identity
//! `(ab)^2 d (ab)^-2 d = (1, (ab)^2)` holds under this convention and under
//! its mirror image (see [`base_identity_holds`]).
//!
//! Binary strings are packed into `u32` with the first letter in bit 0.

mod deep;
mod growth;
mod level;

pub use deep::{sections_at_level, verify_deep, witness_deep, DeepConstruction, DeepWitness};
pub use growth::{
    f_grig, grig_ball, k_congruence_grig, verify_grig_witness, GrigBall, GrigBallEntry,
    GrigBracket, RADIUS_CAP,
};
pub use level::{gamma_order, gamma_order_formula, GammaMethod, LevelAction};

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest level scanned by [`depth`].
pub const DEPTH_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
    C,
    D,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::A, Gen::B, Gen::C, Gen::D];

    pub fn to_char(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
            Gen::C => 'c',
            Gen::D => 'd',
        }
    }

    pub fn from_char(c: char) -> Option<Gen> {
        match c {
            'a' | 'A' => Some(Gen::A),
            'b' | 'B' => Some(Gen::B),
            'c' | 'C' => Some(Gen::C),
            'd' | 'D' => Some(Gen::D),
            _ => None,
        }
    }

    /// Product of two distinct letters of the Klein group `{1, b, c, d}`.
    fn klein(self, other: Gen) -> Gen {
        match (self, other) {
            (Gen::B, Gen::C) | (Gen::C, Gen::B) => Gen::D,
            (Gen::B, Gen::D) | (Gen::D, Gen::B) => Gen::C,
            (Gen::C, Gen::D) | (Gen::D, Gen::C) => Gen::B,
            _ => unreachable!("klein product of {self:?} and {other:?}"),
        }
    }

    /// Section at the child `bit`.
    pub fn section(self, bit: u32) -> Option<Gen> {
        match (self, bit) {
            (Gen::A, _) => None,
            (Gen::B, 0) => Some(Gen::A),
            (Gen::B, _) => Some(Gen::C),
            (Gen::C, 0) => Some(Gen::A),
            (Gen::C, _) => Some(Gen::D),
            (Gen::D, 0) => None,
            (Gen::D, _) => Some(Gen::B),
        }
    }

    /// Image of the `len`-letter string `s`.
    pub fn act(self, s: u32, len: usize) -> u32 {
        let mut state = Some(self);
        let mut out = s;
        let mut pos = 0;
        while let Some(g) = state {
            if pos >= len {
                break;
            }
            if g == Gen::A {
                out ^= 1 << pos;
                break;
            }
            state = g.section((s >> pos) & 1);
            pos += 1;
        }
        out
    }
}

/// Reduced word over `{a, b, c, d}`: no letter repeats and no two letters
/// of `{b, c, d}` are adjacent, so `a` alternates with the others.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrigWord {
    letters: Vec<Gen>,
}

impl GrigWord {
    pub fn identity() -> Self {
        GrigWord::default()
    }

    /// Reduces with `xx = 1` and `bc = cb = d`, `bd = db = c`, `cd = dc = b`.
    pub fn reduce(letters: impl IntoIterator<Item = Gen>) -> Self {
        let mut out: Vec<Gen> = Vec::new();
        for x in letters {
            match out.last() {
                Some(&y) if y == x => {
                    out.pop();
                }
                Some(&y) if y != Gen::A && x != Gen::A => {
                    *out.last_mut().unwrap() = y.klein(x);
                }
                _ => out.push(x),
            }
        }
        GrigWord { letters: out }
    }

    pub fn generator(g: Gen) -> Self {
        GrigWord { letters: vec![g] }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" || s == "e" {
            return Ok(GrigWord::identity());
        }
        let letters = s
            .chars()
            .map(|c| {
                Gen::from_char(c).ok_or_else(|| Error::Parse {
                    input: s.into(),
                    reason: format!("`{c}` is not one of a, b, c, d"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::reduce(letters))
    }

    pub fn letters(&self) -> &[Gen] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &GrigWord) -> GrigWord {
        Self::reduce(self.letters.iter().chain(&other.letters).copied())
    }

    /// Every generator is an involution, so the inverse is the reversal.
    pub fn inverse(&self) -> GrigWord {
        GrigWord {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    pub fn pow(&self, e: usize) -> GrigWord {
        (0..e).fold(GrigWord::identity(), |acc, _| acc.mul(self))
    }

    /// Parity of the number of `a` letters: whether the root is swapped.
    pub fn swaps_root(&self) -> bool {
        self.letters.iter().filter(|&&g| g == Gen::A).count() % 2 == 1
    }
}

impl fmt::Display for GrigWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        self.letters
            .iter()
            .try_for_each(|g| write!(f, "{}", g.to_char()))
    }
}

/// Wreath decomposition `g = (g0, g1)` followed by an optional root swap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sections {
    pub g0: GrigWord,
    pub g1: GrigWord,
    pub swap: bool,
}

impl Sections {
    pub fn get(&self, bit: u32) -> &GrigWord {
        if bit == 0 {
            &self.g0
        } else {
            &self.g1
        }
    }
}

/// Order in which the letters of a word act.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// Leftmost letter first. Used throughout.
    LeftToRight,
    /// Rightmost letter first, as composed functions.
    RightToLeft,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::RightToLeft => "right-to-left",
            Convention::LeftToRight => "left-to-right",
        }
    }
}

pub fn sections(g: &GrigWord) -> Sections {
    sections_with(g, Convention::LeftToRight)
}

pub fn sections_with(g: &GrigWord, convention: Convention) -> Sections {
    let section_at = |start: u32| -> GrigWord {
        let mut vertex = start;
        let mut parts = Vec::with_capacity(g.len());
        let mut visit = |x: Gen| {
            if let Some(s) = x.section(vertex) {
                parts.push(s);
            }
            if x == Gen::A {
                vertex ^= 1;
            }
        };
        match convention {
            Convention::RightToLeft => {
                g.letters.iter().rev().for_each(|&x| visit(x));
                parts.reverse();
            }
            Convention::LeftToRight => g.letters.iter().for_each(|&x| visit(x)),
        }
        GrigWord::reduce(parts)
    };
    Sections {
        g0: section_at(0),
        g1: section_at(1),
        swap: g.swaps_root(),
    }
}

/// Image of the `len`-letter string `s`, applying one letter at a time.
pub fn act(g: &GrigWord, s: u32, len: usize) -> u32 {
    g.letters.iter().fold(s, |acc, x| x.act(acc, len))
}

/// Image of `s` computed through the wreath recursion instead.
pub fn act_via_sections(g: &GrigWord, s: u32, len: usize) -> u32 {
    if len == 0 || g.is_empty() {
        return s;
    }
    let secs = sections(g);
    let bit = s & 1;
    let head = bit ^ secs.swap as u32;
    head | (act_via_sections(secs.get(bit), s >> 1, len - 1) << 1)
}

/// Word problem by contraction: sections of a reduced word of length at
/// least 2 are strictly shorter.
pub fn is_trivial(g: &GrigWord) -> bool {
    if g.is_empty() {
        return true;
    }
    if g.len() == 1 || g.swaps_root() {
        return false;
    }
    let secs = sections(g);
    is_trivial(&secs.g0) && is_trivial(&secs.g1)
}

/// Equality in `Γ`.
pub fn same_element(g: &GrigWord, h: &GrigWord) -> bool {
    is_trivial(&g.mul(&h.inverse()))
}

/// Least level on which `g` acts nontrivially, by scanning every string.
pub fn depth(g: &GrigWord) -> Result<usize> {
    if is_trivial(g) {
        return Err(Error::TrivialElement);
    }
    (1..=DEPTH_CAP)
        .find(|&k| (0..1u32 << k).any(|s| act(g, s, k) != s))
        .ok_or(Error::Exhausted {
            bound: DEPTH_CAP as u64,
        })
}

/// Whether `g` fixes every string of length `depth`, by walking the tree
/// with one automaton state per letter. Independent of the reduction rules
/// and of [`is_trivial`].
pub fn acts_trivially_to_depth(g: &GrigWord, depth: usize) -> bool {
    let states: Vec<Gen> = g.letters.clone();
    let mut memo: HashSet<(Vec<Gen>, usize)> = HashSet::new();
    fixes_subtree(states, depth, &mut memo)
}

fn fixes_subtree(states: Vec<Gen>, depth: usize, memo: &mut HashSet<(Vec<Gen>, usize)>) -> bool {
    if depth == 0 || states.is_empty() {
        return true;
    }
    if memo.contains(&(states.clone(), depth)) {
        return true;
    }
    for bit in 0..2u32 {
        let mut b = bit;
        let mut next = Vec::with_capacity(states.len());
        for &x in &states {
            if let Some(s) = x.section(b) {
                next.push(s);
            }
            if x == Gen::A {
                b ^= 1;
            }
        }
        if b != bit {
            return false;
        }
        if !fixes_subtree(next, depth - 1, memo) {
            return false;
        }
    }
    memo.insert((states, depth));
    true
}

/// `(ab)^2 d (ab)^-2 d`, written out before reduction.
pub fn base_word_raw() -> Vec<Gen> {
    use Gen::*;
    vec![A, B, A, B, D, B, A, B, A, D]
}

/// Whether `(ab)^2 d (ab)^-2 d = (1, (ab)^2)` under `convention`.
pub fn base_identity_holds(convention: Convention) -> bool {
    let g = GrigWord::reduce(base_word_raw());
    let secs = sections_with(&g, convention);
    let abab = GrigWord::parse("abab").unwrap();
    !secs.swap && is_trivial(&secs.g0) && same_element(&secs.g1, &abab)
}
