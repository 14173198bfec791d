//! Elements `(1, ..., 1, (ab)^2)` deep in the level stabilizers.
//!
//! The base word `(ab)^2 d (ab)^-2 d` equals `(1, (ab)^2)`. For the
//! inductive step each of `b`, `c`, `d` is tried as a conjugator and the
//! result is checked through its sections. Conjugation by a generator
//! cannot move the one nontrivial section down a level (it fixes the depth
//! of every element), so in practice the step falls through to the lift
//! `σ: a -> aca, b -> d, c -> b, d -> c`, which satisfies
//! `σ(g) = (σ_0(g), g)` and keeps the verified section pattern one level
//! lower. Either way the result is verified before it is returned.

use super::{base_word_raw, is_trivial, same_element, sections, Gen, GrigWord};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeepConstruction {
    Base,
    Conjugation(Gen),
    SigmaLift,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeepWitness {
    pub k: usize,
    pub word: GrigWord,
    /// How each level was obtained, starting with the base word.
    pub steps: Vec<DeepConstruction>,
}

/// Sections at all `2^k` vertices of level `k`, indexed by packed string,
/// or `None` when `g` moves some vertex of level `k`.
pub fn sections_at_level(g: &GrigWord, k: usize) -> Option<Vec<GrigWord>> {
    let mut level = vec![g.clone()];
    for j in 0..k {
        let mut next = vec![GrigWord::identity(); 1 << (j + 1)];
        for (u, h) in level.iter().enumerate() {
            let s = sections(h);
            if s.swap {
                return None;
            }
            next[u] = s.g0;
            next[u | (1 << j)] = s.g1;
        }
        level = next;
    }
    Some(level)
}

/// `g` fixes level `k`, its sections there are trivial except at `1^k`,
/// and that one equals `(ab)^2`.
pub fn verify_deep(g: &GrigWord, k: usize) -> bool {
    let Some(secs) = sections_at_level(g, k) else {
        return false;
    };
    let abab = GrigWord::parse("abab").expect("valid word");
    let (last, rest) = secs.split_last().expect("at least one vertex");
    rest.iter().all(is_trivial) && same_element(last, &abab)
}

fn sigma(g: &GrigWord) -> GrigWord {
    GrigWord::reduce(g.letters().iter().flat_map(|&x| match x {
        Gen::A => vec![Gen::A, Gen::C, Gen::A],
        Gen::B => vec![Gen::D],
        Gen::C => vec![Gen::B],
        Gen::D => vec![Gen::C],
    }))
}

pub fn witness_deep(k: usize) -> Result<DeepWitness> {
    if k == 0 {
        return Err(Error::Precondition("witness_deep needs k >= 1".into()));
    }
    let mut word = GrigWord::reduce(base_word_raw());
    if !verify_deep(&word, 1) {
        return Err(Error::Verification(format!(
            "base word {word} is not (1, (ab)^2)"
        )));
    }
    let mut steps = vec![DeepConstruction::Base];
    for level in 2..=k {
        let conjugated = [Gen::B, Gen::C, Gen::D].into_iter().find_map(|x| {
            let x = GrigWord::generator(x);
            let candidate = x.mul(&word).mul(&x);
            verify_deep(&candidate, level).then_some((x.letters()[0], candidate))
        });
        match conjugated {
            Some((x, candidate)) => {
                word = candidate;
                steps.push(DeepConstruction::Conjugation(x));
            }
            None => {
                let lifted = sigma(&word);
                if !verify_deep(&lifted, level) {
                    return Err(Error::Verification(format!(
                        "no construction verifies at level {level}"
                    )));
                }
                word = lifted;
                steps.push(DeepConstruction::SigmaLift);
            }
        }
    }
    Ok(DeepWitness { k, word, steps })
}
