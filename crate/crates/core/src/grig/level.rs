//! Level quotients `Γ_k`: the action of `Γ` on strings of length `k`.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::One;

use super::{act, Gen, GrigWord};
use crate::error::{Error, Result};

/// Permutation of the `2^k` strings of length `k`, as a table indexed by the
/// packed string.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelAction {
    pub k: usize,
    pub table: Vec<u32>,
}

impl LevelAction {
    pub fn identity(k: usize) -> Self {
        LevelAction {
            k,
            table: (0..1u32 << k).collect(),
        }
    }

    pub fn of_generator(g: Gen, k: usize) -> Self {
        LevelAction {
            k,
            table: (0..1u32 << k).map(|s| g.act(s, k)).collect(),
        }
    }

    pub fn of_word(g: &GrigWord, k: usize) -> Self {
        LevelAction {
            k,
            table: (0..1u32 << k).map(|s| act(g, s, k)).collect(),
        }
    }

    /// `self` followed by `next`: the action of the word `self * next`.
    pub fn then(&self, next: &LevelAction) -> LevelAction {
        LevelAction {
            k: self.k,
            table: self.table.iter().map(|&s| next.table[s as usize]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &s)| i as u32 == s)
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.table.len()];
        self.table
            .iter()
            .all(|&s| !std::mem::replace(&mut seen[s as usize], true))
    }

    /// The induced action on strings of length `j <= k`.
    pub fn truncate(&self, j: usize) -> LevelAction {
        let mask = (1u32 << j) - 1;
        LevelAction {
            k: j,
            table: (0..1u32 << j)
                .map(|s| self.table[s as usize] & mask)
                .collect(),
        }
    }

    /// Least level on which the action is nontrivial.
    pub fn depth(&self) -> Option<usize> {
        (1..=self.k).find(|&j| {
            let mask = (1u32 << j) - 1;
            (0..1u32 << j).any(|s| self.table[s as usize] & mask != s)
        })
    }

    /// Swap labels at the `2^k - 1` inner vertices, breadth first: the
    /// vertex reached by the prefix `u` of length `j` has index
    /// `2^j - 1 + u`.
    pub fn portrait(&self) -> Vec<bool> {
        let mut out = Vec::with_capacity((1 << self.k) - 1);
        for j in 0..self.k {
            for u in 0..1u32 << j {
                out.push((self.table[u as usize] >> j) & 1 == 1);
            }
        }
        out
    }

    pub fn from_portrait(k: usize, labels: &[bool]) -> Result<Self> {
        if labels.len() != (1 << k) - 1 {
            return Err(Error::Precondition(format!(
                "a level-{k} portrait has {} labels",
                (1 << k) - 1
            )));
        }
        let table = (0..1u32 << k)
            .map(|s| {
                let mut out = s;
                for j in 0..k {
                    let prefix = s & ((1 << j) - 1);
                    if labels[(1 << j) - 1 + prefix as usize] {
                        out ^= 1 << j;
                    }
                }
                out
            })
            .collect();
        Ok(LevelAction { k, table })
    }
}

/// Portrait packed into a `u32`, for levels up to 5.
fn pack(table: &[u32], k: usize) -> u32 {
    let mut out = 0u32;
    let mut idx = 0;
    for j in 0..k {
        for &t in &table[..1usize << j] {
            out |= ((t >> j) & 1) << idx;
            idx += 1;
        }
    }
    out
}

fn unpack(portrait: u32, k: usize, table: &mut [u32]) {
    for (s, slot) in table.iter_mut().enumerate() {
        let mut out = s as u32;
        for j in 0..k {
            let prefix = s & ((1 << j) - 1);
            out ^= ((portrait >> ((1 << j) - 1 + prefix)) & 1) << j;
        }
        *slot = out;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaMethod {
    /// Closure of the generator actions.
    Bfs,
    /// `|Γ_k| = 2^(5 * 2^(k-3) + 2)` for `k >= 3`.
    Formula,
}

pub const BFS_LEVEL_MAX: usize = 5;

/// `|Γ_k|`. The formula only covers `k >= 3`; smaller levels fall back to
/// the closure.
pub fn gamma_order(k: usize, method: GammaMethod) -> Result<BigUint> {
    if k == 0 {
        return Ok(BigUint::one());
    }
    match method {
        GammaMethod::Formula if k >= 3 => Ok(gamma_order_formula(k)),
        _ => gamma_order_bfs(k),
    }
}

pub fn gamma_order_formula(k: usize) -> BigUint {
    debug_assert!(k >= 3);
    BigUint::one() << (5 * (1usize << (k - 3)) + 2)
}

fn gamma_order_bfs(k: usize) -> Result<BigUint> {
    if k > BFS_LEVEL_MAX {
        return Err(Error::StateCapExceeded { cap: BFS_LEVEL_MAX });
    }
    let n = 1usize << k;
    let gens: Vec<Vec<u32>> = Gen::ALL
        .iter()
        .map(|&g| LevelAction::of_generator(g, k).table)
        .collect();
    let start = pack(&LevelAction::identity(k).table, k);
    let mut seen: HashSet<u32> = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    let mut table = vec![0u32; n];
    let mut next = vec![0u32; n];
    while let Some(p) = queue.pop_front() {
        unpack(p, k, &mut table);
        for g in &gens {
            for (slot, &s) in next.iter_mut().zip(&table) {
                *slot = g[s as usize];
            }
            let q = pack(&next, k);
            if seen.insert(q) {
                queue.push_back(q);
            }
        }
    }
    Ok(BigUint::from(seen.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_levels() {
        assert_eq!(
            gamma_order(1, GammaMethod::Bfs).unwrap(),
            BigUint::from(2u32)
        );
        assert_eq!(
            gamma_order(2, GammaMethod::Bfs).unwrap(),
            BigUint::from(8u32)
        );
        assert_eq!(
            gamma_order(2, GammaMethod::Formula).unwrap(),
            BigUint::from(8u32)
        );
        assert_eq!(
            gamma_order(3, GammaMethod::Bfs).unwrap(),
            BigUint::from(128u32)
        );
        assert_eq!(
            gamma_order(4, GammaMethod::Bfs).unwrap(),
            BigUint::from(4096u32)
        );
        assert_eq!(
            gamma_order(4, GammaMethod::Formula).unwrap(),
            BigUint::from(4096u32)
        );
        assert!(gamma_order(6, GammaMethod::Bfs).is_err());
    }

    #[test]
    fn portraits_round_trip() {
        let g = GrigWord::parse("abacabdacab").unwrap();
        for k in 1..=6 {
            let l = LevelAction::of_word(&g, k);
            assert!(l.is_bijection());
            assert_eq!(LevelAction::from_portrait(k, &l.portrait()).unwrap(), l);
            let mut t = vec![0; 1 << k];
            if k <= 5 {
                unpack(pack(&l.table, k), k, &mut t);
                assert_eq!(t, l.table);
            }
        }
    }

    #[test]
    fn truncation_and_composition() {
        let g = GrigWord::parse("abad").unwrap();
        let h = GrigWord::parse("cab").unwrap();
        let lg = LevelAction::of_word(&g, 6);
        let lh = LevelAction::of_word(&h, 6);
        assert_eq!(lg.then(&lh), LevelAction::of_word(&g.mul(&h), 6));
        assert_eq!(lg.truncate(4), LevelAction::of_word(&g, 4));
        assert_eq!(
            LevelAction::of_word(&GrigWord::parse("d").unwrap(), 6).depth(),
            Some(3)
        );
    }
}
