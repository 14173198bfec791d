//! Word-metric balls by breadth-first search.
//!
//! Each sphere is expanded in parallel; candidates are then merged in
//! frontier order so the resulting ball (including which geodesic word is
//! stored for each element) does not depend on thread scheduling.

use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Clone, Debug)]
pub struct BallEntry<T> {
    pub element: T,
    pub length: usize,
    /// A geodesic word for `element`.
    pub word: Word,
}

#[derive(Clone, Debug)]
pub struct Ball<T: Eq + Hash> {
    pub radius: usize,
    /// Entries sorted by length, then by discovery order.
    pub entries: Vec<BallEntry<T>>,
    index: HashMap<T, usize>,
}

impl<T: Clone + Eq + Hash + Send + Sync> Ball<T> {
    /// Ball of `radius` around `identity`, multiplying generators on the
    /// right. Fails once more than `cap` elements have been found.
    pub fn build<F>(
        identity: T,
        generators: &[(Letter, T)],
        radius: usize,
        cap: usize,
        mul: F,
    ) -> Result<Self>
    where
        F: Fn(&T, &T) -> T + Sync,
    {
        Self::build_with(identity, generators, radius, cap, mul, true)
    }

    /// As [`Ball::build`], single threaded.
    pub fn build_sequential<F>(
        identity: T,
        generators: &[(Letter, T)],
        radius: usize,
        cap: usize,
        mul: F,
    ) -> Result<Self>
    where
        F: Fn(&T, &T) -> T + Sync,
    {
        Self::build_with(identity, generators, radius, cap, mul, false)
    }

    fn build_with<F>(
        identity: T,
        generators: &[(Letter, T)],
        radius: usize,
        cap: usize,
        mul: F,
        parallel: bool,
    ) -> Result<Self>
    where
        F: Fn(&T, &T) -> T + Sync,
    {
        let mut entries = vec![BallEntry {
            element: identity.clone(),
            length: 0,
            word: Word::identity(),
        }];
        let mut index = HashMap::from([(identity, 0)]);
        let mut frontier = 0..1;
        for length in 1..=radius {
            let expand = |i: usize| -> Vec<(T, usize, Letter)> {
                generators
                    .iter()
                    .map(|(l, g)| (mul(&entries[i].element, g), i, *l))
                    .collect()
            };
            let candidates: Vec<Vec<(T, usize, Letter)>> = if parallel {
                frontier.clone().into_par_iter().map(expand).collect()
            } else {
                frontier.clone().map(expand).collect()
            };
            let start = entries.len();
            for (element, parent, letter) in candidates.into_iter().flatten() {
                if index.contains_key(&element) {
                    continue;
                }
                if entries.len() >= cap {
                    return Err(Error::StateCapExceeded { cap });
                }
                let word = entries[parent].word.mul(&Word::new([letter]));
                index.insert(element.clone(), entries.len());
                entries.push(BallEntry {
                    element,
                    length,
                    word,
                });
            }
            frontier = start..entries.len();
        }
        Ok(Ball {
            radius,
            entries,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, element: &T) -> Option<&BallEntry<T>> {
        self.index.get(element).map(|&i| &self.entries[i])
    }

    pub fn length_of(&self, element: &T) -> Option<usize> {
        self.get(element).map(|e| e.length)
    }

    /// Entries at exactly distance `n`.
    pub fn sphere(&self, n: usize) -> impl Iterator<Item = &BallEntry<T>> {
        self.entries.iter().filter(move |e| e.length == n)
    }

    /// Number of elements at distance at most `n`, for `n = 0..=radius`.
    pub fn growth(&self) -> Vec<usize> {
        let mut out = vec![0; self.radius + 1];
        for e in &self.entries {
            out[e.length] += 1;
        }
        for n in 1..out.len() {
            out[n] += out[n - 1];
        }
        out
    }
}

/// Symmetric generating set `{x, x^-1}` for the given generators and their
/// inverses, ordered `a, A, b, B, ...`.
pub fn symmetric_generators<T: Clone>(gens: &[T], inverses: &[T]) -> Vec<(Letter, T)> {
    gens.iter()
        .zip(inverses)
        .enumerate()
        .flat_map(|(i, (g, h))| {
            [
                (Letter::gen(i as u8), g.clone()),
                (Letter::gen(i as u8).inv(), h.clone()),
            ]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_ball(radius: usize, parallel: bool) -> Ball<(i64, i64)> {
        let gens = symmetric_generators(&[(1, 0), (0, 1)], &[(-1, 0), (0, -1)]);
        let add = |x: &(i64, i64), y: &(i64, i64)| (x.0 + y.0, x.1 + y.1);
        if parallel {
            Ball::build((0, 0), &gens, radius, 1 << 20, add).unwrap()
        } else {
            Ball::build_sequential((0, 0), &gens, radius, 1 << 20, add).unwrap()
        }
    }

    #[test]
    fn z2_ball_is_the_l1_ball() {
        let ball = z2_ball(5, true);
        // 2n^2 + 2n + 1
        assert_eq!(ball.growth(), vec![1, 5, 13, 25, 41, 61]);
        for e in &ball.entries {
            assert_eq!(e.length as i64, e.element.0.abs() + e.element.1.abs());
            assert_eq!(e.word.len(), e.length);
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let a = z2_ball(8, true);
        let b = z2_ball(8, false);
        let pa: Vec<_> = a
            .entries
            .iter()
            .map(|e| (e.element, e.word.to_string()))
            .collect();
        let pb: Vec<_> = b
            .entries
            .iter()
            .map(|e| (e.element, e.word.to_string()))
            .collect();
        assert_eq!(pa, pb);
    }

    #[test]
    fn cap_is_enforced() {
        let gens = symmetric_generators(&[1i64], &[-1i64]);
        let err = Ball::build(0i64, &gens, 10, 5, |x, y| x + y).unwrap_err();
        assert_eq!(err, Error::StateCapExceeded { cap: 5 });
    }
}
