use std::collections::{HashMap, VecDeque};

use super::perm::{closure, Permutation};
use crate::error::{Error, Result};

/// Generators of a Sylow `p`-subgroup of `S_n`: write `n` in base `p` and
/// place one iterated wreath product `C_p wr ... wr C_p` on each block of
/// size `p^i`.
pub fn sylow_generators(p: usize, n: usize) -> Vec<Permutation> {
    let mut gens = Vec::new();
    let mut offset = 0;
    let mut digits = Vec::new();
    let mut m = n;
    while m > 0 {
        digits.push(m % p);
        m /= p;
    }
    for (i, &count) in digits.iter().enumerate().rev() {
        let block = p.pow(i as u32);
        for _ in 0..count {
            for j in 0..i {
                let step = p.pow(j as u32);
                let span = step * p;
                let mut images: Vec<usize> = (0..n).collect();
                for (x, img) in images.iter_mut().enumerate().skip(offset).take(span) {
                    *img = offset + (x - offset + step) % span;
                }
                gens.push(Permutation::from_images(&images).expect("block rotation"));
            }
            offset += block;
        }
    }
    if gens.is_empty() {
        gens.push(Permutation::identity(n));
    }
    gens
}

/// Elements of a Sylow `p`-subgroup of `S_n`, sorted, together with one
/// representative of each of its conjugacy classes.
#[derive(Clone, Debug)]
pub struct SylowScanSpace {
    pub p: usize,
    pub degree: usize,
    pub elements: Vec<Permutation>,
    pub reps: Vec<Permutation>,
}

impl SylowScanSpace {
    const ELEMENT_CAP: usize = 1 << 20;

    pub fn new(p: usize, n: usize) -> Result<Self> {
        if p < 2 || n < 1 {
            return Err(Error::Precondition(format!(
                "no Sylow {p}-subgroup of S_{n}"
            )));
        }
        let gens = sylow_generators(p, n);
        let mut elements = closure(&gens, Self::ELEMENT_CAP)?.elements;
        elements.sort_unstable();
        let index: HashMap<Permutation, usize> =
            elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut visited = vec![false; elements.len()];
        let mut reps = Vec::new();
        for start in 0..elements.len() {
            if visited[start] {
                continue;
            }
            reps.push(elements[start]);
            visited[start] = true;
            let mut queue = VecDeque::from([elements[start]]);
            while let Some(x) = queue.pop_front() {
                for g in &gens {
                    let y = x.conjugate_by(g);
                    let j = index[&y];
                    if !visited[j] {
                        visited[j] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(SylowScanSpace {
            p,
            degree: n,
            elements,
            reps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotsearch::{group_order, is_nilpotent};

    #[test]
    fn sylow_orders() {
        // |S_n|_p
        for (p, n, order) in [
            (2, 4, 8),
            (2, 8, 128),
            (3, 9, 81),
            (2, 6, 16),
            (3, 8, 9),
            (5, 8, 5),
            (2, 1, 1),
        ] {
            assert_eq!(
                group_order(&sylow_generators(p, n), 1 << 16).unwrap(),
                order,
                "p = {p}, n = {n}"
            );
        }
    }

    #[test]
    fn class_counts() {
        // The iterated wreath products of C_2 have 2, 5, 20 classes.
        assert_eq!(SylowScanSpace::new(2, 2).unwrap().reps.len(), 2);
        assert_eq!(SylowScanSpace::new(2, 4).unwrap().reps.len(), 5);
        assert_eq!(SylowScanSpace::new(2, 8).unwrap().reps.len(), 20);
        let space = SylowScanSpace::new(3, 9).unwrap();
        assert!(is_nilpotent(
            &closure(&sylow_generators(3, 9), 100).unwrap()
        ));
        assert_eq!(space.elements.len(), 81);
    }
}
