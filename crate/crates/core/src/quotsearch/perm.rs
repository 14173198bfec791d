use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Largest number of points a [`Permutation`] can move.
pub const MAX_POINTS: usize = 32;

/// A permutation of `{0, .., degree - 1}` acting on the right: in the
/// product `p * q`, `p` is applied first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    degree: u8,
    map: [u8; MAX_POINTS],
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_POINTS, "degree {degree} exceeds {MAX_POINTS}");
        let mut map = [0u8; MAX_POINTS];
        for (i, m) in map.iter_mut().enumerate() {
            *m = i as u8;
        }
        Permutation {
            degree: degree as u8,
            map,
        }
    }

    /// From 0-based images; fails unless `images` is a bijection.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_POINTS {
            return Err(Error::Precondition(format!(
                "degree {n} exceeds {MAX_POINTS}"
            )));
        }
        let mut seen = [false; MAX_POINTS];
        let mut p = Permutation::identity(n);
        for (i, &x) in images.iter().enumerate() {
            if x >= n || seen[x] {
                return Err(Error::Precondition(format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen[x] = true;
            p.map[i] = x as u8;
        }
        Ok(p)
    }

    /// Product of disjoint or overlapping cycles given with 1-based points,
    /// applied left to right.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut p = Permutation::identity(degree);
        for cycle in cycles {
            let mut c = Permutation::identity(degree);
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x == 0 || y == 0 || x > degree || y > degree {
                    return Err(Error::Precondition(format!("cycle {cycle:?} out of range")));
                }
                c.map[x - 1] = (y - 1) as u8;
            }
            p = p.compose(&c);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn image(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.map[..self.degree()]
    }

    pub fn is_identity(&self) -> bool {
        self.images()
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// `self` then `other`.
    #[inline]
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree, other.degree);
        let mut out = *self;
        for i in 0..self.degree() {
            out.map[i] = other.map[self.map[i] as usize];
        }
        out
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = *self;
        for i in 0..self.degree() {
            out.map[self.map[i] as usize] = i as u8;
        }
        out
    }

    /// `self^-1 * other^-1 * self * other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .compose(&other.inverse())
            .compose(self)
            .compose(other)
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().compose(self).compose(g)
    }

    /// Cycle lengths in descending order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = [false; MAX_POINTS];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image(x);
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// 1-based one-line notation, comma separated.
    pub fn one_line(&self) -> String {
        let parts: Vec<String> = self
            .images()
            .iter()
            .map(|&x| (x as usize + 1).to_string())
            .collect();
        parts.join(",")
    }

    pub fn parse_one_line(s: &str) -> Result<Self> {
        let images = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&v| v >= 1)
                    .map(|v| v - 1)
                    .ok_or_else(|| Error::Parse {
                        input: s.to_string(),
                        reason: "bad point".into(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(&images)
    }

    /// All permutations of `degree` points in lexicographic order of one-line
    /// notation.
    pub fn all(degree: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (0..degree).collect();
        let mut out = Vec::new();
        loop {
            out.push(Permutation::from_images(&cur).expect("valid"));
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]", self.one_line())
    }
}

/// Cycle notation with 1-based points; `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = [false; MAX_POINTS];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.image(x);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A permutation group with its fully enumerated element set.
#[derive(Clone, Debug)]
pub struct PermGroup {
    pub generators: Vec<Permutation>,
    pub elements: Vec<Permutation>,
}

impl PermGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.generators.first().map_or(0, |g| g.degree())
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }
}

/// Closure of `gens` under composition; fails once more than `cap`
/// elements have been found.
pub fn closure(gens: &[Permutation], cap: usize) -> Result<PermGroup> {
    let degree = gens
        .first()
        .map(|g| g.degree())
        .ok_or_else(|| Error::Precondition("closure of an empty generating set".into()))?;
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut elements = vec![id];
    seen.insert(id);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y) {
                if seen.len() > cap {
                    return Err(Error::OrderExceedsCap { cap });
                }
                elements.push(y);
                queue.push_back(y);
            }
        }
    }
    Ok(PermGroup {
        generators: gens.to_vec(),
        elements,
    })
}

/// Exact order of `<gens>` by closure enumeration.
pub fn group_order(gens: &[Permutation], cap: usize) -> Result<usize> {
    Ok(closure(gens, cap)?.order())
}

/// Normal closure in `group` of the subgroup generated by `seeds`.
fn normal_closure(group: &PermGroup, seeds: Vec<Permutation>) -> Vec<Permutation> {
    let degree = group.degree();
    let mut gens: Vec<Permutation> = seeds.into_iter().filter(|p| !p.is_identity()).collect();
    if gens.is_empty() {
        return vec![Permutation::identity(degree)];
    }
    loop {
        let sub = closure(&gens, usize::MAX).expect("uncapped").elements;
        let set: HashSet<Permutation> = sub.iter().copied().collect();
        let fresh = gens
            .iter()
            .flat_map(|h| group.generators.iter().map(move |g| h.conjugate_by(g)))
            .find(|c| !set.contains(c));
        match fresh {
            Some(c) => gens.push(c),
            None => return sub,
        }
    }
}

/// Orders of the lower central series `G = g_1 >= g_2 >= ...`, stopping at
/// the trivial group or when the series stabilises.
pub fn lower_central_series(group: &PermGroup) -> Vec<usize> {
    let mut orders = vec![group.order()];
    let mut current: Vec<Permutation> = group.generators.clone();
    loop {
        let seeds: Vec<Permutation> = current
            .iter()
            .flat_map(|x| group.generators.iter().map(move |g| x.commutator(g)))
            .collect();
        let next = normal_closure(group, seeds);
        let n = next.len();
        if n == *orders.last().unwrap() {
            return orders;
        }
        orders.push(n);
        if n == 1 {
            return orders;
        }
        current = next;
    }
}

/// Nilpotency class, or `None` when the lower central series stalls above 1.
pub fn nilpotency_class(group: &PermGroup) -> Option<usize> {
    let series = lower_central_series(group);
    (*series.last().unwrap() == 1).then(|| series.len() - 1)
}

pub fn is_nilpotent(group: &PermGroup) -> bool {
    nilpotency_class(group).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(degree, cycles).unwrap()
    }

    #[test]
    fn composition_applies_left_factor_first() {
        let a = cyc(3, &[&[1, 2]]);
        let b = cyc(3, &[&[2, 3]]);
        // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        assert_eq!(a.compose(&b), cyc(3, &[&[1, 3, 2]]));
        assert_eq!(a.compose(&b).to_string(), "(1 3 2)");
    }

    #[test]
    fn orders() {
        assert_eq!(group_order(&[Permutation::identity(4)], 10).unwrap(), 1);
        assert_eq!(
            group_order(&[cyc(3, &[&[1, 2]]), cyc(3, &[&[2, 3]])], 100).unwrap(),
            6
        );
        let err = group_order(&[cyc(4, &[&[1, 2, 3, 4]]), cyc(4, &[&[1, 2]])], 10).unwrap_err();
        assert_eq!(err, Error::OrderExceedsCap { cap: 10 });
    }

    #[test]
    fn nilpotency_examples() {
        let c4 = closure(&[cyc(4, &[&[1, 2, 3, 4]])], 100).unwrap();
        assert_eq!(nilpotency_class(&c4), Some(1));
        let s3 = closure(&[cyc(3, &[&[1, 2]]), cyc(3, &[&[2, 3]])], 100).unwrap();
        assert!(!is_nilpotent(&s3));
        assert_eq!(lower_central_series(&s3), vec![6, 3]);
        let d8 = closure(&[cyc(4, &[&[1, 2, 3, 4]]), cyc(4, &[&[1, 3]])], 100).unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(nilpotency_class(&d8), Some(2));
        let trivial = closure(&[Permutation::identity(3)], 10).unwrap();
        assert_eq!(nilpotency_class(&trivial), Some(0));
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let all = Permutation::all(4);
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0].images() < w[1].images()));
        assert!(all[0].is_identity());
    }

    #[test]
    fn one_line_round_trip() {
        let p = cyc(5, &[&[1, 4], &[2, 5, 3]]);
        assert_eq!(Permutation::parse_one_line(&p.one_line()).unwrap(), p);
        assert!(Permutation::parse_one_line("1,1,2").is_err());
    }

    #[test]
    fn cycle_types() {
        assert_eq!(cyc(5, &[&[1, 2], &[3, 4, 5]]).cycle_type(), vec![3, 2]);
        assert_eq!(Permutation::identity(3).cycle_type(), vec![1, 1, 1]);
    }
}
