//! Minimal finite quotients of finitely presented groups.
//!
//! `k(w)` is found by scanning homomorphisms into symmetric groups. A
//! detecting quotient of order `q` acts regularly on `q` points, so scanning
//! `S_q` for tuples whose image has order exactly `q`, for `q = 2, 3, ...`,
//! finds the least `q`. The first generator's image only ranges over
//! conjugacy class representatives, because conjugating every image by the
//! same permutation preserves all acceptance conditions.
//!
//! For the nilpotent variant the minimum is always attained by a `p`-group
//! (some Sylow factor of a nilpotent detecting quotient already detects), and
//! every `p`-subgroup of `S_N` is conjugate into a Sylow `p`-subgroup. That
//! allows certified answers above `q_max`; see [`min_quotient_with`].

mod perm;
mod sylow;

pub use perm::{
    closure, group_order, is_nilpotent, lower_central_series, nilpotency_class, PermGroup,
    Permutation, MAX_POINTS,
};
pub use sylow::{sylow_generators, SylowScanSpace};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::witness::{QuotientWitness, WitnessData};
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub num_generators: usize,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(num_generators: usize, relators: Vec<Word>) -> Result<Self> {
        if num_generators == 0 {
            return Err(Error::Precondition(
                "a presentation needs at least one generator".into(),
            ));
        }
        if let Some(r) = relators.iter().find(|r| r.rank() > num_generators) {
            return Err(Error::Precondition(format!(
                "relator {r} uses an unknown generator"
            )));
        }
        let relators = relators.into_iter().filter(|r| !r.is_empty()).collect();
        Ok(Presentation {
            num_generators,
            relators,
        })
    }

    pub fn free(rank: usize) -> Self {
        Presentation::new(rank, vec![]).expect("rank >= 1")
    }

    /// `<a, b | [a, [a, b]], [b, [a, b]]>`.
    pub fn heisenberg() -> Self {
        let a = Word::generator(0);
        let b = Word::generator(1);
        let c = Word::commutator(&a, &b);
        Presentation::new(2, vec![Word::commutator(&a, &c), Word::commutator(&b, &c)]).unwrap()
    }

    /// `<x, y | [x, y]>`.
    pub fn free_abelian_rank2() -> Self {
        let x = Word::generator(0);
        let y = Word::generator(1);
        Presentation::new(2, vec![Word::commutator(&x, &y)]).unwrap()
    }
}

/// Product of the images along `w`, left to right.
pub fn eval_word(w: &Word, images: &[Permutation]) -> Result<Permutation> {
    let degree = images.first().map(|p| p.degree()).unwrap_or(0);
    let mut acc = Permutation::identity(degree);
    for l in w.letters() {
        let g = images
            .get(l.generator as usize)
            .ok_or(Error::IndexOutOfRange {
                index: l.generator as usize,
                available: images.len(),
            })?;
        acc = if l.inverse {
            acc.compose(&g.inverse())
        } else {
            acc.compose(g)
        };
    }
    Ok(acc)
}

/// Left-normed commutator `[[..[a1, a2], a3].., an]`, freely reduced.
pub fn iterated_commutator(letters: &[Letter]) -> Result<Word> {
    if letters.len() < 2 {
        return Err(Error::Precondition(
            "an iterated commutator needs at least two entries".into(),
        ));
    }
    let mut acc = Word::new([letters[0]]);
    for &l in &letters[1..] {
        acc = Word::commutator(&acc, &Word::new([l]));
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Filter {
    Any,
    Nilpotent,
}

impl Filter {
    pub fn as_str(self) -> &'static str {
        match self {
            Filter::Any => "any",
            Filter::Nilpotent => "nilpotent",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest degree of the symmetric groups scanned.
    pub q_max: usize,
    /// Largest degree of the Sylow scans used to certify nilpotent answers
    /// above `q_max`.
    pub cert_degree_max: usize,
    /// Refuse scans with more tuples than this.
    pub max_tuples: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            q_max: 8,
            cert_degree_max: 16,
            max_tuples: 20_000_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinQuotient {
    pub k: u64,
    pub witness: QuotientWitness,
    /// `false` when only `lower_bound <= k(w) <= k` is known.
    pub exact: bool,
    pub lower_bound: u64,
}

/// Least order of a finite quotient of `pres` in which `w` survives.
pub fn min_quotient(
    pres: &Presentation,
    w: &Word,
    q_max: usize,
    filter: Filter,
) -> Result<MinQuotient> {
    min_quotient_with(
        pres,
        w,
        filter,
        &SearchConfig {
            q_max,
            ..SearchConfig::default()
        },
    )
}

/// As [`min_quotient`], with full configuration.
///
/// Degrees `2..=q_max` are scanned for regular images, which settles every
/// answer up to `q_max`. Past that the `Any` filter reports
/// [`Error::UndetectedBelowBound`]. The `Nilpotent` filter instead scans the
/// Sylow subgroups of `S_{q_max}` for the smallest detecting `p`-group image
/// and then rules out every prime power between `q_max` and that order with
/// Sylow scans of degree up to `cert_degree_max`.
pub fn min_quotient_with(
    pres: &Presentation,
    w: &Word,
    filter: Filter,
    config: &SearchConfig,
) -> Result<MinQuotient> {
    if w.is_empty() {
        return Err(Error::Precondition("target word is empty".into()));
    }
    if w.rank() > pres.num_generators {
        return Err(Error::IndexOutOfRange {
            index: w.rank() - 1,
            available: pres.num_generators,
        });
    }
    if config.q_max > MAX_POINTS {
        return Err(Error::Precondition(format!(
            "q_max must be at most {MAX_POINTS}"
        )));
    }
    for q in 2..=config.q_max {
        if let Some(images) = regular_scan(pres, w, q, filter, config)? {
            let witness = QuotientWitness::new(q as u64, WitnessData::Symmetric { images });
            return Ok(MinQuotient {
                k: q as u64,
                witness,
                exact: true,
                lower_bound: q as u64,
            });
        }
    }
    match filter {
        Filter::Any => Err(Error::UndetectedBelowBound {
            bound: config.q_max as u64,
        }),
        Filter::Nilpotent => nilpotent_beyond(pres, w, config),
    }
}

fn tuple_count(
    first: usize,
    rest: usize,
    num_generators: usize,
    config: &SearchConfig,
) -> Result<u64> {
    let mut total = first as u64;
    for _ in 1..num_generators {
        total = total.saturating_mul(rest as u64);
    }
    if total > config.max_tuples {
        return Err(Error::Precondition(format!(
            "scan of {total} tuples exceeds the configured limit {}",
            config.max_tuples
        )));
    }
    Ok(total)
}

/// Mixed-radix decoding: the first generator is the most significant digit,
/// so increasing indices run through tuples lexicographically.
fn decode_tuple(
    mut index: u64,
    first: &[Permutation],
    rest: &[Permutation],
    num_generators: usize,
) -> Vec<Permutation> {
    let n_rest = rest.len() as u64;
    let mut out = vec![first[0]; num_generators];
    for slot in out[1..].iter_mut().rev() {
        *slot = rest[(index % n_rest) as usize];
        index /= n_rest;
    }
    out[0] = first[index as usize];
    out
}

/// Relators die and the target survives.
fn is_candidate(pres: &Presentation, w: &Word, images: &[Permutation]) -> bool {
    pres.relators.iter().all(|r| {
        eval_word(r, images)
            .map(|p| p.is_identity())
            .unwrap_or(false)
    }) && eval_word(w, images)
        .map(|p| !p.is_identity())
        .unwrap_or(false)
}

/// First tuple in `S_q` (lexicographic, first generator up to conjugacy)
/// whose image has order exactly `q` and detects `w`.
fn regular_scan(
    pres: &Presentation,
    w: &Word,
    q: usize,
    filter: Filter,
    config: &SearchConfig,
) -> Result<Option<Vec<Permutation>>> {
    let all = Permutation::all(q);
    let mut reps: Vec<Permutation> = Vec::new();
    let mut seen_types = std::collections::HashSet::new();
    for p in &all {
        if seen_types.insert(p.cycle_type()) {
            reps.push(*p);
        }
    }
    let g = pres.num_generators;
    let total = tuple_count(reps.len(), all.len(), g, config)?;
    let hit = (0..total).into_par_iter().find_first(|&idx| {
        let images = decode_tuple(idx, &reps, &all, g);
        if !is_candidate(pres, w, &images) {
            return false;
        }
        match closure(&images, q) {
            Ok(group) if group.order() == q => filter == Filter::Any || is_nilpotent(&group),
            _ => false,
        }
    });
    Ok(hit.map(|idx| decode_tuple(idx, &reps, &all, g)))
}

fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// `(p, N)` for every prime power `N` in `lo..hi`, ascending in `N`.
fn prime_powers_between(lo: usize, hi: usize) -> Vec<(usize, usize)> {
    (lo..hi)
        .filter_map(|n| {
            let p = (2..=n).find(|d| n % d == 0)?;
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            (m == 1).then_some((p, n))
        })
        .collect()
}

/// Smallest order of a `p`-group image detecting `w` inside the Sylow
/// `p`-subgroup of `S_degree`.
fn sylow_min_image(
    pres: &Presentation,
    w: &Word,
    p: usize,
    degree: usize,
    config: &SearchConfig,
) -> Result<Option<(usize, Vec<Permutation>)>> {
    let g = pres.num_generators;
    let space = SylowScanSpace::new(p, degree)?;
    let total = tuple_count(space.reps.len(), space.elements.len(), g, config)?;
    let cap = space.elements.len();
    let found = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let images = decode_tuple(idx, &space.reps, &space.elements, g);
            if !is_candidate(pres, w, &images) {
                return None;
            }
            closure(&images, cap).ok().map(|grp| (grp.order(), idx))
        })
        .min();
    Ok(found.map(|(order, idx)| (order, decode_tuple(idx, &space.reps, &space.elements, g))))
}

fn nilpotent_beyond(pres: &Presentation, w: &Word, config: &SearchConfig) -> Result<MinQuotient> {
    let g = pres.num_generators;
    // Smallest detecting p-group image inside S_{q_max}, over all primes p.
    // If there is none, larger degrees are tried (only degrees divisible by
    // p enlarge the Sylow subgroup) until some image turns up.
    let mut best: Option<(usize, Vec<Permutation>)> = None;
    for degree in config.q_max..=config.cert_degree_max.max(config.q_max) {
        for p in (2..=degree).filter(|&p| is_prime(p)) {
            if degree > config.q_max && degree % p != 0 {
                continue;
            }
            if let Some((order, images)) = sylow_min_image(pres, w, p, degree, config)? {
                if best.as_ref().is_none_or(|(b, _)| order < *b) {
                    best = Some((order, images));
                }
            }
        }
        if best.is_some() {
            break;
        }
    }
    let (upper, images) = best.ok_or(Error::UndetectedBelowBound {
        bound: config.q_max as u64,
    })?;
    // Groups of order p or p^2 are abelian, so they cannot detect a word
    // whose exponent sums all vanish.
    let commutator = w.exponent_sums(g).iter().all(|&e| e == 0);

    // Every prime power up to q_max was ruled out by the regular scans.
    for (p, n) in prime_powers_between(config.q_max + 1, upper) {
        if commutator && (n == p || n == p * p) {
            continue;
        }
        if n > config.cert_degree_max {
            let witness = QuotientWitness::new(upper as u64, WitnessData::Symmetric { images });
            return Ok(MinQuotient {
                k: upper as u64,
                witness,
                exact: false,
                lower_bound: n as u64,
            });
        }
        let space = SylowScanSpace::new(p, n)?;
        let total = tuple_count(space.reps.len(), space.elements.len(), g, config)?;
        let hit = (0..total).into_par_iter().find_first(|&idx| {
            let images = decode_tuple(idx, &space.reps, &space.elements, g);
            is_candidate(pres, w, &images) && closure(&images, n).is_ok()
        });
        if let Some(idx) = hit {
            let images = decode_tuple(idx, &space.reps, &space.elements, g);
            let order = group_order(&images, n)?;
            let witness = QuotientWitness::new(order as u64, WitnessData::Symmetric { images });
            return Ok(MinQuotient {
                k: order as u64,
                witness,
                exact: true,
                lower_bound: order as u64,
            });
        }
    }
    let witness = QuotientWitness::new(upper as u64, WitnessData::Symmetric { images });
    Ok(MinQuotient {
        k: upper as u64,
        witness,
        exact: true,
        lower_bound: upper as u64,
    })
}

/// Re-checks a permutation witness: relators die, `w` survives, the image
/// has the recorded order and passes `filter`.
pub fn verify_witness(
    pres: &Presentation,
    w: &Word,
    filter: Filter,
    witness: &QuotientWitness,
) -> bool {
    let WitnessData::Symmetric { images } = &witness.data else {
        return false;
    };
    if images.len() != pres.num_generators
        || images.windows(2).any(|p| p[0].degree() != p[1].degree())
    {
        return false;
    }
    if !is_candidate(pres, w, images) {
        return false;
    }
    let Ok(order) = witness.order.clone().try_into() else {
        return false;
    };
    let order: usize = order;
    match closure(images, order) {
        Ok(group) => {
            group.order() == order
                && order >= 2
                && witness.order == BigUint::from(order)
                && (filter == Filter::Any || is_nilpotent(&group))
        }
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn eval_examples() {
        let a = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[2, 3]]).unwrap();
        assert!(eval_word(&Word::identity(), &[a, b]).unwrap().is_identity());
        assert!(eval_word(&word("aA"), &[a, b]).unwrap().is_identity());
        assert_eq!(
            eval_word(&word("ab"), &[a, b]).unwrap().to_string(),
            "(1 3 2)"
        );
        assert!(matches!(
            eval_word(&word("c"), &[a, b]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn iterated_commutators() {
        let a = Letter::gen(0);
        let b = Letter::gen(1);
        assert_eq!(iterated_commutator(&[a, b]).unwrap().to_string(), "ABab");
        assert!(iterated_commutator(&[a, a]).unwrap().is_empty());
        let w = iterated_commutator(&[a, b, a]).unwrap();
        assert_eq!(w.to_string(), "BAbABaba");
        assert_eq!(w.len(), 8);
        assert!(iterated_commutator(&[a]).is_err());
    }

    #[test]
    fn free_group_generator_is_detected_by_z2() {
        let r = min_quotient(&Presentation::free(2), &word("a"), 8, Filter::Any).unwrap();
        assert_eq!(r.k, 2);
        let WitnessData::Symmetric { images } = &r.witness.data else {
            panic!()
        };
        assert_eq!(images[0].to_string(), "(1 2)");
        assert!(images[1].is_identity());
    }

    #[test]
    fn commutator_needs_s3() {
        let w = word("ABab");
        let r = min_quotient(&Presentation::free(2), &w, 8, Filter::Any).unwrap();
        assert_eq!(r.k, 6);
        assert!(verify_witness(
            &Presentation::free(2),
            &w,
            Filter::Any,
            &r.witness
        ));
    }

    #[test]
    fn undetected_is_not_triviality() {
        let pres = Presentation::free_abelian_rank2();
        let err = min_quotient(&pres, &word("ABab"), 4, Filter::Any).unwrap_err();
        assert_eq!(err, Error::UndetectedBelowBound { bound: 4 });
    }

    #[test]
    fn prime_powers() {
        assert_eq!(
            prime_powers_between(9, 16),
            vec![(3, 9), (11, 11), (13, 13)]
        );
        assert_eq!(
            prime_powers_between(2, 6),
            vec![(2, 2), (3, 3), (2, 4), (5, 5)]
        );
    }
}
