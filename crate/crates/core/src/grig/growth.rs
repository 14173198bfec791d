//! Balls in `Γ`, the level bracket for `k`, and growth tables.

use std::collections::HashMap;

use num_bigint::BigUint;

use super::level::{gamma_order, GammaMethod, LevelAction};
use super::{depth, same_element, Gen, GrigWord};
use crate::error::{Error, Result};
use crate::harness::{GrowthTable, Sample};
use crate::witness::{QuotientWitness, WitnessData};

pub const RADIUS_CAP: usize = 12;
/// Level of the action used as a fingerprint when deduplicating.
pub const FINGERPRINT_LEVEL: usize = 8;
const ELEMENT_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct GrigBallEntry {
    pub word: GrigWord,
    pub length: usize,
    pub fingerprint: LevelAction,
}

#[derive(Clone, Debug)]
pub struct GrigBall {
    pub radius: usize,
    pub entries: Vec<GrigBallEntry>,
    /// Fingerprint collisions that needed the exact word problem.
    pub exact_checks: usize,
}

/// Ball of `radius` with one geodesic reduced word per element. Elements
/// are told apart by their level-8 action, falling back to the word problem
/// when two candidates share it.
pub fn grig_ball(radius: usize) -> Result<GrigBall> {
    if radius > RADIUS_CAP {
        return Err(Error::Precondition(format!(
            "radius {radius} exceeds the cap {RADIUS_CAP}"
        )));
    }
    let gens: Vec<(GrigWord, LevelAction)> = Gen::ALL
        .iter()
        .map(|&g| {
            (
                GrigWord::generator(g),
                LevelAction::of_generator(g, FINGERPRINT_LEVEL),
            )
        })
        .collect();
    let identity = GrigBallEntry {
        word: GrigWord::identity(),
        length: 0,
        fingerprint: LevelAction::identity(FINGERPRINT_LEVEL),
    };
    let mut index: HashMap<Vec<u32>, Vec<usize>> =
        HashMap::from([(identity.fingerprint.table.clone(), vec![0])]);
    let mut entries = vec![identity];
    let mut exact_checks = 0;
    let mut frontier = 0..1;
    for length in 1..=radius {
        let start = entries.len();
        for i in frontier {
            for (x, action) in &gens {
                let word = entries[i].word.mul(x);
                if word.len() < length {
                    continue;
                }
                let fingerprint = entries[i].fingerprint.then(action);
                let bucket = index.entry(fingerprint.table.clone()).or_default();
                let mut known = false;
                for &j in bucket.iter() {
                    exact_checks += 1;
                    if same_element(&entries[j].word, &word) {
                        known = true;
                        break;
                    }
                }
                if known {
                    continue;
                }
                if entries.len() >= ELEMENT_CAP {
                    return Err(Error::StateCapExceeded { cap: ELEMENT_CAP });
                }
                bucket.push(entries.len());
                entries.push(GrigBallEntry {
                    word,
                    length,
                    fingerprint,
                });
            }
        }
        frontier = start..entries.len();
    }
    Ok(GrigBall {
        radius,
        entries,
        exact_checks,
    })
}

/// Bracket `|Γ_max(1, depth - 6)| <= k(g) <= |Γ_depth|` with the level
/// quotient as witness for the upper end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrigBracket {
    pub depth: usize,
    pub lower: BigUint,
    pub upper: BigUint,
    pub witness: QuotientWitness,
}

pub fn k_congruence_grig(g: &GrigWord) -> Result<GrigBracket> {
    let d = depth(g)?;
    bracket_at_depth(d)
}

fn bracket_at_depth(d: usize) -> Result<GrigBracket> {
    let upper = gamma_order(d, GammaMethod::Formula)?;
    let lower = gamma_order(d.saturating_sub(6).max(1), GammaMethod::Formula)?;
    let witness = QuotientWitness::new(upper.clone(), WitnessData::TreeLevel { level: d });
    Ok(GrigBracket {
        depth: d,
        lower,
        upper,
        witness,
    })
}

pub fn verify_grig_witness(g: &GrigWord, witness: &QuotientWitness) -> bool {
    match witness.data {
        WitnessData::TreeLevel { level } if (1..=super::DEPTH_CAP).contains(&level) => {
            !LevelAction::of_word(g, level).is_identity()
                && gamma_order(level, GammaMethod::Formula).is_ok_and(|o| o == witness.order)
        }
        _ => false,
    }
}

/// Growth table of the level upper bound `|Γ_depth(g)|`.
pub fn f_grig(radius: usize) -> Result<GrowthTable> {
    let ball = grig_ball(radius)?;
    let samples: Vec<Sample> = ball
        .entries
        .iter()
        .skip(1)
        .map(|e| {
            let d = match e.fingerprint.depth() {
                Some(d) => d,
                None => depth(&e.word)?,
            };
            let b = bracket_at_depth(d)?;
            Ok(Sample {
                length: e.length,
                k: b.upper,
                argmax: e.word.to_string(),
                witness: b.witness,
            })
        })
        .collect::<Result<_>>()?;
    Ok(GrowthTable::from_samples(
        "grig",
        "a b c d",
        "congruence-upper",
        radius,
        &samples,
    ))
}
