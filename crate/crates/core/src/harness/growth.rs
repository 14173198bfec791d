//! `F` tables for every supported group, through the per-element cache.

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;

use super::cache::{cache_key, Cache};
use super::group::{compute_k, verify_k, Element, GroupId, KValue, Variant};
use super::table::{GrowthTable, Sample};
use crate::arith::{f_int, k_int, FIntMethod, QuadRing};
use crate::ball::{symmetric_generators, Ball};
use crate::error::{Error, Result};
use crate::grig::grig_ball;
use crate::nilpotent;
use crate::quotsearch::SearchConfig;
use crate::slk::sl_ball;
use crate::word::Word;

/// `k` of one element, served from `cache` when a verified record exists.
/// Only the quotient-search variants are cached; the others are cheaper to
/// recompute than to re-verify.
pub fn k_cached(
    group: &GroupId,
    element: &Element,
    variant: Variant,
    config: &SearchConfig,
    cache: Option<&Cache>,
) -> Result<KValue> {
    let cacheable = matches!(element, Element::Free(_) | Element::Heis { .. })
        && variant != Variant::Congruence;
    let cache = cache.filter(|_| cacheable);
    let key = cache_key(&group.to_string(), variant.as_str(), &element.canonical());
    if let Some(c) = cache {
        if let Some((k, witness)) = c.get(&key, |w| verify_k(group, element, variant, w)) {
            return Ok(KValue {
                k,
                witness,
                label: "exact",
                lower: None,
            });
        }
    }
    let value = compute_k(group, element, variant, config)?;
    if let Some(c) = cache {
        if value.label == "exact" {
            c.put(&key, &value.k, &value.witness)?;
        }
    }
    Ok(value)
}

fn method_variant(group: &GroupId, method: &str) -> Result<Variant> {
    let unsupported = || Error::UnsupportedMethod {
        group: group.to_string(),
        method: method.to_string(),
    };
    match (group, method) {
        (GroupId::Z | GroupId::Zd(_) | GroupId::Quad(_), "exact") => Ok(Variant::Any),
        (GroupId::Free(_), "exact") => Ok(Variant::Any),
        (GroupId::Free(_), "nilpotent") => Ok(Variant::Nilpotent),
        (GroupId::Heis, "exact" | "nilpotent") => Ok(Variant::Nilpotent),
        (GroupId::Unitri(3), "exact") => Ok(Variant::Nilpotent),
        (GroupId::Heis | GroupId::Unitri(_) | GroupId::Sl(_) | GroupId::Grig, "congruence") => {
            Ok(Variant::Congruence)
        }
        _ => Err(unsupported()),
    }
}

/// Ball elements in a fixed order (by length, then discovery order).
fn ball_elements(group: &GroupId, radius: usize, method: &str) -> Result<Vec<(usize, Element)>> {
    Ok(match group {
        GroupId::Z => {
            let mut out = Vec::with_capacity(2 * radius);
            for m in 1..=radius as i64 {
                out.push((m as usize, Element::Int(BigInt::from(m))));
                out.push((m as usize, Element::Int(BigInt::from(-m))));
            }
            out
        }
        GroupId::Zd(d) => {
            let units: Vec<Vec<i64>> = (0..*d)
                .map(|i| (0..*d).map(|j| (i == j) as i64).collect())
                .collect();
            let neg: Vec<Vec<i64>> = units
                .iter()
                .map(|u| u.iter().map(|x| -x).collect())
                .collect();
            let add = |x: &Vec<i64>, y: &Vec<i64>| {
                x.iter().zip(y).map(|(a, b)| a + b).collect::<Vec<_>>()
            };
            let ball = Ball::build(
                vec![0; *d],
                &symmetric_generators(&units, &neg),
                radius,
                usize::MAX,
                add,
            )?;
            ball.entries
                .into_iter()
                .skip(1)
                .map(|e| {
                    (
                        e.length,
                        Element::Vector(e.element.into_iter().map(BigInt::from).collect()),
                    )
                })
                .collect()
        }
        GroupId::Quad(d) => {
            let ring = QuadRing::new(*d)?;
            let ball = Ball::build(
                (0i64, 0i64),
                &symmetric_generators(&[(1, 0), (0, 1)], &[(-1, 0), (0, -1)]),
                radius,
                usize::MAX,
                |x, y| (x.0 + y.0, x.1 + y.1),
            )?;
            ball.entries
                .into_iter()
                .skip(1)
                .map(|e| {
                    (
                        e.length,
                        Element::Quad(ring.element(e.element.0, e.element.1)),
                    )
                })
                .collect()
        }
        GroupId::Free(r) => {
            let gens: Vec<Word> = (0..*r as u8).map(Word::generator).collect();
            let inverses: Vec<Word> = gens.iter().map(Word::inverse).collect();
            let ball = Ball::build(
                Word::identity(),
                &symmetric_generators(&gens, &inverses),
                radius,
                1 << 22,
                |x, y| x.mul(y),
            )?;
            ball.entries
                .into_iter()
                .skip(1)
                .map(|e| (e.length, Element::Free(e.element)))
                .collect()
        }
        GroupId::Heis | GroupId::Unitri(_) => {
            let d = if let GroupId::Unitri(d) = group {
                *d
            } else {
                3
            };
            if d == 3 && method != "congruence" && radius > nilpotent::EXACT_RADIUS_MAX {
                return Err(Error::Precondition(format!(
                    "exact Heisenberg tables stop at radius {}",
                    nilpotent::EXACT_RADIUS_MAX
                )));
            }
            let ball = nilpotent::ball(d, radius)?;
            ball.entries
                .into_iter()
                .skip(1)
                .map(|e| {
                    let el = if d == 3 && method != "congruence" {
                        Element::Heis {
                            word: e.word,
                            matrix: e.element,
                        }
                    } else {
                        Element::Unitri(e.element)
                    };
                    (e.length, el)
                })
                .collect()
        }
        GroupId::Sl(k) => {
            let ball = sl_ball(*k, radius)?;
            ball.entries
                .into_iter()
                .skip(1)
                .map(|e| (e.length, Element::Sl(e.element)))
                .collect()
        }
        GroupId::Grig => {
            let ball = grig_ball(radius)?;
            ball.entries
                .into_iter()
                .skip(1)
                .map(|e| (e.length, Element::Grig(e.word)))
                .collect()
        }
    })
}

/// `F(n)` for `n = 1..=radius`.
///
/// Methods: `exact` (`z`, `zd`, `quad`, `free`, `heis`, `unitri(3)`),
/// `lcm-jump` (`z`), `nilpotent` (`free`, `heis`), `congruence` (`heis`,
/// `unitri`, `sl`, `grig`). Every row's witness is re-verified.
pub fn compute_growth(
    group: &GroupId,
    radius: usize,
    method: &str,
    config: &SearchConfig,
    cache: Option<&Cache>,
) -> Result<GrowthTable> {
    if *group == GroupId::Z && method == "lcm-jump" {
        return lcm_jump_table(radius);
    }
    let variant = method_variant(group, method)?;
    let elements = ball_elements(group, radius, method)?;
    let values: Vec<KValue> = elements
        .par_iter()
        .map(|(_, e)| k_cached(group, e, variant, config, cache))
        .collect::<Result<_>>()?;
    let samples: Vec<Sample> = elements
        .iter()
        .zip(&values)
        .map(|((length, e), v)| Sample {
            length: *length,
            k: v.k.clone(),
            argmax: e.canonical(),
            witness: v.witness.clone(),
        })
        .collect();
    let label = match values.iter().find(|v| v.label != "exact") {
        Some(v) => format!("{method}/{}", v.label),
        None => method.to_string(),
    };
    let table = GrowthTable::from_samples(
        &group.to_string(),
        &group.generating_set(),
        &label,
        radius,
        &samples,
    );
    let argmaxes: std::collections::HashSet<&str> =
        table.rows.iter().map(|r| r.argmax.as_str()).collect();
    let by_name: std::collections::HashMap<String, &Element> = samples
        .iter()
        .zip(&elements)
        .filter(|(s, _)| argmaxes.contains(s.argmax.as_str()))
        .map(|(s, (_, e))| (s.argmax.clone(), e))
        .collect();
    for row in &table.rows {
        if !verify_k(group, by_name[&row.argmax], variant, &row.witness) {
            return Err(Error::Verification(format!(
                "witness for {} at n = {} does not verify",
                row.argmax, row.n
            )));
        }
    }
    Ok(table)
}

fn lcm_jump_table(radius: usize) -> Result<GrowthTable> {
    let mut samples = Vec::new();
    let mut last = BigUint::from(0u32);
    for n in 1..=radius as u64 {
        let (_, m) = f_int(n, FIntMethod::LcmJump)?;
        if m != last {
            let (q, witness) = k_int(&BigInt::from(m.clone()))?;
            let length: usize = m
                .clone()
                .try_into()
                .map_err(|_| Error::Precondition("radius too large".into()))?;
            samples.push(Sample {
                length,
                k: BigUint::from(q),
                argmax: m.to_string(),
                witness,
            });
            last = m;
        }
    }
    Ok(GrowthTable::from_samples(
        "z", "{1}", "lcm-jump", radius, &samples,
    ))
}
