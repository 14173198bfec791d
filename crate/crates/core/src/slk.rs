//! `SL_k(Z)` through its congruence quotients `SL_k(Z/m)`.
//!
//! Values here are congruence-minimal: the smallest `|SL_k(Z/q)|` over prime
//! powers `q` in which an element survives. For `k >= 3` every finite
//! quotient factors through some `SL_k(Z/d)`, so these agree with the true
//! `k` up to the central and essential quotients of `SL_k(Z/d)`. For `k = 2`
//! they are upper-bound data only.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::psi;
use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::harness::{GrowthTable, Sample};
use crate::witness::{QuotientWitness, WitnessData};
use crate::word::Letter;

/// Default radius caps for [`sl_ball`].
pub const RADIUS_CAP_SL2: usize = 11;
pub const RADIUS_CAP_SL3: usize = 6;
pub const BALL_CAP: usize = 5_000_000;

/// Square integer matrix of determinant 1, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMat {
    k: usize,
    entries: Vec<BigInt>,
}

impl IntMat {
    pub fn identity(k: usize) -> Self {
        let mut entries = vec![BigInt::zero(); k * k];
        for i in 0..k {
            entries[i * k + i] = BigInt::one();
        }
        IntMat { k, entries }
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        let k = rows.len();
        if k == 0 || rows.iter().any(|r| r.len() != k) {
            return Err(Error::Precondition(
                "matrix must be square and nonempty".into(),
            ));
        }
        let m = IntMat {
            k,
            entries: rows.concat(),
        };
        let det = m.determinant();
        if !det.is_one() {
            return Err(Error::Precondition(format!("determinant is {det}, not 1")));
        }
        Ok(m)
    }

    pub fn from_i64(k: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != k * k {
            return Err(Error::Precondition(format!("expected {} entries", k * k)));
        }
        let rows: Vec<Vec<BigInt>> = entries
            .chunks(k)
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// `E_ij(t)` with 1-based `i != j`.
    pub fn elementary(k: usize, i: usize, j: usize, t: impl Into<BigInt>) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > k || j > k {
            return Err(Error::Precondition(format!(
                "E_{i}{j} is not off-diagonal in dimension {k}"
            )));
        }
        let mut m = Self::identity(k);
        m.entries[(i - 1) * k + (j - 1)] = t.into();
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    /// Entry at 1-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[(i - 1) * self.k + (j - 1)]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.k)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = self.k;
        let mut entries = vec![BigInt::zero(); k * k];
        for i in 0..k {
            for l in 0..k {
                let a = &self.entries[i * k + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..k {
                    entries[i * k + j] += a * &other.entries[l * k + j];
                }
            }
        }
        IntMat { k, entries }
    }

    /// Fraction-free Gaussian elimination.
    pub fn determinant(&self) -> BigInt {
        let k = self.k;
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for c in 0..k {
            let Some(p) = (c..k).find(|&r| !a[r * k + c].is_zero()) else {
                return BigInt::zero();
            };
            if p != c {
                for j in 0..k {
                    a.swap(p * k + j, c * k + j);
                }
                sign = -sign;
            }
            for r in c + 1..k {
                for j in c + 1..k {
                    let v = &a[c * k + c] * &a[r * k + j] - &a[r * k + c] * &a[c * k + j];
                    a[r * k + j] = v / &prev;
                }
                a[r * k + c] = BigInt::zero();
            }
            prev = a[c * k + c].clone();
        }
        sign * &a[(k - 1) * k + (k - 1)]
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_default()
    }

    /// Entries reduced into `0..m`.
    pub fn reduce(&self, m: u64) -> Vec<u64> {
        let m = BigInt::from(m);
        self.entries
            .iter()
            .map(|x| {
                let r = ((x % &m) + &m) % &m;
                r.to_u64().expect("residue fits")
            })
            .collect()
    }

    /// Whether the reduction mod `m` is the identity.
    pub fn is_identity_mod(&self, m: u64) -> bool {
        let k = self.k;
        self.entries.iter().enumerate().all(|(idx, x)| {
            let target = if idx / k == idx % k { x - 1 } else { x.clone() };
            (target % m).is_zero()
        })
    }

    /// Block-diagonal embedding `diag(self, I)` into dimension `k`.
    pub fn embed(&self, k: usize) -> Result<Self> {
        if k < self.k {
            return Err(Error::Precondition(format!(
                "cannot embed dimension {} into {k}",
                self.k
            )));
        }
        let mut out = Self::identity(k);
        for i in 0..self.k {
            for j in 0..self.k {
                out.entries[i * k + j] = self.entries[i * self.k + j].clone();
            }
        }
        Ok(out)
    }

    /// Rows separated by `;`, entries by spaces.
    pub fn encode(&self) -> String {
        self.entries
            .chunks(self.k)
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse(s: &str) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = s
            .split(';')
            .map(|r| {
                r.split_whitespace()
                    .map(|x| {
                        x.parse::<BigInt>().map_err(|_| Error::Parse {
                            input: s.into(),
                            reason: format!("bad entry `{x}`"),
                        })
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Self::from_rows(&rows)
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

/// Every `E_ij(1)` and `E_ij(-1)`, `i != j`, as letters: the pair `(i, j)`
/// is generator number `g` in row-major order, with `E_ij(-1)` its inverse.
pub fn sl_generators_lettered(k: usize) -> Result<Vec<(Letter, IntMat)>> {
    if k < 2 {
        return Err(Error::Precondition("SL_k needs k >= 2".into()));
    }
    let mut out = Vec::new();
    let mut g = 0u8;
    for i in 1..=k {
        for j in (1..=k).filter(|&j| j != i) {
            out.push((Letter::gen(g), IntMat::elementary(k, i, j, 1)?));
            out.push((Letter::gen(g).inv(), IntMat::elementary(k, i, j, -1)?));
            g += 1;
        }
    }
    Ok(out)
}

pub fn sl_generators(k: usize) -> Result<Vec<IntMat>> {
    Ok(sl_generators_lettered(k)?
        .into_iter()
        .map(|(_, m)| m)
        .collect())
}

pub type SlBall = Ball<IntMat>;

/// Ball in `SL_k(Z)` for the elementary generators, within the default
/// radius caps.
pub fn sl_ball(k: usize, radius: usize) -> Result<SlBall> {
    let cap = match k {
        2 => RADIUS_CAP_SL2,
        3 => RADIUS_CAP_SL3,
        _ => 0,
    };
    if radius > cap {
        return Err(Error::Precondition(format!(
            "radius {radius} exceeds the cap {cap} for SL_{k}"
        )));
    }
    sl_ball_with_cap(k, radius, BALL_CAP)
}

pub fn sl_ball_with_cap(k: usize, radius: usize, cap: usize) -> Result<SlBall> {
    let gens = sl_generators_lettered(k)?;
    Ball::build(IntMat::identity(k), &gens, radius, cap, IntMat::mul)
}

fn factor(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// `|SL_k(Z/m)|`, multiplicative over prime powers with
/// `|SL_k(Z/p^e)| = p^((e-1)(k^2-1)) |SL_k(F_p)|` and
/// `|SL_k(F_p)| = p^(k(k-1)/2) prod_{i=2..k} (p^i - 1)`.
pub fn order_slk_mod(k: usize, m: u64) -> Result<BigUint> {
    if k < 1 || m < 2 {
        return Err(Error::Precondition(
            "order_slk_mod needs k >= 1 and m >= 2".into(),
        ));
    }
    let k32 = k as u32;
    let mut total = BigUint::one();
    for (p, e) in factor(m) {
        let pb = BigUint::from(p);
        let mut field = pb.pow(k32 * (k32 - 1) / 2);
        for i in 2..=k32 {
            field *= pb.pow(i) - 1u32;
        }
        total *= pb.pow((e - 1) * (k32 * k32 - 1)) * field;
    }
    Ok(total)
}

/// Whether `q >= 2` is a power of a prime.
pub fn is_prime_power(q: u64) -> bool {
    let f = factor(q);
    f.len() == 1 && q >= 2
}

/// Default scan bound: twice the largest entry magnitude, plus two.
pub fn default_m_max(g: &IntMat) -> u64 {
    let m = g.max_abs_entry().to_u64().unwrap_or(u64::MAX / 4);
    m.saturating_mul(2).saturating_add(2)
}

/// Minimal `|SL_k(Z/q)|` over prime powers `q <= m_max` with `g` nontrivial
/// mod `q`.
pub fn k_congruence_sl(g: &IntMat, m_max: u64) -> Result<(BigUint, QuotientWitness)> {
    if g.is_identity() {
        return Err(Error::TrivialElement);
    }
    let mut best: Option<(BigUint, u64)> = None;
    for q in (2..=m_max).filter(|&q| is_prime_power(q)) {
        let size = order_slk_mod(g.dim(), q)?;
        if best.as_ref().is_some_and(|(b, _)| size >= *b) {
            continue;
        }
        if !g.is_identity_mod(q) {
            best = Some((size, q));
        }
    }
    let (size, q) = best.ok_or(Error::Exhausted { bound: m_max })?;
    Ok((
        size.clone(),
        QuotientWitness::new(
            size,
            WitnessData::Congruence {
                modulus: q,
                coordinate: None,
            },
        ),
    ))
}

pub fn verify_sl_witness(g: &IntMat, witness: &QuotientWitness) -> bool {
    match witness.data {
        WitnessData::Congruence {
            modulus,
            coordinate: None,
        } => {
            modulus >= 2
                && order_slk_mod(g.dim(), modulus).is_ok_and(|o| o == witness.order)
                && !g.is_identity_mod(modulus)
        }
        _ => false,
    }
}

/// Least prime power `q` with `g` nontrivial mod `q`.
pub fn least_detecting_prime_power(g: &IntMat) -> Result<u64> {
    if g.is_identity() {
        return Err(Error::TrivialElement);
    }
    let bound = default_m_max(g);
    (2..=bound)
        .filter(|&q| is_prime_power(q))
        .find(|&q| !g.is_identity_mod(q))
        .ok_or(Error::Exhausted { bound })
}

/// `E_12(psi(n))`.
pub fn witness_elementary(k: usize, n: u64) -> Result<IntMat> {
    if k < 2 || n < 1 {
        return Err(Error::Precondition(
            "witness_elementary needs k >= 2 and n >= 1".into(),
        ));
    }
    IntMat::elementary(k, 1, 2, BigInt::from(psi(n)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlLowerRow {
    pub n: u64,
    /// Least prime power detecting `E_12(psi(n))`.
    pub q: u64,
    pub size: BigUint,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlLowerReport {
    pub k: usize,
    pub rows: Vec<SlLowerRow>,
}

impl SlLowerReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }
}

/// For each `n`: the least prime power detecting `E_12(psi(n))` exceeds `n`,
/// so every congruence quotient detecting it has order at least `n`.
pub fn verify_sl_lower(k: usize, ns: &[u64]) -> Result<SlLowerReport> {
    if k < 3 {
        return Err(Error::Precondition(
            "the lower bound mechanism needs k >= 3".into(),
        ));
    }
    let rows = ns
        .iter()
        .map(|&n| {
            let g = witness_elementary(k, n)?;
            let q = least_detecting_prime_power(&g)?;
            let (size, _) = k_congruence_sl(&g, default_m_max(&g))?;
            let passed = q > n && size >= BigUint::from(n);
            Ok(SlLowerRow { n, q, size, passed })
        })
        .collect::<Result<_>>()?;
    Ok(SlLowerReport { k, rows })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlUpperRow {
    pub n: usize,
    /// Largest congruence `k` over the ball of radius `n`.
    pub max_k: BigUint,
    pub max_entry: BigInt,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlUpperReport {
    pub k: usize,
    pub radius: usize,
    pub rows: Vec<SlUpperRow>,
    /// Smallest `lambda` with `max_entry(n) <= lambda^n` for every row.
    pub lambda: f64,
    /// Smallest `C` with `max_k(n) <= C n^(k^2 - 1)` for every row.
    pub c: f64,
    /// Least-squares slope of `ln max_k` against `ln n`.
    pub slope: f64,
    /// Every nontrivial element has an entry off the identity pattern of
    /// magnitude at most `lambda^n`.
    pub mechanism_holds: bool,
    /// `true` for `k = 2`, where no congruence subgroup property applies.
    pub upper_bound_only: bool,
}

impl SlUpperReport {
    pub fn passed(&self, slope_max: f64) -> bool {
        self.mechanism_holds && self.slope <= slope_max
    }
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    if points.len() < 2 {
        return 0.0;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Congruence values over the ball, with measured `lambda`, `C` and slope.
pub fn verify_sl_upper(k: usize, radius: usize) -> Result<SlUpperReport> {
    let ball = sl_ball(k, radius)?;
    let ks: Vec<(usize, BigUint)> = ball
        .entries
        .par_iter()
        .filter(|e| !e.element.is_identity())
        .map(|e| {
            Ok((
                e.length,
                k_congruence_sl(&e.element, default_m_max(&e.element))?.0,
            ))
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut max_k = BigUint::zero();
    let mut max_entry = BigInt::zero();
    for n in 1..=radius {
        for (_, kv) in ks.iter().filter(|(l, _)| *l == n) {
            max_k = max_k.max(kv.clone());
        }
        for e in ball.sphere(n) {
            max_entry = max_entry.max(e.element.max_abs_entry());
        }
        rows.push(SlUpperRow {
            n,
            max_k: max_k.clone(),
            max_entry: max_entry.clone(),
        });
    }
    let to_f = |x: &BigUint| x.to_f64().unwrap_or(f64::INFINITY);
    let lambda = rows
        .iter()
        .map(|r| {
            r.max_entry
                .to_f64()
                .unwrap_or(f64::INFINITY)
                .powf(1.0 / r.n as f64)
        })
        .fold(1.0, f64::max);
    let exponent = (k * k - 1) as i32;
    let c = rows
        .iter()
        .map(|r| to_f(&r.max_k) / (r.n as f64).powi(exponent))
        .fold(0.0, f64::max);
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).ln(), to_f(&r.max_k).ln()))
        .collect();
    let slope = least_squares_slope(&points);
    let mechanism_holds = ball
        .entries
        .iter()
        .filter(|e| !e.element.is_identity())
        .all(|e| {
            let bound = lambda.powi(e.length as i32) * (1.0 + 1e-9);
            let kk = e.element.dim();
            e.element.entries().iter().enumerate().any(|(idx, x)| {
                let off = if idx / kk == idx % kk {
                    x - 1
                } else {
                    x.clone()
                };
                !off.is_zero() && x.abs().to_f64().unwrap_or(f64::INFINITY) <= bound
            })
        });
    Ok(SlUpperReport {
        k,
        radius,
        rows,
        lambda,
        c,
        slope,
        mechanism_holds,
        upper_bound_only: k == 2,
    })
}

/// Congruence growth table of `SL_k(Z)`.
pub fn f_sl(k: usize, radius: usize) -> Result<GrowthTable> {
    let ball = sl_ball(k, radius)?;
    let samples: Vec<Sample> = ball
        .entries
        .par_iter()
        .filter(|e| !e.element.is_identity())
        .map(|e| {
            let (kv, witness) = k_congruence_sl(&e.element, default_m_max(&e.element))?;
            Ok(Sample {
                length: e.length,
                k: kv,
                argmax: e.element.encode(),
                witness,
            })
        })
        .collect::<Result<_>>()?;
    let method = if k == 2 {
        "congruence-upper"
    } else {
        "congruence"
    };
    Ok(GrowthTable::from_samples(
        &format!("sl({k})"),
        "E_ij(+-1)",
        method,
        radius,
        &samples,
    ))
}
