//! Unitriangular integer matrices.
//!
//! `U_d(Z)` is generated by the superdiagonal elementary matrices. Reducing
//! mod a prime `p` gives the finite quotient `U_d(Z/p)` of order
//! `p^(d(d-1)/2)`, which bounds `k` from above. For `d = 3` (the Heisenberg
//! group) exact values come from the quotient search.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::is_prime;
use crate::ball::{symmetric_generators, Ball};
use crate::error::{Error, Result};
use crate::harness::{GrowthTable, Sample};
use crate::quotsearch::{min_quotient_with, Filter, Presentation, SearchConfig};
use crate::witness::{QuotientWitness, WitnessData};

/// Default element cap for unitriangular balls.
pub const BALL_CAP: usize = 2_000_000;

/// Upper unitriangular `d x d` integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniTriMat {
    d: usize,
    entries: Vec<BigInt>,
}

impl UniTriMat {
    pub fn identity(d: usize) -> Self {
        let mut entries = vec![BigInt::zero(); d * d];
        for i in 0..d {
            entries[i * d + i] = BigInt::one();
        }
        UniTriMat { d, entries }
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        let d = rows.len();
        if d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(Error::Precondition(
                "matrix must be square and nonempty".into(),
            ));
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let ok = match i.cmp(&j) {
                    std::cmp::Ordering::Greater => x.is_zero(),
                    std::cmp::Ordering::Equal => x.is_one(),
                    std::cmp::Ordering::Less => true,
                };
                if !ok {
                    return Err(Error::Precondition(format!(
                        "entry ({}, {}) breaks unitriangularity",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(UniTriMat {
            d,
            entries: rows.concat(),
        })
    }

    /// `E_ij(t)` with 1-based `i < j`.
    pub fn elementary(d: usize, i: usize, j: usize, t: impl Into<BigInt>) -> Result<Self> {
        if !(1 <= i && i < j && j <= d) {
            return Err(Error::Precondition(format!(
                "E_{i}{j} is not strictly upper triangular in dimension {d}"
            )));
        }
        let mut m = Self::identity(d);
        m.entries[(i - 1) * d + (j - 1)] = t.into();
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Entry at 1-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[(i - 1) * self.d + (j - 1)]
    }

    pub fn is_identity(&self) -> bool {
        self.off_diagonal().all(|x| x.is_zero())
    }

    /// Strictly upper triangular entries, row by row.
    pub fn off_diagonal(&self) -> impl Iterator<Item = &BigInt> {
        let d = self.d;
        (0..d).flat_map(move |i| (i + 1..d).map(move |j| &self.entries[i * d + j]))
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.off_diagonal()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::one)
            .max(BigInt::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.d;
        let mut entries = vec![BigInt::zero(); d * d];
        for i in 0..d {
            for j in i..d {
                let mut s = BigInt::zero();
                for k in i..=j {
                    s += &self.entries[i * d + k] * &other.entries[k * d + j];
                }
                entries[i * d + j] = s;
            }
        }
        UniTriMat { d, entries }
    }

    /// `(I + N)^-1 = I - N + N^2 - ...` with `N` nilpotent.
    pub fn inverse(&self) -> Self {
        let d = self.d;
        let mut n = self.clone();
        for i in 0..d {
            n.entries[i * d + i] = BigInt::zero();
        }
        let mut acc = Self::identity(d);
        let mut power = Self::identity(d);
        for k in 1..d {
            power = mul_raw(&power, &n);
            for (a, p) in acc.entries.iter_mut().zip(&power.entries) {
                if k % 2 == 1 {
                    *a -= p;
                } else {
                    *a += p;
                }
            }
        }
        acc
    }

    /// `x^-1 y^-1 x y`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    /// Whether the reduction mod `m` is the identity.
    pub fn is_identity_mod(&self, m: u64) -> bool {
        self.off_diagonal().all(|x| (x % m).is_zero())
    }

    /// Rows separated by `;`, entries by spaces.
    pub fn encode(&self) -> String {
        self.entries
            .chunks(self.d)
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

fn mul_raw(a: &UniTriMat, b: &UniTriMat) -> UniTriMat {
    let d = a.d;
    let mut entries = vec![BigInt::zero(); d * d];
    for i in 0..d {
        for k in 0..d {
            if a.entries[i * d + k].is_zero() {
                continue;
            }
            for j in 0..d {
                entries[i * d + j] += &a.entries[i * d + k] * &b.entries[k * d + j];
            }
        }
    }
    UniTriMat { d, entries }
}

impl fmt::Display for UniTriMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

/// `E_{i,i+1}(1)` for `i = 1..d-1`.
pub fn unitri_generators(d: usize) -> Result<Vec<UniTriMat>> {
    if d < 2 {
        return Err(Error::Precondition(
            "unitriangular groups need d >= 2".into(),
        ));
    }
    (1..d)
        .map(|i| UniTriMat::elementary(d, i, i + 1, 1))
        .collect()
}

pub type NilBall = Ball<UniTriMat>;

/// Word-metric ball in `U_d(Z)` for the symmetric superdiagonal generators.
pub fn ball(d: usize, radius: usize) -> Result<NilBall> {
    ball_with_cap(d, radius, BALL_CAP)
}

pub fn ball_with_cap(d: usize, radius: usize, cap: usize) -> Result<NilBall> {
    let gens = unitri_generators(d)?;
    let inverses: Vec<UniTriMat> = gens.iter().map(UniTriMat::inverse).collect();
    let sym = symmetric_generators(&gens, &inverses);
    Ball::build(UniTriMat::identity(d), &sym, radius, cap, UniTriMat::mul)
}

pub fn hirsch_unitri(d: usize) -> usize {
    d * (d - 1) / 2
}

/// Least prime `p` with `g` nontrivial mod `p`, and the order
/// `p^(d(d-1)/2)` of `U_d(Z/p)`. An upper bound for `k(g)`.
pub fn k_congruence_unitri(g: &UniTriMat) -> Result<(BigUint, QuotientWitness)> {
    let gcd = g.off_diagonal().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return Err(Error::TrivialElement);
    }
    let p = (2u64..)
        .filter(|&p| is_prime(p))
        .find(|&p| !(&gcd % p).is_zero())
        .expect("gcd has finitely many prime factors");
    let size = BigUint::from(p).pow(hirsch_unitri(g.dim()) as u32);
    Ok((
        size.clone(),
        QuotientWitness::new(
            size,
            WitnessData::Congruence {
                modulus: p,
                coordinate: None,
            },
        ),
    ))
}

pub fn verify_unitri_witness(g: &UniTriMat, witness: &QuotientWitness) -> bool {
    match witness.data {
        WitnessData::Congruence {
            modulus,
            coordinate: None,
        } => {
            is_prime(modulus)
                && witness.order == BigUint::from(modulus).pow(hirsch_unitri(g.dim()) as u32)
                && !g.is_identity_mod(modulus)
        }
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilMethod {
    /// Reduction mod the least detecting prime.
    Congruence,
    /// Certified minimal quotient of the Heisenberg presentation (`d = 3`).
    Exact,
}

impl NilMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            NilMethod::Congruence => "congruence",
            NilMethod::Exact => "exact",
        }
    }
}

/// Largest radius accepted by the exact method.
pub const EXACT_RADIUS_MAX: usize = 8;

/// Exact `k` of a Heisenberg element given by a word in `a = E_12`,
/// `b = E_23`. Every quotient of a nilpotent group is nilpotent, so the
/// certified nilpotent search gives the unrestricted minimum.
pub fn k_exact_heisenberg(
    word: &crate::word::Word,
    config: &SearchConfig,
) -> Result<(BigUint, QuotientWitness)> {
    let r = min_quotient_with(&Presentation::heisenberg(), word, Filter::Nilpotent, config)?;
    if !r.exact {
        return Err(Error::UndetectedBelowBound {
            bound: r.lower_bound,
        });
    }
    Ok((BigUint::from(r.k), r.witness))
}

/// `F` of `U_d(Z)` for `n = 1..=radius`.
pub fn f_nilpotent(d: usize, radius: usize, method: NilMethod) -> Result<GrowthTable> {
    f_nilpotent_with(d, radius, method, &SearchConfig::default())
}

pub fn f_nilpotent_with(
    d: usize,
    radius: usize,
    method: NilMethod,
    config: &SearchConfig,
) -> Result<GrowthTable> {
    if method == NilMethod::Exact && (d != 3 || radius > EXACT_RADIUS_MAX) {
        return Err(Error::UnsupportedMethod {
            group: format!("unitri({d}) at radius {radius}"),
            method: "exact".into(),
        });
    }
    let b = ball(d, radius)?;
    let samples: Vec<Sample> = b
        .entries
        .par_iter()
        .filter(|e| !e.element.is_identity())
        .map(|e| {
            let (upper, cong) = k_congruence_unitri(&e.element)?;
            let (k, witness) = match method {
                NilMethod::Congruence => (upper, cong),
                NilMethod::Exact => {
                    let (k, w) = k_exact_heisenberg(&e.word, config)?;
                    if k > upper {
                        return Err(Error::Verification(format!(
                            "exact k {k} of {} exceeds its congruence bound {upper}",
                            e.element
                        )));
                    }
                    (k, w)
                }
            };
            Ok(Sample {
                length: e.length,
                k,
                argmax: e.element.encode(),
                witness,
            })
        })
        .collect::<Result<_>>()?;
    let gens = (1..d)
        .map(|i| format!("E{}{}", i, i + 1))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(GrowthTable::from_samples(
        &format!("unitri({d})"),
        &gens,
        method.as_str(),
        radius,
        &samples,
    ))
}
