//! Number-theoretic kernel: `k` and `F` for `Z`, `Z^d` and quadratic
//! integer rings.
//!
//! In `Z` the finite quotients are `Z/qZ`, so `k(m)` is the least `q >= 2`
//! not dividing `m`. The extremal elements are the values of
//! `psi(r) = lcm(1, ..., r)`.

mod quad;

pub use quad::{
    f_quad, is_prime, k_ring, k_ring_with_bound, split_type, verify_ring_witness, IdealHnf,
    KRingResult, PrimeSplit, QuadInt, QuadRing, SplitKind,
};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::witness::{QuotientWitness, WitnessData};

/// `lcm(1, ..., r)`; the empty lcm is 1.
pub fn psi(r: u64) -> BigUint {
    (1..=r).fold(BigUint::one(), |acc, i| acc.lcm(&BigUint::from(i)))
}

/// Least `q >= 2` not dividing `m` (which must be nonzero).
pub fn least_non_divisor(m: u64) -> u64 {
    debug_assert!(m != 0);
    let mut q = 2;
    while m.is_multiple_of(q) {
        q += 1;
    }
    q
}

/// Order of the smallest quotient `Z/qZ` in which `m` survives.
pub fn k_int(m: &BigInt) -> Result<(u64, QuotientWitness)> {
    if m.is_zero() {
        return Err(Error::TrivialElement);
    }
    let q = match m.abs().to_u64() {
        Some(small) => least_non_divisor(small),
        None => {
            let mut q = 2u64;
            while (m % q).is_zero() {
                q += 1;
            }
            q
        }
    };
    Ok((
        q,
        QuotientWitness::new(
            q,
            WitnessData::Congruence {
                modulus: q,
                coordinate: None,
            },
        ),
    ))
}

/// Re-check a `Z/qZ` witness for `m`.
pub fn verify_int_witness(m: &BigInt, witness: &QuotientWitness) -> bool {
    match witness.data {
        WitnessData::Congruence {
            modulus,
            coordinate: None,
        } => modulus >= 2 && witness.order == BigUint::from(modulus) && !(m % modulus).is_zero(),
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FIntMethod {
    /// Maximise `k_int` over every `1 <= m <= n`.
    ExactScan,
    /// Jump straight to the largest `psi(m) <= n`.
    LcmJump,
}

/// `F_Z(n)` for the generating set `{1}` together with the smallest argmax.
pub fn f_int(n: u64, method: FIntMethod) -> Result<(u64, BigUint)> {
    if n == 0 {
        return Err(Error::Precondition("F_int needs n >= 1".into()));
    }
    match method {
        FIntMethod::ExactScan => {
            let mut best = (0, 0);
            for m in 1..=n {
                let k = least_non_divisor(m);
                if k > best.0 {
                    best = (k, m);
                }
            }
            Ok((best.0, BigUint::from(best.1)))
        }
        FIntMethod::LcmJump => {
            let target = BigUint::from(n);
            let mut r = 1u64;
            let mut current = BigUint::one();
            loop {
                let next = current.lcm(&BigUint::from(r + 1));
                if next > target {
                    break;
                }
                current = next;
                r += 1;
            }
            let k = k_int(&BigInt::from(current.clone()))?.0;
            Ok((k, current))
        }
    }
}

/// Prefix table of `F_Z(n)` for all `1 <= n <= n_max`, entry `n - 1`.
pub fn f_int_table(n_max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::with_capacity(n_max as usize);
    let mut best = (0, 0);
    for m in 1..=n_max {
        let k = least_non_divisor(m);
        if k > best.0 {
            best = (k, m);
        }
        out.push(best);
    }
    out
}

/// `k` for an element of `Z^d`: the minimum of `k_int` over nonzero
/// coordinates, with the coordinate recorded in the witness.
pub fn k_int_vector(v: &[BigInt]) -> Result<(u64, QuotientWitness)> {
    let mut best: Option<(u64, usize)> = None;
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (q, _) = k_int(x)?;
        if best.is_none_or(|(b, _)| q < b) {
            best = Some((q, i));
        }
    }
    let (q, i) = best.ok_or(Error::TrivialElement)?;
    Ok((
        q,
        QuotientWitness::new(
            q,
            WitnessData::Congruence {
                modulus: q,
                coordinate: Some(i),
            },
        ),
    ))
}

pub fn verify_vector_witness(v: &[BigInt], witness: &QuotientWitness) -> bool {
    match witness.data {
        WitnessData::Congruence {
            modulus,
            coordinate: Some(i),
        } => {
            modulus >= 2
                && witness.order == BigUint::from(modulus)
                && v.get(i).is_some_and(|x| !(x % modulus).is_zero())
        }
        _ => false,
    }
}

/// Outcome of the lcm-extremality scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcmReport {
    pub max_m: u64,
    pub checked: u64,
    /// `(m, l)` with `k(l) > k(psi(m))`, or an `l <= psi(m)` beating `psi(m)`.
    pub counterexample: Option<(u64, u64)>,
}

impl LcmReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// For every `m <= max_m`: no `l < psi(m + 1)` has larger `k` than `psi(m)`.
pub fn verify_lcm_extremal(max_m: u64) -> Result<LcmReport> {
    if max_m < 3 {
        return Err(Error::Precondition(
            "verify_lcm_extremal needs M >= 3".into(),
        ));
    }
    let limit = psi(max_m + 1)
        .to_u64()
        .ok_or_else(|| Error::Precondition("psi(M + 1) does not fit in 64 bits".into()))?;
    let mut report = LcmReport {
        max_m,
        checked: 0,
        counterexample: None,
    };
    for m in 1..=max_m {
        let lo = psi(m).to_u64().unwrap();
        let hi = psi(m + 1).to_u64().unwrap().min(limit);
        let k_lo = least_non_divisor(lo);
        for l in 1..hi {
            report.checked += 1;
            if l != lo && least_non_divisor(l) > k_lo {
                report.counterexample = Some((m, l));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioRow {
    pub n: u64,
    pub f: u64,
    /// `F(n) / ln n`; absent for `n = 1`.
    pub ratio: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogGroup {
    Z,
    Quad(i64),
}

/// Rows `(n, F(n), F(n) / ln n)` for ascending `ns`.
pub fn ratio_table_log(group: LogGroup, ns: &[u64]) -> Result<Vec<RatioRow>> {
    if ns.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Precondition("ns must be ascending".into()));
    }
    let ring = match group {
        LogGroup::Quad(d) => Some(QuadRing::new(d)?),
        LogGroup::Z => None,
    };
    ns.iter()
        .map(|&n| {
            let f = match &ring {
                None => f_int(n, FIntMethod::LcmJump)?.0,
                Some(r) => f_quad(r, n)?.0,
            };
            let ratio = (n > 1).then(|| f as f64 / (n as f64).ln());
            Ok(RatioRow { n, f, ratio })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn psi_small_values() {
        assert_eq!(psi(0), BigUint::one());
        assert_eq!(psi(1), BigUint::one());
        assert_eq!(psi(2), BigUint::from(2u32));
        assert_eq!(psi(3), BigUint::from(6u32));
        // 2^3 * 3^2 * 5 * 7
        assert_eq!(psi(10), BigUint::from(2520u32));
    }

    #[test]
    fn k_int_examples() {
        assert_eq!(k_int(&big(1)).unwrap().0, 2);
        assert_eq!(k_int(&big(6)).unwrap().0, 4);
        assert_eq!(k_int(&big(2520)).unwrap().0, 11);
        assert_eq!(k_int(&big(-6)).unwrap().0, 4);
        assert_eq!(k_int(&big(0)).unwrap_err(), Error::TrivialElement);
    }

    #[test]
    fn k_int_handles_values_beyond_u64() {
        let m = BigInt::from(psi(60));
        let (q, w) = k_int(&m).unwrap();
        assert_eq!(q, 61);
        assert!(verify_int_witness(&m, &w));
    }

    #[test]
    fn f_int_examples() {
        for method in [FIntMethod::ExactScan, FIntMethod::LcmJump] {
            assert_eq!(f_int(1, method).unwrap(), (2, BigUint::from(1u32)));
            assert_eq!(f_int(6, method).unwrap(), (4, BigUint::from(6u32)));
            assert_eq!(f_int(2520, method).unwrap(), (11, BigUint::from(2520u32)));
        }
        assert!(f_int(0, FIntMethod::ExactScan).is_err());
    }

    #[test]
    fn vector_examples() {
        assert_eq!(k_int_vector(&[big(1), big(0)]).unwrap().0, 2);
        assert_eq!(k_int_vector(&[big(6), big(2520)]).unwrap().0, 4);
        assert_eq!(k_int_vector(&[big(2520), big(2520)]).unwrap().0, 11);
        assert_eq!(
            k_int_vector(&[big(0), big(0)]).unwrap_err(),
            Error::TrivialElement
        );
    }

    #[test]
    fn lcm_extremal_small_cases() {
        assert!(verify_lcm_extremal(3).unwrap().passed());
        assert!(verify_lcm_extremal(8).unwrap().passed());
        assert!(verify_lcm_extremal(1).is_err());
    }

    #[test]
    fn k_at_psi_is_bracketed() {
        let mut prev = 0;
        for m in 1..=30u64 {
            let k = k_int(&BigInt::from(psi(m))).unwrap().0;
            assert!(k > m && k <= 2 * m.max(1), "m = {m}, k = {k}");
            assert!(k >= prev, "k(psi(.)) decreased at m = {m}");
            prev = k;
        }
    }

    #[test]
    fn ratio_rows() {
        let rows = ratio_table_log(LogGroup::Z, &[1, 6, 2520]).unwrap();
        assert_eq!(rows[0].f, 2);
        assert!(rows[0].ratio.is_none());
        assert_eq!(rows[1].f, 4);
        assert_eq!(rows[2].f, 11);
        assert!((rows[2].ratio.unwrap() - 1.405).abs() < 1e-3);
        assert!(ratio_table_log(LogGroup::Z, &[6, 1]).is_err());
    }
}
