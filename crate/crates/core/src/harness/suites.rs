//! Named verification suites with machine-readable reports.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::cache::Cache;
use super::group::GroupId;
use super::growth::compute_growth;
use crate::arith::{
    f_int, f_int_table, is_prime, k_int, k_ring, psi, split_type, verify_lcm_extremal, FIntMethod,
    IdealHnf, QuadRing, SplitKind,
};
use crate::error::{Error, Result};
use crate::grig::{
    self, act, act_via_sections, acts_trivially_to_depth, base_identity_holds, gamma_order,
    grig_ball, is_trivial, sections, verify_deep, witness_deep, Convention, GammaMethod, Gen,
    GrigWord, LevelAction,
};
use crate::nilpotent::{self, hirsch_unitri, k_congruence_unitri, k_exact_heisenberg, UniTriMat};
use crate::quotsearch::{
    iterated_commutator, min_quotient, min_quotient_with, verify_witness, Filter, Presentation,
    SearchConfig,
};
use crate::slk::{
    default_m_max, is_prime_power, k_congruence_sl, order_slk_mod, sl_ball, verify_sl_lower,
    verify_sl_upper,
};
use crate::word::{Letter, Word};
use crate::TOOL_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Arith,
    Products,
    Monotonicity,
    Nilpotent,
    Sl,
    Grig,
    Nilquot,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Arith,
        Suite::Products,
        Suite::Monotonicity,
        Suite::Nilpotent,
        Suite::Sl,
        Suite::Grig,
        Suite::Nilquot,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Arith => "arith",
            Suite::Products => "products",
            Suite::Monotonicity => "monotonicity",
            Suite::Nilpotent => "nilpotent",
            Suite::Sl => "sl",
            Suite::Grig => "grig",
            Suite::Nilquot => "nilquot",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Parse {
                input: s.into(),
                reason: "unknown suite".into(),
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub tool_version: String,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Outcome of one check body: pass flag and a human-readable detail.
type Outcome = Result<(bool, String)>;

struct Runner<'a> {
    checks: Vec<Check>,
    config: SearchConfig,
    cache: Option<&'a Cache>,
}

impl Runner<'_> {
    fn run(&mut self, name: &str, body: impl FnOnce(&SearchConfig, Option<&Cache>) -> Outcome) {
        let (status, detail) = match body(&self.config, self.cache) {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        self.checks.push(Check {
            name: name.to_string(),
            status,
            detail,
        });
    }
}

/// Runs `suite`. Failures are reported as data, never as errors.
pub fn verify_suite(suite: Suite, cache: Option<&Cache>) -> Report {
    let mut runner = Runner {
        checks: Vec::new(),
        config: SearchConfig::default(),
        cache,
    };
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    for s in suites {
        match s {
            Suite::Arith => arith_checks(&mut runner),
            Suite::Products => product_checks(&mut runner),
            Suite::Monotonicity => monotonicity_checks(&mut runner),
            Suite::Nilpotent => nilpotent_checks(&mut runner),
            Suite::Sl => sl_checks(&mut runner),
            Suite::Grig => grig_checks(&mut runner),
            Suite::Nilquot => nilquot_checks(&mut runner),
            Suite::All => unreachable!(),
        }
    }
    Report {
        suite: suite.as_str().to_string(),
        checks: runner.checks,
        tool_version: TOOL_VERSION.to_string(),
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Number of ideals of norm `p` in the ring, by testing every Hermite form.
pub fn ideals_of_prime_norm(ring: &QuadRing, p: u64) -> usize {
    (0..p)
        .filter(|&b| IdealHnf { a: p, b, c: 1 }.is_ideal(ring))
        .count()
}

fn arith_checks(r: &mut Runner) {
    r.run("arith/psi-anchors", |_, _| {
        let got = [psi(2), psi(3), psi(10)];
        Ok((
            got == [big(2), big(6), big(2520)],
            format!(
                "psi(2), psi(3), psi(10) = {}, {}, {}",
                got[0], got[1], got[2]
            ),
        ))
    });
    r.run("arith/f-int-methods-agree", |_, _| {
        let n_max = 10_000;
        let table = f_int_table(n_max);
        for n in 1..=n_max {
            let (k, _) = f_int(n, FIntMethod::LcmJump)?;
            if k != table[n as usize - 1].0 {
                return Ok((
                    false,
                    format!(
                        "n = {n}: exact scan {} vs lcm jump {k}",
                        table[n as usize - 1].0
                    ),
                ));
            }
        }
        Ok((true, format!("F_Z(n) equal for all n <= {n_max}")))
    });
    r.run("arith/f-int-log-ratio", |_, _| {
        let mut worst = (f64::INFINITY, f64::NEG_INFINITY);
        let mut points = 0;
        for m in 1..=30 {
            let n = psi(m).to_u64().unwrap();
            if !(100..=1_000_000).contains(&n) {
                continue;
            }
            let (k, _) = f_int(n, FIntMethod::LcmJump)?;
            let ratio = k as f64 / (n as f64).ln();
            worst = (worst.0.min(ratio), worst.1.max(ratio));
            points += 1;
        }
        let ok = points > 0 && worst.0 >= 1.0 && worst.1 <= 2.5;
        Ok((
            ok,
            format!(
                "{points} jump points in [100, 1e6], ratio range [{:.4}, {:.4}]",
                worst.0, worst.1
            ),
        ))
    });
    r.run("arith/lcm-extremal", |_, _| {
        let rep = verify_lcm_extremal(8)?;
        Ok((
            rep.passed(),
            format!(
                "M = 8, {} values checked, counterexample {:?}",
                rep.checked, rep.counterexample
            ),
        ))
    });
    r.run("arith/gaussian-splitting", |_, _| {
        let ring = QuadRing::new(-1)?;
        for p in (2..=50).filter(|&p| is_prime(p)) {
            let expected = match ideals_of_prime_norm(&ring, p) {
                2 => SplitKind::Split,
                1 => SplitKind::Ramified,
                0 => SplitKind::Inert,
                n => return Ok((false, format!("{n} ideals of norm {p}"))),
            };
            let got = split_type(p, -1)?.kind;
            if got != expected {
                return Ok((
                    false,
                    format!("p = {p}: Kronecker says {got:?}, ideal count says {expected:?}"),
                ));
            }
        }
        Ok((
            true,
            "classification matches ideal counts for p <= 50".into(),
        ))
    });
    r.run("arith/gaussian-split-density", |_, _| {
        let primes: Vec<u64> = (2..).filter(|&p| is_prime(p)).take(200).collect();
        let split = primes
            .iter()
            .filter(|&&p| {
                split_type(p, -1)
                    .map(|s| s.kind == SplitKind::Split)
                    .unwrap_or(false)
            })
            .count();
        let density = split as f64 / 200.0;
        Ok((
            (density - 0.5).abs() <= 0.10,
            format!("{split} of the first 200 primes split, density {density:.3}"),
        ))
    });
    r.run("arith/ring-examples", |_, _| {
        let gi = QuadRing::new(-1)?;
        let two = k_ring(&gi.element(2, 0))?.size;
        let one = k_ring(&QuadRing::new(5)?.element(1, 0))?.size;
        Ok((
            two == 5 && one == 4,
            format!("k(2 in Z[i]) = {two}, k(1 in Z[(1+sqrt5)/2]) = {one}"),
        ))
    });
}

fn product_checks(r: &mut Runner) {
    r.run("products/z-times-z", |config, cache| {
        let z = compute_growth(&GroupId::Z, 100, "exact", config, cache)?;
        let z2 = compute_growth(&GroupId::Zd(2), 100, "exact", config, cache)?;
        let same =
            z.rows.iter().zip(&z2.rows).all(|(a, b)| a.f == b.f) && z.rows.len() == z2.rows.len();
        Ok((
            same,
            format!(
                "F_ZxZ(n) = max(F_Z(n), F_Z(n)) for n <= 100, F(100) = {}",
                z2.last().unwrap().f
            ),
        ))
    });
    r.run("products/z-cubed", |config, cache| {
        let z = compute_growth(&GroupId::Z, 30, "exact", config, cache)?;
        let z3 = compute_growth(&GroupId::Zd(3), 30, "exact", config, cache)?;
        let same = z.rows.iter().zip(&z3.rows).all(|(a, b)| a.f == b.f);
        Ok((same, "F_Z^3(n) = F_Z(n) for n <= 30".into()))
    });
}

fn monotonicity_checks(r: &mut Runner) {
    r.run("monotonicity/sl2-in-sl3", |_, _| {
        let ball = sl_ball(2, 6)?;
        let mut checked = 0;
        for e in ball.entries.iter().skip(1) {
            let (k2, w) = k_congruence_sl(&e.element, default_m_max(&e.element))?;
            let emb = e.element.embed(3)?;
            let (k3, w3) = k_congruence_sl(&emb, default_m_max(&emb))?;
            // The SL_3 witness restricts to a quotient of the SL_2 copy.
            let crate::witness::WitnessData::Congruence { modulus, .. } = w3.data else {
                unreachable!()
            };
            let restricted = order_slk_mod(2, modulus)?;
            if k2 > k3 || restricted < k2 || e.element.is_identity_mod(modulus) {
                return Ok((
                    false,
                    format!("{}: k_SL2 = {k2} ({}), k_SL3 = {k3}", e.element, w),
                ));
            }
            checked += 1;
        }
        Ok((
            true,
            format!("k_SL2(g) <= k_SL3(g) on {checked} elements of the SL_2 ball of radius 6"),
        ))
    });
    r.run("monotonicity/sl-order-vs-modulus", |_, _| {
        for k in 2..=3 {
            for m in 2..=30u64 {
                if order_slk_mod(k, m)? < big(m) {
                    return Ok((false, format!("|SL_{k}(Z/{m})| < {m}")));
                }
            }
        }
        Ok((true, "|SL_k(Z/m)| >= m for k = 2, 3 and m <= 30".into()))
    });
    r.run("monotonicity/tables-nondecreasing", |config, cache| {
        let tables = [
            compute_growth(&GroupId::Z, 200, "exact", config, cache)?,
            compute_growth(&GroupId::Quad(-1), 8, "exact", config, cache)?,
            compute_growth(&GroupId::Unitri(3), 6, "congruence", config, cache)?,
            compute_growth(&GroupId::Sl(2), 5, "congruence", config, cache)?,
            compute_growth(&GroupId::Grig, 8, "congruence", config, cache)?,
        ];
        let bad: Vec<&str> = tables
            .iter()
            .filter(|t| !t.is_monotone())
            .map(|t| t.group_id.as_str())
            .collect();
        Ok((bad.is_empty(), format!("non-monotone tables: {bad:?}")))
    });
    r.run("monotonicity/k-at-psi", |_, _| {
        let ks: Vec<u64> = (1..=40)
            .map(|m| k_int(&BigInt::from(psi(m))).map(|x| x.0))
            .collect::<Result<_>>()?;
        Ok((
            ks.windows(2).all(|w| w[0] <= w[1]),
            "k(psi(m)) nondecreasing for m <= 40".into(),
        ))
    });
}

fn nilpotent_checks(r: &mut Runner) {
    r.run("nilpotent/commutator", |_, _| {
        let g = nilpotent::unitri_generators(3)?;
        let c = g[0].commutator(&g[1]);
        Ok((
            c == UniTriMat::elementary(3, 1, 3, 1)?,
            format!("[E12, E23] = {c}"),
        ))
    });
    r.run("nilpotent/hirsch", |_, _| {
        let h = [2, 3, 4].map(hirsch_unitri);
        Ok((h == [1, 3, 6], format!("h(U_2), h(U_3), h(U_4) = {h:?}")))
    });
    r.run("nilpotent/entry-growth", |_, _| {
        let ball = nilpotent::ball(3, 8)?;
        let mut maxima = Vec::new();
        for n in 0..=8 {
            let m = ball
                .entries
                .iter()
                .filter(|e| e.length <= n)
                .map(|e| e.element.max_abs_entry())
                .max()
                .unwrap();
            maxima.push(m.to_i64().unwrap());
        }
        let ok = maxima
            .iter()
            .enumerate()
            .all(|(n, &m)| m <= (n * n + 1) as i64);
        Ok((
            ok,
            format!(
                "|ball(3, 8)| = {}, max |entry| by radius {maxima:?}",
                ball.len()
            ),
        ))
    });
    r.run("nilpotent/exact-below-congruence", |config, _| {
        let ball = nilpotent::ball(3, 4)?;
        for e in ball.entries.iter().skip(1) {
            let (exact, _) = k_exact_heisenberg(&e.word, config)?;
            let (cong, _) = k_congruence_unitri(&e.element)?;
            if exact > cong {
                return Ok((
                    false,
                    format!("{}: exact {exact} > congruence {cong}", e.word),
                ));
            }
        }
        Ok((
            true,
            format!(
                "k <= k_congruence on all {} nontrivial elements of ball(3, 4)",
                ball.len() - 1
            ),
        ))
    });
    r.run("nilpotent/quotients-are-nilpotent", |config, _| {
        let ball = nilpotent::ball(3, 4)?;
        let heis = Presentation::heisenberg();
        for e in ball.entries.iter().skip(1) {
            let any = min_quotient_with(&heis, &e.word, Filter::Any, config)?;
            let nil = min_quotient_with(&heis, &e.word, Filter::Nilpotent, config)?;
            if any.k != nil.k {
                return Ok((
                    false,
                    format!("{}: any {} vs nilpotent {}", e.word, any.k, nil.k),
                ));
            }
        }
        Ok((true, "filter any = filter nilpotent on ball(3, 4)".into()))
    });
    r.run("nilpotent/congruence-bound", |_, _| {
        let ball = nilpotent::ball(3, 8)?;
        for n in 1..=8 {
            let elems: Vec<&UniTriMat> = ball
                .entries
                .iter()
                .filter(|e| e.length <= n)
                .map(|e| &e.element)
                .collect();
            let f = elems
                .iter()
                .filter(|g| !g.is_identity())
                .map(|g| k_congruence_unitri(g).map(|x| x.0))
                .collect::<Result<Vec<_>>>()?;
            let f = f.into_iter().max().unwrap();
            let max_entry = elems
                .iter()
                .map(|g| g.max_abs_entry())
                .max()
                .unwrap()
                .to_u64()
                .unwrap();
            // k_int maximized over every entry size that occurs, i.e. F_Z(max entry).
            let (fz, _) = f_int(max_entry, FIntMethod::LcmJump)?;
            let bound = BigUint::from(2 * fz).pow(3);
            if f > bound {
                return Ok((false, format!("n = {n}: F = {f} > {bound}")));
            }
        }
        Ok((true, "F(n) <= (2 F_Z(max entry))^3 for n <= 8".into()))
    });
    r.run("nilpotent/parallel-ball", |_, _| {
        let gens = nilpotent::unitri_generators(4)?;
        let inv: Vec<UniTriMat> = gens.iter().map(UniTriMat::inverse).collect();
        let sym = crate::ball::symmetric_generators(&gens, &inv);
        let a = crate::ball::Ball::build(UniTriMat::identity(4), &sym, 5, 1 << 20, UniTriMat::mul)?;
        let b = crate::ball::Ball::build_sequential(
            UniTriMat::identity(4),
            &sym,
            5,
            1 << 20,
            UniTriMat::mul,
        )?;
        let same = a
            .entries
            .iter()
            .zip(&b.entries)
            .all(|(x, y)| x.element == y.element && x.word == y.word);
        Ok((
            same && a.len() == b.len(),
            format!("|ball(4, 5)| = {} both ways", a.len()),
        ))
    });
}

/// Counts `k x k` matrices over `Z/m` with determinant 1.
pub fn sl_order_brute(k: usize, m: u64) -> u64 {
    let cells = k * k;
    let mut e = vec![0i64; cells];
    let mut count = 0;
    for mut idx in 0..m.pow(cells as u32) {
        for x in e.iter_mut() {
            *x = (idx % m) as i64;
            idx /= m;
        }
        let det = match k {
            2 => e[0] * e[3] - e[1] * e[2],
            3 => {
                e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6])
                    + e[2] * (e[3] * e[7] - e[4] * e[6])
            }
            _ => panic!("brute force only for k = 2, 3"),
        };
        if det.rem_euclid(m as i64) == 1 {
            count += 1;
        }
    }
    count
}

fn sl_checks(r: &mut Runner) {
    r.run("sl/orders-vs-enumeration", |_, _| {
        let mut detail = Vec::new();
        let mut ok = true;
        for (k, m) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2)] {
            let f = order_slk_mod(k, m)?;
            let b = sl_order_brute(k, m);
            ok &= f == big(b);
            detail.push(format!("({k},{m}): {f}/{b}"));
        }
        Ok((ok, detail.join(" ")))
    });
    r.run("sl/multiplicative", |_, _| {
        for k in 2..=3 {
            for a in 2..=30u64 {
                for b in 2..=30 / a {
                    if num_integer::gcd(a, b) == 1
                        && order_slk_mod(k, a * b)? != order_slk_mod(k, a)? * order_slk_mod(k, b)?
                    {
                        return Ok((false, format!("k = {k}, {a} * {b}")));
                    }
                }
            }
        }
        Ok((
            true,
            "multiplicative over coprime factors for all m <= 30".into(),
        ))
    });
    r.run("sl/lower-mechanism", |_, _| {
        let rep = verify_sl_lower(3, &(3..=12).collect::<Vec<_>>())?;
        let qs: Vec<String> = rep
            .rows
            .iter()
            .map(|x| format!("{}:{}", x.n, x.q))
            .collect();
        Ok((
            rep.passed(),
            format!("least detecting prime powers (n:q) {}", qs.join(" ")),
        ))
    });
    r.run("sl/upper-mechanism", |_, _| {
        let rep = verify_sl_upper(2, 6)?;
        Ok((
            rep.passed(3.5),
            format!(
                "lambda = {:.4}, C = {:.4}, log-log slope = {:.4}, mechanism holds = {}, upper-bound data only = {}",
                rep.lambda, rep.c, rep.slope, rep.mechanism_holds, rep.upper_bound_only
            ),
        ))
    });
    r.run("sl/prime-power-restriction", |_, _| {
        let ball = sl_ball(2, 6)?;
        for e in ball.entries.iter().skip(1) {
            let unrestricted = (2..=30u64)
                .filter(|&m| !e.element.is_identity_mod(m))
                .map(|m| order_slk_mod(2, m))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .min();
            let restricted = k_congruence_sl(&e.element, 30).ok().map(|x| x.0);
            if unrestricted != restricted {
                return Ok((
                    false,
                    format!("{}: {restricted:?} vs {unrestricted:?}", e.element),
                ));
            }
        }
        Ok((
            true,
            format!(
                "prime powers suffice on all {} elements of the radius-6 ball",
                ball.len() - 1
            ),
        ))
    });
    r.run("sl/reduction-is-homomorphism", |_, _| {
        let ball = sl_ball(2, 6)?;
        let n = ball.len();
        for i in 0..100 {
            let g = &ball.entries[(37 * i + 11) % n].element;
            let h = &ball.entries[(91 * i + 5) % n].element;
            let m = 2 + (i as u64 % 29);
            if reduce_mul(&g.reduce(m), &h.reduce(m), m) != g.mul(h).reduce(m) {
                return Ok((false, format!("pair {i} mod {m}")));
            }
        }
        Ok((
            true,
            "(gh) mod m = (g mod m)(h mod m) on 100 ball pairs".into(),
        ))
    });
    r.run("sl/prime-powers", |_, _| {
        let pp: Vec<u64> = (2..=16).filter(|&q| is_prime_power(q)).collect();
        Ok((pp == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16], format!("{pp:?}")))
    });
}

fn reduce_mul(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let k = (a.len() as f64).sqrt() as usize;
    let mut out = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            out[i * k + j] = (0..k).map(|l| a[i * k + l] * b[l * k + j]).sum::<u64>() % m;
        }
    }
    out
}

/// Every reduced word of length at most `n`, shortest first.
pub fn reduced_grig_words(n: usize) -> Vec<GrigWord> {
    let mut out = vec![GrigWord::identity()];
    let mut frontier = vec![GrigWord::identity()];
    for len in 1..=n {
        let mut next = Vec::new();
        for w in &frontier {
            for x in Gen::ALL {
                let v = w.mul(&GrigWord::generator(x));
                if v.len() == len {
                    next.push(v);
                }
            }
        }
        next.sort();
        next.dedup();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

const EVALUATOR_PAIRS: usize = 10_000;

fn grig_checks(r: &mut Runner) {
    r.run("grig/base-identity-conventions", |_, _| {
        let l = base_identity_holds(Convention::LeftToRight);
        let rl = base_identity_holds(Convention::RightToLeft);
        Ok((l, format!("(ab)^2 d (ab)^-2 d = (1, (ab)^2): left-to-right {l}, right-to-left {rl}; adopted left-to-right")))
    });
    r.run("grig/gamma-order", |_, _| {
        let mut detail = Vec::new();
        let mut ok = true;
        for k in 3..=5 {
            let b = gamma_order(k, GammaMethod::Bfs)?;
            let f = gamma_order(k, GammaMethod::Formula)?;
            ok &= b == f;
            detail.push(format!("k={k}: bfs {b}, formula {f}"));
        }
        Ok((ok, detail.join("; ")))
    });
    r.run("grig/contraction", |_, _| {
        let ball = grig_ball(12)?;
        for e in &ball.entries {
            let s = sections(&e.word);
            let bound = e.word.len().div_ceil(2);
            if s.g0.len() > bound || s.g1.len() > bound {
                return Ok((false, format!("{}: sections ({}, {})", e.word, s.g0, s.g1)));
            }
        }
        Ok((
            true,
            format!(
                "|g_i| <= (|g| + 1)/2 on all {} elements of the radius-12 ball",
                ball.entries.len()
            ),
        ))
    });
    r.run("grig/depth-bound", |_, _| {
        let ball = grig_ball(12)?;
        let mut violations = Vec::new();
        for e in ball.entries.iter().skip(1) {
            let d = grig::depth(&e.word)?;
            let bound = (e.length as f64).log2().ceil() as usize + 2;
            if d > bound {
                violations.push(format!("{} (depth {d} > {bound})", e.word));
            }
        }
        let shown: Vec<&String> = violations.iter().take(5).collect();
        Ok((
            violations.is_empty(),
            format!(
                "{} violations in the radius-12 ball, e.g. {shown:?}",
                violations.len()
            ),
        ))
    });
    r.run("grig/deep-witness-sections", |_, _| {
        let mut lengths = Vec::new();
        for k in 1..=8 {
            let w = witness_deep(k)?;
            if !verify_deep(&w.word, k) {
                return Ok((false, format!("k = {k} does not verify")));
            }
            lengths.push(w.word.len());
        }
        Ok((
            true,
            format!("verified for k <= 8, reduced lengths {lengths:?}"),
        ))
    });
    r.run("grig/deep-witness-lengths", |_, _| {
        let lengths: Vec<usize> = (1..=8)
            .map(|k| witness_deep(k).map(|w| w.word.len()))
            .collect::<Result<_>>()?;
        let expected: Vec<usize> = (1..=8).map(|k| 10 + 2 * (k - 1)).collect();
        Ok((
            lengths == expected,
            format!("measured {lengths:?}, expected {expected:?}"),
        ))
    });
    r.run("grig/evaluators-agree", |_, _| {
        let words = reduced_grig_words(7);
        let mut pairs = 0;
        for (i, g) in words.iter().enumerate() {
            for j in 0..(EVALUATOR_PAIRS / words.len() + 1) as u32 {
                let len = 4 + ((i + j as usize) % 9);
                let s = (i as u32)
                    .wrapping_mul(2_654_435_761)
                    .wrapping_add(j * 40_503)
                    & ((1 << len) - 1);
                if act(g, s, len) != act_via_sections(g, s, len) {
                    return Ok((false, format!("{g} on {s:b}")));
                }
                pairs += 1;
            }
        }
        Ok((true, format!("{pairs} (word, string) pairs agree")))
    });
    r.run("grig/word-problem-vs-depth-16", |_, _| {
        let words = reduced_grig_words(10);
        let trivial = words.iter().filter(|g| is_trivial(g)).count();
        for g in &words {
            if is_trivial(g) != acts_trivially_to_depth(g, 16) {
                return Ok((false, format!("disagreement at {g}")));
            }
        }
        Ok((
            true,
            format!(
                "{} reduced words of length <= 10 agree, {trivial} trivial",
                words.len()
            ),
        ))
    });
    r.run("grig/level-truncation", |_, _| {
        for g in reduced_grig_words(6) {
            let l = LevelAction::of_word(&g, 7);
            if !l.is_bijection() || (1..7).any(|j| l.truncate(j) != LevelAction::of_word(&g, j)) {
                return Ok((false, format!("{g}")));
            }
        }
        Ok((
            true,
            "level actions are bijections compatible with truncation".into(),
        ))
    });
}

/// Largest `k` over a growth table's last row.
fn last_f(t: &super::GrowthTable) -> BigUint {
    t.last().map(|r| r.f.clone()).unwrap_or_else(BigUint::zero)
}

fn nilquot_checks(r: &mut Runner) {
    r.run("nilquot/free-values", |config, _| {
        let free = Presentation::free(2);
        let c2 = iterated_commutator(&[Letter::gen(0), Letter::gen(1)])?;
        let c3 = iterated_commutator(&[Letter::gen(0), Letter::gen(1), Letter::gen(0)])?;
        let any = min_quotient_with(&free, &c2, Filter::Any, config)?;
        let nil2 = min_quotient_with(&free, &c2, Filter::Nilpotent, config)?;
        let nil3 = min_quotient_with(&free, &c3, Filter::Nilpotent, config)?;
        let verified = verify_witness(&free, &c2, Filter::Any, &any.witness)
            && verify_witness(&free, &c2, Filter::Nilpotent, &nil2.witness)
            && verify_witness(&free, &c3, Filter::Nilpotent, &nil3.witness);
        let ok = any.k == 6 && nil2.k == 8 && nil3.k == 16 && nil3.exact && verified;
        Ok((
            ok,
            format!(
                "k([a,b]) = {}, k_nil([a,b]) = {}, k_nil([[a,b],a]) = {} (exact {})",
                any.k, nil2.k, nil3.k, nil3.exact
            ),
        ))
    });
    r.run("nilquot/commutator-lower-bound", |config, _| {
        let mut detail = Vec::new();
        let mut ok = true;
        for n in 2..=3usize {
            let letters: Vec<Letter> = (0..n).map(|i| Letter::gen((i % 2) as u8)).collect();
            let w = iterated_commutator(&letters)?;
            let r = min_quotient_with(&Presentation::free(2), &w, Filter::Nilpotent, config)?;
            ok &= r.lower_bound >= 1 << n;
            detail.push(format!("weight {n}: k_nil = {} >= {}", r.k, 1 << n));
        }
        Ok((ok, detail.join("; ")))
    });
    r.run("nilquot/heisenberg-commutator", |_, _| {
        let heis = Presentation::heisenberg();
        let r = min_quotient(&heis, &Word::parse("ABab")?, 8, Filter::Any)?;
        Ok((r.k == 8, format!("k_Heis([a,b]) = {}", r.k)))
    });
    r.run("nilquot/dichotomy-radius-4", |config, cache| {
        let free = compute_growth(&GroupId::Free(2), 4, "nilpotent", config, cache)?;
        let heis = compute_growth(&GroupId::Heis, 4, "nilpotent", config, cache)?;
        let (f, h) = (last_f(&free), last_f(&heis));
        Ok((
            f > h,
            format!(
                "max k_nil over radius 4: free(2) {f} at {}, Heisenberg {h} at {}",
                free.last().map_or("-", |r| r.argmax.as_str()),
                heis.last().map_or("-", |r| r.argmax.as_str())
            ),
        ))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for s in Suite::EACH {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn gaussian_ideal_counts() {
        let ring = QuadRing::new(-1).unwrap();
        assert_eq!(ideals_of_prime_norm(&ring, 2), 1);
        assert_eq!(ideals_of_prime_norm(&ring, 3), 0);
        assert_eq!(ideals_of_prime_norm(&ring, 5), 2);
    }

    #[test]
    fn reduced_word_counts() {
        // 1, 4, then 6 * 3^(n-2) alternating words of each length n >= 2.
        let counts: Vec<usize> = (0..=4).map(|n| reduced_grig_words(n).len()).collect();
        assert_eq!(counts, vec![1, 5, 11, 23, 41]);
    }

    #[test]
    fn report_json_shape() {
        let rep = verify_suite(Suite::Products, None);
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["suite"], "products");
        assert!(v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["status"] == "pass"));
        assert_eq!(v["tool_version"], TOOL_VERSION);
    }
}
