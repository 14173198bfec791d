//! Group identifiers, canonical element encodings and per-element `k`.
//!
//! Canonical encodings, used as cache keys:
//!
//! | group       | encoding                                             |
//! |-------------|------------------------------------------------------|
//! | `z`         | decimal integer                                      |
//! | `zd(d)`     | `d` decimal integers separated by spaces             |
//! | `quad(D)`   | `a b` for `a + b w`                                  |
//! | `free(r)`   | freely reduced word, `A` = `a^-1`                    |
//! | `heis`      | matrix of the word under `a = E12`, `b = E23`        |
//! | `unitri(d)` | matrix, rows separated by `;`, entries by spaces     |
//! | `sl(k)`     | matrix, as above                                     |
//! | `grig`      | reduced word over `a, b, c, d`                       |

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::arith::{
    k_int, k_int_vector, k_ring, verify_int_witness, verify_ring_witness, verify_vector_witness,
};
use crate::arith::{QuadInt, QuadRing};
use crate::error::{Error, Result};
use crate::grig::{k_congruence_grig, verify_grig_witness, GrigWord};
use crate::nilpotent::{
    k_congruence_unitri, k_exact_heisenberg, unitri_generators, verify_unitri_witness, UniTriMat,
};
use crate::quotsearch::{min_quotient_with, verify_witness, Filter, Presentation, SearchConfig};
use crate::slk::{default_m_max, k_congruence_sl, verify_sl_witness, IntMat};
use crate::witness::QuotientWitness;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupId {
    Z,
    Zd(usize),
    Quad(i64),
    Free(usize),
    Heis,
    Unitri(usize),
    Sl(usize),
    Grig,
}

impl FromStr for GroupId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || Error::UnknownGroup(s.to_string());
        let arg = |name: &str| -> Option<&str> {
            s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')
        };
        let group = match s {
            "z" => GroupId::Z,
            "heis" => GroupId::Heis,
            "grig" => GroupId::Grig,
            _ => {
                if let Some(x) = arg("zd") {
                    GroupId::Zd(x.parse().map_err(|_| unknown())?)
                } else if let Some(x) = arg("quad") {
                    GroupId::Quad(x.parse().map_err(|_| unknown())?)
                } else if let Some(x) = arg("free") {
                    GroupId::Free(x.parse().map_err(|_| unknown())?)
                } else if let Some(x) = arg("unitri") {
                    GroupId::Unitri(x.parse().map_err(|_| unknown())?)
                } else if let Some(x) = arg("sl") {
                    GroupId::Sl(x.parse().map_err(|_| unknown())?)
                } else {
                    return Err(unknown());
                }
            }
        };
        match group {
            GroupId::Zd(0) | GroupId::Free(0) => Err(unknown()),
            GroupId::Unitri(d) if d < 2 => Err(unknown()),
            GroupId::Sl(k) if !(2..=3).contains(&k) => Err(unknown()),
            GroupId::Free(r) if r > 26 => Err(unknown()),
            GroupId::Quad(d) => QuadRing::new(d).map(|_| group).map_err(|_| unknown()),
            _ => Ok(group),
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupId::Z => write!(f, "z"),
            GroupId::Zd(d) => write!(f, "zd({d})"),
            GroupId::Quad(d) => write!(f, "quad({d})"),
            GroupId::Free(r) => write!(f, "free({r})"),
            GroupId::Heis => write!(f, "heis"),
            GroupId::Unitri(d) => write!(f, "unitri({d})"),
            GroupId::Sl(k) => write!(f, "sl({k})"),
            GroupId::Grig => write!(f, "grig"),
        }
    }
}

impl GroupId {
    pub fn generating_set(&self) -> String {
        match self {
            GroupId::Z => "{1}".into(),
            GroupId::Zd(d) => format!("e1..e{d}"),
            GroupId::Quad(_) => "{1, w}".into(),
            GroupId::Free(r) => (0..*r)
                .map(|i| ((b'a' + i as u8) as char).to_string())
                .collect::<Vec<_>>()
                .join(" "),
            GroupId::Heis => "a=E12 b=E23".into(),
            GroupId::Unitri(d) => format!("E(i,i+1), i < {d}"),
            GroupId::Sl(_) => "E(i,j)(+-1)".into(),
            GroupId::Grig => "a b c d".into(),
        }
    }
}

/// Which quotients count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Any,
    Nilpotent,
    Congruence,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Any => "any",
            Variant::Nilpotent => "nilpotent",
            Variant::Congruence => "congruence",
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "any" => Ok(Variant::Any),
            "nilpotent" => Ok(Variant::Nilpotent),
            "congruence" => Ok(Variant::Congruence),
            _ => Err(Error::Parse {
                input: s.into(),
                reason: "expected any, nilpotent or congruence".into(),
            }),
        }
    }
}

/// A parsed group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Int(BigInt),
    Vector(Vec<BigInt>),
    Quad(QuadInt),
    Free(Word),
    Heis { word: Word, matrix: UniTriMat },
    Unitri(UniTriMat),
    Sl(IntMat),
    Grig(GrigWord),
}

fn parse_ints(s: &str) -> Result<Vec<BigInt>> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse::<BigInt>().map_err(|_| Error::Parse {
                input: s.into(),
                reason: format!("bad integer `{x}`"),
            })
        })
        .collect()
}

/// Image of a word under `a -> E12`, `b -> E23`.
pub fn heisenberg_matrix(word: &Word) -> Result<UniTriMat> {
    if word.rank() > 2 {
        return Err(Error::Precondition(format!(
            "{word} uses generators beyond a, b"
        )));
    }
    let gens = unitri_generators(3)?;
    let inverses: Vec<UniTriMat> = gens.iter().map(UniTriMat::inverse).collect();
    Ok(word
        .letters()
        .iter()
        .fold(UniTriMat::identity(3), |acc, l| {
            let g = l.generator as usize;
            acc.mul(if l.inverse { &inverses[g] } else { &gens[g] })
        }))
}

impl Element {
    pub fn parse(group: &GroupId, s: &str) -> Result<Element> {
        let bad = |reason: String| Error::Parse {
            input: s.into(),
            reason,
        };
        match group {
            GroupId::Z => {
                let v = parse_ints(s)?;
                match v.as_slice() {
                    [x] => Ok(Element::Int(x.clone())),
                    _ => Err(bad("expected one integer".into())),
                }
            }
            GroupId::Zd(d) => {
                let v = parse_ints(s)?;
                if v.len() != *d {
                    return Err(bad(format!("expected {d} integers")));
                }
                Ok(Element::Vector(v))
            }
            GroupId::Quad(d) => {
                let v = parse_ints(s)?;
                match v.as_slice() {
                    [a, b] => Ok(Element::Quad(
                        QuadRing::new(*d)?.element(a.clone(), b.clone()),
                    )),
                    _ => Err(bad("expected `a b` for a + b w".into())),
                }
            }
            GroupId::Free(r) => {
                let w = Word::parse(s)?;
                if w.rank() > *r {
                    return Err(bad(format!("word uses more than {r} generators")));
                }
                Ok(Element::Free(w))
            }
            GroupId::Heis => {
                let word = Word::parse(s)?;
                let matrix = heisenberg_matrix(&word)?;
                Ok(Element::Heis { word, matrix })
            }
            GroupId::Unitri(d) => {
                let m = UniTriMat::parse(s)?;
                if m.dim() != *d {
                    return Err(bad(format!("expected a {d} x {d} matrix")));
                }
                Ok(Element::Unitri(m))
            }
            GroupId::Sl(k) => {
                let m = IntMat::parse(s)?;
                if m.dim() != *k {
                    return Err(bad(format!("expected a {k} x {k} matrix")));
                }
                Ok(Element::Sl(m))
            }
            GroupId::Grig => Ok(Element::Grig(GrigWord::parse(s)?)),
        }
    }

    pub fn canonical(&self) -> String {
        match self {
            Element::Int(x) => x.to_string(),
            Element::Vector(v) => v
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            Element::Quad(q) => format!("{} {}", q.a, q.b),
            Element::Free(w) => w.to_string(),
            Element::Heis { matrix, .. } => matrix.encode(),
            Element::Unitri(m) => m.encode(),
            Element::Sl(m) => m.encode(),
            Element::Grig(g) => g.to_string(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Element::Int(x) => x.is_zero(),
            Element::Vector(v) => v.iter().all(|x| x.is_zero()),
            Element::Quad(q) => q.is_zero(),
            Element::Free(w) => w.is_empty(),
            Element::Heis { matrix, .. } => matrix.is_identity(),
            Element::Unitri(m) => m.is_identity(),
            Element::Sl(m) => m.is_identity(),
            Element::Grig(g) => crate::grig::is_trivial(g),
        }
    }
}

/// `k` of one element, with how much of it is certain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KValue {
    pub k: BigUint,
    pub witness: QuotientWitness,
    /// `exact`, `upper-bound` or `congruence-minimal`.
    pub label: &'static str,
    pub lower: Option<BigUint>,
}

impl KValue {
    fn exact(k: impl Into<BigUint>, witness: QuotientWitness) -> Self {
        KValue {
            k: k.into(),
            witness,
            label: "exact",
            lower: None,
        }
    }
}

fn unsupported(group: &GroupId, variant: Variant) -> Error {
    Error::UnsupportedMethod {
        group: group.to_string(),
        method: variant.as_str().into(),
    }
}

/// Computes `k` of `element` for the chosen variant. Abelian groups accept
/// every variant, since all their quotients are abelian.
pub fn compute_k(
    group: &GroupId,
    element: &Element,
    variant: Variant,
    config: &SearchConfig,
) -> Result<KValue> {
    if element.is_identity() {
        return Err(Error::TrivialElement);
    }
    match (element, variant) {
        (Element::Int(x), _) => {
            let (q, w) = k_int(x)?;
            Ok(KValue::exact(q, w))
        }
        (Element::Vector(v), _) => {
            let (q, w) = k_int_vector(v)?;
            Ok(KValue::exact(q, w))
        }
        (Element::Quad(g), _) => {
            let r = k_ring(g)?;
            Ok(KValue::exact(r.size, r.witness))
        }
        (Element::Free(w), Variant::Any | Variant::Nilpotent) => {
            let filter = if variant == Variant::Any {
                Filter::Any
            } else {
                Filter::Nilpotent
            };
            let r = min_quotient_with(&Presentation::free(free_rank(group)), w, filter, config)?;
            let lower = (!r.exact).then(|| BigUint::from(r.lower_bound));
            Ok(KValue {
                k: r.k.into(),
                witness: r.witness,
                label: if r.exact { "exact" } else { "upper-bound" },
                lower,
            })
        }
        (Element::Heis { word, .. }, Variant::Any | Variant::Nilpotent) => {
            let (k, w) = k_exact_heisenberg(word, config)?;
            Ok(KValue::exact(k, w))
        }
        (Element::Heis { matrix: m, .. } | Element::Unitri(m), Variant::Congruence) => {
            let (k, w) = k_congruence_unitri(m)?;
            Ok(KValue {
                k,
                witness: w,
                label: "upper-bound",
                lower: None,
            })
        }
        (Element::Sl(m), Variant::Congruence) => {
            let (k, w) = k_congruence_sl(m, default_m_max(m))?;
            let label = if m.dim() >= 3 {
                "congruence-minimal"
            } else {
                "upper-bound"
            };
            Ok(KValue {
                k,
                witness: w,
                label,
                lower: None,
            })
        }
        (Element::Grig(g), Variant::Congruence) => {
            let b = k_congruence_grig(g)?;
            Ok(KValue {
                k: b.upper,
                witness: b.witness,
                label: "upper-bound",
                lower: Some(b.lower),
            })
        }
        _ => Err(unsupported(group, variant)),
    }
}

fn free_rank(group: &GroupId) -> usize {
    match group {
        GroupId::Free(r) => *r,
        _ => 2,
    }
}

/// Re-checks that `witness` is a quotient of the recorded order in which
/// `element` survives.
pub fn verify_k(
    group: &GroupId,
    element: &Element,
    variant: Variant,
    witness: &QuotientWitness,
) -> bool {
    match (element, variant) {
        (Element::Int(x), _) => verify_int_witness(x, witness),
        (Element::Vector(v), _) => verify_vector_witness(v, witness),
        (Element::Quad(g), _) => verify_ring_witness(g, witness),
        (Element::Free(w), Variant::Any) => verify_witness(
            &Presentation::free(free_rank(group)),
            w,
            Filter::Any,
            witness,
        ),
        (Element::Free(w), Variant::Nilpotent) => verify_witness(
            &Presentation::free(free_rank(group)),
            w,
            Filter::Nilpotent,
            witness,
        ),
        (Element::Heis { word, .. }, Variant::Any | Variant::Nilpotent) => verify_witness(
            &Presentation::heisenberg(),
            word,
            Filter::Nilpotent,
            witness,
        ),
        (Element::Heis { matrix: m, .. } | Element::Unitri(m), Variant::Congruence) => {
            verify_unitri_witness(m, witness)
        }
        (Element::Sl(m), Variant::Congruence) => verify_sl_witness(m, witness),
        (Element::Grig(g), Variant::Congruence) => verify_grig_witness(g, witness),
        _ => false,
    }
}
