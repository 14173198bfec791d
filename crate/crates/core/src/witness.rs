//! Detecting quotients.
//!
//! A [`QuotientWitness`] names a concrete finite quotient in which an element
//! survives. Every module that produces witnesses also knows how to re-check
//! them; the harness never trusts a witness it did not re-verify.

use std::fmt;

use num_bigint::BigUint;

use crate::arith::IdealHnf;
use crate::error::{Error, Result};
use crate::quotsearch::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    SymmetricImage,
    CongruenceMod,
    TreeLevel,
    ResidueField,
}

impl WitnessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessKind::SymmetricImage => "symmetric-image",
            WitnessKind::CongruenceMod => "congruence-mod-m",
            WitnessKind::TreeLevel => "tree-level",
            WitnessKind::ResidueField => "residue-field",
        }
    }
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessData {
    /// Images of the presentation generators in a permutation group.
    Symmetric { images: Vec<Permutation> },
    /// Reduction modulo `modulus`; `coordinate` selects a factor of `Z^d`.
    Congruence {
        modulus: u64,
        coordinate: Option<usize>,
    },
    /// Truncation of the binary tree to `level`.
    TreeLevel { level: usize },
    /// Quotient of a quadratic integer ring by an ideal given in Hermite form.
    ResidueField { ideal: IdealHnf },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientWitness {
    pub order: BigUint,
    pub data: WitnessData,
}

impl QuotientWitness {
    pub fn new(order: impl Into<BigUint>, data: WitnessData) -> Self {
        QuotientWitness {
            order: order.into(),
            data,
        }
    }

    pub fn kind(&self) -> WitnessKind {
        match self.data {
            WitnessData::Symmetric { .. } => WitnessKind::SymmetricImage,
            WitnessData::Congruence { .. } => WitnessKind::CongruenceMod,
            WitnessData::TreeLevel { .. } => WitnessKind::TreeLevel,
            WitnessData::ResidueField { .. } => WitnessKind::ResidueField,
        }
    }

    /// Single-line encoding used by the cache and CSV output.
    pub fn encode(&self) -> String {
        let mut out = format!("{};order={}", self.kind(), self.order);
        match &self.data {
            WitnessData::Symmetric { images } => {
                let parts: Vec<String> = images.iter().map(|p| p.one_line()).collect();
                out.push_str(";images=");
                out.push_str(&parts.join("|"));
            }
            WitnessData::Congruence {
                modulus,
                coordinate,
            } => {
                out.push_str(&format!(";m={modulus}"));
                if let Some(c) = coordinate {
                    out.push_str(&format!(";coord={c}"));
                }
            }
            WitnessData::TreeLevel { level } => out.push_str(&format!(";level={level}")),
            WitnessData::ResidueField { ideal } => {
                out.push_str(&format!(";ideal={},{},{}", ideal.a, ideal.b, ideal.c))
            }
        }
        out
    }

    pub fn decode(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut fields = s.split(';');
        let kind = fields.next().ok_or_else(|| bad("empty"))?;
        let mut order = None;
        let mut rest = std::collections::BTreeMap::new();
        for f in fields {
            let (k, v) = f.split_once('=').ok_or_else(|| bad("field without `=`"))?;
            if k == "order" {
                order = Some(v.parse::<BigUint>().map_err(|_| bad("order"))?);
            } else {
                rest.insert(k, v);
            }
        }
        let order = order.ok_or_else(|| bad("missing order"))?;
        let num = |key: &str| -> Result<u64> {
            rest.get(key)
                .ok_or_else(|| bad(key))?
                .parse::<u64>()
                .map_err(|_| bad(key))
        };
        let data = match kind {
            "symmetric-image" => {
                let raw = rest.get("images").ok_or_else(|| bad("images"))?;
                let images = raw
                    .split('|')
                    .map(Permutation::parse_one_line)
                    .collect::<Result<Vec<_>>>()?;
                WitnessData::Symmetric { images }
            }
            "congruence-mod-m" => WitnessData::Congruence {
                modulus: num("m")?,
                coordinate: match rest.get("coord") {
                    Some(c) => Some(c.parse().map_err(|_| bad("coord"))?),
                    None => None,
                },
            },
            "tree-level" => WitnessData::TreeLevel {
                level: num("level")? as usize,
            },
            "residue-field" => {
                let raw = rest.get("ideal").ok_or_else(|| bad("ideal"))?;
                let v: Vec<u64> = raw
                    .split(',')
                    .map(|x| x.parse::<u64>().map_err(|_| bad("ideal")))
                    .collect::<Result<_>>()?;
                if v.len() != 3 {
                    return Err(bad("ideal needs three entries"));
                }
                WitnessData::ResidueField {
                    ideal: IdealHnf {
                        a: v[0],
                        b: v[1],
                        c: v[2],
                    },
                }
            }
            _ => return Err(bad("unknown witness kind")),
        };
        Ok(QuotientWitness { order, data })
    }
}

impl fmt::Display for QuotientWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.data {
            WitnessData::Symmetric { images } => {
                write!(
                    f,
                    "image of order {} in S_{}:",
                    self.order,
                    images.first().map_or(0, |p| p.degree())
                )?;
                for (i, p) in images.iter().enumerate() {
                    write!(f, " {}->{}", (b'a' + i as u8) as char, p)?;
                }
                Ok(())
            }
            WitnessData::Congruence {
                modulus,
                coordinate: None,
            } => {
                write!(f, "reduction mod {modulus}, quotient order {}", self.order)
            }
            WitnessData::Congruence {
                modulus,
                coordinate: Some(c),
            } => {
                write!(
                    f,
                    "coordinate {c} mod {modulus}, quotient order {}",
                    self.order
                )
            }
            WitnessData::TreeLevel { level } => {
                write!(
                    f,
                    "action on tree level {level}, quotient order {}",
                    self.order
                )
            }
            WitnessData::ResidueField { ideal } => {
                write!(
                    f,
                    "O/I with I = <{}, {} + {}w>, order {}",
                    ideal.a, ideal.b, ideal.c, self.order
                )
            }
        }
    }
}
