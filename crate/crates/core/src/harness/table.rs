//! Growth tables and their CSV / JSON renderings.

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::witness::QuotientWitness;

pub const CSV_HEADER: &str = "n,F,argmax,word_length,witness_kind,witness_order,method";

/// One nontrivial ball element together with its `k` value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub length: usize,
    pub k: BigUint,
    /// Canonical encoding of the element.
    pub argmax: String,
    pub witness: QuotientWitness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub n: usize,
    pub f: BigUint,
    pub argmax: String,
    pub word_length: usize,
    pub witness: QuotientWitness,
    pub method: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthTable {
    pub group_id: String,
    pub generating_set: String,
    pub rows: Vec<GrowthRow>,
}

impl GrowthTable {
    /// Rows `n = 1..=radius` holding the maximum `k` over samples of length
    /// at most `n`. Ties go to the earliest sample, so shorter elements win.
    pub fn from_samples(
        group_id: &str,
        generating_set: &str,
        method: &str,
        radius: usize,
        samples: &[Sample],
    ) -> Self {
        let mut per_length: Vec<Option<&Sample>> = vec![None; radius + 1];
        for s in samples.iter().filter(|s| s.length <= radius) {
            let slot = &mut per_length[s.length];
            if slot.is_none_or(|b| s.k > b.k) {
                *slot = Some(s);
            }
        }
        let mut rows = Vec::new();
        let mut best: Option<&Sample> = None;
        for (n, candidate) in per_length.iter().enumerate().skip(1) {
            if let Some(s) = candidate {
                if best.is_none_or(|b| s.k > b.k) {
                    best = Some(s);
                }
            }
            if let Some(b) = best {
                rows.push(GrowthRow {
                    n,
                    f: b.k.clone(),
                    argmax: b.argmax.clone(),
                    word_length: b.length,
                    witness: b.witness.clone(),
                    method: method.to_string(),
                });
            }
        }
        GrowthTable {
            group_id: group_id.to_string(),
            generating_set: generating_set.to_string(),
            rows,
        }
    }

    pub fn last(&self) -> Option<&GrowthRow> {
        self.rows.last()
    }

    /// `F` at radius `n`, if the table has that row.
    pub fn f_at(&self, n: usize) -> Option<&BigUint> {
        self.rows.iter().find(|r| r.n == n).map(|r| &r.f)
    }

    pub fn is_monotone(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[0].n < w[1].n && w[0].f <= w[1].f)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.n,
                r.f,
                csv_field(&r.argmax),
                r.word_length,
                r.witness.kind(),
                r.witness.order,
                r.method
            ));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group_id,
            "generating_set": self.generating_set,
            "rows": self.rows.iter().map(|r| json!({
                "n": r.n,
                "F": r.f.to_string(),
                "argmax": r.argmax,
                "word_length": r.word_length,
                "witness_kind": r.witness.kind().as_str(),
                "witness_order": r.witness.order.to_string(),
                "witness": r.witness.encode(),
                "method": r.method,
            })).collect::<Vec<_>>(),
        })
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::WitnessData;

    fn sample(length: usize, k: u64, name: &str) -> Sample {
        Sample {
            length,
            k: BigUint::from(k),
            argmax: name.into(),
            witness: QuotientWitness::new(
                k,
                WitnessData::Congruence {
                    modulus: k,
                    coordinate: None,
                },
            ),
        }
    }

    #[test]
    fn rows_are_prefix_maxima() {
        let samples = [
            sample(1, 2, "1"),
            sample(2, 3, "2"),
            sample(2, 3, "-2"),
            sample(4, 2, "4"),
        ];
        let t = GrowthTable::from_samples("z", "{1}", "exact", 4, &samples);
        let fs: Vec<u64> = t
            .rows
            .iter()
            .map(|r| r.f.clone().try_into().unwrap())
            .collect();
        assert_eq!(fs, vec![2, 3, 3, 3]);
        assert_eq!(t.rows[3].argmax, "2");
        assert!(t.is_monotone());
        assert!(GrowthTable::from_samples("z", "{1}", "exact", 0, &samples)
            .rows
            .is_empty());
    }

    #[test]
    fn csv_quotes_commas() {
        let t = GrowthTable::from_samples("zd(2)", "e_i", "exact", 1, &[sample(1, 2, "1,0")]);
        assert_eq!(
            t.to_csv(),
            format!("{CSV_HEADER}\n1,2,\"1,0\",1,congruence-mod-m,2,exact\n")
        );
    }
}
