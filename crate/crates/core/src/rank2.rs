//! Numerical classification of rank-two ACM bundles on `V_d`.
//!
//! An indecomposable rank-two bundle without intermediate cohomology is a
//! twist of `S_L`, `S_C` or `S_E`; a decomposable one is `O(a) ⊕ O(b)`.
//! Given `(c1, c2)`, [`classify_rank2`] names which of these, if any, has
//! those Chern classes. It does not decide whether a particular bundle is
//! ACM: that needs cohomology, which Chern data cannot see.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::json;

use crate::catalog::Family;
use crate::chow::{ChernData, FanoThreefold};

/// Which rank-two ACM bundle has a given `(c1, c2)`. Twists are relative to
/// the twist-zero models `S_L = (0,1)`, `S_C = (−1,2)`, `S_E = (0,2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rank2Verdict {
    TwistOfSL(BigInt),
    TwistOfSC(BigInt),
    TwistOfSE(BigInt),
    /// `O(a) ⊕ O(b)` with `a ≥ b`.
    SplitLineBundles(BigInt, BigInt),
    NoACMBundle,
}

impl Rank2Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Rank2Verdict::TwistOfSL(_) => "TwistOfSL",
            Rank2Verdict::TwistOfSC(_) => "TwistOfSC",
            Rank2Verdict::TwistOfSE(_) => "TwistOfSE",
            Rank2Verdict::SplitLineBundles(..) => "split",
            Rank2Verdict::NoACMBundle => "none",
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, Rank2Verdict::NoACMBundle)
    }

    /// The model family and twist for the indecomposable verdicts.
    pub fn model(&self) -> Option<(Family, &BigInt)> {
        match self {
            Rank2Verdict::TwistOfSL(t) => Some((Family::SL, t)),
            Rank2Verdict::TwistOfSC(t) => Some((Family::SC, t)),
            Rank2Verdict::TwistOfSE(t) => Some((Family::SE, t)),
            _ => None,
        }
    }

    /// Chern data of the bundle named by the verdict.
    pub fn chern(&self, v: FanoThreefold) -> Option<ChernData> {
        match self {
            Rank2Verdict::SplitLineBundles(a, b) => Some(
                ChernData::line_bundle(a.clone())
                    .whitney_sum(&ChernData::line_bundle(b.clone()), v),
            ),
            Rank2Verdict::NoACMBundle => None,
            _ => {
                let (family, t) = self.model()?;
                Some(family.base_chern(v).twist(v, t.clone()))
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        use crate::json::number;
        match self {
            Rank2Verdict::SplitLineBundles(a, b) => {
                json!({"kind": "split", "a": number(a), "b": number(b)})
            }
            Rank2Verdict::NoACMBundle => json!({"kind": "none"}),
            _ => {
                let (_, t) = self.model().expect("indecomposable verdict");
                json!({"kind": self.kind(), "twist": number(t)})
            }
        }
    }
}

impl Serialize for Rank2Verdict {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl fmt::Display for Rank2Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank2Verdict::SplitLineBundles(a, b) => write!(f, "O({a}) ⊕ O({b})"),
            Rank2Verdict::NoACMBundle => f.write_str("no ACM rank-2 bundle"),
            _ => {
                let (family, t) = self.model().expect("indecomposable verdict");
                if t.is_zero() {
                    write!(f, "{family}")
                } else {
                    write!(f, "{family}({t})")
                }
            }
        }
    }
}

/// Decides which ACM rank-two bundle, if any, has Chern classes `(c1, c2)`
/// on `v`. Closed form in every case; no search.
pub fn classify_rank2(v: FanoThreefold, c1: &BigInt, c2: &BigInt) -> Rank2Verdict {
    let mut matches: Vec<Rank2Verdict> = Vec::with_capacity(1);

    // A twist F(t) of a rank-two model shifts c1 by 2t, so t is fixed by parity.
    for family in [Family::SL, Family::SC, Family::SE] {
        let base = family.base_chern(v);
        let shift = c1 - base.c1();
        if shift.is_odd() {
            continue;
        }
        let t: BigInt = shift / 2;
        if base.twist(v, t.clone()).c2() == c2 {
            matches.push(match family {
                Family::SL => Rank2Verdict::TwistOfSL(t),
                Family::SC => Rank2Verdict::TwistOfSC(t),
                _ => Rank2Verdict::TwistOfSE(t),
            });
        }
    }

    if let Some((a, b)) = split_pair(v, c1, c2) {
        matches.push(Rank2Verdict::SplitLineBundles(a, b));
    }

    debug_assert!(
        matches.len() <= 1,
        "overlapping rank-2 verdicts: {matches:?}"
    );
    matches
        .into_iter()
        .next()
        .unwrap_or(Rank2Verdict::NoACMBundle)
}

/// Solves `a + b = c1`, `d·a·b = c2` over the integers with `a ≥ b`.
fn split_pair(v: FanoThreefold, c1: &BigInt, c2: &BigInt) -> Option<(BigInt, BigInt)> {
    let (product, rem) = c2.div_rem(&BigInt::from(v.degree()));
    if !rem.is_zero() {
        return None;
    }
    // (a − b)² = c1² − 4ab
    let disc: BigInt = c1 * c1 - 4 * product;
    if disc.is_negative() {
        return None;
    }
    let root = disc.sqrt();
    if &root * &root != disc {
        return None;
    }
    // disc ≡ c1² (mod 4), so root and c1 share parity.
    let a = (c1 + &root) / 2;
    let b = (c1 - &root) / 2;
    Some((a, b))
}
