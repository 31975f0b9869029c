//! Chern classes of higher-rank ACM bundles on `V_d`.
//!
//! A rank-`r ≥ 3` bundle without intermediate cohomology, with no trivial
//! summands, `h⁰(F) ≥ r`, `h⁰(F(−1)) = 0` and `r − 1` sections degenerating
//! in codimension two, exists with first Chern class `c1` exactly when
//! `r/d ≤ c1 ≤ r`; its `c2` and `c3` are then forced. Existence is
//! witnessed by direct sums of catalog blocks, built recursively on the
//! rank from the small-rank table.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::catalog::{self, BlockId, Family};
use crate::chow::{self, ChernData, FanoThreefold};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Largest rank accepted by [`oracle_enumerate`].
pub const DEFAULT_ORACLE_BOUND: u32 = 12;

/// `c2 = d·c1²/2 + r − d·c1/2`.
pub fn forced_c2(v: FanoThreefold, rank: u32, c1: i64) -> BigInt {
    let d = BigInt::from(v.degree());
    let c = BigInt::from(c1);
    // c1(c1 − 1) is even
    let pairs = exact_div(&c * (&c - 1), 2);
    d * pairs + rank
}

/// `c3 = −2c1 + c1·r − d·c1²/2 + d·c1³/6 + d·c1/3`.
pub fn forced_c3(v: FanoThreefold, rank: u32, c1: i64) -> BigInt {
    let d = BigInt::from(v.degree());
    let c = BigInt::from(c1);
    // d·(c1³ − 3c1² + 2c1)/6 = d·c1(c1 − 1)(c1 − 2)/6
    let triples = exact_div(&c * (&c - 1) * (&c - 2), 6);
    -2 * &c + &c * rank + d * triples
}

fn exact_div(n: BigInt, m: i64) -> BigInt {
    let (q, r) = n.div_rem(&BigInt::from(m));
    assert!(r == BigInt::from(0), "{n} is not divisible by {m}");
    q
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Admissibility {
    /// `r/d ≤ c1 ≤ r`: bundles with at least `r` sections.
    Strict,
    /// `(r − 1)/d ≤ c1 ≤ r`: the bound without the section-count
    /// assumption. Existence outside the strict range is not known in
    /// general.
    Relaxed,
}

impl Admissibility {
    pub fn from_relaxed(relaxed: bool) -> Self {
        if relaxed {
            Admissibility::Relaxed
        } else {
            Admissibility::Strict
        }
    }

    /// The numerator `n` in the lower bound `n/d ≤ c1`.
    fn lower_numerator(self, rank: u32) -> i64 {
        match self {
            Admissibility::Strict => i64::from(rank),
            Admissibility::Relaxed => i64::from(rank) - 1,
        }
    }
}

fn check_rank(rank: u32) -> Result<()> {
    if rank < 3 {
        Err(Error::InvalidRank(rank))
    } else {
        Ok(())
    }
}

/// Why `(v, rank, c1)` is outside the admissible range, if it is.
pub fn admissibility_failure(
    v: FanoThreefold,
    rank: u32,
    c1: i64,
    mode: Admissibility,
) -> Result<Option<String>> {
    check_rank(rank)?;
    let d = i64::from(v.degree());
    let lower = mode.lower_numerator(rank);
    if lower > d * c1 {
        let label = match mode {
            Admissibility::Strict => "r/d",
            Admissibility::Relaxed => "(r-1)/d",
        };
        return Ok(Some(format!(
            "{label} ≤ c1 fails ({} > {c1})",
            Rational::new(lower, d)
        )));
    }
    if c1 > i64::from(rank) {
        return Ok(Some(format!("c1 ≤ r fails ({c1} > {rank})")));
    }
    Ok(None)
}

pub fn admissible(v: FanoThreefold, rank: u32, c1: i64, mode: Admissibility) -> Result<bool> {
    Ok(admissibility_failure(v, rank, c1, mode)?.is_none())
}

/// All admissible `c1` for the given rank, ascending.
pub fn admissible_c1_range(
    v: FanoThreefold,
    rank: u32,
    mode: Admissibility,
) -> Result<RangeInclusive<i64>> {
    check_rank(rank)?;
    let lower = Integer::div_ceil(&mode.lower_numerator(rank), &i64::from(v.degree()));
    Ok(lower..=i64::from(rank))
}

/// An admissible `(r, c1)` with its forced Chern classes and the degree and
/// genus of the dependency locus of `r − 1` general sections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibleTriple {
    pub d: u8,
    pub rank: u32,
    pub c1: i64,
    #[serde(serialize_with = "crate::json::int")]
    pub c2: BigInt,
    #[serde(serialize_with = "crate::json::int")]
    pub c3: BigInt,
    #[serde(serialize_with = "crate::json::int")]
    pub curve_degree: BigInt,
    #[serde(serialize_with = "crate::json::int")]
    pub curve_genus: BigInt,
    /// Whether `c1` satisfies the strict bound, so a witness exists.
    pub strict: bool,
}

impl AdmissibleTriple {
    pub fn chern(&self) -> ChernData {
        ChernData::new(self.rank, self.c1, self.c2.clone(), self.c3.clone())
            .expect("admissible triples have rank at least 3")
    }

    /// `"witnessed"` in the strict range, `"unknown"` otherwise.
    pub fn existence(&self) -> &'static str {
        if self.strict {
            "witnessed"
        } else {
            "unknown"
        }
    }
}

pub fn admissible_triple(v: FanoThreefold, rank: u32, c1: i64) -> Result<AdmissibleTriple> {
    let (curve_degree, curve_genus) = chow::curve_invariants(v, rank, c1)?;
    Ok(AdmissibleTriple {
        d: v.degree(),
        rank,
        c1,
        c2: forced_c2(v, rank, c1),
        c3: forced_c3(v, rank, c1),
        curve_degree,
        curve_genus,
        strict: admissible(v, rank, c1, Admissibility::Strict)?,
    })
}

pub fn enumerate_admissible(
    v: FanoThreefold,
    rank: u32,
    mode: Admissibility,
) -> Result<Vec<AdmissibleTriple>> {
    admissible_c1_range(v, rank, mode)?
        .map(|c1| admissible_triple(v, rank, c1))
        .collect()
}

/// A direct sum of catalog blocks, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Decomposition {
    blocks: Vec<BlockId>,
}

impl Decomposition {
    pub fn new(mut blocks: Vec<BlockId>) -> Self {
        blocks.sort();
        Decomposition { blocks }
    }

    pub fn blocks(&self) -> &[BlockId] {
        &self.blocks
    }

    pub fn rank(&self) -> u32 {
        self.blocks.iter().map(|b| b.family.rank()).sum()
    }

    /// Whitney sum of the blocks. Fails if a block is unavailable on `v`.
    pub fn total_chern(&self, v: FanoThreefold) -> Result<ChernData> {
        self.blocks.iter().try_fold(ChernData::zero(), |acc, id| {
            Ok(acc.whitney_sum(&catalog::block_chern(*id, v)?, v))
        })
    }

    fn total_chern_unchecked(&self, v: FanoThreefold) -> ChernData {
        self.blocks.iter().fold(ChernData::zero(), |acc, id| {
            acc.whitney_sum(&id.family.base_chern(v).twist(v, id.twist), v)
        })
    }

    fn merged(mut self, other: Decomposition) -> Self {
        self.blocks.extend(other.blocks);
        Decomposition::new(self.blocks)
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("0");
        }
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊕ ")?;
            }
            write!(f, "{block}")?;
        }
        Ok(())
    }
}

/// The rank-`d` block with `c1 = 1` used to lower the rank by `d`.
fn rational_curve_block(v: FanoThreefold) -> BlockId {
    BlockId::witness(match v.degree() {
        3 => Family::F31,
        4 => Family::F41,
        _ => Family::F51,
    })
}

/// A direct sum of catalog blocks realizing the strictly admissible
/// `(rank, c1)` with its forced `c2`, `c3`.
pub fn witness(v: FanoThreefold, rank: u32, c1: i64) -> Result<Decomposition> {
    if let Some(reason) = admissibility_failure(v, rank, c1, Admissibility::Strict)? {
        return Err(Error::NotAdmissible(reason));
    }
    Ok(witness_rec(v, rank, c1))
}

fn witness_rec(v: FanoThreefold, rank: u32, c1: i64) -> Decomposition {
    assert!(
        admissible(v, rank, c1, Admissibility::Strict).unwrap_or(false),
        "witness recursion left the admissible range at ({v}, r={rank}, c1={c1})"
    );
    if rank <= 7 {
        let row = catalog::table1_rows()
            .into_iter()
            .find(|row| row.rank == rank && row.printed_c1 == c1 && row.applies_to(v))
            .expect("the table covers every admissible rank up to 7");
        return row.source.decomposition();
    }
    let d = i64::from(v.degree());
    let r = i64::from(rank);
    if c1 == r {
        Decomposition::new(vec![BlockId::witness(Family::SE)]).merged(witness_rec(
            v,
            rank - 2,
            c1 - 2,
        ))
    } else if r - 2 + d <= d * c1 {
        // (r − 2)/d + 1 ≤ c1 ≤ r − 1; preferred when the next case also applies.
        Decomposition::new(vec![BlockId::witness(Family::SC)]).merged(witness_rec(
            v,
            rank - 2,
            c1 - 1,
        ))
    } else {
        witness_rec(v, rank - u32::from(v.degree()), c1 - 1)
            .merged(Decomposition::new(vec![rational_curve_block(v)]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Availability,
    Rank,
    FirstChernClass,
    ForcedClasses,
    NoTrivialSummands,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::Availability => "availability",
            CheckKind::Rank => "rank",
            CheckKind::FirstChernClass => "c1",
            CheckKind::ForcedClasses => "forced c2/c3",
            CheckKind::NoTrivialSummands => "no trivial summands",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub computed: ChernData,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, kind: CheckKind) -> &Check {
        self.checks
            .iter()
            .find(|c| c.kind == kind)
            .expect("every check kind is reported")
    }
}

/// Checks that `dec` realizes rank `rank`, first Chern class `c1` and the
/// forced `c2`, `c3` on `v` with blocks that exist there.
pub fn validate_witness(
    v: FanoThreefold,
    dec: &Decomposition,
    rank: u32,
    c1: i64,
) -> ValidationReport {
    let computed = dec.total_chern_unchecked(v);
    let mut checks = Vec::with_capacity(5);
    let mut push = |kind, passed, detail: String| {
        checks.push(Check {
            kind,
            passed,
            detail,
        })
    };

    let missing: Vec<String> = dec
        .blocks()
        .iter()
        .filter(|b| !b.family.available_on(v))
        .map(|b| b.to_string())
        .collect();
    push(
        CheckKind::Availability,
        missing.is_empty(),
        if missing.is_empty() {
            format!("all blocks exist on {v}")
        } else {
            format!("not on {v}: {}", missing.join(", "))
        },
    );

    push(
        CheckKind::Rank,
        computed.rank() == rank,
        format!("sum of ranks {} (target {rank})", computed.rank()),
    );

    let target_c1 = BigInt::from(c1);
    push(
        CheckKind::FirstChernClass,
        computed.c1() == &target_c1,
        format!("c1 {} (target {c1})", computed.c1()),
    );

    let (fc2, fc3) = (forced_c2(v, rank, c1), forced_c3(v, rank, c1));
    push(
        CheckKind::ForcedClasses,
        computed.c2() == &fc2 && computed.c3() == &fc3,
        format!(
            "(c2, c3) = ({}, {}) (forced ({fc2}, {fc3}))",
            computed.c2(),
            computed.c3()
        ),
    );

    let trivial = dec
        .blocks()
        .iter()
        .filter(|b| b.family == Family::OV)
        .count();
    push(
        CheckKind::NoTrivialSummands,
        trivial == 0,
        format!("{trivial} trivial summands"),
    );

    ValidationReport { computed, checks }
}

/// Blocks the brute-force oracle draws from on `v`, in ascending order.
/// Excludes `O` and `S_L`, neither of which appears in higher-rank witnesses.
pub fn oracle_blocks(v: FanoThreefold) -> Vec<BlockId> {
    [
        Family::SC,
        Family::SE,
        Family::F31,
        Family::F32,
        Family::F33,
        Family::F41,
        Family::F51,
        Family::F72,
    ]
    .into_iter()
    .filter(|f| f.available_on(v))
    .map(BlockId::witness)
    .collect()
}

/// Every multiset of oracle blocks with total rank `rank` and total first
/// Chern class `c1`, in lexicographic order.
pub fn oracle_enumerate(v: FanoThreefold, rank: u32, c1: i64) -> Result<Vec<Decomposition>> {
    oracle_enumerate_bounded(v, rank, c1, DEFAULT_ORACLE_BOUND)
}

pub fn oracle_enumerate_bounded(
    v: FanoThreefold,
    rank: u32,
    c1: i64,
    bound: u32,
) -> Result<Vec<Decomposition>> {
    if rank > bound {
        return Err(Error::BoundExceeded { rank, bound });
    }
    let blocks: Vec<(BlockId, u32, i64)> = oracle_blocks(v)
        .into_iter()
        .map(|id| {
            let c = catalog::block_chern(id, v).expect("oracle blocks are available");
            let c1 = i64::try_from(c.c1()).expect("small first Chern class");
            (id, c.rank(), c1)
        })
        .collect();

    let mut found = Vec::new();
    let mut stack = Vec::new();
    extend_multisets(&blocks, 0, rank, c1, &mut stack, &mut found);
    found.sort();
    Ok(found)
}

fn extend_multisets(
    blocks: &[(BlockId, u32, i64)],
    start: usize,
    rank_left: u32,
    c1_left: i64,
    stack: &mut Vec<BlockId>,
    found: &mut Vec<Decomposition>,
) {
    if rank_left == 0 {
        if c1_left == 0 && !stack.is_empty() {
            found.push(Decomposition::new(stack.clone()));
        }
        return;
    }
    for (i, &(id, r, c)) in blocks.iter().enumerate().skip(start) {
        // every oracle block has c1 ≥ 1
        if r > rank_left || c > c1_left {
            continue;
        }
        stack.push(id);
        extend_multisets(blocks, i, rank_left - r, c1_left - c, stack, found);
        stack.pop();
    }
}
