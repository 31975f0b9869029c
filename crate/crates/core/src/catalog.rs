//! Named building blocks and the small-rank table of ACM bundles.
//!
//! Every block is recorded by its Chern data at twist zero; witnesses use
//! `S_C(1)`, `S_E(1)` and the `F_{r,c}` at twist zero.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::acm::{self, Decomposition};
use crate::chow::{ChernData, FanoThreefold};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    OV,
    SL,
    SC,
    SE,
    F31,
    F32,
    F33,
    F41,
    F51,
    F72,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::OV,
        Family::SL,
        Family::SC,
        Family::SE,
        Family::F31,
        Family::F32,
        Family::F33,
        Family::F41,
        Family::F51,
        Family::F72,
    ];

    pub fn rank(self) -> u32 {
        match self {
            Family::OV => 1,
            Family::SL | Family::SC | Family::SE => 2,
            Family::F31 | Family::F32 | Family::F33 => 3,
            Family::F41 => 4,
            Family::F51 => 5,
            Family::F72 => 7,
        }
    }

    pub fn available_on(self, v: FanoThreefold) -> bool {
        match self {
            Family::F41 => v.degree() >= 4,
            Family::F51 | Family::F72 => v.degree() == 5,
            _ => true,
        }
    }

    /// Twist at which the block enters direct-sum witnesses.
    pub fn witness_twist(self) -> i64 {
        match self {
            Family::SC | Family::SE => 1,
            _ => 0,
        }
    }

    /// Chern data at twist zero. Does not check availability.
    pub fn base_chern(self, v: FanoThreefold) -> ChernData {
        let d = i64::from(v.degree());
        let (r, c1, c2, c3) = match self {
            Family::OV => (1, 0, 0, 0),
            Family::SL => (2, 0, 1, 0),
            Family::SC => (2, -1, 2, 0),
            Family::SE => (2, 0, 2, 0),
            Family::F31 => (3, 1, 3, 1),
            Family::F32 => (3, 2, d + 3, 2),
            Family::F33 => (3, 3, 3 * d + 3, d + 3),
            Family::F41 => (4, 1, 4, 2),
            Family::F51 => (5, 1, 5, 3),
            Family::F72 => (7, 2, 12, 10),
        };
        ChernData::new(r, c1, c2, c3).expect("catalog Chern data respects the rank")
    }

    pub fn construction(self) -> &'static str {
        match self {
            Family::OV => "structure sheaf",
            Family::SL => "Serre correspondence from a line",
            Family::SC => "Serre correspondence from a conic",
            Family::SE => "Serre correspondence from an elliptic curve of degree d+2",
            Family::F31 | Family::F41 | Family::F51 => {
                "Serre correspondence from a rational curve of degree r"
            }
            Family::F32 => "second exterior power of F_{3,1}",
            Family::F33 => "Serre correspondence from a curve of degree 3d+3 and genus 2d+4",
            Family::F72 => "dual of the kernel of O^10 -> F_{3,2}, evaluation of global sections",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::OV => "O",
            Family::SL => "S_L",
            Family::SC => "S_C",
            Family::SE => "S_E",
            Family::F31 => "F_{3,1}",
            Family::F32 => "F_{3,2}",
            Family::F33 => "F_{3,3}",
            Family::F41 => "F_{4,1}",
            Family::F51 => "F_{5,1}",
            Family::F72 => "F_{7,2}",
        };
        f.write_str(s)
    }
}

/// A catalog family together with a twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BlockId {
    pub family: Family,
    pub twist: i64,
}

impl BlockId {
    pub const fn new(family: Family, twist: i64) -> Self {
        BlockId { family, twist }
    }

    /// The block as used in witnesses: `S_C(1)`, `S_E(1)`, `F_{r,c}`.
    pub fn witness(family: Family) -> Self {
        BlockId::new(family, family.witness_twist())
    }
}

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.twist {
            0 => write!(f, "{}", self.family),
            t => write!(f, "{}({t})", self.family),
        }
    }
}

pub fn block_chern(id: BlockId, v: FanoThreefold) -> Result<ChernData> {
    if !id.family.available_on(v) {
        return Err(Error::UnavailableBlock {
            family: id.family,
            d: v.degree(),
        });
    }
    Ok(id.family.base_chern(v).twist(v, id.twist))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSpec {
    pub id: BlockId,
    pub rank: u32,
    pub chern: ChernData,
    /// `h⁰` of the block, equal to its Euler characteristic.
    #[serde(serialize_with = "crate::json::int")]
    pub h0: BigInt,
    pub construction: &'static str,
}

/// The block of `family` at its witness twist on `v`.
pub fn block_spec(family: Family, v: FanoThreefold) -> Result<BlockSpec> {
    let id = BlockId::witness(family);
    let chern = block_chern(id, v)?;
    let h0 = chern
        .euler_char(v)
        .to_integer()
        .expect("catalog blocks have integral Euler characteristic");
    Ok(BlockSpec {
        id,
        rank: family.rank(),
        chern,
        h0,
        construction: family.construction(),
    })
}

/// An integer-coefficient expression `a·d + b` as printed in the table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearInD {
    pub per_d: i64,
    pub constant: i64,
}

impl LinearInD {
    pub const fn new(per_d: i64, constant: i64) -> Self {
        LinearInD { per_d, constant }
    }

    pub fn eval(self, v: FanoThreefold) -> BigInt {
        BigInt::from(self.per_d * i64::from(v.degree()) + self.constant)
    }
}

impl fmt::Display for LinearInD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.per_d, self.constant) {
            (0, b) => write!(f, "{b}"),
            (a, b) => {
                if a == 1 {
                    f.write_str("d")?;
                } else {
                    write!(f, "{a}d")?;
                }
                match b {
                    0 => Ok(()),
                    b if b > 0 => write!(f, "+{b}"),
                    b => write!(f, "{b}"),
                }
            }
        }
    }
}

/// Where a table row's bundle comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowSource {
    /// A single named construction, referenced by the table rather than
    /// written as a sum.
    Construction(Family),
    Sum(Vec<BlockId>),
}

impl RowSource {
    pub fn decomposition(&self) -> Decomposition {
        match self {
            RowSource::Construction(family) => Decomposition::new(vec![BlockId::witness(*family)]),
            RowSource::Sum(blocks) => Decomposition::new(blocks.clone()),
        }
    }
}

/// One row of the small-rank table, transcribed verbatim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub d_set: &'static [u8],
    pub rank: u32,
    pub printed_c1: i64,
    pub printed_c2: LinearInD,
    pub printed_c3: LinearInD,
    pub source: RowSource,
}

impl TableRow {
    pub fn applies_to(&self, v: FanoThreefold) -> bool {
        self.d_set.contains(&v.degree())
    }

    pub fn d_set_label(&self) -> String {
        self.d_set
            .iter()
            .map(u8::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// The table of rank-`r` ACM bundles `F_{r,c}` with `3 ≤ r ≤ 7`, exactly as
/// printed, including the rank-5 `c = 4` row whose `c3` is misprinted.
pub fn table1_rows() -> Vec<TableRow> {
    use Family::*;
    const ALL_D: &[u8] = &[3, 4, 5];
    const D45: &[u8] = &[4, 5];
    const D5: &[u8] = &[5];
    let sc1 = BlockId::witness(SC);
    let se1 = BlockId::witness(SE);
    let f = BlockId::witness;
    let row = |d_set, rank, c1, c2: (i64, i64), c3: (i64, i64), source| TableRow {
        d_set,
        rank,
        printed_c1: c1,
        printed_c2: LinearInD::new(c2.0, c2.1),
        printed_c3: LinearInD::new(c3.0, c3.1),
        source,
    };
    use RowSource::{Construction as Named, Sum};
    vec![
        row(ALL_D, 3, 1, (0, 3), (0, 1), Named(F31)),
        row(ALL_D, 3, 2, (1, 3), (0, 2), Named(F32)),
        row(ALL_D, 3, 3, (3, 3), (1, 3), Named(F33)),
        row(D45, 4, 1, (0, 4), (0, 2), Named(F41)),
        row(ALL_D, 4, 2, (1, 4), (0, 4), Sum(vec![sc1, sc1])),
        row(ALL_D, 4, 3, (3, 4), (1, 6), Sum(vec![sc1, se1])),
        row(ALL_D, 4, 4, (6, 4), (4, 8), Sum(vec![se1, se1])),
        row(D5, 5, 1, (0, 5), (0, 3), Named(F51)),
        row(ALL_D, 5, 2, (1, 5), (0, 6), Sum(vec![sc1, f(F31)])),
        row(ALL_D, 5, 3, (3, 5), (1, 9), Sum(vec![sc1, f(F32)])),
        row(ALL_D, 5, 4, (6, 5), (4, 2), Sum(vec![sc1, f(F33)])),
        row(ALL_D, 5, 5, (10, 5), (10, 15), Sum(vec![se1, f(F33)])),
        row(ALL_D, 6, 2, (1, 6), (0, 8), Sum(vec![f(F31), f(F31)])),
        row(ALL_D, 6, 3, (3, 6), (1, 12), Sum(vec![sc1, sc1, sc1])),
        row(ALL_D, 6, 4, (6, 6), (4, 16), Sum(vec![sc1, sc1, se1])),
        row(ALL_D, 6, 5, (10, 6), (10, 20), Sum(vec![sc1, se1, se1])),
        row(ALL_D, 6, 6, (15, 6), (20, 24), Sum(vec![se1, se1, se1])),
        row(D45, 7, 2, (1, 7), (0, 10), Sum(vec![f(F41), f(F31)])),
        row(ALL_D, 7, 3, (3, 7), (1, 15), Sum(vec![sc1, sc1, f(F31)])),
        row(ALL_D, 7, 4, (6, 7), (4, 20), Sum(vec![sc1, se1, f(F31)])),
        row(ALL_D, 7, 5, (10, 7), (10, 25), Sum(vec![se1, se1, f(F31)])),
        row(ALL_D, 7, 6, (15, 7), (20, 30), Sum(vec![se1, se1, f(F32)])),
        row(ALL_D, 7, 7, (21, 7), (35, 35), Sum(vec![se1, se1, f(F33)])),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChernField {
    C1,
    C2,
    C3,
}

impl fmt::Display for ChernField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChernField::C1 => "c1",
            ChernField::C2 => "c2",
            ChernField::C3 => "c3",
        })
    }
}

/// What a computed value was compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Reference {
    Printed,
    Forced,
}

impl fmt::Display for Reference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reference::Printed => "printed",
            Reference::Forced => "forced",
        })
    }
}

/// The result of recomputing one table row on a given `V_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    /// 1-based position in the table.
    pub row: usize,
    pub d: u8,
    pub d_set: Vec<u8>,
    pub rank: u32,
    pub printed_c1: i64,
    #[serde(serialize_with = "crate::json::int")]
    pub printed_c2: BigInt,
    #[serde(serialize_with = "crate::json::int")]
    pub printed_c3: BigInt,
    pub computed: ChernData,
    #[serde(serialize_with = "crate::json::int")]
    pub forced_c2: BigInt,
    #[serde(serialize_with = "crate::json::int")]
    pub forced_c3: BigInt,
    pub decomposition: String,
    pub discrepancies: Vec<Discrepancy>,
}

impl RowCheck {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn status(&self) -> String {
        if self.passed() {
            "ok".to_string()
        } else {
            let fields: Vec<String> = self
                .discrepancies
                .iter()
                .map(|x| format!("{} vs {}", x.field, x.reference))
                .collect();
            format!("mismatch({})", fields.join(";"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub row: usize,
    pub d: u8,
    pub rank: u32,
    pub c1: i64,
    pub field: ChernField,
    pub reference: Reference,
    #[serde(serialize_with = "crate::json::int")]
    pub expected: BigInt,
    #[serde(serialize_with = "crate::json::int")]
    pub computed: BigInt,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "row {} (d={}, r={}, c={}): {} computed {} but {} {}",
            self.row,
            self.d,
            self.rank,
            self.c1,
            self.field,
            self.computed,
            self.reference,
            self.expected
        )
    }
}

/// Recomputes every row applicable to `v` from its direct-sum decomposition
/// and compares against the printed values and the forced `(c2, c3)`.
pub fn check_table1(v: FanoThreefold) -> Vec<RowCheck> {
    table1_rows()
        .iter()
        .enumerate()
        .filter(|(_, row)| row.applies_to(v))
        .map(|(i, row)| check_row(i + 1, row, v))
        .collect()
}

fn check_row(index: usize, row: &TableRow, v: FanoThreefold) -> RowCheck {
    let decomposition = row.source.decomposition();
    let computed = decomposition
        .total_chern(v)
        .expect("table rows only use blocks available on their degrees");
    let forced_c2 = acm::forced_c2(v, row.rank, row.printed_c1);
    let forced_c3 = acm::forced_c3(v, row.rank, row.printed_c1);
    let printed_c1 = BigInt::from(row.printed_c1);
    let printed_c2 = row.printed_c2.eval(v);
    let printed_c3 = row.printed_c3.eval(v);

    let mut discrepancies = Vec::new();
    let mut compare = |field, reference, expected: &BigInt, computed: &BigInt| {
        if expected != computed {
            discrepancies.push(Discrepancy {
                row: index,
                d: v.degree(),
                rank: row.rank,
                c1: row.printed_c1,
                field,
                reference,
                expected: expected.clone(),
                computed: computed.clone(),
            });
        }
    };
    compare(
        ChernField::C1,
        Reference::Printed,
        &printed_c1,
        computed.c1(),
    );
    compare(
        ChernField::C2,
        Reference::Printed,
        &printed_c2,
        computed.c2(),
    );
    compare(
        ChernField::C3,
        Reference::Printed,
        &printed_c3,
        computed.c3(),
    );
    compare(ChernField::C2, Reference::Forced, &forced_c2, computed.c2());
    compare(ChernField::C3, Reference::Forced, &forced_c3, computed.c3());

    RowCheck {
        row: index,
        d: v.degree(),
        d_set: row.d_set.to_vec(),
        rank: row.rank,
        printed_c1: row.printed_c1,
        printed_c2,
        printed_c3,
        computed,
        forced_c2,
        forced_c3,
        decomposition: decomposition.to_string(),
        discrepancies,
    }
}

/// All mismatches between the recomputed table and the printed one on `v`.
pub fn verify_table1(v: FanoThreefold) -> Vec<Discrepancy> {
    check_table1(v)
        .into_iter()
        .flat_map(|check| check.discrepancies)
        .collect()
}

/// Euler characteristic of a block, which must be an integer.
pub fn block_euler_char(id: BlockId, v: FanoThreefold) -> Result<Rational> {
    Ok(block_chern(id, v)?.euler_char(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::complement_in_trivial;

    fn cd(r: u32, c1: i64, c2: i64, c3: i64) -> ChernData {
        ChernData::new(r, c1, c2, c3).unwrap()
    }

    #[test]
    fn block_chern_examples() {
        assert_eq!(
            block_chern(BlockId::new(Family::SC, 1), FanoThreefold::V4).unwrap(),
            cd(2, 1, 2, 0)
        );
        assert_eq!(
            block_chern(BlockId::new(Family::SE, 1), FanoThreefold::V3).unwrap(),
            cd(2, 2, 5, 0)
        );
        assert_eq!(
            block_chern(BlockId::new(Family::F72, 0), FanoThreefold::V3),
            Err(Error::UnavailableBlock {
                family: Family::F72,
                d: 3
            })
        );
        assert!(block_chern(BlockId::new(Family::F51, 0), FanoThreefold::V4).is_err());
        assert!(block_chern(BlockId::new(Family::F41, 0), FanoThreefold::V3).is_err());
        assert!(block_chern(BlockId::new(Family::F41, 0), FanoThreefold::V4).is_ok());
    }

    #[test]
    fn block_display() {
        assert_eq!(BlockId::witness(Family::SC).to_string(), "S_C(1)");
        assert_eq!(BlockId::witness(Family::F31).to_string(), "F_{3,1}");
        assert_eq!(BlockId::new(Family::SL, -2).to_string(), "S_L(-2)");
    }

    #[test]
    fn section_counts() {
        for v in FanoThreefold::ALL {
            let d = BigInt::from(v.degree());
            let chi = |f, t| block_euler_char(BlockId::new(f, t), v).unwrap();
            assert_eq!(chi(Family::SL, 0), Rational::from(1));
            assert_eq!(chi(Family::SC, 0), Rational::from(0));
            assert_eq!(block_spec(Family::SC, v).unwrap().h0, d);
            assert_eq!(block_spec(Family::F31, v).unwrap().h0, d);
        }
        assert_eq!(
            block_spec(Family::F32, FanoThreefold::V5).unwrap().h0,
            BigInt::from(10)
        );
    }

    #[test]
    fn witness_blocks_satisfy_forced_identities() {
        for v in FanoThreefold::ALL {
            for family in Family::ALL
                .into_iter()
                .filter(|f| !matches!(f, Family::OV | Family::SL))
            {
                let Ok(spec) = block_spec(family, v) else {
                    assert!(!family.available_on(v));
                    continue;
                };
                let c1 = i64::try_from(spec.chern.c1()).unwrap();
                assert_eq!(
                    spec.chern.c2(),
                    &acm::forced_c2(v, spec.rank, c1),
                    "{family} on {v}"
                );
                assert_eq!(
                    spec.chern.c3(),
                    &acm::forced_c3(v, spec.rank, c1),
                    "{family} on {v}"
                );
            }
        }
    }

    #[test]
    fn f72_is_the_dual_kernel_of_f32() {
        let v = FanoThreefold::V5;
        let f32 = block_chern(BlockId::witness(Family::F32), v).unwrap();
        assert_eq!(
            complement_in_trivial(&f32, 10, v).unwrap(),
            block_chern(BlockId::witness(Family::F72), v).unwrap()
        );
    }

    #[test]
    fn table_shape() {
        let rows = table1_rows();
        assert_eq!(rows.len(), 23);
        assert_eq!(rows[0].d_set, &[3, 4, 5]);
        assert_eq!((rows[0].rank, rows[0].printed_c1), (3, 1));
        assert_eq!(
            (
                rows[0].printed_c2.to_string(),
                rows[0].printed_c3.to_string()
            ),
            ("3".into(), "1".into())
        );
        let r41 = rows
            .iter()
            .find(|r| r.rank == 4 && r.printed_c1 == 1)
            .unwrap();
        assert_eq!(r41.d_set, &[4, 5]);
        assert_eq!(
            (r41.printed_c2.to_string(), r41.printed_c3.to_string()),
            ("4".into(), "2".into())
        );
        assert_eq!(rows[10].printed_c2.to_string(), "6d+5");
        assert_eq!(rows[10].printed_c3.to_string(), "4d+2");
    }

    #[test]
    fn verify_flags_only_the_misprint() {
        for v in FanoThreefold::ALL {
            let d = i64::from(v.degree());
            let found = verify_table1(v);
            assert_eq!(found.len(), 1, "{v}: {found:?}");
            let x = &found[0];
            assert_eq!(
                (x.row, x.rank, x.c1, x.field, x.reference),
                (11, 5, 4, ChernField::C3, Reference::Printed)
            );
            assert_eq!(x.computed, BigInt::from(4 * d + 12));
            assert_eq!(x.expected, BigInt::from(4 * d + 2));
            let checks = check_table1(v);
            assert_eq!(
                checks.iter().filter(|c| c.passed()).count(),
                checks.len() - 1
            );
        }
        assert_eq!(check_table1(FanoThreefold::V3).len(), 20);
        assert_eq!(check_table1(FanoThreefold::V4).len(), 22);
        assert_eq!(check_table1(FanoThreefold::V5).len(), 23);
    }
}
