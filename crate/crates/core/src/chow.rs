//! Chern-class calculus on the index-two Fano threefolds `V_d`, `d = 3, 4, 5`.
//!
//! The even cohomology of `V_d` is generated by the hyperplane class `H`,
//! the class of a line `L` and the class of a point `P`, with
//! `H·L = P`, `H² = d·L` and `H³ = d·P`. Chern classes are therefore
//! recorded as their integer coefficients against `H`, `L` and `P`.
//! The canonical class is `K = -2H`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::acm;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// One of the three index-two Fano threefolds `V_3`, `V_4`, `V_5` of Picard
/// rank one, identified by its degree `d = H³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct FanoThreefold(u8);

impl FanoThreefold {
    pub const V3: FanoThreefold = FanoThreefold(3);
    pub const V4: FanoThreefold = FanoThreefold(4);
    pub const V5: FanoThreefold = FanoThreefold(5);

    pub const ALL: [FanoThreefold; 3] = [Self::V3, Self::V4, Self::V5];

    pub fn new(d: i64) -> Result<Self> {
        match d {
            3..=5 => Ok(FanoThreefold(d as u8)),
            _ => Err(Error::InvalidDegree(d)),
        }
    }

    pub fn degree(self) -> u8 {
        self.0
    }

    pub(crate) fn d(self) -> BigInt {
        BigInt::from(self.0)
    }
}

impl fmt::Display for FanoThreefold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V_{}", self.0)
    }
}

/// Rank and Chern classes `(r, c1, c2, c3)` of a vector bundle in the
/// `H`/`L`/`P` basis. Classes above the rank are always zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ChernData {
    rank: u32,
    #[serde(serialize_with = "crate::json::int")]
    c1: BigInt,
    #[serde(serialize_with = "crate::json::int")]
    c2: BigInt,
    #[serde(serialize_with = "crate::json::int")]
    c3: BigInt,
}

impl ChernData {
    pub fn new(
        rank: u32,
        c1: impl Into<BigInt>,
        c2: impl Into<BigInt>,
        c3: impl Into<BigInt>,
    ) -> Result<Self> {
        let c = ChernData {
            rank,
            c1: c1.into(),
            c2: c2.into(),
            c3: c3.into(),
        };
        let vanishing: &[(&BigInt, &str)] = match rank {
            0 => &[(&c.c1, "c1"), (&c.c2, "c2"), (&c.c3, "c3")],
            1 => &[(&c.c2, "c2"), (&c.c3, "c3")],
            2 => &[(&c.c3, "c3")],
            _ => &[],
        };
        if let Some((value, name)) = vanishing.iter().find(|(v, _)| !v.is_zero()) {
            return Err(Error::InvalidChern(format!(
                "{name} = {value} must vanish for a rank-{rank} bundle"
            )));
        }
        Ok(c)
    }

    /// The zero bundle, neutral for [`ChernData::whitney_sum`].
    pub fn zero() -> Self {
        ChernData::trivial(0)
    }

    /// `O^{⊕rank}`.
    pub fn trivial(rank: u32) -> Self {
        ChernData {
            rank,
            c1: BigInt::zero(),
            c2: BigInt::zero(),
            c3: BigInt::zero(),
        }
    }

    /// The line bundle `O(t)`.
    pub fn line_bundle(t: impl Into<BigInt>) -> Self {
        ChernData {
            rank: 1,
            c1: t.into(),
            c2: BigInt::zero(),
            c3: BigInt::zero(),
        }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn c1(&self) -> &BigInt {
        &self.c1
    }

    pub fn c2(&self) -> &BigInt {
        &self.c2
    }

    pub fn c3(&self) -> &BigInt {
        &self.c3
    }

    /// Chern classes of `F(t) = F ⊗ O(tH)`.
    pub fn twist(&self, v: FanoThreefold, t: impl Into<BigInt>) -> ChernData {
        let t: BigInt = t.into();
        if t.is_zero() {
            return self.clone();
        }
        let d = v.d();
        let r = BigInt::from(self.rank);
        let one = BigInt::from(1);
        let two = BigInt::from(2);
        let c1 = &self.c1 + &r * &t;
        let c2 = &self.c2 + (&r - &one) * &t * &self.c1 * &d + binom2(&r) * &t * &t * &d;
        let c3 = &self.c3
            + (&r - &two) * &self.c2 * &t
            + binom2(&(&r - &one)) * &self.c1 * &t * &t * &d
            + binom3(&r) * &t * &t * &t * &d;
        ChernData::new(self.rank, c1, c2, c3)
            .expect("twist keeps the Chern classes above the rank at zero")
    }

    /// Euler characteristic by Riemann–Roch on `V_d`:
    /// `χ = d·c1³/6 − c1·c2/2 + d·c1²/2 − c2 + (d+3)·c1/3 + c3/2 + r`.
    pub fn euler_char(&self, v: FanoThreefold) -> Rational {
        let d = v.d();
        let (c1, c2, c3) = (&self.c1, &self.c2, &self.c3);
        let sixfold = &d * c1 * c1 * c1 - 3 * c1 * c2 + 3 * &d * c1 * c1 - 6 * c2
            + 2 * (&d + 3) * c1
            + 3 * c3
            + 6 * BigInt::from(self.rank);
        Rational::new(sixfold, 6)
    }

    /// `χ(F(t))`.
    pub fn chi_twist(&self, v: FanoThreefold, t: impl Into<BigInt>) -> Rational {
        self.twist(v, t).euler_char(v)
    }

    /// Chern classes of the direct sum `self ⊕ other`.
    pub fn whitney_sum(&self, other: &ChernData, v: FanoThreefold) -> ChernData {
        let d = v.d();
        ChernData {
            rank: self.rank + other.rank,
            c1: &self.c1 + &other.c1,
            c2: &self.c2 + &other.c2 + d * &self.c1 * &other.c1,
            c3: &self.c3 + &other.c3 + &self.c1 * &other.c2 + &self.c2 * &other.c1,
        }
    }

    /// Chern classes of the dual bundle: `c_i(F*) = (−1)^i c_i(F)`.
    pub fn dual(&self) -> ChernData {
        ChernData {
            rank: self.rank,
            c1: -&self.c1,
            c2: self.c2.clone(),
            c3: -&self.c3,
        }
    }
}

impl fmt::Display for ChernData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.rank, self.c1, self.c2, self.c3)
    }
}

fn binom2(n: &BigInt) -> BigInt {
    n * (n - 1) / 2
}

fn binom3(n: &BigInt) -> BigInt {
    n * (n - 1) * (n - 2) / 6
}

/// Chern data of `F = K*` where `0 → K → O^n → G → 0`.
///
/// `K` is the unique solution of `K ⊕ G = O^n` under the Whitney formula.
pub fn complement_in_trivial(g: &ChernData, n: u32, v: FanoThreefold) -> Result<ChernData> {
    if n <= g.rank {
        return Err(Error::InvalidChern(format!(
            "trivial bundle rank {n} must exceed rank {} of the quotient",
            g.rank
        )));
    }
    let d = v.d();
    let k1 = -&g.c1;
    let k2 = -&g.c2 - &d * &k1 * &g.c1;
    let k3 = -&g.c3 - &k1 * &g.c2 - &k2 * &g.c1;
    let kernel = ChernData::new(n - g.rank, k1, k2, k3).map_err(|e| {
        Error::InvalidChern(format!("no rank-{} kernel of O^{n} → {g}: {e}", n - g.rank))
    })?;
    debug_assert_eq!(kernel.whitney_sum(g, v), ChernData::trivial(n));
    Ok(kernel.dual())
}

/// Chern data of a bundle `F` in `0 → O^{r−1} → F → I_D(c1) → 0` where
/// `D` is a curve of the given degree and arithmetic genus.
pub fn serre_chern(
    _v: FanoThreefold,
    rank: u32,
    c1: impl Into<BigInt>,
    curve_degree: impl Into<BigInt>,
    curve_genus: impl Into<BigInt>,
) -> Result<ChernData> {
    if rank < 2 {
        return Err(Error::InvalidChern(format!(
            "Serre construction needs rank at least 2, got {rank}"
        )));
    }
    let c1: BigInt = c1.into();
    let degree: BigInt = curve_degree.into();
    let genus: BigInt = curve_genus.into();
    let c3 = 2 * genus - 2 + &degree * (2 - &c1);
    ChernData::new(rank, c1, degree, c3)
}

/// Degree and arithmetic genus of the dependency locus of `r − 1` general
/// sections of an ACM bundle with the given rank and first Chern class.
pub fn curve_invariants(v: FanoThreefold, rank: u32, c1: i64) -> Result<(BigInt, BigInt)> {
    let degree = acm::forced_c2(v, rank, c1);
    let d = Rational::from(i64::from(v.degree()));
    let c = Rational::from(c1);
    let r = Rational::from(i64::from(rank));
    let one = Rational::from(1);
    let genus = (&c - &one) * (&r - &one) - &d * &(&c * &c)
        + &d * &(&c * &(&c * &c)) * Rational::new(1, 3)
        + Rational::new(2, 3) * (&d * &c);
    let genus = genus.to_integer().ok_or_else(|| Error::NonIntegral {
        what: "curve genus",
        value: genus.to_string(),
    })?;
    Ok((degree, genus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cd(r: u32, c1: i64, c2: i64, c3: i64) -> ChernData {
        ChernData::new(r, c1, c2, c3).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn rejects_bad_degree() {
        assert_eq!(FanoThreefold::new(2), Err(Error::InvalidDegree(2)));
        assert_eq!(FanoThreefold::new(6), Err(Error::InvalidDegree(6)));
        assert_eq!(FanoThreefold::new(4).unwrap(), FanoThreefold::V4);
    }

    #[test]
    fn vanishing_above_rank() {
        assert!(ChernData::new(0, 1, 0, 0).is_err());
        assert!(ChernData::new(1, 1, 1, 0).is_err());
        assert!(ChernData::new(1, 1, 0, 1).is_err());
        assert!(ChernData::new(2, 0, 1, 1).is_err());
        assert!(ChernData::new(2, 0, 1, 0).is_ok());
        assert!(ChernData::new(3, 0, 1, 1).is_ok());
    }

    #[test]
    fn twist_examples() {
        let sc = cd(2, -1, 2, 0);
        assert_eq!(sc.twist(FanoThreefold::V3, 1), cd(2, 1, 2, 0));
        let se = cd(2, 0, 2, 0);
        assert_eq!(se.twist(FanoThreefold::V5, 1), cd(2, 2, 7, 0));
        let f = cd(3, 2, 8, 2);
        assert_eq!(f.twist(FanoThreefold::V5, 0), f);
    }

    #[test]
    fn twist_of_line_bundles_stays_rank_one() {
        for v in FanoThreefold::ALL {
            for t in -5..=5 {
                assert_eq!(
                    ChernData::line_bundle(2).twist(v, t),
                    ChernData::line_bundle(2 + t)
                );
            }
        }
    }

    #[test]
    fn euler_char_examples() {
        for v in FanoThreefold::ALL {
            let d = i64::from(v.degree());
            assert_eq!(ChernData::line_bundle(1).euler_char(v), q(d + 2));
        }
        assert_eq!(cd(2, 0, 1, 0).euler_char(FanoThreefold::V3), q(1));
        assert_eq!(cd(3, 2, 8, 2).euler_char(FanoThreefold::V5), q(10));
    }

    #[test]
    fn euler_char_can_be_half_integral() {
        assert_eq!(
            cd(3, 0, 0, 1).euler_char(FanoThreefold::V3),
            Rational::new(7, 2)
        );
    }

    #[test]
    fn chi_of_structure_sheaf_twists() {
        let o = ChernData::trivial(1);
        for t in -6i64..=6 {
            let expected =
                Rational::new(t * t * t, 2) + Rational::new(3 * t * t, 2) + q(2 * t) + q(1);
            assert_eq!(o.chi_twist(FanoThreefold::V3, t), expected);
        }
    }

    #[test]
    fn chi_twist_vanishes_for_conic_bundle() {
        let sc1 = cd(2, 1, 2, 0);
        for v in FanoThreefold::ALL {
            assert!(sc1.chi_twist(v, -1).is_zero());
            assert!(sc1.chi_twist(v, -2).is_zero());
        }
    }

    #[test]
    fn whitney_examples() {
        let sc1 = cd(2, 1, 2, 0);
        for v in FanoThreefold::ALL {
            let d = i64::from(v.degree());
            assert_eq!(sc1.whitney_sum(&sc1, v), cd(4, 2, d + 4, 4));
            assert_eq!(sc1.whitney_sum(&ChernData::zero(), v), sc1);
            let f33 = cd(3, 3, 3 * d + 3, d + 3);
            assert_eq!(sc1.whitney_sum(&f33, v), cd(5, 4, 6 * d + 5, 4 * d + 12));
        }
    }

    #[test]
    fn dual_examples() {
        assert_eq!(cd(2, 1, 2, 0).dual(), cd(2, -1, 2, 0));
        assert_eq!(cd(3, 2, 8, 2).dual(), cd(3, -2, 8, -2));
        for v in FanoThreefold::ALL {
            assert_eq!(cd(2, 1, 2, 0).dual(), cd(2, 1, 2, 0).twist(v, -1));
        }
    }

    #[test]
    fn complement_examples() {
        let g = cd(3, 2, 8, 2);
        assert_eq!(
            complement_in_trivial(&g, 10, FanoThreefold::V5).unwrap(),
            cd(7, 2, 12, 10)
        );
        for n in 4..8 {
            assert_eq!(
                complement_in_trivial(&ChernData::trivial(3), n, FanoThreefold::V4).unwrap(),
                ChernData::trivial(n - 3)
            );
        }
        assert!(complement_in_trivial(&g, 3, FanoThreefold::V5).is_err());
    }

    #[test]
    fn complement_of_hyperplane_in_two_sections_is_not_a_line_bundle() {
        // 1/c(O(1)) = 1 − H + dL − dP, so a rank-one kernel would need c2 = d.
        let err = complement_in_trivial(&ChernData::line_bundle(1), 2, FanoThreefold::V3);
        assert!(matches!(err, Err(Error::InvalidChern(_))));
        let k = complement_in_trivial(&ChernData::line_bundle(1), 4, FanoThreefold::V3).unwrap();
        assert_eq!(k, cd(3, 1, 3, 3));
    }

    #[test]
    fn serre_chern_examples() {
        for v in FanoThreefold::ALL {
            let d = i64::from(v.degree());
            for r in 2..=6u32 {
                assert_eq!(
                    serre_chern(v, r, 1, r, 0).unwrap(),
                    cd(r, 1, r.into(), i64::from(r) - 2)
                );
            }
            assert_eq!(
                serre_chern(v, 3, 3, 3 * d + 3, 2 * d + 4).unwrap(),
                cd(3, 3, 3 * d + 3, d + 3)
            );
        }
        assert_eq!(
            serre_chern(FanoThreefold::V3, 2, 2, 5, 1).unwrap(),
            cd(2, 2, 5, 0)
        );
        assert!(serre_chern(FanoThreefold::V3, 1, 2, 5, 1).is_err());
    }

    #[test]
    fn curve_invariants_examples() {
        assert_eq!(
            curve_invariants(FanoThreefold::V3, 3, 1).unwrap(),
            (BigInt::from(3), BigInt::from(0))
        );
        for v in FanoThreefold::ALL {
            let d = i64::from(v.degree());
            assert_eq!(
                curve_invariants(v, 3, 3).unwrap(),
                (BigInt::from(3 * d + 3), BigInt::from(2 * d + 4))
            );
        }
        // (1)(6) − 20 + 40/3 + 20/3 = 6
        assert_eq!(
            curve_invariants(FanoThreefold::V5, 7, 2).unwrap(),
            (BigInt::from(12), BigInt::from(6))
        );
    }

    fn arb_threefold() -> impl Strategy<Value = FanoThreefold> {
        prop::sample::select(FanoThreefold::ALL.to_vec())
    }

    fn arb_chern() -> impl Strategy<Value = ChernData> {
        (0u32..8, -20i64..20, -200i64..200, -500i64..500).prop_map(|(r, c1, c2, c3)| match r {
            0 => ChernData::zero(),
            1 => ChernData::line_bundle(c1),
            2 => cd(2, c1, c2, 0),
            _ => cd(r, c1, c2, c3),
        })
    }

    proptest! {
        #[test]
        fn twist_is_additive(c in arb_chern(), v in arb_threefold(), s in -30i64..30, t in -30i64..30) {
            prop_assert_eq!(c.twist(v, s).twist(v, t), c.twist(v, s + t));
        }

        #[test]
        fn serre_duality(c in arb_chern(), v in arb_threefold(), t in -30i64..30) {
            prop_assert_eq!(c.dual().chi_twist(v, -2 - t), -c.chi_twist(v, t));
        }

        #[test]
        fn rank_two_self_duality(c1 in -50i64..50, c2 in -500i64..500, v in arb_threefold()) {
            let c = cd(2, c1, c2, 0);
            prop_assert_eq!(c.dual(), c.twist(v, -c1));
        }

        #[test]
        fn whitney_commutes_and_associates(a in arb_chern(), b in arb_chern(), c in arb_chern(), v in arb_threefold()) {
            prop_assert_eq!(a.whitney_sum(&b, v), b.whitney_sum(&a, v));
            prop_assert_eq!(
                a.whitney_sum(&b, v).whitney_sum(&c, v),
                a.whitney_sum(&b.whitney_sum(&c, v), v)
            );
        }

        #[test]
        fn twist_distributes_and_chi_adds(a in arb_chern(), b in arb_chern(), v in arb_threefold(), t in -20i64..20) {
            let sum = a.whitney_sum(&b, v);
            prop_assert_eq!(sum.twist(v, t), a.twist(v, t).whitney_sum(&b.twist(v, t), v));
            prop_assert_eq!(sum.chi_twist(v, t), a.chi_twist(v, t) + b.chi_twist(v, t));
        }

        #[test]
        fn chi_is_cubic_with_leading_rank_d_over_six(c in arb_chern(), v in arb_threefold(), t0 in -10i64..10) {
            // The third finite difference of a cubic is 6 × its leading coefficient.
            let y: Vec<Rational> = (0..4).map(|k| c.chi_twist(v, t0 + k)).collect();
            let third = &(&y[3] - &(&y[2] * &q(3))) + &(&(&y[1] * &q(3)) - &y[0]);
            let fourth = c.chi_twist(v, t0 + 4) - c.chi_twist(v, t0 + 3) * q(4)
                + c.chi_twist(v, t0 + 2) * q(6) - c.chi_twist(v, t0 + 1) * q(4) + c.chi_twist(v, t0);
            prop_assert_eq!(third, q(i64::from(c.rank()) * i64::from(v.degree())));
            prop_assert!(fourth.is_zero());
        }
    }
}
