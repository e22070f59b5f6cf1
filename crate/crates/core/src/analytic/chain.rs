//! Link-by-link check of the estimate chain for one instance `(r, s)`.
//!
//! With `x² = r - 1` the chain reads
//!
//! ```text
//! Π (1 - k/(k²+x²))^{-1} ≥ Π (1 + k/(k(k+1)+x²))          (a0)
//!                        > 1 + Σ k/(k(k+1)+x²)             (a)
//!                        ≥ 1 + (s0-1)(s0+2)/(4x²)          (b), (c)
//!                        ≥ 1 + 0.65/x                      (d)
//!                        ≥ (1 + π/(8x-π))(1 + 1/(2x²))     (f)
//!                        ≥ √r / (√(r-1) - π/8)             (e)
//! ```
//!
//! with every sum and product over `k = 2..=s` unless noted. Links are
//! evaluated and recorded independently; a failing link is reported as
//! such and does not stop the others. Link (g) checks the end-to-end
//! inequality directly.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::interval::DyadicInterval;
use super::{
    s0_for, untros_lhs, untros_rhs_enclosure, verify_untros_with, CertifiedBool, ESTIMATE_CONSTANT,
    MAX_PRECISION, START_PRECISION, THRESHOLD_CONSTANT,
};
use crate::error::{domain, Result};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Exact,
    Interval,
}

/// One side of a link, rendered both as a decimal and exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Side {
    pub description: String,
    pub decimal: String,
    /// `p/q` for exact values, `[lo, hi]` (dyadic rationals) for enclosures.
    pub exact: String,
}

impl Side {
    fn rational(description: impl Into<String>, q: &Rational) -> Self {
        Self {
            description: description.into(),
            decimal: format!("{:.12}", q.to_f64().unwrap_or(f64::NAN)),
            exact: q.to_string(),
        }
    }

    fn enclosure(description: impl Into<String>, iv: &DyadicInterval) -> Self {
        Self {
            description: description.into(),
            decimal: format!("{:.12}", iv.midpoint_f64()),
            exact: format!("[{}, {}]", iv.lo(), iv.hi()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLink {
    pub id: String,
    pub name: String,
    pub relation: String,
    pub lhs: Side,
    pub rhs: Side,
    pub holds: CertifiedBool,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub r: u64,
    pub s: u64,
    pub s0: u64,
    pub x_squared: u64,
    pub links: Vec<ChainLink>,
}

impl ChainReport {
    pub fn link(&self, id: &str) -> Option<&ChainLink> {
        self.links.iter().find(|l| l.id == id)
    }

    pub fn all_hold(&self) -> bool {
        self.links.iter().all(|l| l.holds.holds())
    }

    pub fn failed_links(&self) -> Vec<&str> {
        self.links
            .iter()
            .filter(|l| !l.holds.holds())
            .map(|l| l.id.as_str())
            .collect()
    }

    /// Some interval link hit the precision ceiling undecided.
    pub fn precision_exhausted(&self) -> bool {
        self.links.iter().any(|l| !l.holds.certified)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("chain report serialization")
    }
}

fn int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn ratio(n: u64, d: u64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Decides `lhs(p) ≤ rhs(p)` with escalating precision.
fn certify_le(
    max_precision: u32,
    sides: impl Fn(u32) -> (DyadicInterval, DyadicInterval),
) -> (CertifiedBool, DyadicInterval, DyadicInterval) {
    let mut precision = START_PRECISION.min(max_precision.max(1));
    loop {
        let (lhs, rhs) = sides(precision);
        if lhs.le(&rhs) {
            return (CertifiedBool::interval(true, precision), lhs, rhs);
        }
        if lhs.gt_rational(&rhs.hi()) {
            return (CertifiedBool::interval(false, precision), lhs, rhs);
        }
        if precision >= max_precision {
            return (CertifiedBool::undecided(precision), lhs, rhs);
        }
        precision = (precision * 2).min(max_precision);
    }
}

/// `(1 + π/(8x - π)) (1 + 1/(2x²))`.
fn rewritten_rhs(x_squared: u64, precision: u32) -> DyadicInterval {
    let x = DyadicInterval::sqrt_of(x_squared, precision);
    let pi = DyadicInterval::pi(precision);
    let first = pi
        .div(&x.scale_by_integer(8).sub(&pi))
        .expect("8x - π > 0 for x ≥ 3")
        .add_rational(&Rational::one());
    let second = DyadicInterval::from_rational(&(Rational::one() + ratio(1, 2 * x_squared)), precision);
    first.mul(&second)
}

pub fn proof_chain_check(r: u64, s: u64) -> Result<ChainReport> {
    proof_chain_check_with(r, s, MAX_PRECISION)
}

pub fn proof_chain_check_with(r: u64, s: u64, max_precision: u32) -> Result<ChainReport> {
    if r <= 9 {
        return Err(domain(format!("the estimate chain needs r > 9, got {r}")));
    }
    let s0 = s0_for(r)?;
    if s < s0 {
        return Err(domain(format!("s = {s} is below s0 = {s0} for r = {r}")));
    }
    if s + 1 > r {
        return Err(domain(format!("s + 1 must not exceed r, got s = {s}, r = {r}")));
    }
    let x2 = r - 1;
    let x2q = int(x2);
    let one = Rational::one();
    let mut links = Vec::new();

    // (a0) the left side dominates the rewritten product
    let lhs: Rational = untros_lhs(r, s)?;
    let rewritten: Rational = (2..=s).fold(one.clone(), |acc, k| {
        acc * (&one + ratio(k, k * (k + 1) + x2))
    });
    links.push(ChainLink {
        id: "a0".into(),
        name: "inverse product dominates the rewritten product".into(),
        relation: ">=".into(),
        lhs: Side::rational("prod_{k=2..s} (1 - k/(k^2+x^2))^-1", &lhs),
        rhs: Side::rational("prod_{k=2..s} (1 + k/(k(k+1)+x^2))", &rewritten),
        holds: CertifiedBool::exact(lhs >= rewritten),
        provenance: Provenance::Exact,
    });

    // (a) product exceeds one plus the sum
    let sum: Rational = (2..=s).map(|k| ratio(k, k * (k + 1) + x2)).sum();
    let one_plus_sum = &one + &sum;
    links.push(ChainLink {
        id: "a".into(),
        name: "product exceeds one plus the sum".into(),
        relation: ">".into(),
        lhs: Side::rational("prod_{k=2..s} (1 + k/(k(k+1)+x^2))", &rewritten),
        rhs: Side::rational("1 + sum_{k=2..s} k/(k(k+1)+x^2)", &one_plus_sum),
        holds: CertifiedBool::exact(rewritten > one_plus_sum),
        provenance: Provenance::Exact,
    });

    // (b) s0(s0+1) ≤ x²
    let corner = s0 * (s0 + 1);
    links.push(ChainLink {
        id: "b".into(),
        name: "s0(s0+1) <= x^2".into(),
        relation: "<=".into(),
        lhs: Side::rational("s0(s0+1)", &int(corner)),
        rhs: Side::rational("x^2 = r - 1", &x2q),
        holds: CertifiedBool::exact(corner <= x2),
        provenance: Provenance::Exact,
    });

    // (c) the sum dominates (s0-1)(s0+2)/(4x²) = Σ_{k=2..s0} k/(2x²)
    let closed = ratio((s0 - 1) * (s0 + 2), 4 * x2);
    let termwise: Rational = (2..=s0).map(|k| ratio(k, 2 * x2)).sum();
    links.push(ChainLink {
        id: "c".into(),
        name: "sum dominates (s0-1)(s0+2)/(4x^2)".into(),
        relation: ">=".into(),
        lhs: Side::rational("sum_{k=2..s} k/(k(k+1)+x^2)", &sum),
        rhs: Side::rational("sum_{k=2..s0} k/(2x^2) = (s0-1)(s0+2)/(4x^2)", &closed),
        holds: CertifiedBool::exact(termwise == closed && sum >= closed),
        provenance: Provenance::Exact,
    });

    // (d) (s0-1)(s0+2) ≥ 2.6x, squared: 25((s0-1)(s0+2))² ≥ 169x²
    let (c_num, c_den) = THRESHOLD_CONSTANT;
    let t = BigInt::from((s0 - 1) * (s0 + 2));
    let d_lhs = BigInt::from(c_den) * &t * &t;
    let d_rhs = BigInt::from(c_num) * BigInt::from(x2);
    links.push(ChainLink {
        id: "d".into(),
        name: "(s0-1)(s0+2) >= 2.6x, squared".into(),
        relation: ">=".into(),
        lhs: Side::rational("25((s0-1)(s0+2))^2", &Rational::from_integer(d_lhs.clone())),
        rhs: Side::rational("169 x^2", &Rational::from_integer(d_rhs.clone())),
        holds: CertifiedBool::exact(d_lhs >= d_rhs),
        provenance: Provenance::Exact,
    });

    // (e) √r/(x - π/8) = (x/(x - π/8)) √(1 + 1/x²) ≤ (1 + π/(8x - π))(1 + 1/(2x²))
    let second_sq = (&one + ratio(1, 2 * x2)) * (&one + ratio(1, 2 * x2));
    let second_ok = &one + ratio(1, x2) <= second_sq;
    let identity_ok = {
        let p = START_PRECISION;
        let x = DyadicInterval::sqrt_of(x2, p);
        let pi = DyadicInterval::pi(p);
        let quotient = x.div(&x.sub(&pi.shr(3))).expect("x - π/8 > 0");
        let shifted = pi
            .div(&x.scale_by_integer(8).sub(&pi))
            .expect("8x - π > 0")
            .add_rational(&one);
        quotient.overlaps(&shifted)
    };
    let (direct, e_lhs, e_rhs) = certify_le(max_precision, |p| {
        (
            untros_rhs_enclosure(r, p).expect("r > 9"),
            rewritten_rhs(x2, p),
        )
    });
    let e_holds = CertifiedBool {
        value: direct.value && second_ok && identity_ok,
        certified: direct.certified,
        precision_used: direct.precision_used,
    };
    links.push(ChainLink {
        id: "e".into(),
        name: "right side bounded by its factorization".into(),
        relation: "<=".into(),
        lhs: Side::enclosure("sqrt(r)/(sqrt(r-1) - pi/8)", &e_lhs),
        rhs: Side::enclosure("(1 + pi/(8x-pi))(1 + 1/(2x^2))", &e_rhs),
        holds: e_holds,
        provenance: Provenance::Interval,
    });

    // (f) (1 + π/(8x - π))(1 + 1/(2x²)) ≤ 1 + 0.65/x
    let (e_num, e_den) = ESTIMATE_CONSTANT;
    let (f_holds, f_lhs, f_rhs) = certify_le(max_precision, |p| {
        let x = DyadicInterval::sqrt_of(x2, p);
        let estimate = DyadicInterval::from_integer(e_num, p)
            .div(&x.scale_by_integer(e_den))
            .expect("x > 0")
            .add_rational(&one);
        (rewritten_rhs(x2, p), estimate)
    });
    links.push(ChainLink {
        id: "f".into(),
        name: "factorization bounded by 1 + 0.65/x".into(),
        relation: "<=".into(),
        lhs: Side::enclosure("(1 + pi/(8x-pi))(1 + 1/(2x^2))", &f_lhs),
        rhs: Side::enclosure("1 + 0.65/x", &f_rhs),
        holds: f_holds,
        provenance: Provenance::Interval,
    });

    // (g) end to end
    let g = verify_untros_with(r, s, max_precision)?;
    let g_rhs = untros_rhs_enclosure(r, g.precision_used.max(1))?;
    links.push(ChainLink {
        id: "g".into(),
        name: "inverse product exceeds sqrt(r)/(sqrt(r-1) - pi/8)".into(),
        relation: ">".into(),
        lhs: Side::rational("prod_{k=2..s} (1 - k/(k^2+r-1))^-1", &lhs),
        rhs: Side::enclosure("sqrt(r)/(sqrt(r-1) - pi/8)", &g_rhs),
        holds: g,
        provenance: Provenance::Interval,
    });

    Ok(ChainReport {
        r,
        s,
        s0,
        x_squared: x2,
        links,
    })
}
