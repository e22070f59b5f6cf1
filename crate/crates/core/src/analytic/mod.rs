//! Exact and interval-certified checks of the quasi-homogeneity estimates.
//!
//! For `r > 9` and `s` with `(s-1)²(s+2)² ≥ 6.76(r-1)`, a system with
//! `m_1 ≥ m_2 + … + m_{s+1}` needs no unloading in the first `s - 1` stages,
//! and the final bound satisfies
//! `m_1^(r) ≥ Σm (1 - 1/r) Π_{k=s+1}^{r-1} (1 - k/(k²+r-1))`. That exceeds
//! `Σm/√r` as soon as
//!
//! ```text
//! Π_{k=2}^{s} (1 - k/(k²+r-1))^{-1}  >  √r / (√(r-1) - π/8)
//! ```
//!
//! which this module decides per instance. The decimals 6.76 and 0.65 are
//! the exact fractions 169/25 and 13/20.

mod chain;
mod interval;

pub use chain::{proof_chain_check, proof_chain_check_with, ChainLink, ChainReport, Provenance, Side};
pub use interval::{decimal_ceil, decimal_floor, DyadicInterval, PI_COARSE_HI, PI_COARSE_LO};

use serde::{Deserialize, Serialize};

use crate::cluster::MultiplicitySystem;
use crate::error::{domain, Result};
use crate::scalar::Scalar;
use crate::Rational;

/// Numerator and denominator of 6.76.
pub const THRESHOLD_CONSTANT: (u64, u64) = (169, 25);
/// Numerator and denominator of 0.65.
pub const ESTIMATE_CONSTANT: (i64, i64) = (13, 20);

/// Starting precision (bits) of certified comparisons.
pub const START_PRECISION: u32 = 64;
/// Precision ceiling before a comparison is reported as undecided.
pub const MAX_PRECISION: u32 = 1024;

/// Result of a comparison that may be undecidable at the precision ceiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedBool {
    pub value: bool,
    /// `false` only when the precision ceiling was reached undecided.
    pub certified: bool,
    /// Working precision in bits; 0 for exact comparisons.
    pub precision_used: u32,
}

impl CertifiedBool {
    pub fn exact(value: bool) -> Self {
        Self {
            value,
            certified: true,
            precision_used: 0,
        }
    }

    pub fn interval(value: bool, precision: u32) -> Self {
        Self {
            value,
            certified: true,
            precision_used: precision,
        }
    }

    pub fn undecided(precision: u32) -> Self {
        Self {
            value: false,
            certified: false,
            precision_used: precision,
        }
    }

    /// Certified true.
    pub fn holds(&self) -> bool {
        self.value && self.certified
    }
}

fn threshold_met(r: u64, s: u64) -> bool {
    let (num, den) = THRESHOLD_CONSTANT;
    let t = (s as u128 - 1) * (s as u128 + 2);
    den as u128 * t * t >= num as u128 * (r as u128 - 1)
}

/// Least `s ≥ 1` with `(s-1)²(s+2)² ≥ 6.76 (r-1)`.
pub fn s0_for(r: u64) -> Result<u64> {
    if r < 2 {
        return Err(domain(format!("s0 needs r >= 2, got {r}")));
    }
    let mut s = 1;
    while !threshold_met(r, s) {
        s += 1;
    }
    Ok(s)
}

/// Whether `s` satisfies `(s-1)²(s+2)² ≥ 6.76 (r-1)`.
pub fn satisfies_threshold(r: u64, s: u64) -> bool {
    s >= 1 && r >= 1 && threshold_met(r, s)
}

/// The hypothesis of the quasi-homogeneity bound for `(m, s)`.
pub fn theorem_hypothesis(m: &MultiplicitySystem, s: usize) -> Result<bool> {
    let r = m.len();
    if s < 2 {
        return Err(domain(format!("hypothesis needs s >= 2, got {s}")));
    }
    if s + 1 > r {
        return Err(domain(format!("hypothesis needs s + 1 <= r, got s = {s}, r = {r}")));
    }
    if !m.is_nonincreasing() {
        return Err(domain(format!("multiplicities must be sorted nonincreasing, got {m}")));
    }
    let head: i64 = m.entries()[1..=s].iter().sum();
    Ok(r > 9 && threshold_met(r as u64, s as u64) && m[0] >= head)
}

/// `Σm (1 - 1/r) Π_{k=s+1}^{r-1} (1 - k/(k² + r - 1))`.
pub fn lemma_product_bound<F: Scalar>(m: &MultiplicitySystem, s: usize) -> Result<F> {
    let r = m.len();
    if s < 2 || s + 1 > r {
        return Err(domain(format!("lemma bound needs 2 <= s <= r - 1, got s = {s}, r = {r}")));
    }
    let r = r as i64;
    let mut value = F::from_int(m.sum()) * F::from_ratio(r - 1, r);
    for k in (s as i64 + 1)..r {
        let den = k * k + r - 1;
        value = value * F::from_ratio(den - k, den);
    }
    Ok(value)
}

/// `Π_{k=2}^{s} (1 - k/(k² + r - 1))^{-1}`.
pub fn untros_lhs<F: Scalar>(r: u64, s: u64) -> Result<F> {
    if r < 2 || s < 2 {
        return Err(domain(format!("needs r >= 2 and s >= 2, got r = {r}, s = {s}")));
    }
    let r = r as i64;
    let mut value = F::one();
    for k in 2..=(s as i64) {
        let den = k * k + r - 1;
        assert!(den - k > 0, "vanishing factor");
        value = value * F::from_ratio(den, den - k);
    }
    Ok(value)
}

/// Enclosure of `√r / (√(r-1) - π/8)`.
pub fn untros_rhs_enclosure(r: u64, precision: u32) -> Result<DyadicInterval> {
    if r < 10 {
        return Err(domain(format!("right-hand side is only evaluated for r >= 10, got {r}")));
    }
    if precision == 0 {
        return Err(domain("precision must be positive"));
    }
    let sqrt_r = DyadicInterval::sqrt_of(r, precision);
    let x = DyadicInterval::sqrt_of(r - 1, precision);
    let den = x.sub(&DyadicInterval::pi(precision).shr(3));
    Ok(sqrt_r.div(&den).expect("denominator bounded away from zero for r >= 10"))
}

/// Decides `untros_lhs(r, s) > √r / (√(r-1) - π/8)`, doubling the
/// precision from 64 bits up to `max_precision`.
pub fn verify_untros_with(r: u64, s: u64, max_precision: u32) -> Result<CertifiedBool> {
    let lhs: Rational = untros_lhs(r, s)?;
    let mut precision = START_PRECISION.min(max_precision.max(1));
    loop {
        let rhs = untros_rhs_enclosure(r, precision)?;
        if rhs.lt_rational(&lhs) {
            return Ok(CertifiedBool::interval(true, precision));
        }
        if rhs.gt_rational(&lhs) {
            return Ok(CertifiedBool::interval(false, precision));
        }
        if precision >= max_precision {
            return Ok(CertifiedBool::undecided(precision));
        }
        precision = (precision * 2).min(max_precision);
    }
}

pub fn verify_untros(r: u64, s: u64) -> Result<CertifiedBool> {
    verify_untros_with(r, s, MAX_PRECISION)
}

/// The smallest `s` for which a submaximal quasi-homogeneous system
/// `(μ, ν, …, ν)` on `r > 9` points must have `μ < s·ν`.
pub fn corollary_threshold(r: u64) -> Result<u64> {
    if r <= 9 {
        return Err(domain(format!("the threshold is stated for r > 9, got {r}")));
    }
    s0_for(r)
}
