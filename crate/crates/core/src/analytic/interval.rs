//! Dyadic interval enclosures.
//!
//! An interval at precision `p` is `[lo / 2^p, hi / 2^p]` with integer
//! endpoints. Every operation rounds outward, so the result always encloses
//! the exact result of the operation applied to any points of the operands.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// Lower end of the hardcoded coarse bracket for π.
pub const PI_COARSE_LO: (u64, u64) = (314_159_265_358_979, 100_000_000_000_000);
/// Upper end of the hardcoded coarse bracket for π.
pub const PI_COARSE_HI: (u64, u64) = (314_159_265_358_980, 100_000_000_000_000);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: BigInt,
    hi: BigInt,
    precision: u32,
}

fn shr_floor(v: &BigInt, bits: u32) -> BigInt {
    // `>>` on BigInt rounds toward negative infinity.
    v >> bits as usize
}

fn shr_ceil(v: &BigInt, bits: u32) -> BigInt {
    -((-v) >> bits as usize)
}

fn rational_of(n: &BigInt, precision: u32) -> Rational {
    Rational::new(n.clone(), BigInt::one() << precision as usize)
}

impl DyadicInterval {
    fn from_parts(lo: BigInt, hi: BigInt, precision: u32) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Self { lo, hi, precision }
    }

    pub fn from_integer(n: i64, precision: u32) -> Self {
        let v = BigInt::from(n) << precision as usize;
        Self::from_parts(v.clone(), v, precision)
    }

    /// Tightest enclosure of an exact rational at `precision`.
    pub fn from_rational(q: &Rational, precision: u32) -> Self {
        Self::from_rational_bounds(q, q, precision)
    }

    /// Outward-rounded enclosure of `[lo, hi]`.
    pub fn from_rational_bounds(lo: &Rational, hi: &Rational, precision: u32) -> Self {
        assert!(lo <= hi, "inverted bounds");
        let scale = BigInt::one() << precision as usize;
        let l = (lo.numer() * &scale).div_floor(lo.denom());
        let h = Integer::div_ceil(&(hi.numer() * &scale), hi.denom());
        Self::from_parts(l, h, precision)
    }

    /// Enclosure of `√n`, via the integer square root of `n·4^p`.
    pub fn sqrt_of(n: u64, precision: u32) -> Self {
        let scaled = BigUint::from(n) << (2 * precision as usize);
        let root = scaled.sqrt();
        let exact = &root * &root == scaled;
        let lo = BigInt::from_biguint(Sign::Plus, root);
        let hi = if exact { lo.clone() } else { &lo + 1 };
        Self::from_parts(lo, hi, precision)
    }

    /// Enclosure of π from Machin's formula `π = 16 atan(1/5) - 4 atan(1/239)`,
    /// intersected with the coarse bracket [`PI_COARSE_LO`], [`PI_COARSE_HI`].
    pub fn pi(precision: u32) -> Self {
        let work = precision + 16;
        let (a_lo, a_hi) = arctan_inverse(5, work);
        let (b_lo, b_hi) = arctan_inverse(239, work);
        let lo = 16 * a_lo - 4 * b_hi;
        let hi = 16 * a_hi - 4 * b_lo;
        let series = Self::from_parts(
            shr_floor(&lo, work - precision),
            shr_ceil(&hi, work - precision),
            precision,
        );
        let coarse = Self::from_rational_bounds(
            &Rational::new(PI_COARSE_LO.0.into(), PI_COARSE_LO.1.into()),
            &Rational::new(PI_COARSE_HI.0.into(), PI_COARSE_HI.1.into()),
            precision,
        );
        series
            .intersect(&coarse)
            .expect("series enclosure of pi disagrees with the coarse bracket")
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn lo(&self) -> Rational {
        rational_of(&self.lo, self.precision)
    }

    pub fn hi(&self) -> Rational {
        rational_of(&self.hi, self.precision)
    }

    pub fn width(&self) -> Rational {
        rational_of(&(&self.hi - &self.lo), self.precision)
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid = (self.lo() + self.hi()) / Rational::from_integer(2.into());
        mid.to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo() <= q && q <= &self.hi()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Certainly `< q`.
    pub fn lt_rational(&self, q: &Rational) -> bool {
        &self.hi() < q
    }

    /// Certainly `> q`.
    pub fn gt_rational(&self, q: &Rational) -> bool {
        &self.lo() > q
    }

    /// Certainly `≤ other` for every pair of enclosed values.
    pub fn le(&self, other: &Self) -> bool {
        self.hi() <= other.lo()
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let p = self.precision.max(other.precision);
        let a = self.with_precision(p);
        let b = other.with_precision(p);
        let lo = a.lo.max(b.lo);
        let hi = a.hi.min(b.hi);
        (lo <= hi).then(|| Self::from_parts(lo, hi, p))
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.intersect(other).is_some()
    }

    /// Same set at a finer grid (exact) or a coarser one (outward).
    pub fn with_precision(&self, precision: u32) -> Self {
        if precision >= self.precision {
            let shift = (precision - self.precision) as usize;
            Self::from_parts(&self.lo << shift, &self.hi << shift, precision)
        } else {
            let shift = self.precision - precision;
            Self::from_parts(
                shr_floor(&self.lo, shift),
                shr_ceil(&self.hi, shift),
                precision,
            )
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let p = self.precision.max(other.precision);
        (self.with_precision(p), other.with_precision(p))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        Self::from_parts(a.lo + b.lo, a.hi + b.hi, a.precision)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        Self::from_parts(a.lo - b.hi, a.hi - b.lo, a.precision)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let products = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let min = products.iter().min().expect("nonempty");
        let max = products.iter().max().expect("nonempty");
        Self::from_parts(
            shr_floor(min, a.precision),
            shr_ceil(max, a.precision),
            a.precision,
        )
    }

    /// Division; `None` when the divisor contains zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.contains_zero() {
            return None;
        }
        let (a, b) = self.aligned(other);
        let shift = a.precision as usize;
        let numerators = [&a.lo << shift, &a.hi << shift];
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for n in &numerators {
            for d in [&b.lo, &b.hi] {
                let fl = n.div_floor(d);
                let ce = Integer::div_ceil(n, d);
                lo = Some(match lo {
                    Some(v) if v <= fl => v,
                    _ => fl,
                });
                hi = Some(match hi {
                    Some(v) if v >= ce => v,
                    _ => ce,
                });
            }
        }
        Some(Self::from_parts(
            lo.expect("set"),
            hi.expect("set"),
            a.precision,
        ))
    }

    pub fn scale_by_integer(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        let (a, b) = (&self.lo * &k, &self.hi * &k);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        Self::from_parts(lo, hi, self.precision)
    }

    /// Division by `2^bits`, rounded outward.
    pub fn shr(&self, bits: u32) -> Self {
        Self::from_parts(
            shr_floor(&self.lo, bits),
            shr_ceil(&self.hi, bits),
            self.precision,
        )
    }

    pub fn add_rational(&self, q: &Rational) -> Self {
        self.add(&Self::from_rational(q, self.precision))
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.precision as f64) * std::f64::consts::LOG10_2).ceil() as usize;
        let digits = digits.clamp(6, 40);
        write!(
            f,
            "[{}, {}]",
            decimal_floor(&self.lo(), digits),
            decimal_ceil(&self.hi(), digits)
        )
    }
}

/// `atan(1/x)` scaled by `2^work`, as integer bounds `(lo, hi)`.
///
/// Terms `2^work / ((2k+1) x^(2k+1))` are truncated to integers (error < 1
/// each) until one truncates to zero; the alternating tail is then below
/// one unit as well.
fn arctan_inverse(x: u64, work: u32) -> (BigInt, BigInt) {
    let scale = BigInt::one() << work as usize;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = x.clone();
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut k = 0u64;
    loop {
        let term = &scale / (&power * BigInt::from(2 * k + 1));
        if term.is_zero() {
            break;
        }
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        terms += 1;
        power *= &x2;
        k += 1;
    }
    let err = BigInt::from(terms + 1);
    (&sum - &err, &sum + &err)
}

/// Decimal rendering rounded toward -∞.
pub fn decimal_floor(q: &Rational, digits: usize) -> String {
    decimal_rounded(q, digits, false)
}

/// Decimal rendering rounded toward +∞.
pub fn decimal_ceil(q: &Rational, digits: usize) -> String {
    decimal_rounded(q, digits, true)
}

fn decimal_rounded(q: &Rational, digits: usize, up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = q.numer() * &scale;
    let n = if up {
        Integer::div_ceil(&scaled, q.denom())
    } else {
        scaled.div_floor(q.denom())
    };
    let negative = n.is_negative();
    let digits_str = n.abs().to_str_radix(10);
    let padded = format!("{:0>width$}", digits_str, width = digits + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - digits);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt_encloses_and_is_exact_on_squares() {
        let s = DyadicInterval::sqrt_of(16, 40);
        assert_eq!(s.lo(), q(4, 1));
        assert_eq!(s.hi(), q(4, 1));
        let s = DyadicInterval::sqrt_of(2, 64);
        // squared-form check: lo² < 2 < hi²
        assert!(s.lo() * s.lo() < q(2, 1));
        assert!(s.hi() * s.hi() > q(2, 1));
        assert!(s.width() <= q(1, 1) / Rational::from_integer(BigInt::one() << 64usize));
    }

    #[test]
    fn pi_is_inside_the_coarse_bracket_and_tight() {
        for p in [16, 32, 64, 128, 256, 1024] {
            let pi = DyadicInterval::pi(p);
            assert!(pi.lo() >= q(3, 1) && pi.hi() <= q(4, 1));
        }
        let pi = DyadicInterval::pi(200);
        // 3.14159265358979323846264338327950288419716939937510...
        let lo = Rational::new(
            "314159265358979323846264338327950288419716939937510".parse().unwrap(),
            BigInt::from(10u32).pow(50),
        );
        let hi = &lo + q(1, 1) / Rational::from_integer(BigInt::from(10u32).pow(50));
        assert!(pi.lo() <= hi && pi.hi() >= lo);
        assert!(pi.width() < q(1, 1) / Rational::from_integer(BigInt::from(10u32).pow(55)));
    }

    #[test]
    fn arithmetic_encloses_exact_results() {
        let a = DyadicInterval::from_rational(&q(1, 3), 30);
        let b = DyadicInterval::from_rational(&q(-2, 7), 30);
        assert!(a.add(&b).contains(&q(1, 21)));
        assert!(a.sub(&b).contains(&q(13, 21)));
        assert!(a.mul(&b).contains(&q(-2, 21)));
        assert!(a.div(&b).unwrap().contains(&q(-7, 6)));
        assert!(b.div(&a).unwrap().contains(&q(-6, 7)));
        assert!(a.div(&DyadicInterval::from_integer(0, 30)).is_none());
        assert!(a.scale_by_integer(-3).contains(&q(-1, 1)));
        assert!(a.shr(3).contains(&q(1, 24)));
    }

    #[test]
    fn precision_changes() {
        let a = DyadicInterval::from_rational(&q(1, 3), 40);
        let coarse = a.with_precision(10);
        assert!(coarse.contains(&q(1, 3)));
        assert!(coarse.width() >= a.width());
        let fine = coarse.with_precision(50);
        assert_eq!(fine.lo(), coarse.lo());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_floor(&q(78, 55), 4), "1.4181");
        assert_eq!(decimal_ceil(&q(78, 55), 4), "1.4182");
        assert_eq!(decimal_floor(&q(-1, 3), 2), "-0.34");
        assert_eq!(decimal_ceil(&q(5, 1), 0), "5");
        assert_eq!(decimal_floor(&q(1, 20), 3), "0.050");
    }
}
