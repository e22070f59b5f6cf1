//! Fields for the interpolation matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::Rational;

/// Default modulus, the Mersenne prime `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Minimal field interface for Gaussian elimination.
///
/// Elements carry whatever context they need (the modulus, for `F_p`), so
/// constants are produced from an existing element.
pub trait Field:
    Clone + PartialEq + fmt::Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
    /// The integer `n` in the field of `self`.
    fn embed(&self, n: u64) -> Self;

    fn is_zero(&self) -> bool;

    fn inv(&self) -> Option<Self>;
}

/// Element of `Z/pZ` with a runtime modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModP {
    value: u64,
    modulus: u64,
}

impl ModP {
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Self {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = self.embed(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for ModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl Add for ModP {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        Self {
            value: s as u64,
            modulus: self.modulus,
        }
    }
}

impl Sub for ModP {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ModP {
    type Output = Self;

    fn neg(self) -> Self {
        let value = if self.value == 0 {
            0
        } else {
            self.modulus - self.value
        };
        Self {
            value,
            modulus: self.modulus,
        }
    }
}

impl Mul for ModP {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let p = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Self {
            value: p as u64,
            modulus: self.modulus,
        }
    }
}

impl Field for ModP {
    fn embed(&self, n: u64) -> Self {
        Self::new(n, self.modulus)
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn inv(&self) -> Option<Self> {
        // extended Euclid on (value, modulus)
        let (mut old_r, mut r) = (self.value as i128, self.modulus as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        if old_r != 1 {
            return None;
        }
        let m = self.modulus as i128;
        Some(Self {
            value: old_s.rem_euclid(m) as u64,
            modulus: self.modulus,
        })
    }
}

impl Field for Rational {
    fn embed(&self, n: u64) -> Self {
        Rational::from_integer(n.into())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| Rational::one() / self)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut twos = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        twos += 1;
    }
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..twos {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_arithmetic() {
        let p = 7;
        let a = ModP::new(5, p);
        let b = ModP::new(4, p);
        assert_eq!((a + b).value(), 2);
        assert_eq!((a - b).value(), 1);
        assert_eq!((b - a).value(), 6);
        assert_eq!((a * b).value(), 6);
        assert_eq!((a * a.inv().unwrap()).value(), 1);
        assert!(ModP::new(0, p).inv().is_none());
        assert_eq!(ModP::new(3, p).pow(6).value(), 1);
    }

    #[test]
    fn inverse_in_default_field() {
        for v in [1u64, 2, 12345, DEFAULT_PRIME - 1] {
            let a = ModP::new(v, DEFAULT_PRIME);
            assert_eq!((a * a.inv().unwrap()).value(), 1);
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(is_prime(2));
        assert!(is_prime(1_000_000_007));
        assert!(is_prime(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime(1));
        assert!(!is_prime(561));
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(DEFAULT_PRIME * 3));
    }
}
