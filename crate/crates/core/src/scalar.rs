//! Scalar abstraction for the closed-form rational expressions.

use num_traits::{FromPrimitive, Num};

/// A field-like number the analytic products can be evaluated in.
///
/// Implemented for `f32`, `f64` and [`crate::Rational`]; only the latter is
/// used for certified comparisons.
pub trait Scalar: Num + Clone + PartialOrd + FromPrimitive + std::fmt::Debug {
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable in scalar")
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }
}

impl<T> Scalar for T where T: Num + Clone + PartialOrd + FromPrimitive + std::fmt::Debug {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn ratio_in_each_scalar() {
        assert_eq!(f64::from_ratio(13, 20), 0.65);
        assert_eq!(f32::from_ratio(1, 4), 0.25);
        assert_eq!(
            Rational::from_ratio(169, 25),
            Rational::new(169.into(), 25.into())
        );
    }
}
