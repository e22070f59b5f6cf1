//! Certified lower bounds for `α(m)`, the least degree of a plane curve
//! having multiplicity at least `m_i` at each of `r` general points.
//!
//! The crate is organised bottom-up:
//!
//! * [`cluster`] holds proximity structures of clusters of infinitely near
//!   points and the excess (proximity inequality) computation.
//! * [`unloading`] repairs inconsistent multiplicity systems.
//! * [`specialization`] walks the chain of cluster families, unloading at
//!   each step, and reads off a lower bound for `α(m)` together with a
//!   certificate for the inequality `α(m) > Σ m_i / √r`.
//! * [`analytic`] checks the analytic estimates behind the quasi-homogeneity
//!   threshold with exact rationals and dyadic interval enclosures.
//! * [`oracle`] computes `α(m)` independently by interpolation at random
//!   points over a prime field.
//!
//! Expressions that make sense over any field are generic over the scalar
//! ([`scalar::Scalar`] for the analytic products, [`oracle::Field`] for the
//! linear algebra). The aliases below fix the scalars used by default.

pub mod analytic;
pub mod cluster;
pub mod error;
pub mod oracle;
pub mod scalar;
pub mod specialization;
pub mod unloading;

pub use analytic::{CertifiedBool, ChainReport, DyadicInterval};
pub use cluster::{ExcessVector, MultiplicitySystem, ProximityMatrix};
pub use error::{Error, Result};
pub use oracle::{OracleResult, PointConfig};
pub use specialization::{NagataCertificate, SpecializationTrace};
pub use unloading::{Strategy, UnloadingReport, UnloadingStep};

/// Exact rational numbers used by every certified comparison.
pub type Rational = num_rational::BigRational;

/// Arbitrary precision integers.
pub type Integer = num_bigint::BigInt;

/// Elements of the default prime field `F_p`, `p = 2^31 - 1`.
pub type Fp = oracle::ModP;

/// Floating point evaluation of the analytic expressions, used only for
/// human-readable renderings.
pub type Approx = f64;
