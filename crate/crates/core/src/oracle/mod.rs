//! Brute-force computation of `α(m)` by interpolation at random points.
//!
//! A form of degree `d` has multiplicity at least `m` at `(u, v)` iff every
//! coefficient of degree `< m` of `f(x + u, y + v)` vanishes. These are
//! linear conditions on the `(d+1)(d+2)/2` coefficients of `f`; the kernel
//! of the condition matrix is the space of curves through the fat points.
//!
//! Special positions can only enlarge the kernel, so an empty system at
//! any sampled configuration proves the system is empty at general points.
//! Points are affine in the chart `z = 1`, so the line at infinity avoids
//! all of them.

mod field;
mod matrix;

pub use field::{is_prime, Field, ModP, DEFAULT_PRIME};
pub use matrix::{condition_matrix, monomials, Matrix};

use std::collections::BTreeMap;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cluster::MultiplicitySystem;
use crate::error::{domain, Error, Result};

/// Default number of independent configurations per degree.
pub const DEFAULT_TRIALS: u32 = 3;

/// `r` pairwise distinct affine points over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfig {
    pub prime: u64,
    pub points: Vec<(u64, u64)>,
    pub seed: u64,
}

impl PointConfig {
    /// Uniform random points, resampling collisions.
    pub fn random(r: usize, prime: u64, seed: u64) -> Result<Self> {
        if !is_prime(prime) {
            return Err(domain(format!("{prime} is not prime")));
        }
        if (r as u128) > (prime as u128) * (prime as u128) {
            return Err(domain(format!("F_{prime}^2 has fewer than {r} points")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points: Vec<(u64, u64)> = Vec::with_capacity(r);
        while points.len() < r {
            let p = (rng.gen_range(0..prime), rng.gen_range(0..prime));
            if !points.contains(&p) {
                points.push(p);
            }
        }
        Ok(Self {
            prime,
            points,
            seed,
        })
    }

    /// Explicit points; they must be distinct and reduced mod `prime`.
    pub fn from_points(prime: u64, points: Vec<(u64, u64)>) -> Result<Self> {
        if !is_prime(prime) {
            return Err(domain(format!("{prime} is not prime")));
        }
        for (k, p) in points.iter().enumerate() {
            if p.0 >= prime || p.1 >= prime {
                return Err(domain(format!("point {p:?} not reduced mod {prime}")));
            }
            if points[..k].contains(p) {
                return Err(domain(format!("repeated point {p:?}")));
            }
        }
        Ok(Self {
            prime,
            points,
            seed: 0,
        })
    }

    fn field_points(&self) -> Vec<(ModP, ModP)> {
        self.points
            .iter()
            .map(|&(u, v)| (ModP::new(u, self.prime), ModP::new(v, self.prime)))
            .collect()
    }
}

fn check_inputs(d: u32, m: &MultiplicitySystem, config: &PointConfig) -> Result<()> {
    if config.prime <= d as u64 {
        return Err(domain(format!(
            "prime {} must exceed the degree {d}",
            config.prime
        )));
    }
    if !m.is_nonnegative() {
        return Err(domain(format!("multiplicities must be nonnegative, got {m}")));
    }
    if m.len() != config.points.len() {
        return Err(domain(format!(
            "{} multiplicities for {} points",
            m.len(),
            config.points.len()
        )));
    }
    Ok(())
}

/// Condition matrix of degree-`d` forms with multiplicity `≥ m_i` at the
/// configured points: `(d+1)(d+2)/2` columns, `Σ m_i(m_i+1)/2` rows.
pub fn fatpoint_matrix(
    d: u32,
    m: &MultiplicitySystem,
    config: &PointConfig,
) -> Result<Matrix<ModP>> {
    check_inputs(d, m, config)?;
    let mults: Vec<u32> = m.entries().iter().map(|&v| v as u32).collect();
    Ok(condition_matrix(
        d,
        &mults,
        &config.field_points(),
        &ModP::new(0, config.prime),
    ))
}

/// Dimension of the space of degree-`d` forms through the fat points.
pub fn interpolation_dimension(
    d: u32,
    m: &MultiplicitySystem,
    config: &PointConfig,
) -> Result<usize> {
    Ok(fatpoint_matrix(d, m, config)?.kernel_dimension())
}

/// `max(0, (d+1)(d+2)/2 - Σ m_i(m_i+1)/2)`, the dimension expected when all
/// conditions are independent.
pub fn expected_dimension(d: u32, m: &MultiplicitySystem) -> usize {
    let d = d as i128;
    let columns = (d + 1) * (d + 2) / 2;
    let conditions: i128 = m
        .entries()
        .iter()
        .map(|&v| {
            let v = v.max(0) as i128;
            v * (v + 1) / 2
        })
        .sum();
    (columns - conditions).max(0) as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    pub prime: u64,
    pub trials: u32,
    pub seed: u64,
    /// Highest degree scanned; `None` means `Σ m_i`.
    pub d_max: Option<u32>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            prime: DEFAULT_PRIME,
            trials: DEFAULT_TRIALS,
            seed: 0,
            d_max: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub alpha_hat: u32,
    /// Always true: every degree below `alpha_hat` was empty for some
    /// configuration, hence empty at general points.
    pub certified_lower: bool,
    /// `α(m) = alpha_hat` holds unless every trial at `alpha_hat` was
    /// degenerate; this direction is probabilistic only.
    pub exactness: String,
    /// Smallest dimension seen over the trials, per degree.
    pub dims: BTreeMap<u32, usize>,
    /// Dimension per degree for each trial.
    pub trial_dims: Vec<Vec<usize>>,
    pub prime: u64,
    pub trials: u32,
    pub seed: u64,
}

impl OracleResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("oracle result serialization")
    }
}

/// Per-trial configurations derived deterministically from the master seed.
pub fn trial_configs(r: usize, prime: u64, trials: u32, seed: u64) -> Result<Vec<PointConfig>> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| PointConfig::random(r, prime, master.next_u64()))
        .collect()
}

pub fn alpha_oracle(m: &MultiplicitySystem, prime: u64, trials: u32, seed: u64) -> Result<OracleResult> {
    alpha_oracle_with(
        m,
        OracleOptions {
            prime,
            trials,
            seed,
            d_max: None,
        },
    )
}

/// Scans `d = 0, 1, …` and returns the first degree at which every trial
/// has a nonzero kernel.
pub fn alpha_oracle_with(m: &MultiplicitySystem, options: OracleOptions) -> Result<OracleResult> {
    if options.trials == 0 {
        return Err(domain("at least one trial is needed"));
    }
    if !m.is_nonnegative() {
        return Err(domain(format!("multiplicities must be nonnegative, got {m}")));
    }
    let d_max = options.d_max.unwrap_or_else(|| m.sum().max(0) as u32);
    let configs = trial_configs(m.len(), options.prime, options.trials, options.seed)?;
    let mut dims = BTreeMap::new();
    let mut trial_dims = vec![Vec::new(); configs.len()];
    let mut minima = Vec::new();
    for d in 0..=d_max {
        let mut all_nonzero = true;
        let mut min = usize::MAX;
        for (config, record) in configs.iter().zip(trial_dims.iter_mut()) {
            let dim = interpolation_dimension(d, m, config)?;
            record.push(dim);
            min = min.min(dim);
            all_nonzero &= dim > 0;
        }
        dims.insert(d, min);
        minima.push(min);
        if all_nonzero {
            return Ok(OracleResult {
                alpha_hat: d,
                certified_lower: true,
                exactness: "probabilistic".into(),
                dims,
                trial_dims,
                prime: options.prime,
                trials: options.trials,
                seed: options.seed,
            });
        }
    }
    Err(Error::Inconclusive {
        d_max,
        dims: minima,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[i64]) -> MultiplicitySystem {
        MultiplicitySystem::from(v)
    }

    fn config(r: usize, seed: u64) -> PointConfig {
        PointConfig::random(r, DEFAULT_PRIME, seed).unwrap()
    }

    #[test]
    fn matrix_shapes() {
        let a = fatpoint_matrix(1, &m(&[1, 1]), &config(2, 1)).unwrap();
        assert_eq!((a.rows(), a.cols()), (2, 3));
        let a = fatpoint_matrix(3, &m(&[2, 1, 1, 1, 1]), &config(5, 1)).unwrap();
        assert_eq!((a.rows(), a.cols()), (7, 10));
        let a = fatpoint_matrix(3, &m(&[1; 10]), &config(10, 1)).unwrap();
        assert_eq!((a.rows(), a.cols()), (10, 10));
    }

    #[test]
    fn small_prime_rejected() {
        let c = PointConfig::from_points(5, vec![(0, 0), (1, 2)]).unwrap();
        assert!(fatpoint_matrix(5, &m(&[1, 1]), &c).is_err());
        assert!(fatpoint_matrix(4, &m(&[1, 1]), &c).is_ok());
        assert!(PointConfig::random(3, 10, 0).is_err());
        assert!(fatpoint_matrix(2, &m(&[1, -1]), &c).is_err());
    }

    #[test]
    fn classical_dimensions() {
        assert_eq!(interpolation_dimension(2, &m(&[1; 5]), &config(5, 7)).unwrap(), 1);
        assert_eq!(interpolation_dimension(3, &m(&[1; 10]), &config(10, 7)).unwrap(), 0);
        assert_eq!(interpolation_dimension(1, &m(&[1, 1]), &config(2, 7)).unwrap(), 1);
        // the double line through two points is the only conic singular at both
        assert_eq!(interpolation_dimension(2, &m(&[2, 2]), &config(2, 7)).unwrap(), 1);
    }

    #[test]
    fn special_position_enlarges_kernel() {
        // three collinear points lie on a line
        let c = PointConfig::from_points(DEFAULT_PRIME, vec![(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(interpolation_dimension(1, &m(&[1, 1, 1]), &c).unwrap(), 1);
        assert_eq!(interpolation_dimension(1, &m(&[1, 1, 1]), &config(3, 3)).unwrap(), 0);
    }

    #[test]
    fn oracle_fixtures() {
        let opts = OracleOptions::default();
        assert_eq!(alpha_oracle_with(&m(&[1, 1]), opts).unwrap().alpha_hat, 1);
        assert_eq!(alpha_oracle_with(&m(&[1, 1, 1]), opts).unwrap().alpha_hat, 2);
        assert_eq!(alpha_oracle_with(&m(&[2, 1, 1, 1, 1]), opts).unwrap().alpha_hat, 3);
        assert_eq!(alpha_oracle_with(&m(&[1; 10]), opts).unwrap().alpha_hat, 4);
        assert_eq!(alpha_oracle_with(&m(&[0, 0]), opts).unwrap().alpha_hat, 0);
        assert_eq!(alpha_oracle_with(&m(&[7]), opts).unwrap().alpha_hat, 7);
    }

    #[test]
    fn oracle_records_dims() {
        let res = alpha_oracle(&m(&[2, 1, 1, 1, 1]), DEFAULT_PRIME, 3, 11).unwrap();
        assert!(res.certified_lower);
        assert_eq!(res.dims.len(), 4);
        for d in 0..res.alpha_hat {
            assert_eq!(res.dims[&d], 0);
        }
        assert!(res.dims[&3] > 0);
        for (&d, &dim) in &res.dims {
            assert!(dim >= expected_dimension(d, &m(&[2, 1, 1, 1, 1])));
        }
        assert_eq!(res.trial_dims.len(), 3);
    }

    #[test]
    fn oracle_is_deterministic() {
        let a = alpha_oracle(&m(&[3, 2, 2, 1]), DEFAULT_PRIME, 2, 5).unwrap();
        let b = alpha_oracle(&m(&[3, 2, 2, 1]), DEFAULT_PRIME, 2, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn oracle_inconclusive_below_cap() {
        let err = alpha_oracle_with(
            &m(&[1; 10]),
            OracleOptions {
                d_max: Some(2),
                ..OracleOptions::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::Inconclusive { d_max: 2, ref dims } if dims == &vec![0, 0, 0]));
    }

    #[test]
    fn oracle_rejects_bad_options() {
        assert!(alpha_oracle(&m(&[1, 1]), 15, 1, 0).is_err());
        assert!(alpha_oracle(&m(&[1, 1]), DEFAULT_PRIME, 0, 0).is_err());
        assert!(alpha_oracle(&m(&[1, -1]), DEFAULT_PRIME, 1, 0).is_err());
    }

    #[test]
    fn json_shape() {
        let res = alpha_oracle(&m(&[1, 1]), DEFAULT_PRIME, 1, 0).unwrap();
        let v: serde_json::Value = serde_json::from_str(&res.to_json()).unwrap();
        assert_eq!(v["alpha_hat"], 1);
        assert_eq!(v["dims"]["0"], 0);
        assert_eq!(v["dims"]["1"], 1);
        assert_eq!(v["prime"], DEFAULT_PRIME);
        assert_eq!(v["trials"], 1);
        assert_eq!(v["seed"], 0);
    }
}
