//! Stepwise specialization through the chain families `U_3, …, U_r`.
//!
//! A curve of degree `d` through `r` general points with multiplicities `m`
//! specializes to curves through clusters of the families `U_3`, then `U_4`,
//! and so on up to `U_r`, carrying the unloaded system along. The first
//! multiplicity of the final system is a multiplicity of an actual point of
//! the specialized curve, so it bounds `d` from below.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::cluster::{MultiplicitySystem, ProximityMatrix};
use crate::error::{domain, Result};
use crate::unloading::{unload, Strategy, UnloadingReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    /// Index `i` of the family `U_i`.
    pub family: usize,
    /// Proximity relations of the chain cluster, 1-based pairs.
    pub cluster: Vec<(usize, usize)>,
    pub report: UnloadingReport,
    pub system_after: MultiplicitySystem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecializationTrace {
    pub input: MultiplicitySystem,
    pub stages: Vec<Stage>,
    pub bound: i64,
}

impl SpecializationTrace {
    /// The system `m^(i)`; `m^(i) = m` for `i ≤ 2`.
    pub fn system_at(&self, family: usize) -> Option<&MultiplicitySystem> {
        if family <= 2 {
            return Some(&self.input);
        }
        self.stages
            .iter()
            .find(|s| s.family == family)
            .map(|s| &s.system_after)
    }

    /// Total unloading steps over the stages `U_3, …, U_last`.
    pub fn steps_through(&self, last: usize) -> usize {
        self.stages
            .iter()
            .filter(|s| s.family <= last)
            .map(|s| s.report.steps.len())
            .sum()
    }
}

fn check_normalized(m: &MultiplicitySystem) -> Result<()> {
    if m.is_empty() {
        return Err(domain("multiplicity system must have at least one entry"));
    }
    if !m.is_nonnegative() {
        return Err(domain(format!("multiplicities must be nonnegative, got {m}")));
    }
    if !m.is_nonincreasing() {
        return Err(domain(format!(
            "multiplicities must be sorted nonincreasing, got {m}"
        )));
    }
    Ok(())
}

/// Runs the specialization `K → K_3 → … → K_r` with unloading at each step.
pub fn specialize(m: &MultiplicitySystem) -> Result<SpecializationTrace> {
    check_normalized(m)?;
    let r = m.len();
    let mut current = m.clone();
    let mut stages = Vec::with_capacity(r.saturating_sub(2));
    for i in 3..=r {
        let cluster = ProximityMatrix::chain(r, i)?;
        let (next, report) = unload(&cluster, &current, Strategy::LowestIndex)?;
        stages.push(Stage {
            family: i,
            cluster: cluster.relations(),
            report,
            system_after: next.clone(),
        });
        current = next;
    }
    Ok(SpecializationTrace {
        input: m.clone(),
        stages,
        bound: current[0],
    })
}

/// `m_1^(r)`, a lower bound for `α(m)`.
pub fn alpha_lower_bound(m: &MultiplicitySystem) -> Result<i64> {
    Ok(specialize(m)?.bound)
}

/// Decides `a > s / √r` exactly as `r·a² > s²`.
pub fn exceeds_sqrt_ratio(a: u64, s: u64, r: u64) -> bool {
    let a = BigUint::from(a);
    let s = BigUint::from(s);
    BigUint::from(r) * &a * &a > &s * &s
}

/// Outcome of checking `α(m) > Σ m_i / √r` through the computed bound.
///
/// `certified = false` only means the bound was too weak to decide.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NagataCertificate {
    pub bound: i64,
    pub sum: i64,
    pub r: usize,
    pub certified: bool,
    /// The integer comparison actually evaluated, e.g. `5*3^2 = 45 > 36 = 6^2`.
    pub comparison: String,
}

pub fn nagata_certified(m: &MultiplicitySystem) -> Result<NagataCertificate> {
    let bound = alpha_lower_bound(m)?;
    Ok(certificate_for(bound, m))
}

pub(crate) fn certificate_for(bound: i64, m: &MultiplicitySystem) -> NagataCertificate {
    let sum = m.sum();
    let r = m.len();
    let certified = exceeds_sqrt_ratio(bound as u64, sum as u64, r as u64);
    let lhs = BigUint::from(r) * BigUint::from(bound as u64).pow(2);
    let rhs = BigUint::from(sum as u64).pow(2);
    let rel = if certified {
        ">"
    } else if lhs == rhs {
        "="
    } else {
        "<"
    };
    NagataCertificate {
        bound,
        sum,
        r,
        certified,
        comparison: format!("{r}*{bound}^2 = {lhs} {rel} {rhs} = {sum}^2"),
    }
}

impl SpecializationTrace {
    pub fn certificate(&self) -> NagataCertificate {
        certificate_for(self.bound, &self.input)
    }
}
