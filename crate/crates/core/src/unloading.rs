//! Unloading: repairing violated proximity inequalities.
//!
//! When a system cuts `Ẽ_j` negatively (`ρ_j < 0`), `Ẽ_j` is a fixed part of
//! the linear system and can be subtracted: subtracting `n·Ẽ_j` raises `m_j`
//! by `n` and lowers every `m_q` with `p_q` proximate to `p_j` by `n`. Each
//! subtraction raises `ρ_j` by `n(1 + τ_j)`. Repeating until no excess is
//! negative yields the unloaded (consistent) system, which does not depend
//! on the order of the steps.

use serde::{Deserialize, Serialize};

use crate::cluster::{MultiplicitySystem, ProximityMatrix};
use crate::error::{domain, Error, Result};

/// Default bound on the number of steps before unloading gives up.
pub const DEFAULT_STEP_CAP: usize = 1_000_000;

/// Order in which negative excesses are repaired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Minimal tame step at the lowest-indexed negative excess.
    #[default]
    LowestIndex,
    /// Minimal tame step at the highest-indexed negative excess.
    HighestIndex,
    /// Single `Ẽ_j` at the lowest-indexed negative excess.
    UnitSteps,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Self::LowestIndex, Self::HighestIndex, Self::UnitSteps];
}

/// One subtraction of `amount · Ẽ_point`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnloadingStep {
    /// 1-based point index.
    pub point: usize,
    pub amount: i64,
    pub excess_before: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnloadingReport {
    pub initial: MultiplicitySystem,
    #[serde(rename = "final")]
    pub final_system: MultiplicitySystem,
    pub steps: Vec<UnloadingStep>,
}

impl UnloadingReport {
    /// Re-applies the recorded steps to `initial`.
    pub fn replay(&self, cluster: &ProximityMatrix) -> Result<MultiplicitySystem> {
        let mut m = self.initial.clone();
        for step in &self.steps {
            apply(cluster, &mut m, step.point - 1, step.amount);
        }
        Ok(m)
    }

    pub fn is_trivial(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization")
    }
}

fn apply(cluster: &ProximityMatrix, m: &mut MultiplicitySystem, q: usize, amount: i64) {
    let entries = m.entries_mut();
    entries[q] += amount;
    for &j in cluster.points_proximate_to(q) {
        entries[j] -= amount;
    }
}

fn step_at(
    cluster: &ProximityMatrix,
    m: &mut MultiplicitySystem,
    q: usize,
    unit: bool,
) -> UnloadingStep {
    let excess = cluster.excess_at(m, q);
    debug_assert!(excess < 0);
    let self_intersection = 1 + cluster.points_proximate_to(q).len() as i64;
    let amount = if unit {
        1
    } else {
        // ceil(-excess / (1 + τ))
        (-excess + self_intersection - 1) / self_intersection
    };
    apply(cluster, m, q, amount);
    UnloadingStep {
        point: q + 1,
        amount,
        excess_before: excess,
    }
}

/// Subtracts the least multiple of `Ẽ_j` (1-based `j`) that makes `ρ_j`
/// nonnegative: `n = ⌈-ρ_j / (1 + τ_j)⌉`.
pub fn unload_step(
    cluster: &ProximityMatrix,
    m: &MultiplicitySystem,
    j: usize,
) -> Result<(MultiplicitySystem, UnloadingStep)> {
    let excesses = cluster.excesses(m)?;
    cluster.check_point(j)?;
    let excess = excesses.entries()[j - 1];
    if excess >= 0 {
        return Err(Error::Precondition(format!(
            "excess at point {j} is {excess}, unloading needs a negative excess"
        )));
    }
    let mut next = m.clone();
    let step = step_at(cluster, &mut next, j - 1, false);
    Ok((next, step))
}

/// Unloads `m` on `cluster` with the default step cap.
pub fn unload(
    cluster: &ProximityMatrix,
    m: &MultiplicitySystem,
    strategy: Strategy,
) -> Result<(MultiplicitySystem, UnloadingReport)> {
    unload_with_cap(cluster, m, strategy, DEFAULT_STEP_CAP)
}

pub fn unload_with_cap(
    cluster: &ProximityMatrix,
    m: &MultiplicitySystem,
    strategy: Strategy,
    cap: usize,
) -> Result<(MultiplicitySystem, UnloadingReport)> {
    if m.len() != cluster.len() {
        return Err(domain(format!(
            "multiplicity system has length {} but the cluster has {} points",
            m.len(),
            cluster.len()
        )));
    }
    let mut current = m.clone();
    let mut steps = Vec::new();
    loop {
        let excesses = cluster.excesses(&current)?;
        let pivot = match strategy {
            Strategy::LowestIndex | Strategy::UnitSteps => excesses.first_negative(),
            Strategy::HighestIndex => excesses.last_negative(),
        };
        let Some(q) = pivot else { break };
        if steps.len() >= cap {
            return Err(Error::NonTermination { cap });
        }
        steps.push(step_at(
            cluster,
            &mut current,
            q,
            strategy == Strategy::UnitSteps,
        ));
    }
    let report = UnloadingReport {
        initial: m.clone(),
        final_system: current.clone(),
        steps,
    };
    Ok((current, report))
}
