//! Proximity structures of clusters of infinitely near points.
//!
//! Points are numbered `1..=r` in blow-up order. A point `p_j` is proximate
//! to `p_q` (`q < j`) when it lies on the strict transform of the exceptional
//! divisor of `p_q`. The strict exceptional divisors are then
//! `Ẽ_q = E_q - Σ_{j prox q} E_j`, and a multiplicity system `m` has excess
//! `ρ_q = m_q - Σ_{j prox q} m_j` at `p_q`, its intersection with `Ẽ_q`.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Proximity relation of a cluster of `r` points.
///
/// Indices are 1-based at the public surface and in JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProximityMatrix {
    /// `proximate_to[j]`: the (0-based) points that `p_{j+1}` is proximate to, ascending.
    proximate_to: Vec<Vec<usize>>,
    /// `proximate_points[q]`: the (0-based) points proximate to `p_{q+1}`, ascending.
    proximate_points: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct ClusterJson {
    r: usize,
    prox: Vec<[usize; 2]>,
}

impl ProximityMatrix {
    /// Builds a cluster from 1-based pairs `(j, q)` meaning "`p_j` is
    /// proximate to `p_q`".
    ///
    /// Rejects pairs that are out of range or not strictly lower-triangular,
    /// duplicates, points proximate to more than two points, points `p_j`
    /// (`j ≥ 2`) proximate to no earlier point, and satellite points whose two
    /// proximities cannot be realised (if `p_j` is proximate to `p_a` and
    /// `p_b`, `a < b`, then `p_b` must be proximate to `p_a`, and `p_j` is the
    /// only point proximate to both).
    pub fn new(r: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidCluster("a cluster needs at least one point".into()));
        }
        let mut proximate_to = vec![Vec::new(); r];
        for &(j, q) in pairs {
            if j == 0 || q == 0 || j > r || q > r {
                return Err(Error::InvalidCluster(format!(
                    "pair [{j}, {q}] outside 1..={r}"
                )));
            }
            if q >= j {
                return Err(Error::InvalidCluster(format!(
                    "pair [{j}, {q}] is not lower-triangular: a point can only be proximate to an earlier one"
                )));
            }
            let row: &mut Vec<usize> = &mut proximate_to[j - 1];
            if row.contains(&(q - 1)) {
                return Err(Error::InvalidCluster(format!("duplicate pair [{j}, {q}]")));
            }
            row.push(q - 1);
        }
        for (j, row) in proximate_to.iter_mut().enumerate() {
            row.sort_unstable();
            if row.len() > 2 {
                return Err(Error::InvalidCluster(format!(
                    "point {} is proximate to {} points (at most 2 allowed)",
                    j + 1,
                    row.len()
                )));
            }
            if j > 0 && row.is_empty() {
                return Err(Error::InvalidCluster(format!(
                    "point {} is not proximate to any earlier point",
                    j + 1
                )));
            }
        }
        for (j, row) in proximate_to.iter().enumerate() {
            if let [a, b] = row[..] {
                if !proximate_to[b].contains(&a) {
                    return Err(Error::InvalidCluster(format!(
                        "point {} is proximate to {} and {}, but {} is not proximate to {}",
                        j + 1,
                        a + 1,
                        b + 1,
                        b + 1,
                        a + 1
                    )));
                }
                let shared = proximate_to
                    .iter()
                    .filter(|other| other.contains(&a) && other.contains(&b))
                    .count();
                if shared > 1 {
                    return Err(Error::InvalidCluster(format!(
                        "more than one point is proximate to both {} and {}",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        let mut proximate_points = vec![Vec::new(); r];
        for (j, row) in proximate_to.iter().enumerate() {
            for &q in row {
                proximate_points[q].push(j);
            }
        }
        Ok(Self {
            proximate_to,
            proximate_points,
        })
    }

    /// The chain cluster of the family `U_i`: `p_2, …, p_i` proximate to
    /// `p_1`, every `p_j` proximate to `p_{j-1}`, nothing else.
    pub fn chain(r: usize, i: usize) -> Result<Self> {
        if r < 2 {
            return Err(domain(format!("chain cluster needs r >= 2, got {r}")));
        }
        if !(2..=r).contains(&i) {
            return Err(domain(format!("chain cluster index i = {i} outside [2, {r}]")));
        }
        let mut pairs: Vec<(usize, usize)> = (2..=r).map(|j| (j, j - 1)).collect();
        pairs.extend((3..=i).map(|j| (j, 1)));
        Self::new(r, &pairs)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ClusterJson = serde_json::from_str(text)
            .map_err(|e| Error::InvalidCluster(format!("malformed cluster JSON: {e}")))?;
        let pairs: Vec<(usize, usize)> = raw.prox.iter().map(|&[j, q]| (j, q)).collect();
        Self::new(raw.r, &pairs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ClusterJson {
            r: self.len(),
            prox: self.relations().into_iter().map(|(j, q)| [j, q]).collect(),
        })
        .expect("cluster serialization")
    }

    /// Number of points `r`.
    pub fn len(&self) -> usize {
        self.proximate_to.len()
    }

    pub fn is_empty(&self) -> bool {
        self.proximate_to.is_empty()
    }

    /// Whether `p_j` is proximate to `p_q` (1-based).
    pub fn is_proximate(&self, j: usize, q: usize) -> bool {
        j >= 1 && q >= 1 && j <= self.len() && self.proximate_to[j - 1].contains(&(q - 1))
    }

    /// All relations as 1-based `(j, q)` pairs, sorted.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        self.proximate_to
            .iter()
            .enumerate()
            .flat_map(|(j, row)| row.iter().map(move |&q| (j + 1, q + 1)))
            .collect()
    }

    /// `τ_j`, the number of points proximate to `p_j`; `-Ẽ_j² = 1 + τ_j`.
    pub fn proximate_count(&self, j: usize) -> Result<usize> {
        self.check_point(j)?;
        Ok(self.proximate_points[j - 1].len())
    }

    /// 0-based indices of the points proximate to the 0-based point `q`.
    pub(crate) fn points_proximate_to(&self, q: usize) -> &[usize] {
        &self.proximate_points[q]
    }

    pub(crate) fn check_point(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.len() {
            return Err(domain(format!("point index {j} outside 1..={}", self.len())));
        }
        Ok(())
    }

    fn check_length(&self, m: &MultiplicitySystem) -> Result<()> {
        if m.len() != self.len() {
            return Err(domain(format!(
                "multiplicity system has length {} but the cluster has {} points",
                m.len(),
                self.len()
            )));
        }
        Ok(())
    }

    /// Excess at the 0-based point `q`.
    pub(crate) fn excess_at(&self, m: &MultiplicitySystem, q: usize) -> i64 {
        m.0[q] - self.proximate_points[q].iter().map(|&j| m.0[j]).sum::<i64>()
    }

    /// `ρ_j = m_j - Σ_{q prox j} m_q` for every point.
    pub fn excesses(&self, m: &MultiplicitySystem) -> Result<ExcessVector> {
        self.check_length(m)?;
        Ok(ExcessVector(
            (0..self.len()).map(|q| self.excess_at(m, q)).collect(),
        ))
    }

    /// True iff `m` satisfies every proximity inequality.
    pub fn is_consistent(&self, m: &MultiplicitySystem) -> Result<bool> {
        Ok(self.excesses(m)?.is_consistent())
    }
}

impl fmt::Display for ProximityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

/// Virtual multiplicities `(m_1, …, m_r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiplicitySystem(Vec<i64>);

impl MultiplicitySystem {
    pub fn new(entries: Vec<i64>) -> Self {
        Self(entries)
    }

    /// The quasi-homogeneous system `(μ, ν, …, ν)` of length `r`.
    pub fn quasi_homogeneous(mu: i64, nu: i64, r: usize) -> Self {
        let mut entries = vec![nu; r];
        if let Some(first) = entries.first_mut() {
            *first = mu;
        }
        Self(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&v| v >= 0)
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }
}

impl From<Vec<i64>> for MultiplicitySystem {
    fn from(entries: Vec<i64>) -> Self {
        Self(entries)
    }
}

impl From<&[i64]> for MultiplicitySystem {
    fn from(entries: &[i64]) -> Self {
        Self(entries.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for MultiplicitySystem {
    fn from(entries: [i64; N]) -> Self {
        Self(entries.to_vec())
    }
}

/// 0-based indexing.
impl Index<usize> for MultiplicitySystem {
    type Output = i64;

    fn index(&self, idx: usize) -> &i64 {
        &self.0[idx]
    }
}

impl fmt::Display for MultiplicitySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Excesses `ρ_j` of a system against a cluster.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExcessVector(Vec<i64>);

impl ExcessVector {
    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_consistent(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// 0-based index of the first negative excess.
    pub fn first_negative(&self) -> Option<usize> {
        self.0.iter().position(|&e| e < 0)
    }

    /// 0-based index of the last negative excess.
    pub fn last_negative(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e < 0)
    }
}
