use std::ops::RangeInclusive;

use nagata_core::analytic::{lemma_product_bound, s0_for, theorem_hypothesis};
use nagata_core::oracle::{alpha_oracle_with, OracleOptions};
use nagata_core::specialization::nagata_certified;
use nagata_core::{MultiplicitySystem, Rational};
use rayon::prelude::*;
use serde::Serialize;

use crate::input::normalize;
use crate::output::Table;
use crate::CliError;

pub const DEFAULT_INSTANCE_CAP: u64 = 1_000_000;

/// Leading multiplicity of a quasi-homogeneous instance: `μ = factor·ν + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuFactor {
    /// Use `s0` of the instance's `r`.
    S0,
    Fixed(i64),
}

#[derive(Debug, Clone)]
pub enum Family {
    QuasiHomogeneous {
        r: RangeInclusive<u64>,
        nu: RangeInclusive<u64>,
        factor: MuFactor,
        offset: RangeInclusive<i64>,
    },
    Explicit(Vec<MultiplicitySystem>),
}

#[derive(Debug, Clone)]
pub struct ScanSpec {
    pub family: Family,
    pub cap: u64,
    pub oracle: Option<OracleOptions>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub r: usize,
    pub mu: Option<i64>,
    pub nu: Option<i64>,
    pub m: Vec<i64>,
    pub sum: i64,
    pub bound: i64,
    pub certified: bool,
    pub comparison: String,
    pub s0: Option<u64>,
    pub hypothesis: Option<bool>,
    pub lemma_bound: Option<String>,
    pub lemma_decimal: Option<String>,
    pub alpha_hat: Option<u32>,
}

pub const COLUMNS: [&str; 12] = [
    "r", "mu", "nu", "m", "sum", "bound", "certified", "s0", "hypothesis", "lemma_bound",
    "lemma_decimal", "alpha_hat",
];

struct Instance {
    mu: Option<i64>,
    nu: Option<i64>,
    m: MultiplicitySystem,
}

fn span<T: Copy + Into<i128>>(r: &RangeInclusive<T>) -> u64 {
    let (lo, hi): (i128, i128) = ((*r.start()).into(), (*r.end()).into());
    (hi - lo + 1).max(0) as u64
}

impl ScanSpec {
    pub fn instance_count(&self) -> u64 {
        match &self.family {
            Family::QuasiHomogeneous { r, nu, offset, .. } => span(r)
                .saturating_mul(span(nu))
                .saturating_mul(span(offset)),
            Family::Explicit(list) => list.len() as u64,
        }
    }

    fn instances(&self) -> Result<Vec<Instance>, CliError> {
        match &self.family {
            Family::Explicit(list) => Ok(list
                .iter()
                .map(|m| Instance { mu: None, nu: None, m: m.clone() })
                .collect()),
            Family::QuasiHomogeneous { r, nu, factor, offset } => {
                let mut out = Vec::new();
                for r in r.clone() {
                    if r < 2 {
                        return Err(CliError::Input(format!("quasi-homogeneous scans need r >= 2, got {r}")));
                    }
                    let f = match factor {
                        MuFactor::S0 => s0_for(r)? as i64,
                        MuFactor::Fixed(f) => *f,
                    };
                    for nu in nu.clone() {
                        for t in offset.clone() {
                            let mu = f * nu as i64 + t;
                            if mu < 0 {
                                return Err(CliError::Input(format!(
                                    "mu = {f}*{nu} + {t} is negative"
                                )));
                            }
                            out.push(Instance {
                                mu: Some(mu),
                                nu: Some(nu as i64),
                                m: MultiplicitySystem::quasi_homogeneous(mu, nu as i64, r as usize),
                            });
                        }
                    }
                }
                Ok(out)
            }
        }
    }
}

fn evaluate(inst: Instance, oracle: Option<OracleOptions>) -> Result<ScanRow, CliError> {
    let (m, _) = normalize(&inst.m)?;
    let cert = nagata_certified(&m)?;
    let r = m.len();
    let s0 = if r >= 2 { Some(s0_for(r as u64)?) } else { None };
    let (hypothesis, lemma_bound, lemma_decimal) = match s0 {
        Some(s) if r > 9 && (s as usize) < r => {
            let s = s as usize;
            let exact: Rational = lemma_product_bound(&m, s)?;
            let approx: f64 = lemma_product_bound(&m, s)?;
            (
                Some(theorem_hypothesis(&m, s)?),
                Some(exact.to_string()),
                Some(format!("{approx:.6}")),
            )
        }
        _ => (None, None, None),
    };
    let alpha_hat = match oracle {
        Some(opts) => Some(alpha_oracle_with(&m, opts)?.alpha_hat),
        None => None,
    };
    Ok(ScanRow {
        r,
        mu: inst.mu,
        nu: inst.nu,
        sum: cert.sum,
        bound: cert.bound,
        certified: cert.certified,
        comparison: cert.comparison,
        m: m.into_inner(),
        s0,
        hypothesis,
        lemma_bound,
        lemma_decimal,
        alpha_hat,
    })
}

/// Evaluates every instance in parallel; rows come back sorted by
/// `(r, nu, mu, m)` regardless of scheduling.
pub fn run(spec: &ScanSpec) -> Result<Vec<ScanRow>, CliError> {
    let count = spec.instance_count();
    if count == 0 {
        return Err(CliError::Input("scan has no instances".into()));
    }
    if count > spec.cap {
        return Err(CliError::Cap(format!(
            "scan has {count} instances, above the cap of {}; raise it with --cap",
            spec.cap
        )));
    }
    let mut rows = spec
        .instances()?
        .into_par_iter()
        .map(|inst| evaluate(inst, spec.oracle))
        .collect::<Result<Vec<_>, _>>()?;
    rows.sort_by(|a, b| (a.r, a.nu, a.mu, &a.m).cmp(&(b.r, b.nu, b.mu, &b.m)));
    Ok(rows)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

pub fn table(rows: &[ScanRow]) -> Table {
    let mut t = Table::new(COLUMNS.to_vec());
    for row in rows {
        t.push(vec![
            row.r.to_string(),
            opt(&row.mu),
            opt(&row.nu),
            MultiplicitySystem::from(row.m.clone()).to_string(),
            row.sum.to_string(),
            row.bound.to_string(),
            row.certified.to_string(),
            opt(&row.s0),
            opt(&row.hypothesis),
            opt(&row.lemma_bound),
            opt(&row.lemma_decimal),
            opt(&row.alpha_hat),
        ]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quasi(r: RangeInclusive<u64>, nu: RangeInclusive<u64>, factor: MuFactor) -> ScanSpec {
        ScanSpec {
            family: Family::QuasiHomogeneous { r, nu, factor, offset: 0..=0 },
            cap: DEFAULT_INSTANCE_CAP,
            oracle: None,
        }
    }

    #[test]
    fn rows_are_sorted_and_certified_at_three_nu() {
        let rows = run(&quasi(10..=15, 1..=3, MuFactor::Fixed(3))).unwrap();
        assert_eq!(rows.len(), 18);
        assert!(rows.windows(2).all(|w| (w[0].r, w[0].nu) < (w[1].r, w[1].nu)));
        assert!(rows.iter().all(|row| row.certified && row.hypothesis == Some(true)));
        assert_eq!(rows[0].m, vec![3, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn cap_is_enforced() {
        let mut spec = quasi(10..=20, 1..=10, MuFactor::S0);
        spec.cap = 50;
        assert!(matches!(run(&spec), Err(CliError::Cap(_))));
    }

    #[test]
    fn explicit_lists_are_normalized() {
        let spec = ScanSpec {
            family: Family::Explicit(vec![[1, 1, 1, 1, 2].into(), [1, 1, 1].into()]),
            cap: 10,
            oracle: Some(OracleOptions::default()),
        };
        let rows = run(&spec).unwrap();
        assert_eq!(rows[0].m, vec![1, 1, 1]);
        assert_eq!(rows[1].m, vec![2, 1, 1, 1, 1]);
        assert_eq!(rows[1].bound, 3);
        assert_eq!(rows[1].alpha_hat, Some(3));
    }
}
