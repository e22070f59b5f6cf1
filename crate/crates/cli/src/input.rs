use std::ops::RangeInclusive;

use nagata_core::MultiplicitySystem;

use crate::CliError;

/// Parses `1,1,1`, `1 1 1`, `(1,1,1)` or `[1, 1, 1]`.
pub fn multiplicities(text: &str) -> Result<MultiplicitySystem, CliError> {
    let inner = text.trim().trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'));
    let entries = inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| CliError::Input(format!("not an integer multiplicity: {t:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if entries.is_empty() {
        return Err(CliError::Input("empty multiplicity list".into()));
    }
    Ok(entries.into())
}

/// Parses `a..b` or `a..=b` (both inclusive) or a single value `a`.
pub fn range(text: &str) -> Result<RangeInclusive<i64>, CliError> {
    let bad = || CliError::Input(format!("malformed range {text:?}, expected a..b"));
    let text = text.trim();
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo.trim(), hi.trim().trim_start_matches('=').trim()),
        None => (text, text),
    };
    let lo: i64 = lo.parse().map_err(|_| bad())?;
    let hi: i64 = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(CliError::Input(format!("empty range {text:?}")));
    }
    Ok(lo..=hi)
}

pub fn nonnegative_range(text: &str, what: &str) -> Result<RangeInclusive<u64>, CliError> {
    let r = range(text)?;
    if *r.start() < 0 {
        return Err(CliError::Input(format!("{what} must be nonnegative, got {text:?}")));
    }
    Ok(*r.start() as u64..=*r.end() as u64)
}

/// Sorts nonincreasing (stable). `permutation[i]` is the 1-based input
/// position of the `i`-th sorted entry.
pub fn normalize(m: &MultiplicitySystem) -> Result<(MultiplicitySystem, Vec<usize>), CliError> {
    if !m.is_nonnegative() {
        return Err(CliError::Input(format!("multiplicities must be nonnegative, got {m}")));
    }
    let mut order: Vec<usize> = (0..m.len()).collect();
    order.sort_by(|&a, &b| m[b].cmp(&m[a]));
    let sorted: Vec<i64> = order.iter().map(|&i| m[i]).collect();
    Ok((sorted.into(), order.into_iter().map(|i| i + 1).collect()))
}
