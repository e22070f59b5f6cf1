//! Random generators shared by the integration tests.

#![allow(dead_code)]

use nagata_core::{MultiplicitySystem, ProximityMatrix};
use rand::Rng;

/// A random proximity structure realisable by an actual cluster: each
/// point lies on an earlier point (free proximity) and is, at random, a
/// satellite point also proximate to a point its parent is proximate to,
/// provided that corner is still free.
pub fn random_cluster<R: Rng>(rng: &mut R, r: usize) -> ProximityMatrix {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 2..=r {
        let parent = if rng.gen_bool(0.6) { j - 1 } else { rng.gen_range(1..j) };
        pairs.push((j, parent));
        let corners: Vec<usize> = pairs
            .iter()
            .filter(|&&(p, q)| p == parent && q < parent)
            .map(|&(_, q)| q)
            .filter(|&q| {
                !(2..j).any(|k| pairs.contains(&(k, q)) && pairs.contains(&(k, parent)))
            })
            .collect();
        if !corners.is_empty() && rng.gen_bool(0.5) {
            let q = corners[rng.gen_range(0..corners.len())];
            pairs.push((j, q));
        }
    }
    ProximityMatrix::new(r, &pairs).expect("generator produces valid clusters")
}

pub fn random_chain<R: Rng>(rng: &mut R, r: usize) -> ProximityMatrix {
    let i = rng.gen_range(2..=r);
    ProximityMatrix::chain(r, i).expect("valid chain")
}

pub fn random_system<R: Rng>(rng: &mut R, r: usize, max: i64) -> MultiplicitySystem {
    (0..r).map(|_| rng.gen_range(0..=max)).collect::<Vec<_>>().into()
}

/// All nonincreasing sequences of the given length with entries in `0..=max`.
pub fn nonincreasing(len: usize, max: i64) -> Vec<Vec<i64>> {
    fn go(len: usize, cap: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for v in (0..=cap).rev() {
            prefix.push(v);
            go(len, v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(len, max, &mut Vec::new(), &mut out);
    out
}
