//! Shared test helpers: random stores and an independent full-sort rank
//! oracle with the same tie rule as the production counting path.
//!
//! Compiled into several test targets; not all of them use every helper.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use hintbits_core::embedding::EmbeddingStore;
use hintbits_core::testsets::BoundQuestion;

pub fn dot(prediction: &[f64], row: &[f32]) -> f64 {
    let mut acc = 0.0f64;
    for (p, v) in prediction.iter().zip(row) {
        acc += p * f64::from(*v);
    }
    acc
}

/// Rank by materializing and sorting the full candidate list: score
/// descending, index ascending on exact ties.
pub fn oracle_rank(
    store: &EmbeddingStore,
    prediction: &[f64],
    target: usize,
    excluded: &[usize],
) -> u64 {
    let mut scored: Vec<(f64, usize)> = (0..store.m())
        .filter(|j| !excluded.contains(j))
        .map(|j| (dot(prediction, store.row(j)), j))
        .collect();
    scored.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .expect("scores are finite")
            .then(a.1.cmp(&b.1))
    });
    scored
        .iter()
        .position(|&(_, j)| j == target)
        .expect("target not excluded")
        as u64
        + 1
}

fn best_rank_over_targets(
    store: &EmbeddingStore,
    prediction: &[f64],
    targets: &[usize],
    base_excluded: &[usize],
) -> Option<u64> {
    let usable: Vec<usize> = targets
        .iter()
        .copied()
        .filter(|t| !base_excluded.contains(t))
        .collect();
    if usable.is_empty() {
        return None;
    }
    usable
        .iter()
        .map(|&t| {
            let mut excluded = base_excluded.to_vec();
            for &other in targets {
                if other != t && !excluded.contains(&other) {
                    excluded.push(other);
                }
            }
            oracle_rank(store, prediction, t, &excluded)
        })
        .min()
}

pub fn oracle_single_hint(store: &EmbeddingStore, q: &BoundQuestion) -> Option<u64> {
    let prediction: Vec<f64> = store.row(q.a_idx).iter().map(|&x| f64::from(x)).collect();
    best_rank_over_targets(store, &prediction, &q.target_idxs, &[q.a_idx])
}

pub fn oracle_two_hints(store: &EmbeddingStore, q: &BoundQuestion) -> Option<u64> {
    let a = store.row(q.a_idx);
    let alpha = store.row(q.alpha_idx);
    let beta = store.row(q.beta_idx);
    let prediction: Vec<f64> = (0..store.d())
        .map(|k| f64::from(a[k]) + f64::from(beta[k]) - f64::from(alpha[k]))
        .collect();
    let mut base_excluded = vec![q.a_idx];
    for idx in [q.alpha_idx, q.beta_idx] {
        if !base_excluded.contains(&idx) {
            base_excluded.push(idx);
        }
    }
    best_rank_over_targets(store, &prediction, &q.target_idxs, &base_excluded)
}

pub fn random_store(rng: &mut ChaCha8Rng, m: usize, d: usize) -> EmbeddingStore {
    let words: Vec<String> = (0..m).map(|i| format!("w{i}")).collect();
    let rows: Vec<Vec<f32>> = (0..m)
        .map(|_| {
            loop {
                let row: Vec<f32> = (0..d).map(|_| rng.random_range(-1.0f32..1.0)).collect();
                if row.iter().any(|&x| x != 0.0) {
                    return row;
                }
            }
        })
        .collect();
    EmbeddingStore::new(words, rows, false).expect("random rows are valid")
}

/// A question with roles drawn at random, guaranteed to keep at least one
/// target outside the two-hints exclusion set.
pub fn random_question(rng: &mut ChaCha8Rng, m: usize) -> BoundQuestion {
    assert!(m >= 5, "need room for distinct roles and a target");
    loop {
        let a_idx = rng.random_range(0..m);
        let alpha_idx = rng.random_range(0..m);
        let beta_idx = rng.random_range(0..m);
        let n_targets = rng.random_range(1..=3usize);
        let mut target_idxs = Vec::with_capacity(n_targets);
        for _ in 0..n_targets {
            let t = rng.random_range(0..m);
            if !target_idxs.contains(&t) {
                target_idxs.push(t);
            }
        }
        let q = BoundQuestion {
            alpha_idx,
            beta_idx,
            a_idx,
            target_idxs,
        };
        let playable = q
            .target_idxs
            .iter()
            .any(|&t| t != q.a_idx && t != q.alpha_idx && t != q.beta_idx);
        if playable {
            return q;
        }
    }
}
