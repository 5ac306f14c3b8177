//! Estimator mathematics: effective cardinality, naive rank entropy, the
//! estimator bias, compensated soft accuracy, information deltas, and the
//! loaded-dice analytic oracle.
//!
//! The central object is the rank outcome of one guess. A target observed at
//! sorted position o is treated as the median of a hypothetical uniform set
//! of c = 2o - 1 candidates, so each guess contributes log2(c) bits. The mean
//! of those logs is a biased estimate of log2 of the mean cardinality; under
//! a uniform rank model over {1..N} the bias is exactly
//! B(N) = (1/N) sum log2((2n-1)/N), and the compensated soft accuracy is
//! 2^(-H + B).

use std::num::NonZeroU64;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum InfoError {
    #[error("rank must be at least 1")]
    RankZero,
    #[error("cardinality must be at least 1")]
    CardinalityZero,
    #[error("count must be at least 1")]
    CountZero,
    #[error("empty rank sequence")]
    EmptyRanks,
    #[error("bias must be non-positive, got {0}")]
    PositiveBias(f64),
    #[error("accuracy must be positive and finite, got {0}")]
    NonPositiveAccuracy(f64),
    #[error("dice distributions must be non-empty, equal-length, non-negative, and sum to 1")]
    InvalidDiceSpec,
}

/// Sorted position of the target for one guess, o >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RankOutcome(NonZeroU64);

impl RankOutcome {
    pub fn new(o_t: u64) -> Result<Self, InfoError> {
        NonZeroU64::new(o_t).map(Self).ok_or(InfoError::RankZero)
    }

    pub fn rank(self) -> u64 {
        self.0.get()
    }

    /// c = 2o - 1: size of the uniform set whose median neighbour the
    /// target would be. Always odd.
    pub fn effective_cardinality(self) -> u64 {
        2 * self.0.get() - 1
    }

    /// log2(c), the information content of this guess in bits.
    pub fn point_information(self) -> f64 {
        (self.effective_cardinality() as f64).log2()
    }
}

/// c = 2o - 1 for a raw rank value.
pub fn effective_cardinality(o_t: u64) -> Result<u64, InfoError> {
    Ok(RankOutcome::new(o_t)?.effective_cardinality())
}

/// log2 of an effective cardinality.
pub fn point_information(c: u64) -> Result<f64, InfoError> {
    if c == 0 {
        return Err(InfoError::CardinalityZero);
    }
    Ok((c as f64).log2())
}

/// Mean per-guess information over G guesses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    pub h_g_mean: f64,
    pub g: usize,
}

/// Mean of log2(2o - 1) over the outcomes. Terms are accumulated in input
/// order and divided once, so the value does not depend on how callers
/// scheduled the ranking work.
pub fn naive_entropy(ranks: &[RankOutcome]) -> Result<EntropyEstimate, InfoError> {
    if ranks.is_empty() {
        return Err(InfoError::EmptyRanks);
    }
    let mut sum = 0.0f64;
    for r in ranks {
        sum += r.point_information();
    }
    Ok(EntropyEstimate {
        h_g_mean: sum / ranks.len() as f64,
        g: ranks.len(),
    })
}

/// Estimator bias under a uniform rank model over {1..n}:
/// B(n) = (1/n) * sum_{k=1..n} log2((2k - 1) / n). B(1) = 0 and B decreases
/// toward 1 - log2(e) ~= -0.4427 as n grows.
pub fn bias(n: u64) -> Result<f64, InfoError> {
    if n == 0 {
        return Err(InfoError::CountZero);
    }
    let nf = n as f64;
    let mut sum = 0.0f64;
    for k in 1..=n {
        sum += ((2 * k - 1) as f64 / nf).log2();
    }
    Ok(sum / nf)
}

/// Compensated soft accuracy 2^(-H + B). Requires a non-positive bias.
pub fn soft_accuracy(h: &EntropyEstimate, bias_bits: f64) -> Result<f64, InfoError> {
    if !(bias_bits <= 0.0) {
        return Err(InfoError::PositiveBias(bias_bits));
    }
    Ok((-h.h_g_mean + bias_bits).exp2())
}

/// Fraction of guesses that hit the target outright (rank 1).
pub fn hard_accuracy(ranks: &[RankOutcome]) -> Result<f64, InfoError> {
    if ranks.is_empty() {
        return Err(InfoError::EmptyRanks);
    }
    let hits = ranks.iter().filter(|r| r.rank() == 1).count();
    Ok(hits as f64 / ranks.len() as f64)
}

/// Missing information before any hint: I0 = log2(m) bits for a target drawn
/// from m symbols.
pub fn base_information(m: u64) -> Result<f64, InfoError> {
    if m == 0 {
        return Err(InfoError::CountZero);
    }
    Ok((m as f64).log2())
}

/// Bits contributed by the first hint: I0 - log2(1/acc1).
pub fn delta_i1(acc1: f64, m: u64) -> Result<f64, InfoError> {
    if !(acc1 > 0.0) || !acc1.is_finite() {
        return Err(InfoError::NonPositiveAccuracy(acc1));
    }
    Ok(base_information(m)? + acc1.log2())
}

/// Bits contributed by the second hint given the first:
/// log2(1/acc1) - log2(1/acc2). Negative when the hint misleads.
pub fn delta_i2(acc1: f64, acc2: f64) -> Result<f64, InfoError> {
    if !(acc1 > 0.0) || !acc1.is_finite() {
        return Err(InfoError::NonPositiveAccuracy(acc1));
    }
    if !(acc2 > 0.0) || !acc2.is_finite() {
        return Err(InfoError::NonPositiveAccuracy(acc2));
    }
    Ok(acc2.log2() - acc1.log2())
}

/// A loaded die together with the guesser's (possibly wrong) model of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiceSpec {
    true_dist: Vec<f64>,
    model_dist: Vec<f64>,
}

impl DiceSpec {
    pub fn new(true_dist: Vec<f64>, model_dist: Vec<f64>) -> Result<Self, InfoError> {
        if true_dist.is_empty() || true_dist.len() != model_dist.len() {
            return Err(InfoError::InvalidDiceSpec);
        }
        for dist in [&true_dist, &model_dist] {
            if dist.iter().any(|&p| !p.is_finite() || p < 0.0) {
                return Err(InfoError::InvalidDiceSpec);
            }
            let sum: f64 = dist.iter().sum();
            if (sum - 1.0).abs() > 1e-12 {
                return Err(InfoError::InvalidDiceSpec);
            }
        }
        Ok(Self {
            true_dist,
            model_dist,
        })
    }

    pub fn true_dist(&self) -> &[f64] {
        &self.true_dist
    }

    pub fn model_dist(&self) -> &[f64] {
        &self.model_dist
    }
}

/// Expected accuracy of a guesser who bets on the most probable faces of
/// its model, choosing uniformly among ties: the mean true probability of
/// the model's argmax set.
pub fn expected_guesser_accuracy(spec: &DiceSpec) -> f64 {
    let max = spec
        .model_dist
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let mut hit = 0.0f64;
    let mut ties = 0usize;
    for (p_true, p_model) in spec.true_dist.iter().zip(&spec.model_dist) {
        if *p_model == max {
            hit += *p_true;
            ties += 1;
        }
    }
    hit / ties as f64
}

/// Values of the loaded-dice walkthrough, all computed analytically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiceDemoReport {
    pub faces: u64,
    pub i0_bits: f64,
    pub acc0: f64,
    pub acc1: f64,
    pub i1_bits: f64,
    pub delta_i1_bits: f64,
    pub c1: f64,
    pub acc2: f64,
    pub i2_bits: f64,
    pub delta_i2_bits: f64,
    pub c2: f64,
}

/// Runs the loaded-dice game through three guesser models: no hint
/// (uniform), a true hint about the mean, and a false hint favouring high
/// faces. The false hint expands the effective search space, so the second
/// information delta comes out negative.
pub fn dice_demo() -> DiceDemoReport {
    let true_dist = vec![
        1.0 / 6.0,
        1.0 / 24.0,
        1.0 / 3.0,
        1.0 / 12.0,
        1.0 / 3.0,
        1.0 / 24.0,
    ];
    let uniform = vec![1.0 / 6.0; 6];
    let after_h1 = vec![
        1.0 / 8.0,
        1.0 / 8.0,
        1.0 / 4.0,
        1.0 / 4.0,
        1.0 / 8.0,
        1.0 / 8.0,
    ];
    let after_h2 = vec![
        1.0 / 13.0,
        1.0 / 13.0,
        3.0 / 13.0,
        4.0 / 13.0,
        2.0 / 13.0,
        2.0 / 13.0,
    ];

    let spec = |model: Vec<f64>| {
        DiceSpec::new(true_dist.clone(), model).expect("demo distributions are valid")
    };
    let acc0 = expected_guesser_accuracy(&spec(uniform));
    let acc1 = expected_guesser_accuracy(&spec(after_h1));
    let acc2 = expected_guesser_accuracy(&spec(after_h2));

    DiceDemoReport {
        faces: 6,
        i0_bits: base_information(6).expect("6 > 0"),
        acc0,
        acc1,
        i1_bits: -acc1.log2(),
        delta_i1_bits: delta_i1(acc1, 6).expect("acc1 > 0"),
        c1: 1.0 / acc1,
        acc2,
        i2_bits: -acc2.log2(),
        delta_i2_bits: delta_i2(acc1, acc2).expect("accuracies > 0"),
        c2: 1.0 / acc2,
    }
}
