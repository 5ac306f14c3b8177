//! The guessing games over an embedding, the random-hint convergence
//! simulation, and the sparse paired-offset synthetic model.
//!
//! Two games run over bound analogy questions. The single-hint game predicts
//! with the cue word's own vector and excludes only the cue; the two-hints
//! game adds the offset (beta - alpha) and excludes all three given words.
//! A question's rank is the best rank over its acceptable targets, with the
//! alternates removed from the candidate pool while each is ranked. Question
//! evaluation is embarrassingly parallel; outcomes are aggregated in input
//! order so reports do not depend on the degree of parallelism.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{dot, BatchRankError, EmbeddingStore, RankQuery};
use crate::infotheory::{
    base_information, bias, delta_i1, delta_i2, hard_accuracy, naive_entropy, soft_accuracy,
    EntropyEstimate, InfoError, RankOutcome,
};
use crate::testsets::{BoundQuestion, BoundSubset, BoundTestSet};

/// Heuristic bias for real-embedding runs, where the effective neighbour
/// count is unknown but empirically close to 2.
pub const DEFAULT_BIAS_BITS: f64 = -0.25;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("question {index}: every acceptable target is excluded")]
    AllTargetsExcluded { index: usize },
    #[error("rank sequences are empty")]
    EmptyRanks,
    #[error("rank sequences differ in length: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid game config: {0}")]
    InvalidConfig(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no subset produced any evaluable question")]
    NoBoundQuestions,
    #[error(transparent)]
    Rank(#[from] BatchRankError),
    #[error(transparent)]
    Info(#[from] InfoError),
}

/// Run parameters shared by both games.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameConfig {
    /// Bias compensation in bits, <= 0.
    pub bias_bits: f64,
    /// Cardinality used for I0; normally the vocabulary size.
    pub i0_m: usize,
    /// Seed for any sampling a caller performed upstream; recorded in
    /// manifests so runs are reproducible.
    pub seed: u64,
    /// Worker count hint; `None` uses the global thread pool.
    pub parallelism: Option<usize>,
}

impl GameConfig {
    pub fn for_store(store: &EmbeddingStore) -> Self {
        Self {
            bias_bits: DEFAULT_BIAS_BITS,
            i0_m: store.m(),
            seed: 0,
            parallelism: None,
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if !self.bias_bits.is_finite() || self.bias_bits > 0.0 {
            return Err(ExperimentError::InvalidConfig(format!(
                "bias_bits must be finite and <= 0, got {}",
                self.bias_bits
            )));
        }
        if self.i0_m == 0 {
            return Err(ExperimentError::InvalidConfig(
                "i0_m must be at least 1".to_string(),
            ));
        }
        Ok(())
    }
}

/// One row of an evaluation report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetReport {
    pub subset: String,
    pub g: usize,
    pub skipped: usize,
    pub soft_acc1: f64,
    pub soft_acc2: f64,
    pub hard_acc1: f64,
    pub hard_acc2: f64,
    pub delta_i1: f64,
    pub delta_i2: f64,
    pub i0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetMeta {
    pub label: String,
    pub parsed: usize,
    pub skipped: usize,
}

fn run_in_pool<T: Send>(
    parallelism: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, ExperimentError> {
    match parallelism {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| ExperimentError::InvalidConfig(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

enum Game {
    SingleHint,
    TwoHints,
}

/// Expands questions into rank queries. Returns one query per usable target
/// plus, per question, the range of its queries; questions whose every
/// target falls into the game's exclusion set land in `skipped`.
fn build_queries(
    store: &EmbeddingStore,
    questions: &[BoundQuestion],
    game: &Game,
) -> (Vec<RankQuery>, Vec<std::ops::Range<usize>>, Vec<usize>) {
    let d = store.d();
    let mut queries = Vec::new();
    let mut ranges = Vec::with_capacity(questions.len());
    let mut skipped = Vec::new();

    for (qi, q) in questions.iter().enumerate() {
        let mut base_excluded: Vec<usize> = vec![q.a_idx];
        let prediction: Vec<f64> = match game {
            Game::SingleHint => store.row(q.a_idx).iter().map(|&x| f64::from(x)).collect(),
            Game::TwoHints => {
                for idx in [q.alpha_idx, q.beta_idx] {
                    if !base_excluded.contains(&idx) {
                        base_excluded.push(idx);
                    }
                }
                let a = store.row(q.a_idx);
                let alpha = store.row(q.alpha_idx);
                let beta = store.row(q.beta_idx);
                (0..d)
                    .map(|k| f64::from(a[k]) + f64::from(beta[k]) - f64::from(alpha[k]))
                    .collect()
            }
        };

        let usable: Vec<usize> = q
            .target_idxs
            .iter()
            .copied()
            .filter(|t| !base_excluded.contains(t))
            .collect();
        if usable.is_empty() {
            skipped.push(qi);
            ranges.push(queries.len()..queries.len());
            continue;
        }

        let start = queries.len();
        for &t in &usable {
            let mut excluded = base_excluded.clone();
            for &other in &q.target_idxs {
                if other != t && !excluded.contains(&other) {
                    excluded.push(other);
                }
            }
            queries.push(RankQuery {
                prediction: prediction.clone(),
                target: t,
                excluded,
            });
        }
        ranges.push(start..queries.len());
    }

    (queries, ranges, skipped)
}

fn best_ranks(
    store: &EmbeddingStore,
    queries: &[RankQuery],
    ranges: &[std::ops::Range<usize>],
) -> Result<Vec<RankOutcome>, ExperimentError> {
    let ranks = store.rank_batch(queries)?;
    let mut out = Vec::with_capacity(ranges.len());
    for range in ranges {
        if range.is_empty() {
            continue;
        }
        let best = ranks[range.clone()]
            .iter()
            .copied()
            .min()
            .expect("non-empty range");
        out.push(RankOutcome::new(best).expect("ranks start at 1"));
    }
    Ok(out)
}

/// Single-hint game: predict with the cue word's vector, exclude the cue.
/// A question whose every target equals the cue cannot be played and is a
/// data defect, reported as an error.
pub fn run_single_hint(
    store: &EmbeddingStore,
    questions: &[BoundQuestion],
    cfg: &GameConfig,
) -> Result<Vec<RankOutcome>, ExperimentError> {
    cfg.validate()?;
    run_in_pool(cfg.parallelism, || single_hint_ranks(store, questions))?
}

fn single_hint_ranks(
    store: &EmbeddingStore,
    questions: &[BoundQuestion],
) -> Result<Vec<RankOutcome>, ExperimentError> {
    let (queries, ranges, skipped) = build_queries(store, questions, &Game::SingleHint);
    if let Some(&index) = skipped.first() {
        return Err(ExperimentError::AllTargetsExcluded { index });
    }
    best_ranks(store, &queries, &ranges)
}

/// Outcome of a two-hints run: one rank per evaluated question, plus the
/// indices of questions skipped because the target sat inside the
/// exclusion set.
#[derive(Debug, Clone)]
pub struct TwoHintsRun {
    pub ranks: Vec<RankOutcome>,
    pub skipped: Vec<usize>,
}

/// Two-hints game: predict with a + beta - alpha, exclude all three given
/// words (as a set, so duplicate roles shrink the exclusion).
pub fn run_two_hints(
    store: &EmbeddingStore,
    questions: &[BoundQuestion],
    cfg: &GameConfig,
) -> Result<TwoHintsRun, ExperimentError> {
    cfg.validate()?;
    run_in_pool(cfg.parallelism, || two_hints_ranks(store, questions))?
}

fn two_hints_ranks(
    store: &EmbeddingStore,
    questions: &[BoundQuestion],
) -> Result<TwoHintsRun, ExperimentError> {
    let (queries, ranges, skipped) = build_queries(store, questions, &Game::TwoHints);
    let ranks = best_ranks(store, &queries, &ranges)?;
    Ok(TwoHintsRun { ranks, skipped })
}

/// Aggregates two equal-length rank sequences into one report row.
pub fn evaluate_subset(
    ranks1: &[RankOutcome],
    ranks2: &[RankOutcome],
    cfg: &GameConfig,
    meta: &SubsetMeta,
) -> Result<SubsetReport, ExperimentError> {
    cfg.validate()?;
    if ranks1.is_empty() || ranks2.is_empty() {
        return Err(ExperimentError::EmptyRanks);
    }
    if ranks1.len() != ranks2.len() {
        return Err(ExperimentError::LengthMismatch {
            left: ranks1.len(),
            right: ranks2.len(),
        });
    }
    let h1 = naive_entropy(ranks1)?;
    let h2 = naive_entropy(ranks2)?;
    let soft1 = soft_accuracy(&h1, cfg.bias_bits)?;
    let soft2 = soft_accuracy(&h2, cfg.bias_bits)?;
    Ok(SubsetReport {
        subset: meta.label.clone(),
        g: ranks1.len(),
        skipped: meta.skipped,
        soft_acc1: soft1,
        soft_acc2: soft2,
        hard_acc1: hard_accuracy(ranks1)?,
        hard_acc2: hard_accuracy(ranks2)?,
        delta_i1: delta_i1(soft1, cfg.i0_m as u64)?,
        delta_i2: delta_i2(soft1, soft2)?,
        i0: base_information(cfg.i0_m as u64)?,
    })
}

/// Both games over one subset, on the common evaluable question set.
#[derive(Debug, Clone)]
pub struct SubsetOutcome {
    pub report: SubsetReport,
    pub ranks1: Vec<RankOutcome>,
    pub ranks2: Vec<RankOutcome>,
    /// Questions dropped because every target sat inside the two-hints
    /// exclusion set; the games must score identical question sets.
    pub skipped_excluded: usize,
}

fn run_subset_inner(
    store: &EmbeddingStore,
    subset: &BoundSubset,
    cfg: &GameConfig,
) -> Result<Option<SubsetOutcome>, ExperimentError> {
    let evaluable: Vec<BoundQuestion> = subset
        .questions
        .iter()
        .filter(|q| {
            q.target_idxs
                .iter()
                .any(|t| *t != q.a_idx && *t != q.alpha_idx && *t != q.beta_idx)
        })
        .cloned()
        .collect();
    let skipped_excluded = subset.questions.len() - evaluable.len();
    if evaluable.is_empty() {
        return Ok(None);
    }

    let ranks1 = single_hint_ranks(store, &evaluable)?;
    let two = two_hints_ranks(store, &evaluable)?;
    debug_assert!(two.skipped.is_empty(), "evaluable questions cannot skip");

    let meta = SubsetMeta {
        label: subset.label.clone(),
        parsed: subset.parsed,
        skipped: subset.skipped_oov + skipped_excluded,
    };
    debug_assert_eq!(ranks1.len() + meta.skipped, meta.parsed);
    let report = evaluate_subset(&ranks1, &two.ranks, cfg, &meta)?;
    Ok(Some(SubsetOutcome {
        report,
        ranks1,
        ranks2: two.ranks,
        skipped_excluded,
    }))
}

/// Runs one subset through both games. Returns `None` when no question
/// survives binding and exclusion filtering.
pub fn run_subset(
    store: &EmbeddingStore,
    subset: &BoundSubset,
    cfg: &GameConfig,
) -> Result<Option<SubsetOutcome>, ExperimentError> {
    cfg.validate()?;
    run_in_pool(cfg.parallelism, || run_subset_inner(store, subset, cfg))?
}

pub const WEIGHTED_AVERAGE_LABEL: &str = "average-weighted";
pub const UNWEIGHTED_AVERAGE_LABEL: &str = "average-unweighted";

/// Full evaluation of a bound test set: one report row per non-empty
/// subset, then a question-count-weighted average row (all ranks pooled)
/// and an unweighted one (per-subset entropies averaged with equal weight,
/// so its delta columns are the plain means of the per-subset deltas).
#[derive(Debug, Clone)]
pub struct EvalOutcome {
    pub rows: Vec<SubsetReport>,
    pub outcomes: Vec<SubsetOutcome>,
    pub empty_subsets: Vec<String>,
    pub evaluated: usize,
    pub skipped_total: usize,
    pub parsed_total: usize,
}

pub fn evaluate_testset(
    store: &EmbeddingStore,
    bound: &BoundTestSet,
    cfg: &GameConfig,
) -> Result<EvalOutcome, ExperimentError> {
    cfg.validate()?;
    run_in_pool(cfg.parallelism, || evaluate_testset_inner(store, bound, cfg))?
}

fn evaluate_testset_inner(
    store: &EmbeddingStore,
    bound: &BoundTestSet,
    cfg: &GameConfig,
) -> Result<EvalOutcome, ExperimentError> {
    let mut outcomes: Vec<SubsetOutcome> = Vec::new();
    let mut empty_subsets = Vec::new();
    let mut parsed_total = 0usize;
    let mut skipped_total = 0usize;

    for subset in &bound.subsets {
        parsed_total += subset.parsed;
        match run_subset_inner(store, subset, cfg)? {
            Some(outcome) => {
                skipped_total += outcome.report.skipped;
                outcomes.push(outcome);
            }
            None => {
                skipped_total += subset.parsed;
                empty_subsets.push(subset.label.clone());
            }
        }
    }
    if outcomes.is_empty() {
        return Err(ExperimentError::NoBoundQuestions);
    }

    let evaluated: usize = outcomes.iter().map(|o| o.report.g).sum();
    let mut rows: Vec<SubsetReport> = outcomes.iter().map(|o| o.report.clone()).collect();
    rows.push(weighted_average(&outcomes, cfg, parsed_total, skipped_total)?);
    rows.push(unweighted_average(&outcomes, cfg, skipped_total)?);

    Ok(EvalOutcome {
        rows,
        outcomes,
        empty_subsets,
        evaluated,
        skipped_total,
        parsed_total,
    })
}

fn weighted_average(
    outcomes: &[SubsetOutcome],
    cfg: &GameConfig,
    parsed_total: usize,
    skipped_total: usize,
) -> Result<SubsetReport, ExperimentError> {
    let pooled1: Vec<RankOutcome> = outcomes.iter().flat_map(|o| o.ranks1.iter().copied()).collect();
    let pooled2: Vec<RankOutcome> = outcomes.iter().flat_map(|o| o.ranks2.iter().copied()).collect();
    let meta = SubsetMeta {
        label: WEIGHTED_AVERAGE_LABEL.to_string(),
        parsed: parsed_total,
        skipped: skipped_total,
    };
    evaluate_subset(&pooled1, &pooled2, cfg, &meta)
}

fn unweighted_average(
    outcomes: &[SubsetOutcome],
    cfg: &GameConfig,
    skipped_total: usize,
) -> Result<SubsetReport, ExperimentError> {
    let count = outcomes.len() as f64;
    let mut h1_sum = 0.0f64;
    let mut h2_sum = 0.0f64;
    let mut hard1_sum = 0.0f64;
    let mut hard2_sum = 0.0f64;
    for o in outcomes {
        h1_sum += naive_entropy(&o.ranks1)?.h_g_mean;
        h2_sum += naive_entropy(&o.ranks2)?.h_g_mean;
        hard1_sum += o.report.hard_acc1;
        hard2_sum += o.report.hard_acc2;
    }
    let g: usize = outcomes.iter().map(|o| o.report.g).sum();
    let h1 = EntropyEstimate {
        h_g_mean: h1_sum / count,
        g,
    };
    let h2 = EntropyEstimate {
        h_g_mean: h2_sum / count,
        g,
    };
    let soft1 = soft_accuracy(&h1, cfg.bias_bits)?;
    let soft2 = soft_accuracy(&h2, cfg.bias_bits)?;
    Ok(SubsetReport {
        subset: UNWEIGHTED_AVERAGE_LABEL.to_string(),
        g,
        skipped: skipped_total,
        soft_acc1: soft1,
        soft_acc2: soft2,
        hard_acc1: hard1_sum / count,
        hard_acc2: hard2_sum / count,
        delta_i1: delta_i1(soft1, cfg.i0_m as u64)?,
        delta_i2: delta_i2(soft1, soft2)?,
        i0: base_information(cfg.i0_m as u64)?,
    })
}

/// One sampled point of the convergence curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub g: u64,
    pub hard_acc: f64,
    pub soft_acc: f64,
}

/// Log-spaced checkpoints 1, 2, .., 9, 10, 20, .., up to and including g.
pub fn default_checkpoints(g: u64) -> Vec<u64> {
    let mut cps = Vec::new();
    let mut scale = 1u64;
    'outer: loop {
        for mult in 1..=9u64 {
            let c = match mult.checked_mul(scale) {
                Some(c) => c,
                None => break 'outer,
            };
            if c > g {
                break 'outer;
            }
            cps.push(c);
        }
        scale = match scale.checked_mul(10) {
            Some(s) => s,
            None => break,
        };
    }
    if cps.last() != Some(&g) {
        cps.push(g);
    }
    cps
}

/// Pseudo-hint guessing game: target and hint drawn independently and
/// uniformly from {1..n}; the target's rank is its circular index distance
/// from the hint plus one, which is exactly uniform on {1..n}. Each trial
/// derives its own RNG stream from the seed, so results are independent of
/// scheduling. The soft accuracy uses the exact bias for n.
pub fn simulate_random_hint_game(
    n: u64,
    g: u64,
    seed: u64,
    checkpoints: &[u64],
) -> Result<Vec<CurvePoint>, ExperimentError> {
    if n == 0 {
        return Err(ExperimentError::InvalidParameter(
            "n must be at least 1".to_string(),
        ));
    }
    if g == 0 {
        return Err(ExperimentError::InvalidParameter(
            "g must be at least 1".to_string(),
        ));
    }
    let mut cps: Vec<u64> = checkpoints.to_vec();
    cps.sort_unstable();
    cps.dedup();
    if cps.iter().any(|&c| c == 0 || c > g) {
        return Err(ExperimentError::InvalidParameter(
            "checkpoints must lie in 1..=g".to_string(),
        ));
    }
    if cps.is_empty() {
        cps.push(g);
    }

    let b = bias(n)?;
    let mut points = Vec::with_capacity(cps.len());
    let mut hits = 0u64;
    let mut h_sum = 0.0f64;
    let mut cpi = 0usize;
    for trial in 0..g {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let target = rng.random_range(1..=n);
        let hint = rng.random_range(1..=n);
        let o_t = (target + n - hint) % n + 1;
        if o_t == 1 {
            hits += 1;
        }
        h_sum += ((2 * o_t - 1) as f64).log2();

        let done = trial + 1;
        while cpi < cps.len() && cps[cpi] == done {
            points.push(CurvePoint {
                g: done,
                hard_acc: hits as f64 / done as f64,
                soft_acc: (-(h_sum / done as f64) + b).exp2(),
            });
            cpi += 1;
        }
    }
    Ok(points)
}

/// Parameters of the synthetic paired-offset embedding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoarseModelSpec {
    /// Total word count, even: m/2 start-words and m/2 end-words.
    pub m: usize,
    pub d: usize,
    /// Magnitude of the shared offset.
    pub phi_norm: f64,
    /// Per-coordinate Gaussian perturbation scale.
    pub noise_sigma: f64,
    pub seed: u64,
}

impl Default for CoarseModelSpec {
    fn default() -> Self {
        Self {
            m: 2000,
            d: 50,
            phi_norm: 1.0,
            noise_sigma: 0.01,
            seed: 0,
        }
    }
}

/// A synthetic embedding where every word belongs to a (start, end) pair
/// and one shared offset encodes the single analogy relationship:
/// end = unit(start + phi + noise).
#[derive(Debug, Clone)]
pub struct CoarseModel {
    pub store: EmbeddingStore,
    pub phi: Vec<f64>,
    pub pairs: Vec<(usize, usize)>,
    pub noise_sigma: f64,
}

fn gaussian_vector(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

fn unit(v: &[f64]) -> Option<Vec<f64>> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return None;
    }
    Some(v.iter().map(|x| x / norm).collect())
}

/// Draws m/2 start vectors isotropically on the unit sphere (far apart for
/// d >> log m), one shared offset, and the paired end vectors. Stream 0 of
/// the seed drives the offset, stream 1 + i drives pair i, so regeneration
/// with the same seed is exact.
pub fn generate_coarse_model(spec: &CoarseModelSpec) -> Result<CoarseModel, ExperimentError> {
    if spec.m < 2 || spec.m % 2 != 0 {
        return Err(ExperimentError::InvalidParameter(format!(
            "m must be an even count >= 2, got {}",
            spec.m
        )));
    }
    if spec.d < 2 {
        return Err(ExperimentError::InvalidParameter(format!(
            "d must be at least 2, got {}",
            spec.d
        )));
    }
    if !(spec.noise_sigma >= 0.0) || !spec.noise_sigma.is_finite() {
        return Err(ExperimentError::InvalidParameter(format!(
            "noise_sigma must be a finite non-negative value, got {}",
            spec.noise_sigma
        )));
    }
    if !(spec.phi_norm > 0.0) || !spec.phi_norm.is_finite() {
        return Err(ExperimentError::InvalidParameter(format!(
            "phi_norm must be a finite positive value, got {}",
            spec.phi_norm
        )));
    }

    let pair_count = spec.m / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(0);
    let phi: Vec<f64> = unit(&gaussian_vector(&mut rng, spec.d))
        .ok_or_else(|| ExperimentError::InvalidParameter("degenerate offset draw".to_string()))?
        .into_iter()
        .map(|x| x * spec.phi_norm)
        .collect();

    let mut starts: Vec<Vec<f32>> = Vec::with_capacity(pair_count);
    let mut ends: Vec<Vec<f32>> = Vec::with_capacity(pair_count);
    for i in 0..pair_count {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream(1 + i as u64);
        let start = unit(&gaussian_vector(&mut rng, spec.d)).ok_or_else(|| {
            ExperimentError::InvalidParameter("degenerate start-vector draw".to_string())
        })?;
        let noise = gaussian_vector(&mut rng, spec.d);
        let raw_end: Vec<f64> = (0..spec.d)
            .map(|k| start[k] + phi[k] + spec.noise_sigma * noise[k])
            .collect();
        let end = unit(&raw_end).ok_or_else(|| {
            ExperimentError::InvalidParameter("end vector degenerated to zero".to_string())
        })?;
        starts.push(start.iter().map(|&x| x as f32).collect());
        ends.push(end.iter().map(|&x| x as f32).collect());
    }

    let mut words: Vec<String> = (0..pair_count).map(|i| format!("a{i:06}")).collect();
    words.extend((0..pair_count).map(|i| format!("b{i:06}")));
    let mut rows = starts;
    rows.extend(ends);
    let store = EmbeddingStore::new(words, rows, false)
        .map_err(|e| ExperimentError::InvalidParameter(e.to_string()))?;
    let pairs = (0..pair_count).map(|i| (i, pair_count + i)).collect();

    Ok(CoarseModel {
        store,
        phi,
        pairs,
        noise_sigma: spec.noise_sigma,
    })
}

#[derive(Debug, Clone)]
pub struct OffsetOnlyRun {
    pub ranks: Vec<RankOutcome>,
    pub info_gain_bits: f64,
}

/// The offset-only game: the guesser knows the shared offset but not which
/// words are start-words, so every word generates a prediction
/// unit(word + phi). A candidate's score is its best match over all
/// predictions from other words; by sparsity, end-word predictions land far
/// from everything, so the true end-words cluster at the top and the target
/// sits roughly uniformly among the m/2 of them. The information gain uses
/// the exact bias for n = m/2, which is known in this model.
pub fn run_offset_only(model: &CoarseModel) -> Result<OffsetOnlyRun, ExperimentError> {
    let store = &model.store;
    let m = store.m();
    if m < 2 {
        return Err(ExperimentError::InvalidParameter(
            "model must hold at least one pair".to_string(),
        ));
    }

    let predictions: Vec<Vec<f64>> = (0..m)
        .map(|x| {
            let row = store.row(x);
            let shifted: Vec<f64> = row
                .iter()
                .zip(&model.phi)
                .map(|(&v, p)| f64::from(v) + p)
                .collect();
            unit(&shifted).ok_or_else(|| {
                ExperimentError::InvalidParameter("prediction degenerated to zero".to_string())
            })
        })
        .collect::<Result<_, _>>()?;

    let scores: Vec<f64> = (0..m)
        .into_par_iter()
        .map(|v| {
            let row = store.row(v);
            let mut best = f64::NEG_INFINITY;
            for (x, pred) in predictions.iter().enumerate() {
                if x == v {
                    continue;
                }
                let s = dot(pred, row);
                if s > best {
                    best = s;
                }
            }
            best
        })
        .collect();

    let mut ranks = Vec::with_capacity(model.pairs.len());
    for &(_, end) in &model.pairs {
        let target_score = scores[end];
        let mut ahead = 0u64;
        for (v, &s) in scores.iter().enumerate() {
            if v == end {
                continue;
            }
            if s > target_score || (s == target_score && v < end) {
                ahead += 1;
            }
        }
        ranks.push(RankOutcome::new(ahead + 1).expect("ranks start at 1"));
    }

    let h = naive_entropy(&ranks)?;
    let info_gain_bits =
        base_information(m as u64)? - (h.h_g_mean - bias((m / 2) as u64)?);
    Ok(OffsetOnlyRun {
        ranks,
        info_gain_bits,
    })
}
