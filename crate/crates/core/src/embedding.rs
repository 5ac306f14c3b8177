//! Plain-text embedding loading and exact target-rank queries.
//!
//! The store is an immutable vocabulary plus a dense row-major table of
//! unit-normalized vectors. Ranking is exhaustive: every candidate is scored
//! by inner product against the prediction and the target's sorted position
//! is obtained by counting, so a query costs O(M·D) time and O(1) extra
//! memory. Ties are broken toward the smaller vocabulary index, which keeps
//! ranks deterministic under any evaluation order.

use std::collections::{HashMap, HashSet};
use std::io::BufRead;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Row norms are validated against this tolerance after normalization.
pub const NORM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("embedding stream has no data lines")]
    EmptyInput,
    #[error("no rows survived loading (every line was dropped)")]
    NoRows,
    #[error("vocab_limit must be at least 1")]
    InvalidVocabLimit,
    #[error("line {line}: expected {expected} vector components, found {found}")]
    InconsistentDimension {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: cannot parse `{value}` as a number")]
    BadNumber { line: usize, value: String },
    #[error("line {line}: non-finite component in vector for `{token}`")]
    NonFinite { line: usize, token: String },
    #[error("line {line}: duplicate token `{token}`")]
    DuplicateToken { line: usize, token: String },
    #[error("line {line}: zero vector for `{token}`")]
    ZeroVector { line: usize, token: String },
    #[error("line {line}: token without vector components")]
    MissingComponents { line: usize },
    #[error("row for `{token}` failed to normalize")]
    NormalizationFailed { token: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RankError {
    #[error("target index {target} is in the exclusion set")]
    TargetExcluded { target: usize },
    #[error("index {index} out of range for vocabulary of {m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("prediction has {found} dimensions, store has {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// First failing query of a batch, with its position in the input.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("query {index}: {source}")]
pub struct BatchRankError {
    pub index: usize,
    #[source]
    pub source: RankError,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DuplicatePolicy {
    KeepFirst,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroVectorPolicy {
    Drop,
    Error,
}

/// Loading policies. Defaults match the public lowercase GloVe release:
/// tokens are case-folded, duplicates keep the first occurrence, and
/// zero-norm rows (which cannot be normalized) are dropped with a count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct LoadOptions {
    pub vocab_limit: Option<usize>,
    pub lowercase: bool,
    pub on_duplicate: DuplicatePolicy,
    pub on_zero_vector: ZeroVectorPolicy,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            vocab_limit: None,
            lowercase: true,
            on_duplicate: DuplicatePolicy::KeepFirst,
            on_zero_vector: ZeroVectorPolicy::Drop,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadStats {
    pub lines_read: usize,
    pub loaded: usize,
    pub dropped_zero_vectors: usize,
    pub dropped_duplicates: usize,
}

#[derive(Debug)]
pub struct LoadOutcome {
    pub store: EmbeddingStore,
    pub stats: LoadStats,
}

/// One target-rank query: where does `target` sort among all non-excluded
/// rows when candidates are scored by inner product with `prediction`?
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankQuery {
    pub prediction: Vec<f64>,
    pub target: usize,
    pub excluded: Vec<usize>,
}

/// Immutable vocabulary and unit-normalized vector table; the search
/// universe for every guessing game. Safe to share across threads.
#[derive(Debug, Clone)]
pub struct EmbeddingStore {
    words: Vec<String>,
    index: HashMap<String, u32>,
    vectors: Vec<f32>,
    d: usize,
    lowercase: bool,
}

impl EmbeddingStore {
    /// Builds a store from explicit rows, normalizing each to unit length.
    pub fn new(
        words: Vec<String>,
        rows: Vec<Vec<f32>>,
        lowercase: bool,
    ) -> Result<Self, EmbeddingError> {
        if rows.is_empty() {
            return Err(EmbeddingError::NoRows);
        }
        let d = rows[0].len();
        let mut flat = Vec::with_capacity(rows.len() * d);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(EmbeddingError::InconsistentDimension {
                    line: i + 1,
                    expected: d,
                    found: row.len(),
                });
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(words, flat, d, lowercase)
    }

    fn from_flat(
        words: Vec<String>,
        mut vectors: Vec<f32>,
        d: usize,
        lowercase: bool,
    ) -> Result<Self, EmbeddingError> {
        if words.is_empty() {
            return Err(EmbeddingError::NoRows);
        }
        if d == 0 {
            return Err(EmbeddingError::MissingComponents { line: 1 });
        }
        assert_eq!(vectors.len(), words.len() * d, "row/word count mismatch");

        for (i, row) in vectors.chunks_mut(d).enumerate() {
            let mut norm2 = 0.0f64;
            for &x in row.iter() {
                let x = f64::from(x);
                if !x.is_finite() {
                    return Err(EmbeddingError::NonFinite {
                        line: i + 1,
                        token: words[i].clone(),
                    });
                }
                norm2 += x * x;
            }
            if norm2 == 0.0 {
                return Err(EmbeddingError::ZeroVector {
                    line: i + 1,
                    token: words[i].clone(),
                });
            }
            let norm = norm2.sqrt();
            for x in row.iter_mut() {
                *x = (f64::from(*x) / norm) as f32;
            }
            let check = row
                .iter()
                .map(|&x| f64::from(x) * f64::from(x))
                .sum::<f64>()
                .sqrt();
            if (check - 1.0).abs() > NORM_TOLERANCE {
                return Err(EmbeddingError::NormalizationFailed {
                    token: words[i].clone(),
                });
            }
        }

        let mut folded = Vec::with_capacity(words.len());
        let mut index = HashMap::with_capacity(words.len());
        for (i, word) in words.into_iter().enumerate() {
            let word = if lowercase { word.to_lowercase() } else { word };
            if index.insert(word.clone(), i as u32).is_some() {
                return Err(EmbeddingError::DuplicateToken {
                    line: i + 1,
                    token: word,
                });
            }
            folded.push(word);
        }

        Ok(Self {
            words: folded,
            index,
            vectors,
            d,
            lowercase,
        })
    }

    /// Vocabulary size M.
    pub fn m(&self) -> usize {
        self.words.len()
    }

    /// Vector dimensionality D.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn lowercase(&self) -> bool {
        self.lowercase
    }

    pub fn word(&self, index: usize) -> &str {
        &self.words[index]
    }

    pub fn row(&self, index: usize) -> &[f32] {
        &self.vectors[index * self.d..(index + 1) * self.d]
    }

    /// Index of `token` under the store's folding policy, if present.
    pub fn lookup(&self, token: &str) -> Option<usize> {
        if self.lowercase {
            self.index.get(&token.to_lowercase()).map(|&i| i as usize)
        } else {
            self.index.get(token).map(|&i| i as usize)
        }
    }

    /// Sorted position of `target` (1 = best) among all rows not in
    /// `excluded`, scoring candidates by inner product with `prediction`.
    /// An exact score tie goes to the smaller index.
    pub fn target_rank(
        &self,
        prediction: &[f64],
        target: usize,
        excluded: &[usize],
    ) -> Result<u64, RankError> {
        if prediction.len() != self.d {
            return Err(RankError::DimensionMismatch {
                expected: self.d,
                found: prediction.len(),
            });
        }
        let m = self.m();
        if target >= m {
            return Err(RankError::IndexOutOfRange { index: target, m });
        }
        for &e in excluded {
            if e >= m {
                return Err(RankError::IndexOutOfRange { index: e, m });
            }
            if e == target {
                return Err(RankError::TargetExcluded { target });
            }
        }

        let target_score = dot(prediction, self.row(target));
        let mut ahead = 0u64;
        for j in 0..m {
            if j == target || excluded.contains(&j) {
                continue;
            }
            let s = dot(prediction, self.row(j));
            if s > target_score || (s == target_score && j < target) {
                ahead += 1;
            }
        }
        Ok(ahead + 1)
    }

    /// Evaluates many queries, possibly in parallel. Output order and values
    /// are those of element-wise `target_rank` calls regardless of the
    /// scheduling; the first failing query is reported with its position.
    pub fn rank_batch(&self, queries: &[RankQuery]) -> Result<Vec<u64>, BatchRankError> {
        let results: Vec<Result<u64, RankError>> = queries
            .par_iter()
            .map(|q| self.target_rank(&q.prediction, q.target, &q.excluded))
            .collect();
        results
            .into_iter()
            .enumerate()
            .map(|(index, r)| r.map_err(|source| BatchRankError { index, source }))
            .collect()
    }
}

#[inline]
pub(crate) fn dot(prediction: &[f64], row: &[f32]) -> f64 {
    let mut acc = 0.0f64;
    for (p, v) in prediction.iter().zip(row) {
        acc += p * f64::from(*v);
    }
    acc
}

/// Reads a line-oriented embedding stream: one token followed by D decimal
/// numbers per line, D inferred from the first data line. Rows come out
/// unit-normalized; drops are counted in the returned stats.
pub fn load_embeddings<R: BufRead>(
    reader: R,
    opts: &LoadOptions,
) -> Result<LoadOutcome, EmbeddingError> {
    if opts.vocab_limit == Some(0) {
        return Err(EmbeddingError::InvalidVocabLimit);
    }

    let mut stats = LoadStats::default();
    let mut words: Vec<String> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut flat: Vec<f32> = Vec::new();
    let mut d: Option<usize> = None;
    let mut row: Vec<f32> = Vec::new();

    for (lineno0, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = lineno0 + 1;
        let trimmed = line.trim_end_matches('\r');
        if trimmed.is_empty() {
            continue;
        }
        if let Some(limit) = opts.vocab_limit {
            if stats.lines_read >= limit {
                break;
            }
        }
        stats.lines_read += 1;

        let mut fields = trimmed.split_whitespace();
        let token_raw = fields.next().expect("non-empty line has a first field");
        row.clear();
        for value in fields {
            match value.parse::<f32>() {
                Ok(x) if x.is_finite() => row.push(x),
                Ok(_) => {
                    return Err(EmbeddingError::NonFinite {
                        line: lineno,
                        token: token_raw.to_string(),
                    })
                }
                Err(_) => {
                    return Err(EmbeddingError::BadNumber {
                        line: lineno,
                        value: value.to_string(),
                    })
                }
            }
        }
        if row.is_empty() {
            return Err(EmbeddingError::MissingComponents { line: lineno });
        }
        match d {
            None => d = Some(row.len()),
            Some(expected) if expected != row.len() => {
                return Err(EmbeddingError::InconsistentDimension {
                    line: lineno,
                    expected,
                    found: row.len(),
                })
            }
            _ => {}
        }

        let token = if opts.lowercase {
            token_raw.to_lowercase()
        } else {
            token_raw.to_string()
        };
        if seen.contains(&token) {
            match opts.on_duplicate {
                DuplicatePolicy::KeepFirst => {
                    stats.dropped_duplicates += 1;
                    continue;
                }
                DuplicatePolicy::Error => {
                    return Err(EmbeddingError::DuplicateToken {
                        line: lineno,
                        token,
                    })
                }
            }
        }

        let norm2: f64 = row.iter().map(|&x| f64::from(x) * f64::from(x)).sum();
        if norm2 == 0.0 {
            match opts.on_zero_vector {
                ZeroVectorPolicy::Drop => {
                    stats.dropped_zero_vectors += 1;
                    continue;
                }
                ZeroVectorPolicy::Error => {
                    return Err(EmbeddingError::ZeroVector {
                        line: lineno,
                        token,
                    })
                }
            }
        }

        seen.insert(token.clone());
        words.push(token);
        flat.extend_from_slice(&row);
    }

    if stats.lines_read == 0 {
        return Err(EmbeddingError::EmptyInput);
    }
    let d = d.expect("at least one line was parsed");
    let store = EmbeddingStore::from_flat(words, flat, d, opts.lowercase)?;
    stats.loaded = store.m();
    Ok(LoadOutcome { store, stats })
}
