//! Analogy test-set parsing and vocabulary binding.
//!
//! Two formats are supported: section-oriented files of four-token items
//! ("A B C D" under ": <label>" headers) and a directory tree of pair files
//! ("left<TAB>right[/right...]") grouped into four categories. In both cases
//! an item maps onto roles (alpha, beta, a, targets) such that the two-hints
//! prediction a + beta - alpha aims at the final guessed word.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::EmbeddingStore;

#[derive(Debug, Error)]
pub enum TestsetError {
    #[error("line {line}: expected four tokens, found {found}")]
    BadItemLine { line: usize, found: usize },
    #[error("line {line}: item appears before any `: <label>` section header")]
    ItemBeforeSection { line: usize },
    #[error("line {line}: empty section label")]
    EmptySectionLabel { line: usize },
    #[error("line {line}: duplicate subset label `{label}`")]
    DuplicateSubset { label: String, line: usize },
    #[error("no directory matching `{key}` under {root}")]
    MissingCategory { key: String, root: PathBuf },
    #[error("{file}:{line}: missing tab separator")]
    MissingTab { file: PathBuf, line: usize },
    #[error("{file}:{line}: empty left-hand side")]
    EmptyLeft { file: PathBuf, line: usize },
    #[error("{file}:{line}: empty right-hand side")]
    EmptyRhs { file: PathBuf, line: usize },
    #[error("sample size must be at least 1")]
    InvalidSampleSize,
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// One test item: guess a word related to `a` the way `beta` relates to
/// `alpha`. Any token in `targets` counts as a correct answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalogyQuestion {
    pub alpha: String,
    pub beta: String,
    pub a: String,
    pub targets: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subset {
    pub label: String,
    pub questions: Vec<AnalogyQuestion>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestSet {
    pub name: String,
    pub subsets: Vec<Subset>,
}

/// A question resolved to store indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundQuestion {
    pub alpha_idx: usize,
    pub beta_idx: usize,
    pub a_idx: usize,
    pub target_idxs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSubset {
    pub label: String,
    pub questions: Vec<BoundQuestion>,
    /// Questions parsed from the source file(s).
    pub parsed: usize,
    /// Questions dropped because a role word or every target was missing
    /// from the vocabulary.
    pub skipped_oov: usize,
    /// Bound questions whose target set contains the cue word itself.
    pub target_is_a: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundTestSet {
    pub name: String,
    pub subsets: Vec<BoundSubset>,
}

/// How pair files expand into questions: every ordered pair of distinct
/// lines, or a seeded uniform sample of that universe per category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "policy")]
pub enum BatsPairing {
    AllPairs,
    Sample { k: usize, seed: u64 },
}

/// Parses section-oriented analogy files: `: <label>` starts a subset, item
/// lines hold four whitespace-separated tokens A B C D mapped to
/// (alpha=A, beta=B, a=C, targets={D}).
pub fn parse_gats<R: BufRead>(reader: R) -> Result<TestSet, TestsetError> {
    let mut subsets: Vec<Subset> = Vec::new();
    for (lineno0, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| TestsetError::Io {
            path: PathBuf::from("<stream>"),
            source,
        })?;
        let lineno = lineno0 + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix(':') {
            let label = rest.trim();
            if label.is_empty() {
                return Err(TestsetError::EmptySectionLabel { line: lineno });
            }
            if subsets.iter().any(|s| s.label == label) {
                return Err(TestsetError::DuplicateSubset {
                    label: label.to_string(),
                    line: lineno,
                });
            }
            subsets.push(Subset {
                label: label.to_string(),
                questions: Vec::new(),
            });
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 4 {
            return Err(TestsetError::BadItemLine {
                line: lineno,
                found: tokens.len(),
            });
        }
        let subset = subsets
            .last_mut()
            .ok_or(TestsetError::ItemBeforeSection { line: lineno })?;
        subset.questions.push(AnalogyQuestion {
            alpha: tokens[0].to_string(),
            beta: tokens[1].to_string(),
            a: tokens[2].to_string(),
            targets: vec![tokens[3].to_string()],
        });
    }
    Ok(TestSet {
        name: "GATS".to_string(),
        subsets,
    })
}

/// The four category directories expected under a BATS-style root, matched
/// case-insensitively by substring, in fixed report order.
const BATS_CATEGORIES: [(&str, &str); 4] = [
    ("inflectional", "Inflectional morphology"),
    ("derivational", "Derivational morphology"),
    ("encyclopedic", "Encyclopedic semantics"),
    ("lexicographic", "Lexicographic semantics"),
];

/// Loads a BATS-style directory tree. Each category becomes one subset;
/// within a pair file, every ordered pair of distinct lines (i, j) yields
/// one question with alpha=left_i, beta=first right_i, a=left_j and all
/// right_j forms as acceptable targets.
pub fn load_bats(root: &Path, pairing: &BatsPairing) -> Result<TestSet, TestsetError> {
    if let BatsPairing::Sample { k, .. } = pairing {
        if *k == 0 {
            return Err(TestsetError::InvalidSampleSize);
        }
    }

    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source: std::io::Error| TestsetError::Io { path, source }
    };

    let mut dirs: Vec<PathBuf> = Vec::new();
    for entry in std::fs::read_dir(root).map_err(io_err(root))? {
        let entry = entry.map_err(io_err(root))?;
        if entry.path().is_dir() {
            dirs.push(entry.path());
        }
    }
    dirs.sort();

    let mut subsets = Vec::new();
    for (cat_idx, (key, label)) in BATS_CATEGORIES.iter().enumerate() {
        let dir = dirs
            .iter()
            .find(|p| {
                p.file_name()
                    .map(|n| n.to_string_lossy().to_lowercase().contains(key))
                    .unwrap_or(false)
            })
            .ok_or_else(|| TestsetError::MissingCategory {
                key: key.to_string(),
                root: root.to_path_buf(),
            })?;

        let mut files: Vec<PathBuf> = Vec::new();
        for entry in std::fs::read_dir(dir).map_err(io_err(dir))? {
            let entry = entry.map_err(io_err(dir))?;
            if entry.path().is_file() {
                files.push(entry.path());
            }
        }
        files.sort();

        let mut questions = Vec::new();
        for file in &files {
            let pairs = parse_bats_pairs(file)?;
            for i in 0..pairs.len() {
                for j in 0..pairs.len() {
                    if i == j {
                        continue;
                    }
                    questions.push(AnalogyQuestion {
                        alpha: pairs[i].0.clone(),
                        beta: pairs[i].1[0].clone(),
                        a: pairs[j].0.clone(),
                        targets: pairs[j].1.clone(),
                    });
                }
            }
        }

        if let BatsPairing::Sample { k, seed } = pairing {
            if *k < questions.len() {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_stream(cat_idx as u64);
                let mut picked =
                    rand::seq::index::sample(&mut rng, questions.len(), *k).into_vec();
                picked.sort_unstable();
                questions = picked.into_iter().map(|i| questions[i].clone()).collect();
            }
        }

        subsets.push(Subset {
            label: label.to_string(),
            questions,
        });
    }

    Ok(TestSet {
        name: "BATS".to_string(),
        subsets,
    })
}

fn parse_bats_pairs(file: &Path) -> Result<Vec<(String, Vec<String>)>, TestsetError> {
    let reader = BufReader::new(File::open(file).map_err(|source| TestsetError::Io {
        path: file.to_path_buf(),
        source,
    })?);
    let mut pairs = Vec::new();
    for (lineno0, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| TestsetError::Io {
            path: file.to_path_buf(),
            source,
        })?;
        let lineno = lineno0 + 1;
        let trimmed = line.trim_end_matches('\r');
        if trimmed.trim().is_empty() {
            continue;
        }
        let (left, right) = trimmed.split_once('\t').ok_or_else(|| TestsetError::MissingTab {
            file: file.to_path_buf(),
            line: lineno,
        })?;
        let left = left.trim();
        if left.is_empty() {
            return Err(TestsetError::EmptyLeft {
                file: file.to_path_buf(),
                line: lineno,
            });
        }
        let mut forms: Vec<String> = Vec::new();
        for form in right.split('/') {
            let form = form.trim();
            if !form.is_empty() && !forms.iter().any(|f| f == form) {
                forms.push(form.to_string());
            }
        }
        if forms.is_empty() {
            return Err(TestsetError::EmptyRhs {
                file: file.to_path_buf(),
                line: lineno,
            });
        }
        pairs.push((left.to_string(), forms));
    }
    Ok(pairs)
}

/// Resolves every question against the store's vocabulary. A question binds
/// when alpha, beta, a and at least one target are present; everything else
/// is counted as skipped, never failed. Targets that fold to the same index
/// are deduplicated.
pub fn bind(raw: &TestSet, store: &EmbeddingStore) -> BoundTestSet {
    let mut subsets = Vec::with_capacity(raw.subsets.len());
    for subset in &raw.subsets {
        let mut questions = Vec::new();
        let mut skipped = 0usize;
        let mut target_is_a = 0usize;
        for q in &subset.questions {
            let roles = (
                store.lookup(&q.alpha),
                store.lookup(&q.beta),
                store.lookup(&q.a),
            );
            let (Some(alpha_idx), Some(beta_idx), Some(a_idx)) = roles else {
                skipped += 1;
                continue;
            };
            let mut target_idxs = Vec::with_capacity(q.targets.len());
            for t in &q.targets {
                if let Some(i) = store.lookup(t) {
                    if !target_idxs.contains(&i) {
                        target_idxs.push(i);
                    }
                }
            }
            if target_idxs.is_empty() {
                skipped += 1;
                continue;
            }
            if target_idxs.contains(&a_idx) {
                target_is_a += 1;
            }
            questions.push(BoundQuestion {
                alpha_idx,
                beta_idx,
                a_idx,
                target_idxs,
            });
        }
        subsets.push(BoundSubset {
            label: subset.label.clone(),
            parsed: subset.questions.len(),
            skipped_oov: skipped,
            target_is_a,
            questions,
        });
    }
    BoundTestSet {
        name: raw.name.clone(),
        subsets,
    }
}
