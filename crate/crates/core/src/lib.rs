//! Measures, in bits, how much each hint of a word-analogy test actually
//! contributes, by turning exact target ranks into a bias-compensated
//! soft-accuracy estimate.
//!
//! The pipeline: load a plain-text embedding into an [`embedding::EmbeddingStore`],
//! bind an analogy test set to it ([`testsets`]), run the single-hint and
//! two-hints guessing games ([`experiments`]), and convert the resulting rank
//! outcomes into accuracies and information deltas ([`infotheory`]). The
//! [`report`] module renders deterministic CSV/JSON/Markdown reports.

pub mod embedding;
pub mod experiments;
pub mod infotheory;
pub mod report;
pub mod testsets;
