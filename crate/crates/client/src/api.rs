//! Request and response bodies of the HTTP API.

use serde::{Deserialize, Serialize};

pub use hintbits_core::embedding::{LoadOptions, LoadStats, RankQuery};
pub use hintbits_core::infotheory::DiceDemoReport;
pub use hintbits_core::report::{CurveBundle, ModelSummary, ReportBundle};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HealthResponse {
    pub status: String,
    pub version: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LoadEmbeddingsRequest {
    /// Path on the server's filesystem.
    pub path: String,
    #[serde(default)]
    pub options: LoadOptions,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StoreInfo {
    pub store_id: String,
    pub path: String,
    pub m: usize,
    pub d: usize,
    pub sha256: String,
    pub stats: LoadStats,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StoreListResponse {
    pub stores: Vec<StoreInfo>,
}

/// Either a store already loaded into the service or a path to load
/// (cached by content digest and options, so repeated loads are free).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EmbeddingsRef {
    Id { store_id: String },
    Load(LoadEmbeddingsRequest),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TestsetFormat {
    Gats,
    Bats,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalRequest {
    pub embeddings: EmbeddingsRef,
    /// File (gats) or directory root (bats) on the server's filesystem.
    pub testset_path: String,
    pub format: TestsetFormat,
    #[serde(default)]
    pub bias_bits: Option<f64>,
    #[serde(default)]
    pub i0_m: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Worker count hint; affects scheduling only, never report bytes.
    #[serde(default)]
    pub threads: Option<usize>,
    /// Per-category question sample size for bats; all pairs when absent.
    #[serde(default)]
    pub bats_sample: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalResponse {
    pub report: ReportBundle,
    pub wall_clock_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RankRequest {
    pub store_id: String,
    pub queries: Vec<RankQuery>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RankResponse {
    pub ranks: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimulateGameRequest {
    pub n: u64,
    pub g: u64,
    #[serde(default)]
    pub seed: u64,
    /// Sample points; log-spaced up to g when absent.
    #[serde(default)]
    pub checkpoints: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimulateGameResponse {
    pub curve: CurveBundle,
    pub wall_clock_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimulateModelRequest {
    pub m: usize,
    pub dim: usize,
    /// Per-coordinate noise scale; defaults to 0.01 * phi_norm.
    #[serde(default)]
    pub noise_sigma: Option<f64>,
    /// Offset magnitude; defaults to 1.
    #[serde(default)]
    pub phi_norm: Option<f64>,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimulateModelResponse {
    pub summary: ModelSummary,
    pub wall_clock_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiceDemoResponse {
    pub report: DiceDemoReport,
    pub text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ApiErrorKind {
    /// Malformed or out-of-range request parameters.
    InvalidParams,
    /// An input path could not be read or parsed.
    InputUnreadable,
    /// Unknown store id.
    NotFound,
    /// The evaluation bound zero questions in every subset.
    NoBoundQuestions,
    Internal,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ApiErrorDetail {
    pub kind: ApiErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ApiErrorBody {
    pub error: ApiErrorDetail,
}
