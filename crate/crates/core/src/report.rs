//! Run manifests and deterministic report rendering.
//!
//! Every report embeds the manifest that produced it: command, tool version,
//! resolved configuration, and input digests. Wall-clock time is tracked on
//! the manifest but never serialized, and execution-only knobs (thread
//! counts) are kept out of the config, so identical inputs and configuration
//! produce byte-identical reports at any parallelism level. CSV and the
//! JSON body carry full-precision values; Markdown rounds accuracies to one
//! decimal percent and bits to one decimal for eyeball comparison.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::experiments::{CurvePoint, SubsetReport};
use crate::infotheory::{DiceDemoReport, RankOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub config: serde_json::Value,
    pub inputs: Vec<InputDigest>,
    pub notes: Vec<String>,
    /// Wall-clock time of the producing run; reported out-of-band and kept
    /// out of serialized reports so identical inputs give identical bytes.
    #[serde(skip)]
    pub wall_clock: Option<Duration>,
}

impl RunManifest {
    pub fn new(command: &str, config: serde_json::Value, inputs: Vec<InputDigest>) -> Self {
        Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            inputs,
            notes: Vec::new(),
            wall_clock: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub manifest: RunManifest,
    pub rows: Vec<SubsetReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveBundle {
    pub manifest: RunManifest,
    pub points: Vec<CurvePoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistBucket {
    pub lo: u64,
    pub hi: u64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub manifest: RunManifest,
    pub m: usize,
    pub d: usize,
    pub phi_norm: f64,
    pub noise_sigma: f64,
    pub seed: u64,
    pub evaluated_pairs: usize,
    pub info_gain_bits: f64,
    pub max_rank: u64,
    pub rank_histogram: Vec<HistBucket>,
}

pub const CSV_HEADER: &str =
    "subset,g,skipped,soft_acc1,soft_acc2,hard_acc1,hard_acc2,delta_i1,delta_i2,i0";

pub const CURVE_CSV_HEADER: &str = "g,hard_acc,soft_acc";

fn manifest_comments(m: &RunManifest) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# command: {}", m.command);
    let _ = writeln!(out, "# version: {}", m.version);
    let _ = writeln!(
        out,
        "# config: {}",
        serde_json::to_string(&m.config).expect("config serializes")
    );
    for input in &m.inputs {
        let _ = writeln!(out, "# input: {} sha256={}", input.path, input.sha256);
    }
    for note in &m.notes {
        let _ = writeln!(out, "# note: {note}");
    }
    out
}

/// Full-precision CSV: `#`-prefixed manifest lines, one header row, then
/// one row per subset. LF endings, '.' decimal separator.
pub fn render_csv(bundle: &ReportBundle) -> String {
    let mut out = manifest_comments(&bundle.manifest);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &bundle.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.subset,
            r.g,
            r.skipped,
            r.soft_acc1,
            r.soft_acc2,
            r.hard_acc1,
            r.hard_acc2,
            r.delta_i1,
            r.delta_i2,
            r.i0
        );
    }
    out
}

/// One pretty-printed JSON object with "manifest" and "rows".
pub fn render_json(bundle: &ReportBundle) -> String {
    let mut out = serde_json::to_string_pretty(bundle).expect("bundle serializes");
    out.push('\n');
    out
}

/// Pipe table with accuracies as percentages (one decimal) and bits to one
/// decimal, mirroring the usual presentation of analogy-test results.
pub fn render_markdown(bundle: &ReportBundle) -> String {
    let mut out = String::new();
    let m = &bundle.manifest;
    let _ = writeln!(out, "# {} report", m.command);
    let _ = writeln!(out);
    let _ = writeln!(out, "- version: {}", m.version);
    let _ = writeln!(
        out,
        "- config: `{}`",
        serde_json::to_string(&m.config).expect("config serializes")
    );
    for input in &m.inputs {
        let _ = writeln!(out, "- input: `{}` sha256 `{}`", input.path, input.sha256);
    }
    for note in &m.notes {
        let _ = writeln!(out, "- note: {note}");
    }
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "| subset | g | skipped | soft acc1 (%) | soft acc2 (%) | hard acc1 (%) | hard acc2 (%) | dI1 (bits) | dI2 (bits) | I0 (bits) |"
    );
    let _ = writeln!(
        out,
        "|---|---:|---:|---:|---:|---:|---:|---:|---:|---:|"
    );
    for r in &bundle.rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {:.1} | {:.1} | {:.1} | {:.1} | {:.1} | {:.1} | {:.1} |",
            r.subset,
            r.g,
            r.skipped,
            r.soft_acc1 * 100.0,
            r.soft_acc2 * 100.0,
            r.hard_acc1 * 100.0,
            r.hard_acc2 * 100.0,
            r.delta_i1,
            r.delta_i2,
            r.i0
        );
    }
    out
}

/// Convergence-curve CSV with the same manifest comment block.
pub fn render_curve_csv(bundle: &CurveBundle) -> String {
    let mut out = manifest_comments(&bundle.manifest);
    out.push_str(CURVE_CSV_HEADER);
    out.push('\n');
    for p in &bundle.points {
        let _ = writeln!(out, "{},{},{}", p.g, p.hard_acc, p.soft_acc);
    }
    out
}

/// Pretty-printed JSON summary of a synthetic-model run.
pub fn render_model_summary(summary: &ModelSummary) -> String {
    let mut out = serde_json::to_string_pretty(summary).expect("summary serializes");
    out.push('\n');
    out
}

/// Plain-text walkthrough of the loaded-dice game.
pub fn dice_demo_text(demo: &DiceDemoReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Loaded-dice guessing game ({} faces)", demo.faces);
    let _ = writeln!(
        out,
        "true distribution: 1/6 1/24 1/3 1/12 1/3 1/24 (mean outcome 3.5)"
    );
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "no hints:  I0 = log2({}) = {:.6} bits, guesser accuracy acc0 = {:.6} (1/6)",
        demo.faces, demo.i0_bits, demo.acc0
    );
    let _ = writeln!(
        out,
        "h1 (true): outcomes concentrate around 3 and 4; the guesser bets on either"
    );
    let _ = writeln!(
        out,
        "           acc1 = {:.6} (5/24), I1 = {:.6} bits, effective cardinality C1 = {:.6}",
        demo.acc1, demo.i1_bits, demo.c1
    );
    let _ = writeln!(
        out,
        "           dI1 = I0 - I1 = {:.6} bits",
        demo.delta_i1_bits
    );
    let _ = writeln!(
        out,
        "h2 (false): outcomes said to favour 4, 5, 6; the guesser now bets on 4"
    );
    let _ = writeln!(
        out,
        "           acc2 = {:.6} (1/12), I2 = {:.6} bits, effective cardinality C2 = {:.6}",
        demo.acc2, demo.i2_bits, demo.c2
    );
    let _ = writeln!(
        out,
        "           dI2 = I1 - I2 = {:.6} bits",
        demo.delta_i2_bits
    );
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "the false hint expanded the search space: C2 = {:.0} exceeds even the {}-face die",
        demo.c2, demo.faces
    );
    out
}

/// Buckets ranks over {1..n} (default report granularity: 10 buckets), with
/// one overflow bucket when any rank exceeds n.
pub fn rank_histogram(ranks: &[RankOutcome], n: u64, buckets: usize) -> Vec<HistBucket> {
    assert!(n >= 1 && buckets >= 1);
    let buckets = buckets.min(n as usize);
    let width = n.div_ceil(buckets as u64);
    let mut out: Vec<HistBucket> = (0..buckets as u64)
        .map(|b| HistBucket {
            lo: b * width + 1,
            hi: ((b + 1) * width).min(n),
            count: 0,
        })
        .filter(|b| b.lo <= n)
        .collect();
    let mut overflow = 0usize;
    let mut max_rank = n;
    for r in ranks {
        let rank = r.rank();
        if rank > n {
            overflow += 1;
            max_rank = max_rank.max(rank);
            continue;
        }
        let idx = ((rank - 1) / width) as usize;
        out[idx].count += 1;
    }
    if overflow > 0 {
        out.push(HistBucket {
            lo: n + 1,
            hi: max_rank,
            count: overflow,
        });
    }
    out
}

/// SHA-256 of a file's raw bytes, hex-encoded.
pub fn sha256_file(path: &Path) -> std::io::Result<String> {
    let mut file = std::fs::File::open(path)?;
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 64 * 1024];
    loop {
        let n = file.read(&mut buf)?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hex::encode(hasher.finalize()))
}

/// Digest of a directory tree: relative paths and per-file content hashes,
/// folded in sorted path order.
pub fn sha256_tree(root: &Path) -> std::io::Result<String> {
    let mut hasher = Sha256::new();
    let walker = walkdir::WalkDir::new(root).sort_by_file_name();
    for entry in walker {
        let entry = entry.map_err(std::io::Error::other)?;
        if !entry.file_type().is_file() {
            continue;
        }
        let rel = entry
            .path()
            .strip_prefix(root)
            .unwrap_or(entry.path())
            .to_string_lossy()
            .replace('\\', "/");
        hasher.update(rel.as_bytes());
        hasher.update([0u8]);
        hasher.update(sha256_file(entry.path())?.as_bytes());
        hasher.update([0u8]);
    }
    Ok(hex::encode(hasher.finalize()))
}

/// Digest of an input path, file or directory.
pub fn sha256_path(path: &Path) -> std::io::Result<String> {
    if path.is_dir() {
        sha256_tree(path)
    } else {
        sha256_file(path)
    }
}
