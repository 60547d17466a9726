//! Machine-readable run records.
//!
//! Field order is fixed by the struct definitions, so equal runs serialise to
//! identical bytes. Timings are opt-in because they never repeat exactly.

use serde::{Deserialize, Serialize};

use crate::colour::Branch;
use crate::decompose::{DecompositionResult, Mode, PipelineParams};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Family};
use crate::verify::VerificationReport;

pub const CSV_HEADER: &str = "n,seed,family,mode,branch,tree_count,millis";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum InputDescriptor {
    File { path: String },
    Generator { family: Family, n: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub millis: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub tree_count: usize,
    pub ell: Option<usize>,
    pub degenerate: bool,
    pub fallback: bool,
    pub diagnostics: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<StageTiming>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub n: usize,
    pub mode: Mode,
    pub branch: Option<Branch>,
    pub params: PipelineParams,
    pub seed: u64,
    pub trees: Vec<Vec<EdgeId>>,
    pub stats: RunStats,
    pub input: InputDescriptor,
    pub verification: VerificationReport,
    pub version: String,
}

impl RunRecord {
    pub fn new(
        n: usize,
        input: InputDescriptor,
        result: &DecompositionResult,
        verification: VerificationReport,
        with_timings: bool,
    ) -> Self {
        let timings = with_timings.then(|| {
            result
                .stats
                .timings
                .iter()
                .map(|(stage, d)| StageTiming {
                    stage: stage.clone(),
                    millis: d.as_secs_f64() * 1e3,
                })
                .collect()
        });
        RunRecord {
            n,
            mode: result.params.mode,
            branch: result.branch,
            params: result.params.clone(),
            seed: result.params.seed,
            trees: result.tree_edges(),
            stats: RunStats {
                tree_count: result.trees.len(),
                ell: result.stats.ell,
                degenerate: result.stats.degenerate,
                fallback: result.stats.fallback,
                diagnostics: result.stats.diagnostics.clone(),
                timings,
            },
            input,
            verification,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("run records always serialise");
        s.push('\n');
        s
    }
}

/// The part of a result file needed to re-check it. Unknown fields are
/// ignored so hand-written files with just `n` and `trees` also load.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct ResultFile {
    pub n: usize,
    pub trees: Vec<Vec<EdgeId>>,
}

pub fn parse_result_file(text: &str) -> Result<ResultFile> {
    serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CsvRow {
    pub n: usize,
    pub seed: u64,
    pub family: Family,
    pub mode: Mode,
    pub branch: Option<Branch>,
    pub tree_count: usize,
    pub millis: u128,
}

impl std::fmt::Display for CsvRow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let branch = self.branch.map_or(String::new(), |b| b.to_string());
        write!(
            f,
            "{},{},{},{},{},{},{}",
            self.n, self.seed, self.family, self.mode, branch, self.tree_count, self.millis
        )
    }
}
