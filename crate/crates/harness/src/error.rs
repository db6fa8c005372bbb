// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

/// Errors surfaced by the harness and the `pbit` binary.
#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] pbit_core::Error),

    #[error("unknown benchmark `{0}`")]
    UnknownBenchmark(String),

    #[error("graph file for {name} not found (looked in {dirs}); set --graph-dir or PBIT_GRAPH_DIR")]
    GraphNotFound { name: String, dirs: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Graph {
        path: PathBuf,
        #[source]
        source: pbit_core::Error,
    },

    #[error("{0}")]
    Usage(String),

    #[error("sweep spec line {line}: {reason}")]
    Spec { line: usize, reason: String },

    #[error("schema mismatch: {0}")]
    Schema(String),

    #[error("run {run_id} ({config}) failed: {source}")]
    RunFailed {
        run_id: u64,
        config: String,
        #[source]
        source: Box<HarnessError>,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    /// Process exit code: 2 for bad input or configuration, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Core(pbit_core::Error::UnknownBenchmark(_))
            | HarnessError::Core(pbit_core::Error::InvalidParameter { .. })
            | HarnessError::UnknownBenchmark(_)
            | HarnessError::GraphNotFound { .. }
            | HarnessError::Graph { .. }
            | HarnessError::Usage(_)
            | HarnessError::Spec { .. }
            | HarnessError::Schema(_) => 2,
            HarnessError::RunFailed { source, .. } => source.exit_code().max(1),
            _ => 1,
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
