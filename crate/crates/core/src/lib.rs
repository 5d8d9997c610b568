//! Quantum business-requirement advisor: BPM traversal, weighted-query
//! problem matching, quantum speedup calculus and recommendation rules.

pub mod advisor;
pub mod bpm;
pub mod complexity;
pub mod embedding;
pub mod fixtures;
pub mod problems;
pub mod recommend;
pub mod session;

use serde::Serialize;

pub use advisor::{Advisor, AdvisorConfig, AdvisorError};
pub use bpm::{load_bpm, BpmError, BpmTree, LogBase};
pub use embedding::{load_embeddings, EmbeddingError, EmbeddingModel, WeightedQuery};
pub use problems::{load_problems, ProblemDb, ProblemDbError};
pub use recommend::{Case, ConstraintVector, Recommendation};
pub use session::{Session, SessionError, SessionResult};

/// Compact JSON with object keys sorted, for byte-stable output.
pub fn canonical_json<T: Serialize + ?Sized>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("serializable value");
    serde_json::to_string(&value).expect("JSON value")
}

/// Indented variant of [`canonical_json`].
pub fn canonical_json_pretty<T: Serialize + ?Sized>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("serializable value");
    serde_json::to_string_pretty(&value).expect("JSON value")
}
