//! Loaded fixtures plus matching configuration, shared by all sessions.

use std::sync::Arc;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bpm::{load_bpm, BpmError, BpmTree, LogBase, NodeIdx};
use crate::complexity::Speedup;
use crate::embedding::{load_embeddings, EmbeddingError, EmbeddingModel, ProblemIndex};
use crate::fixtures;
use crate::problems::{load_problems, ProblemDb, ProblemDbError};
use crate::recommend::{classify, derive_constraints, Recommendation};
use crate::session::{Session, SessionError, SessionResult};

pub const DEFAULT_DELTA: f64 = 0.35;

#[derive(Debug, Error)]
pub enum AdvisorError {
    #[error(transparent)]
    Bpm(#[from] BpmError),
    #[error(transparent)]
    ProblemDb(#[from] ProblemDbError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("similarity threshold {0} is outside [0, 1]")]
    InvalidDelta(f64),
    #[error("unknown problem '{0}'")]
    UnknownProblem(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AdvisorConfig {
    pub delta: f64,
    pub log_base: LogBase,
}

impl Default for AdvisorConfig {
    fn default() -> Self {
        AdvisorConfig { delta: DEFAULT_DELTA, log_base: LogBase::Two }
    }
}

/// Final output of a session: how it ended, the recommendation, and the
/// speedup behind it when one was computed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub result: SessionResult,
    pub recommendation: Recommendation,
    pub speedup: Option<Speedup>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightRow {
    pub id: String,
    pub term: String,
    pub depth: usize,
    pub subtree_size: usize,
    pub weight: Option<f64>,
}

#[derive(Debug)]
pub struct Advisor {
    tree: BpmTree,
    db: ProblemDb,
    model: EmbeddingModel,
    index: ProblemIndex,
    config: AdvisorConfig,
    version: String,
}

impl Advisor {
    pub fn new(tree: BpmTree, db: ProblemDb, model: EmbeddingModel, config: AdvisorConfig) -> Result<Self, AdvisorError> {
        if !(0.0..=1.0).contains(&config.delta) {
            return Err(AdvisorError::InvalidDelta(config.delta));
        }
        tree.check_links(|id| db.contains(id))?;
        let index = ProblemIndex::build(&db, &model);
        Ok(Advisor { tree, db, model, index, config, version: String::new() })
    }

    /// Parse all three fixture texts; the version is a digest of them.
    pub fn from_sources(bpm: &str, problems: &str, embeddings: &str, config: AdvisorConfig) -> Result<Self, AdvisorError> {
        let tree = load_bpm(bpm)?;
        let db = load_problems(problems)?;
        let model = load_embeddings(embeddings.as_bytes())?;
        let mut advisor = Advisor::new(tree, db, model, config)?;
        let mut hasher = Sha256::new();
        for part in [bpm, problems, embeddings] {
            hasher.update((part.len() as u64).to_le_bytes());
            hasher.update(part.as_bytes());
        }
        advisor.version = hex::encode(&hasher.finalize()[..8]);
        Ok(advisor)
    }

    pub fn bundled(config: AdvisorConfig) -> Result<Self, AdvisorError> {
        Advisor::from_sources(fixtures::BPM, fixtures::PROBLEMS, fixtures::EMBEDDINGS, config)
    }

    pub fn tree(&self) -> &BpmTree {
        &self.tree
    }

    pub fn db(&self) -> &ProblemDb {
        &self.db
    }

    pub fn model(&self) -> &EmbeddingModel {
        &self.model
    }

    pub fn index(&self) -> &ProblemIndex {
        &self.index
    }

    pub fn config(&self) -> AdvisorConfig {
        self.config
    }

    /// Short digest of the fixture sources; empty when built from parts.
    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn weight(&self, idx: NodeIdx) -> Result<f64, BpmError> {
        self.tree.term_weight_in(idx, self.config.log_base)
    }

    pub fn weights(&self) -> Vec<WeightRow> {
        self.tree
            .iter()
            .map(|idx| {
                let node = self.tree.node(idx);
                WeightRow {
                    id: node.id.clone(),
                    term: node.term.clone(),
                    depth: node.depth,
                    subtree_size: self.tree.subtree_size(idx),
                    weight: self.weight(idx).ok(),
                }
            })
            .collect()
    }

    pub fn start(self: &Arc<Self>) -> Result<Session, SessionError> {
        Session::start(Arc::clone(self))
    }

    /// Recommendation for a problem taken straight from the database.
    pub fn recommend_problem(&self, id: &str) -> Result<(Recommendation, Option<Speedup>), AdvisorError> {
        let problem = self.db.get(id).ok_or_else(|| AdvisorError::UnknownProblem(id.to_string()))?;
        Ok((classify(problem), derive_constraints(problem).ok().map(|(_, s)| s)))
    }

    pub fn report(&self, result: SessionResult) -> Report {
        match result.problem_id.as_deref().and_then(|id| self.db.get(id)) {
            Some(problem) => Report {
                speedup: derive_constraints(problem).ok().map(|(_, s)| s),
                recommendation: classify(problem),
                result,
            },
            None => Report {
                recommendation: Recommendation::fallback(Some(format!(
                    "no problem reached the similarity threshold {}",
                    self.config.delta
                ))),
                speedup: None,
                result,
            },
        }
    }

    /// Replay `path` (option ids, 1-based numbers or labels), then either
    /// pick `scenario` at the leaf or close early.
    pub fn replay(self: &Arc<Self>, path: &[&str], scenario: Option<&str>) -> Result<Report, SessionError> {
        let mut session = self.start()?;
        for step in path {
            session.select_input(step)?;
        }
        if let Some(choice) = scenario {
            session.select_input(choice)?;
        }
        session.close()?;
        session.report().cloned().ok_or(SessionError::SessionClosed)
    }
}
