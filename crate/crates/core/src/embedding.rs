//! Word-vector model, weighted query embedding and threshold-gated matching.

use std::collections::HashMap;
use std::io::BufRead;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::problems::ProblemDb;

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("line {line}: expected {expected} components, found {found}")]
    DimensionMismatch { line: usize, expected: usize, found: usize },
    #[error("line {line}: invalid number '{value}'")]
    InvalidNumber { line: usize, value: String },
    #[error("embedding model is empty")]
    EmptyModel,
    #[error("no token of '{0}' is in the vocabulary")]
    AllTokensOutOfVocabulary(String),
    #[error("no query term is in the vocabulary")]
    AllTermsOutOfVocabulary,
    #[error("query has no terms")]
    EmptyQuery,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Token → vector table with a fixed dimension.
#[derive(Clone, Debug)]
pub struct EmbeddingModel {
    dim: usize,
    table: HashMap<String, Vec<f64>>,
}

/// Read the `token v1 v2 ... vD` text format.
pub fn load_embeddings(reader: impl BufRead) -> Result<EmbeddingModel, EmbeddingError> {
    let mut dim = None;
    let mut table = HashMap::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        let mut parts = line.split_whitespace();
        let Some(token) = parts.next() else { continue };
        let values = parts
            .map(|v| v.parse::<f64>().map_err(|_| EmbeddingError::InvalidNumber { line: line_no, value: v.to_string() }))
            .collect::<Result<Vec<_>, _>>()?;
        let expected = *dim.get_or_insert(values.len());
        if values.len() != expected || expected == 0 {
            return Err(EmbeddingError::DimensionMismatch { line: line_no, expected, found: values.len() });
        }
        table.entry(token.to_lowercase()).or_insert(values);
    }
    match dim {
        Some(dim) if !table.is_empty() => Ok(EmbeddingModel { dim, table }),
        _ => Err(EmbeddingError::EmptyModel),
    }
}

pub fn tokenize(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric()).filter(|t| !t.is_empty()).map(str::to_lowercase)
}

impl FromStr for EmbeddingModel {
    type Err = EmbeddingError;

    fn from_str(text: &str) -> Result<Self, EmbeddingError> {
        load_embeddings(text.as_bytes())
    }
}

impl EmbeddingModel {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn vector(&self, token: &str) -> Option<&[f64]> {
        self.table.get(&token.to_lowercase()).map(Vec::as_slice)
    }

    /// Mean vector of the in-vocabulary tokens of `text`.
    pub fn embed_text(&self, text: &str) -> Result<Vec<f64>, EmbeddingError> {
        let mut sum = vec![0.0; self.dim];
        let mut count = 0usize;
        for token in tokenize(text) {
            if let Some(v) = self.table.get(&token) {
                sum.iter_mut().zip(v).for_each(|(s, x)| *s += x);
                count += 1;
            }
        }
        if count == 0 {
            return Err(EmbeddingError::AllTokensOutOfVocabulary(text.to_string()));
        }
        sum.iter_mut().for_each(|s| *s /= count as f64);
        Ok(sum)
    }

    /// `(1/s) Σ α(x)·em(x)` over the terms that have an embedding.
    pub fn embed_query(&self, query: &WeightedQuery) -> Result<Vec<f64>, EmbeddingError> {
        if query.terms.is_empty() {
            return Err(EmbeddingError::EmptyQuery);
        }
        let mut sum = vec![0.0; self.dim];
        let mut s = 0usize;
        for term in &query.terms {
            let Ok(v) = self.embed_text(&term.text) else { continue };
            sum.iter_mut().zip(&v).for_each(|(acc, x)| *acc += term.weight * x);
            s += 1;
        }
        if s == 0 {
            return Err(EmbeddingError::AllTermsOutOfVocabulary);
        }
        sum.iter_mut().for_each(|x| *x /= s as f64);
        Ok(sum)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QueryTerm {
    pub text: String,
    pub weight: f64,
    /// Node or problem the term came from.
    pub source: String,
}

/// Accumulated weighted query; one term per selection.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct WeightedQuery {
    pub terms: Vec<QueryTerm>,
}

impl WeightedQuery {
    pub fn push(&mut self, text: impl Into<String>, weight: f64, source: impl Into<String>) {
        debug_assert!(weight.is_finite() && weight >= 0.0);
        self.terms.push(QueryTerm { text: text.into(), weight, source: source.into() });
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: f64) -> WeightedQuery {
        WeightedQuery {
            terms: self.terms.iter().map(|t| QueryTerm { weight: t.weight * c, ..t.clone() }).collect(),
        }
    }
}

pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    (dot / (na * nb)).clamp(-1.0, 1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Match {
    pub problem_id: String,
    pub similarity: f64,
}

/// Precomputed problem embeddings for repeated matching.
#[derive(Clone, Debug)]
pub struct ProblemIndex {
    entries: Vec<(String, Vec<f64>)>,
}

impl ProblemIndex {
    /// Problems whose text has no in-vocabulary token are left out.
    pub fn build(db: &ProblemDb, model: &EmbeddingModel) -> Self {
        let mut entries: Vec<(String, Vec<f64>)> = db
            .iter()
            .filter_map(|p| model.embed_text(&p.embedding_source()).ok().map(|v| (p.id().to_string(), v)))
            .collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        ProblemIndex { entries }
    }

    pub fn embedding(&self, id: &str) -> Option<&[f64]> {
        self.entries.iter().find(|(pid, _)| pid == id).map(|(_, v)| v.as_slice())
    }

    pub fn similarities<'a>(&'a self, query: &'a [f64]) -> impl Iterator<Item = (&'a str, f64)> + 'a {
        self.entries.iter().map(move |(id, v)| (id.as_str(), cosine(v, query)))
    }

    /// Highest-cosine problem if it reaches `delta`; ties go to the smallest id.
    pub fn best_match(&self, query: &[f64], delta: f64) -> Option<Match> {
        let mut best: Option<(&str, f64)> = None;
        // entries are sorted by id, so a strict comparison keeps the smallest id on ties
        for (id, sim) in self.similarities(query) {
            if best.is_none_or(|(_, b)| sim > b) {
                best = Some((id, sim));
            }
        }
        best.filter(|(_, sim)| *sim >= delta).map(|(id, sim)| Match { problem_id: id.to_string(), similarity: sim })
    }
}

pub fn match_query(query: &[f64], db: &ProblemDb, model: &EmbeddingModel, delta: f64) -> Option<Match> {
    ProblemIndex::build(db, model).best_match(query, delta)
}
