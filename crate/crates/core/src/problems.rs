//! Curated computational-problem database.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bpm::BpmNode;
use crate::complexity::{parse_complexity, AlgebraError, ComplexityExpr};

#[derive(Debug, Error)]
pub enum ProblemDbError {
    #[error("problem DB schema error: {0}")]
    Schema(String),
    #[error("problem '{id}': cannot parse {field} at offset {position}: {source}")]
    ComplexityParse { id: String, field: &'static str, position: usize, source: AlgebraError },
    #[error("duplicate problem id '{0}'")]
    DuplicateId(String),
    #[error("node '{node}' links unknown problem '{problem}'")]
    DanglingProblemLink { node: String, problem: String },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResourceProfile {
    pub cpu_bound: bool,
    pub io_bound: bool,
    pub memory_bound: bool,
    pub intermediate_memory_high: bool,
    pub io_volume_high: bool,
}

impl ResourceProfile {
    /// All 32 flag combinations, in binary counting order.
    pub fn all() -> impl Iterator<Item = ResourceProfile> {
        (0u8..32).map(|bits| ResourceProfile {
            cpu_bound: bits & 1 != 0,
            io_bound: bits & 2 != 0,
            memory_bound: bits & 4 != 0,
            intermediate_memory_high: bits & 8 != 0,
            io_volume_high: bits & 16 != 0,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseStudy {
    pub title: String,
    pub url: String,
    pub context: String,
}

/// A problem record exactly as stored in the database file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemRecord {
    pub id: String,
    pub name: String,
    pub definition: String,
    pub scenario_text: String,
    pub cc_q: String,
    pub cc_c: String,
    #[serde(default)]
    pub kd: Vec<String>,
    pub profile: ResourceProfile,
    #[serde(default)]
    pub resource_estimate: Option<String>,
    #[serde(default)]
    pub case_studies: Vec<CaseStudy>,
}

/// A validated problem with parsed complexities.
#[derive(Clone, Debug)]
pub struct Problem {
    pub record: ProblemRecord,
    pub quantum: ComplexityExpr,
    pub classical: ComplexityExpr,
}

impl Problem {
    pub fn from_record(record: ProblemRecord) -> Result<Self, ProblemDbError> {
        if record.id.trim().is_empty() {
            return Err(ProblemDbError::Schema("problem with empty id".into()));
        }
        if record.definition.trim().is_empty() {
            return Err(ProblemDbError::Schema(format!("problem '{}' has an empty definition", record.id)));
        }
        let p = &record.profile;
        if !(p.cpu_bound || p.io_bound || p.memory_bound) {
            return Err(ProblemDbError::Schema(format!(
                "problem '{}' must be CPU, I/O or memory bound",
                record.id
            )));
        }
        let parse = |field: &'static str, text: &str| {
            parse_complexity(text).map_err(|source| ProblemDbError::ComplexityParse {
                id: record.id.clone(),
                field,
                position: source.position().unwrap_or(0),
                source,
            })
        };
        let quantum = parse("cc_q", &record.cc_q)?;
        let classical = parse("cc_c", &record.cc_c)?;
        Ok(Problem { record, quantum, classical })
    }

    pub fn id(&self) -> &str {
        &self.record.id
    }

    /// Text embedded for matching: definition, scenario and knowledge passages.
    pub fn embedding_source(&self) -> String {
        let mut parts = vec![self.record.definition.as_str(), self.record.scenario_text.as_str()];
        parts.extend(self.record.kd.iter().map(String::as_str));
        parts.join("\n")
    }
}

/// Immutable problem database indexed by id.
#[derive(Clone, Debug, Default)]
pub struct ProblemDb {
    problems: Vec<Problem>,
    by_id: HashMap<String, usize>,
}

pub fn load_problems(document: &str) -> Result<ProblemDb, ProblemDbError> {
    let records: Vec<ProblemRecord> =
        serde_json::from_str(document).map_err(|e| ProblemDbError::Schema(e.to_string()))?;
    ProblemDb::from_records(records)
}

impl ProblemDb {
    pub fn from_records(records: Vec<ProblemRecord>) -> Result<Self, ProblemDbError> {
        let mut db = ProblemDb::default();
        for record in records {
            if db.by_id.contains_key(&record.id) {
                return Err(ProblemDbError::DuplicateId(record.id));
            }
            let problem = Problem::from_record(record)?;
            db.by_id.insert(problem.id().to_string(), db.problems.len());
            db.problems.push(problem);
        }
        Ok(db)
    }

    pub fn len(&self) -> usize {
        self.problems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.problems.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Problem> {
        self.by_id.get(id).map(|&i| &self.problems[i])
    }

    pub fn contains(&self, id: &str) -> bool {
        self.by_id.contains_key(id)
    }

    /// Problems in file order.
    pub fn iter(&self) -> impl Iterator<Item = &Problem> {
        self.problems.iter()
    }

    /// Linked problems of a leaf, in declared order.
    pub fn problems_for_leaf(&self, leaf: &BpmNode) -> Result<Vec<&Problem>, ProblemDbError> {
        leaf.problem_ids
            .iter()
            .map(|id| {
                self.get(id).ok_or_else(|| ProblemDbError::DanglingProblemLink {
                    node: leaf.id.clone(),
                    problem: id.clone(),
                })
            })
            .collect()
    }

    /// Sorted-key JSON of the records.
    pub fn canonical_json(&self) -> String {
        let records: Vec<&ProblemRecord> = self.problems.iter().map(|p| &p.record).collect();
        crate::canonical_json(&records)
    }
}
