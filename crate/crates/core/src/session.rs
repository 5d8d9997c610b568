//! Guided traversal state machine: questions, selections, weighted query
//! accumulation, and the two ways of finishing.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::advisor::{Advisor, Report};
use crate::bpm::NodeIdx;
use crate::embedding::{EmbeddingError, WeightedQuery};

const TEMPLATE_HEAD: &str = "Which of the following under";
const TEMPLATE_TAIL: &str = "are related to the intended application?";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SessionError {
    #[error("the BPM root has no children")]
    EmptyTree,
    #[error("session is closed")]
    SessionClosed,
    #[error("'{0}' is not one of the current options")]
    InvalidOption(String),
    #[error("nothing has been selected yet")]
    NothingSelected,
    #[error("'{0}' names more than one option; use the option id")]
    AmbiguousOption(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SessionState {
    AtNode(NodeIdx),
    AtScenarioChoice(NodeIdx),
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuestionKind {
    Node,
    Scenario,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuestionOption {
    pub id: String,
    pub number: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Question {
    pub kind: QuestionKind,
    pub node_id: String,
    pub text: String,
    pub options: Vec<QuestionOption>,
}

impl Question {
    /// Question text followed by the numbered options on one line.
    pub fn render(&self) -> String {
        let mut out = self.text.clone();
        for o in &self.options {
            out.push_str(&format!(" {}. {}", o.number, o.label));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranscriptEntry {
    pub question: String,
    pub option_id: String,
    pub answer: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolution {
    /// A scenario was picked at a leaf; the linked problem is used directly.
    Scenario,
    /// Early closure found a problem above the threshold.
    Match,
    /// Early closure found nothing above the threshold.
    NoMatch,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SessionResult {
    pub problem_id: Option<String>,
    pub resolution: Resolution,
    pub similarity: Option<f64>,
    pub path: Vec<String>,
    pub query: WeightedQuery,
    pub transcript: Vec<TranscriptEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightedTerm<'a> {
    pub term: &'a str,
    pub weight: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TranscriptExport<'a> {
    pub session_id: &'a str,
    pub path: &'a [String],
    pub questions_and_answers: &'a [TranscriptEntry],
    pub final_query_terms_with_weights: Vec<WeightedTerm<'a>>,
    pub result: Option<&'a Report>,
}

#[derive(Clone, Debug)]
pub struct Session {
    id: String,
    advisor: Arc<Advisor>,
    state: SessionState,
    path: Vec<String>,
    query: WeightedQuery,
    transcript: Vec<TranscriptEntry>,
    report: Option<Report>,
}

impl Session {
    pub fn start(advisor: Arc<Advisor>) -> Result<Self, SessionError> {
        let root = advisor.tree().root();
        if advisor.tree().node(root).is_leaf() {
            return Err(SessionError::EmptyTree);
        }
        Ok(Session {
            id: uuid::Uuid::new_v4().to_string(),
            advisor,
            state: SessionState::AtNode(root),
            path: vec![],
            query: WeightedQuery::default(),
            transcript: vec![],
            report: None,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn advisor(&self) -> &Arc<Advisor> {
        &self.advisor
    }

    pub fn state(&self) -> SessionState {
        self.state
    }

    pub fn is_closed(&self) -> bool {
        self.state == SessionState::Closed
    }

    /// Selected node ids, root excluded.
    pub fn path(&self) -> &[String] {
        &self.path
    }

    pub fn query(&self) -> &WeightedQuery {
        &self.query
    }

    pub fn transcript(&self) -> &[TranscriptEntry] {
        &self.transcript
    }

    pub fn report(&self) -> Option<&Report> {
        self.report.as_ref()
    }

    pub fn current_question(&self) -> Result<Question, SessionError> {
        let tree = self.advisor.tree();
        match self.state {
            SessionState::Closed => Err(SessionError::SessionClosed),
            SessionState::AtNode(idx) => {
                let node = tree.node(idx);
                let text = node
                    .question
                    .clone()
                    .unwrap_or_else(|| format!("{TEMPLATE_HEAD} {} {TEMPLATE_TAIL}", node.term));
                let options = tree
                    .children(idx)
                    .enumerate()
                    .map(|(i, c)| QuestionOption {
                        id: tree.node(c).id.clone(),
                        number: i + 1,
                        label: tree.node(c).term.clone(),
                    })
                    .collect();
                Ok(Question { kind: QuestionKind::Node, node_id: node.id.clone(), text, options })
            }
            SessionState::AtScenarioChoice(idx) => {
                let node = tree.node(idx);
                let text = node.question.clone().unwrap_or_else(|| {
                    format!("Which of the following scenarios under {} matches the intended application?", node.term)
                });
                let options = node
                    .problem_ids
                    .iter()
                    .enumerate()
                    .map(|(i, id)| QuestionOption { id: id.clone(), number: i + 1, label: self.scenario_label(id) })
                    .collect();
                Ok(Question { kind: QuestionKind::Scenario, node_id: node.id.clone(), text, options })
            }
        }
    }

    fn scenario_label(&self, problem_id: &str) -> String {
        // links were checked when the advisor was built
        let record = &self.advisor.db().get(problem_id).expect("linked problem").record;
        if record.scenario_text.trim().is_empty() { record.name.clone() } else { record.scenario_text.clone() }
    }

    /// Resolve user input (option id, 1-based number or label) to an option id.
    pub fn resolve_option(&self, input: &str) -> Result<String, SessionError> {
        let q = self.current_question()?;
        let input = input.trim();
        if let Some(o) = q.options.iter().find(|o| o.id == input) {
            return Ok(o.id.clone());
        }
        if let Some(o) = input.parse::<usize>().ok().and_then(|n| q.options.iter().find(|o| o.number == n)) {
            return Ok(o.id.clone());
        }
        let mut by_label = q.options.iter().filter(|o| o.label.eq_ignore_ascii_case(input));
        match (by_label.next(), by_label.next()) {
            (Some(o), None) => Ok(o.id.clone()),
            (Some(_), Some(_)) => Err(SessionError::AmbiguousOption(input.to_string())),
            _ => Err(SessionError::InvalidOption(input.to_string())),
        }
    }

    pub fn select_input(&mut self, input: &str) -> Result<(), SessionError> {
        let id = self.resolve_option(input)?;
        self.select(&id)
    }

    pub fn select(&mut self, option_id: &str) -> Result<(), SessionError> {
        let question = self.current_question()?;
        let option = question
            .options
            .iter()
            .find(|o| o.id == option_id)
            .ok_or_else(|| SessionError::InvalidOption(option_id.to_string()))?;
        let advisor = Arc::clone(&self.advisor);
        let tree = advisor.tree();
        match self.state {
            SessionState::AtNode(_) => {
                let child = tree.find(option_id).expect("option is a child node");
                let node = tree.node(child);
                let weight = advisor.weight(child).expect("child is not the root");
                self.query.push(node.term.to_lowercase(), weight, node.id.clone());
                self.path.push(node.id.clone());
                self.record(&question, option);
                self.state = if node.is_leaf() && !node.problem_ids.is_empty() {
                    SessionState::AtScenarioChoice(child)
                } else {
                    SessionState::AtNode(child)
                };
            }
            SessionState::AtScenarioChoice(leaf) => {
                let weight = advisor.weight(leaf).expect("leaf is not the root");
                self.query.push(option.label.to_lowercase(), weight, option.id.clone());
                self.record(&question, option);
                let result = self.result(Some(option.id.clone()), Resolution::Scenario, None);
                self.finish(result);
            }
            SessionState::Closed => unreachable!("current_question rejects closed sessions"),
        }
        Ok(())
    }

    fn record(&mut self, question: &Question, option: &QuestionOption) {
        self.transcript.push(TranscriptEntry {
            question: question.render(),
            option_id: option.id.clone(),
            answer: option.label.clone(),
        });
    }

    fn result(&self, problem_id: Option<String>, resolution: Resolution, similarity: Option<f64>) -> SessionResult {
        SessionResult {
            problem_id,
            resolution,
            similarity,
            path: self.path.clone(),
            query: self.query.clone(),
            transcript: self.transcript.clone(),
        }
    }

    fn finish(&mut self, result: SessionResult) {
        self.report = Some(self.advisor.report(result));
        self.state = SessionState::Closed;
    }

    /// End the session. Early closure matches the accumulated query against
    /// the problem database; a scenario-closed session keeps its problem.
    pub fn close(&mut self) -> Result<&SessionResult, SessionError> {
        if self.state != SessionState::Closed {
            if self.query.is_empty() {
                return Err(SessionError::NothingSelected);
            }
            let advisor = Arc::clone(&self.advisor);
            let hit = match advisor.model().embed_query(&self.query) {
                Ok(v) => advisor.index().best_match(&v, advisor.config().delta),
                Err(EmbeddingError::AllTermsOutOfVocabulary) => None,
                Err(e) => unreachable!("non-empty query: {e}"),
            };
            let result = match hit {
                Some(m) => self.result(Some(m.problem_id), Resolution::Match, Some(m.similarity)),
                None => self.result(None, Resolution::NoMatch, None),
            };
            self.finish(result);
        }
        Ok(&self.report.as_ref().expect("closed session has a report").result)
    }

    pub fn export(&self) -> TranscriptExport<'_> {
        TranscriptExport {
            session_id: &self.id,
            path: &self.path,
            questions_and_answers: &self.transcript,
            final_query_terms_with_weights: self
                .query
                .terms
                .iter()
                .map(|t| WeightedTerm { term: &t.text, weight: t.weight })
                .collect(),
            result: self.report.as_ref(),
        }
    }
}
