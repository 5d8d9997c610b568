//! Business-process-model hierarchy with subtree sizes and term weights.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BpmError {
    #[error("BPM schema error: {0}")]
    Schema(String),
    #[error("duplicate node id '{0}'")]
    DuplicateId(String),
    #[error("node '{node}' links unknown problem '{problem}'")]
    DanglingProblemLink { node: String, problem: String },
    #[error("node id '{0}' repeats one of its ancestors")]
    CycleDetected(String),
    #[error("unknown node '{0}'")]
    UnknownNode(String),
    #[error("the root carries no weight")]
    RootHasNoWeight,
}

/// Node as it appears in a BPM document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BpmNodeDoc {
    pub id: String,
    pub term: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub question: Option<String>,
    #[serde(default)]
    pub children: Vec<BpmNodeDoc>,
    #[serde(default)]
    pub problem_ids: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BpmDocument {
    pub version: String,
    pub root: BpmNodeDoc,
}

/// Index of a node inside a [`BpmTree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeIdx(usize);

#[derive(Clone, Debug)]
pub struct BpmNode {
    pub id: String,
    pub term: String,
    pub question: Option<String>,
    pub problem_ids: Vec<String>,
    pub depth: usize,
    parent: Option<NodeIdx>,
    children: Vec<NodeIdx>,
}

impl BpmNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// Logarithm base used for term weights.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    Two,
    E,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }
}

/// Validated, immutable BPM tree with node count and subtree sizes.
#[derive(Clone, Debug)]
pub struct BpmTree {
    version: String,
    nodes: Vec<BpmNode>,
    subtree: Vec<usize>,
    by_id: HashMap<String, NodeIdx>,
}

pub fn load_bpm(document: &str) -> Result<BpmTree, BpmError> {
    let doc: BpmDocument = serde_json::from_str(document).map_err(|e| BpmError::Schema(e.to_string()))?;
    BpmTree::from_document(doc)
}

impl BpmTree {
    pub fn from_document(doc: BpmDocument) -> Result<Self, BpmError> {
        let mut tree = BpmTree { version: doc.version, nodes: Vec::new(), subtree: Vec::new(), by_id: HashMap::new() };
        let mut ancestors = HashSet::new();
        tree.insert(doc.root, None, 0, &mut ancestors)?;
        tree.subtree = vec![1; tree.nodes.len()];
        // children always have larger indices than their parent
        for i in (1..tree.nodes.len()).rev() {
            if let Some(NodeIdx(p)) = tree.nodes[i].parent {
                tree.subtree[p] += tree.subtree[i];
            }
        }
        Ok(tree)
    }

    fn insert(
        &mut self,
        doc: BpmNodeDoc,
        parent: Option<NodeIdx>,
        depth: usize,
        ancestors: &mut HashSet<String>,
    ) -> Result<NodeIdx, BpmError> {
        if doc.id.trim().is_empty() {
            return Err(BpmError::Schema("node with empty id".into()));
        }
        if doc.term.trim().is_empty() {
            return Err(BpmError::Schema(format!("node '{}' has an empty term", doc.id)));
        }
        if ancestors.contains(&doc.id) {
            return Err(BpmError::CycleDetected(doc.id));
        }
        if self.by_id.contains_key(&doc.id) {
            return Err(BpmError::DuplicateId(doc.id));
        }
        if !doc.children.is_empty() && !doc.problem_ids.is_empty() {
            return Err(BpmError::Schema(format!("internal node '{}' must not link problems", doc.id)));
        }
        let idx = NodeIdx(self.nodes.len());
        self.by_id.insert(doc.id.clone(), idx);
        self.nodes.push(BpmNode {
            id: doc.id.clone(),
            term: doc.term,
            question: doc.question,
            problem_ids: doc.problem_ids,
            depth,
            parent,
            children: Vec::new(),
        });
        ancestors.insert(doc.id.clone());
        for child in doc.children {
            let c = self.insert(child, Some(idx), depth + 1, ancestors)?;
            self.nodes[idx.0].children.push(c);
        }
        ancestors.remove(&doc.id);
        Ok(idx)
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn root(&self) -> NodeIdx {
        NodeIdx(0)
    }

    /// Total number of nodes, root included.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, idx: NodeIdx) -> &BpmNode {
        &self.nodes[idx.0]
    }

    pub fn find(&self, id: &str) -> Option<NodeIdx> {
        self.by_id.get(id).copied()
    }

    pub fn children(&self, idx: NodeIdx) -> impl Iterator<Item = NodeIdx> + '_ {
        self.nodes[idx.0].children.iter().copied()
    }

    pub fn parent(&self, idx: NodeIdx) -> Option<NodeIdx> {
        self.nodes[idx.0].parent
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeIdx> {
        (0..self.nodes.len()).map(NodeIdx)
    }

    /// Δ(x): number of nodes in the subtree rooted at `idx`.
    pub fn subtree_size(&self, idx: NodeIdx) -> usize {
        self.subtree[idx.0]
    }

    /// α(x) = log2(N / (Δ(x) + 1)).
    pub fn term_weight(&self, idx: NodeIdx) -> Result<f64, BpmError> {
        self.term_weight_in(idx, LogBase::Two)
    }

    pub fn term_weight_in(&self, idx: NodeIdx, base: LogBase) -> Result<f64, BpmError> {
        if idx == self.root() {
            return Err(BpmError::RootHasNoWeight);
        }
        let n = self.node_count() as f64;
        Ok(base.log(n / (self.subtree_size(idx) as f64 + 1.0)))
    }

    pub fn leaves(&self) -> impl Iterator<Item = NodeIdx> + '_ {
        self.iter().filter(|i| self.node(*i).is_leaf())
    }

    /// Leaves that link no problem.
    pub fn unlinked_leaves(&self) -> Vec<&BpmNode> {
        self.leaves().map(|i| self.node(i)).filter(|n| n.problem_ids.is_empty()).collect()
    }

    /// Every linked problem id must satisfy `exists`.
    pub fn check_links(&self, exists: impl Fn(&str) -> bool) -> Result<(), BpmError> {
        for node in &self.nodes {
            if let Some(missing) = node.problem_ids.iter().find(|p| !exists(p)) {
                return Err(BpmError::DanglingProblemLink { node: node.id.clone(), problem: missing.clone() });
            }
        }
        Ok(())
    }

    /// Nodes from the root's child down to `idx`.
    pub fn path_to(&self, idx: NodeIdx) -> Vec<NodeIdx> {
        let mut path = vec![idx];
        let mut cur = idx;
        while let Some(p) = self.parent(cur) {
            path.push(p);
            cur = p;
        }
        path.pop();
        path.reverse();
        path
    }

    /// Nested view for rendering clients.
    pub fn to_view(&self) -> BpmNodeView {
        self.view(self.root())
    }

    fn view(&self, idx: NodeIdx) -> BpmNodeView {
        let node = self.node(idx);
        BpmNodeView {
            id: node.id.clone(),
            term: node.term.clone(),
            question: node.question.clone(),
            subtree_size: self.subtree_size(idx),
            weight: self.term_weight(idx).ok(),
            problem_ids: node.problem_ids.clone(),
            children: self.children(idx).map(|c| self.view(c)).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BpmNodeView {
    pub id: String,
    pub term: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub question: Option<String>,
    pub subtree_size: usize,
    pub weight: Option<f64>,
    pub problem_ids: Vec<String>,
    pub children: Vec<BpmNodeView>,
}
