//! Logic tree data model.
//!
//! A report's reasoning structure is held as a rooted tree: argument nodes
//! carry claims, hypotheses or analytical insights and may have children;
//! evidence nodes carry concrete factual statements and are always leaves.
//! Trees are immutable once built; validation reports violations as data
//! rather than failing, so callers can surface every problem at once.

mod doc;
mod stats;

pub use doc::{deserialize_tree, serialize_tree, DocError};
pub use stats::{compute_stats, TreeStats};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Stable opaque identifier of a node within one tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        Self(s.to_string())
    }
}

impl From<String> for NodeId {
    fn from(s: String) -> Self {
        Self(s)
    }
}

/// Node taxonomy: claims and insights vs. concrete factual statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeType {
    Argument,
    Evidence,
}

impl fmt::Display for NodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeType::Argument => f.write_str("argument"),
            NodeType::Evidence => f.write_str("evidence"),
        }
    }
}

/// Verdict on whether an argument is backed by its subordinate nodes.
///
/// `rationale` must be present and non-empty whenever `supported` is false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportAnnotation {
    pub supported: bool,
    pub rationale: Option<String>,
}

impl SupportAnnotation {
    pub fn supported() -> Self {
        Self {
            supported: true,
            rationale: None,
        }
    }

    pub fn unsupported(rationale: impl Into<String>) -> Self {
        Self {
            supported: false,
            rationale: Some(rationale.into()),
        }
    }
}

/// One node of a logic tree. Children are ordered (document order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicNode {
    pub id: NodeId,
    pub node_type: NodeType,
    pub text: String,
    pub children: Vec<NodeId>,
    pub support: Option<SupportAnnotation>,
}

impl LogicNode {
    pub fn argument(id: impl Into<NodeId>, text: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            node_type: NodeType::Argument,
            text: text.into(),
            children: Vec::new(),
            support: None,
        }
    }

    pub fn evidence(id: impl Into<NodeId>, text: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            node_type: NodeType::Evidence,
            text: text.into(),
            children: Vec::new(),
            support: None,
        }
    }

    pub fn with_children<I, T>(mut self, children: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<NodeId>,
    {
        self.children = children.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_support(mut self, support: SupportAnnotation) -> Self {
        self.support = Some(support);
        self
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// Error raised when assembling a tree from a node list.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("duplicate node id `{0}`")]
    DuplicateId(NodeId),
}

/// A rooted tree of logic nodes keyed by id.
///
/// The node map may hold structurally broken data (cycles, orphans, bad
/// types); [`validate_tree`] reports all violations. Operations that require
/// a valid tree state that precondition explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicTree {
    root: NodeId,
    nodes: BTreeMap<NodeId, LogicNode>,
}

impl LogicTree {
    /// Assembles a tree from a root id and a node list. The only check
    /// performed here is id uniqueness; run [`validate_tree`] for the rest.
    pub fn from_nodes<I>(root: impl Into<NodeId>, nodes: I) -> Result<Self, BuildError>
    where
        I: IntoIterator<Item = LogicNode>,
    {
        let mut map = BTreeMap::new();
        for node in nodes {
            let id = node.id.clone();
            if map.insert(id.clone(), node).is_some() {
                return Err(BuildError::DuplicateId(id));
            }
        }
        Ok(Self {
            root: root.into(),
            nodes: map,
        })
    }

    pub fn root_id(&self) -> &NodeId {
        &self.root
    }

    pub fn root(&self) -> Option<&LogicNode> {
        self.nodes.get(&self.root)
    }

    pub fn get(&self, id: &NodeId) -> Option<&LogicNode> {
        self.nodes.get(id)
    }

    pub fn get_mut(&mut self, id: &NodeId) -> Option<&mut LogicNode> {
        self.nodes.get_mut(id)
    }

    /// Nodes in id order.
    pub fn nodes(&self) -> impl Iterator<Item = &LogicNode> {
        self.nodes.values()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Ids in depth-first pre-order from the root. Valid trees only: the
    /// walk assumes all child ids resolve and no cycles exist.
    pub fn preorder_ids(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root.clone()];
        while let Some(id) = stack.pop() {
            if let Some(node) = self.nodes.get(&id) {
                stack.extend(node.children.iter().rev().cloned());
            }
            out.push(id);
        }
        out
    }

    /// Convenience wrapper turning violations into an error.
    pub fn validate(&self) -> Result<(), InvalidTree> {
        let violations = validate_tree(self);
        if violations.is_empty() {
            Ok(())
        } else {
            Err(InvalidTree { violations })
        }
    }
}

/// A single invariant violation, carrying the offending node id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// Root id or child id that does not resolve in the node map.
    UnresolvedId {
        id: NodeId,
        referenced_by: Option<NodeId>,
    },
    /// Node text is empty after whitespace trimming.
    EmptyText { id: NodeId },
    /// Evidence nodes must be leaves.
    EvidenceWithChildren { id: NodeId },
    /// Support annotations belong to argument nodes only.
    SupportOnEvidence { id: NodeId },
    /// An unsupported verdict must carry a non-empty rationale.
    MissingRationale { id: NodeId },
    /// The root must be an argument node.
    RootNotArgument { id: NodeId },
    /// The root must not appear as anyone's child.
    RootHasParent { id: NodeId },
    /// A non-root node referenced as a child more than once.
    MultipleParents { id: NodeId },
    /// A non-root node never referenced as a child.
    Orphan { id: NodeId },
    /// A node reachable from itself through child edges.
    Cycle { id: NodeId },
}

impl Violation {
    /// Id of the offending node.
    pub fn node_id(&self) -> &NodeId {
        match self {
            Violation::UnresolvedId { id, .. }
            | Violation::EmptyText { id }
            | Violation::EvidenceWithChildren { id }
            | Violation::SupportOnEvidence { id }
            | Violation::MissingRationale { id }
            | Violation::RootNotArgument { id }
            | Violation::RootHasParent { id }
            | Violation::MultipleParents { id }
            | Violation::Orphan { id }
            | Violation::Cycle { id } => id,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnresolvedId {
                id,
                referenced_by: Some(parent),
            } => write!(f, "node `{parent}` references unknown child `{id}`"),
            Violation::UnresolvedId {
                id,
                referenced_by: None,
            } => write!(f, "root id `{id}` does not resolve"),
            Violation::EmptyText { id } => write!(f, "node `{id}` has empty text"),
            Violation::EvidenceWithChildren { id } => {
                write!(f, "evidence node `{id}` has children")
            }
            Violation::SupportOnEvidence { id } => {
                write!(f, "evidence node `{id}` carries a support annotation")
            }
            Violation::MissingRationale { id } => {
                write!(f, "unsupported node `{id}` lacks a rationale")
            }
            Violation::RootNotArgument { id } => {
                write!(f, "root must be an argument node, `{id}` is evidence")
            }
            Violation::RootHasParent { id } => write!(f, "root `{id}` appears as a child"),
            Violation::MultipleParents { id } => write!(f, "node `{id}` has multiple parents"),
            Violation::Orphan { id } => write!(f, "node `{id}` is unreachable from the root"),
            Violation::Cycle { id } => write!(f, "cycle: node `{id}` is its own ancestor"),
        }
    }
}

/// Error form of a failed validation, for operations that require validity.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid logic tree: {}", format_violations(.violations))]
pub struct InvalidTree {
    pub violations: Vec<Violation>,
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(Violation::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Checks every tree and node invariant, returning all violations found.
/// An empty result means the tree is valid.
pub fn validate_tree(tree: &LogicTree) -> Vec<Violation> {
    let mut violations = Vec::new();

    let root_resolves = tree.nodes.contains_key(&tree.root);
    if !root_resolves {
        violations.push(Violation::UnresolvedId {
            id: tree.root.clone(),
            referenced_by: None,
        });
    } else if let Some(root) = tree.root() {
        if root.node_type != NodeType::Argument {
            violations.push(Violation::RootNotArgument {
                id: tree.root.clone(),
            });
        }
    }

    // Per-node local invariants.
    for node in tree.nodes.values() {
        if node.text.trim().is_empty() {
            violations.push(Violation::EmptyText {
                id: node.id.clone(),
            });
        }
        if node.node_type == NodeType::Evidence {
            if !node.children.is_empty() {
                violations.push(Violation::EvidenceWithChildren {
                    id: node.id.clone(),
                });
            }
            if node.support.is_some() {
                violations.push(Violation::SupportOnEvidence {
                    id: node.id.clone(),
                });
            }
        }
        if let Some(support) = &node.support {
            let rationale_empty = support
                .rationale
                .as_deref()
                .map_or(true, |r| r.trim().is_empty());
            if !support.supported && rationale_empty {
                violations.push(Violation::MissingRationale {
                    id: node.id.clone(),
                });
            }
        }
    }

    // Parent multiplicity: every non-root node must be referenced exactly once.
    let mut parent_counts: BTreeMap<&NodeId, usize> = BTreeMap::new();
    for node in tree.nodes.values() {
        for child in &node.children {
            if tree.nodes.contains_key(child) {
                *parent_counts.entry(child).or_insert(0) += 1;
            } else {
                violations.push(Violation::UnresolvedId {
                    id: child.clone(),
                    referenced_by: Some(node.id.clone()),
                });
            }
        }
    }
    for (id, count) in &parent_counts {
        if **id == tree.root {
            violations.push(Violation::RootHasParent {
                id: tree.root.clone(),
            });
        } else if *count > 1 {
            violations.push(Violation::MultipleParents { id: (*id).clone() });
        }
    }
    for id in tree.nodes.keys() {
        if *id != tree.root && !parent_counts.contains_key(id) {
            violations.push(Violation::Orphan { id: id.clone() });
        }
    }

    // Cycle detection: depth-first walk with an explicit path set, restarted
    // from unvisited nodes so disconnected cycles are caught too.
    let mut visited: BTreeMap<&NodeId, bool> = BTreeMap::new();
    let mut starts: Vec<&NodeId> = Vec::new();
    if root_resolves {
        starts.push(&tree.root);
    }
    starts.extend(tree.nodes.keys());
    for start in starts {
        if visited.contains_key(start) {
            continue;
        }
        detect_cycles(tree, start, &mut visited, &mut Vec::new(), &mut violations);
    }

    violations.sort();
    violations.dedup();
    violations
}

fn detect_cycles<'t>(
    tree: &'t LogicTree,
    id: &'t NodeId,
    visited: &mut BTreeMap<&'t NodeId, bool>,
    path: &mut Vec<&'t NodeId>,
    violations: &mut Vec<Violation>,
) {
    visited.insert(id, true);
    path.push(id);
    if let Some(node) = tree.nodes.get(id) {
        for child in &node.children {
            if path.contains(&child) {
                violations.push(Violation::Cycle { id: child.clone() });
            } else if !visited.contains_key(child) && tree.nodes.contains_key(child) {
                detect_cycles(tree, child, visited, path, violations);
            }
        }
    }
    path.pop();
}
