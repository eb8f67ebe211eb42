//! Canonical tree document: the on-disk and over-the-wire form of a logic
//! tree. One nested JSON object per node with fixed field names:
//! `{id, type: "argument"|"evidence", text, supported?, rationale?, children}`.

use serde::{Deserialize, Serialize};

use super::{InvalidTree, LogicNode, LogicTree, NodeId, NodeType, SupportAnnotation};

/// Errors for document parsing and emission.
#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("malformed tree document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("duplicate node id `{0}` in tree document")]
    DuplicateId(NodeId),
    #[error("node `{0}` has a rationale but no supported verdict")]
    RationaleWithoutVerdict(NodeId),
    #[error(transparent)]
    Invalid(#[from] InvalidTree),
}

#[derive(Debug, Serialize, Deserialize)]
struct NodeDoc {
    id: String,
    #[serde(rename = "type")]
    node_type: NodeType,
    text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    supported: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rationale: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    children: Vec<NodeDoc>,
}

/// Emits the canonical UTF-8 document for a valid tree.
pub fn serialize_tree(tree: &LogicTree) -> Result<String, DocError> {
    tree.validate()?;
    let doc = to_doc(tree, tree.root_id());
    let mut out = serde_json::to_string_pretty(&doc)?;
    out.push('\n');
    Ok(out)
}

fn to_doc(tree: &LogicTree, id: &NodeId) -> NodeDoc {
    let node = tree.get(id).expect("validated tree resolves all ids");
    NodeDoc {
        id: node.id.to_string(),
        node_type: node.node_type,
        text: node.text.clone(),
        supported: node.support.as_ref().map(|s| s.supported),
        rationale: node.support.as_ref().and_then(|s| s.rationale.clone()),
        children: node.children.iter().map(|c| to_doc(tree, c)).collect(),
    }
}

/// Parses a canonical document back into a validated tree.
///
/// Round trip with [`serialize_tree`] is the identity on structure, types,
/// texts and support annotations.
pub fn deserialize_tree(document: &str) -> Result<LogicTree, DocError> {
    let doc: NodeDoc = serde_json::from_str(document)?;
    let root_id = NodeId::new(doc.id.clone());
    let mut nodes = Vec::new();
    flatten(doc, &mut nodes)?;

    let tree = LogicTree::from_nodes(root_id, nodes).map_err(|err| match err {
        super::BuildError::DuplicateId(id) => DocError::DuplicateId(id),
    })?;
    tree.validate()?;
    Ok(tree)
}

fn flatten(doc: NodeDoc, out: &mut Vec<LogicNode>) -> Result<(), DocError> {
    let id = NodeId::new(doc.id);
    let support = match (doc.supported, doc.rationale) {
        (Some(supported), rationale) => Some(SupportAnnotation {
            supported,
            rationale,
        }),
        (None, Some(_)) => return Err(DocError::RationaleWithoutVerdict(id)),
        (None, None) => None,
    };
    let children: Vec<NodeId> = doc
        .children
        .iter()
        .map(|c| NodeId::new(c.id.clone()))
        .collect();
    out.push(LogicNode {
        id,
        node_type: doc.node_type,
        text: doc.text,
        children,
        support,
    });
    for child in doc.children {
        flatten(child, out)?;
    }
    Ok(())
}
