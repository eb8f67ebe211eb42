//! Derived tree statistics feeding the rule metrics.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{InvalidTree, LogicTree, NodeType};

/// Quantities derived from a valid logic tree.
///
/// Depth convention: the root has depth 1. `child_avg` averages child counts
/// over internal nodes only (nodes with at least one child) and is absent for
/// a single-node tree. `support_rate` is the fraction of annotated argument
/// nodes judged supported, absent when nothing is annotated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeStats {
    pub n_total: usize,
    pub n_evidence: usize,
    pub d_max: usize,
    pub d_leaf_avg: f64,
    pub child_avg: Option<f64>,
    pub support_rate: Option<f64>,
}

/// Computes [`TreeStats`]. The tree must be valid; violations are returned
/// as an error, never silently folded into the numbers.
pub fn compute_stats(tree: &LogicTree) -> Result<TreeStats, InvalidTree> {
    tree.validate()?;

    let n_total = tree.len();
    let n_evidence = tree
        .nodes()
        .filter(|n| n.node_type == NodeType::Evidence)
        .count();

    let mut d_max = 0usize;
    let mut leaf_depth_sum = 0usize;
    let mut leaf_count = 0usize;
    let mut child_sum = 0usize;
    let mut internal_count = 0usize;

    let mut queue = VecDeque::new();
    queue.push_back((tree.root_id().clone(), 1usize));
    while let Some((id, depth)) = queue.pop_front() {
        let node = tree.get(&id).expect("validated tree resolves all ids");
        d_max = d_max.max(depth);
        if node.is_leaf() {
            leaf_depth_sum += depth;
            leaf_count += 1;
        } else {
            child_sum += node.children.len();
            internal_count += 1;
            for child in &node.children {
                queue.push_back((child.clone(), depth + 1));
            }
        }
    }

    let annotated: Vec<bool> = tree
        .nodes()
        .filter_map(|n| n.support.as_ref().map(|s| s.supported))
        .collect();
    let support_rate = if annotated.is_empty() {
        None
    } else {
        Some(annotated.iter().filter(|s| **s).count() as f64 / annotated.len() as f64)
    };

    Ok(TreeStats {
        n_total,
        n_evidence,
        d_max,
        d_leaf_avg: leaf_depth_sum as f64 / leaf_count as f64,
        child_avg: (internal_count > 0).then(|| child_sum as f64 / internal_count as f64),
        support_rate,
    })
}
