//! Shared helpers for integration tests: seeded random-tree construction.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use report_judge::logic_tree::{LogicNode, LogicTree, NodeId, SupportAnnotation};

/// Builds a random valid tree of up to `max_nodes` nodes: an argument root,
/// with each later node attached under a uniformly chosen existing argument,
/// becoming evidence (a leaf forever) or another argument. Some internal
/// arguments carry support verdicts so annotations are exercised too.
pub fn random_tree(seed: u64, max_nodes: usize) -> LogicTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_tree_with(&mut rng, max_nodes)
}

pub fn random_tree_with(rng: &mut ChaCha8Rng, max_nodes: usize) -> LogicTree {
    let n = rng.gen_range(1..=max_nodes.max(1));
    let mut is_evidence = vec![false];
    let mut parent: Vec<usize> = vec![usize::MAX];
    let mut arguments = vec![0usize];
    for i in 1..n {
        parent.push(arguments[rng.gen_range(0..arguments.len())]);
        let evidence = rng.gen_bool(0.55);
        is_evidence.push(evidence);
        if !evidence {
            arguments.push(i);
        }
    }

    let mut children: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for i in 1..n {
        children[parent[i]].push(NodeId::new(format!("n{i}")));
    }

    let mut nodes = Vec::with_capacity(n);
    for i in 0..n {
        let id = format!("n{i}");
        let text = format!("synthetic node {i}");
        let node = if is_evidence[i] {
            LogicNode::evidence(id, text)
        } else {
            let mut node = LogicNode::argument(id, text).with_children(children[i].clone());
            if !children[i].is_empty() && rng.gen_bool(0.4) {
                node = node.with_support(if rng.gen_bool(0.5) {
                    SupportAnnotation::supported()
                } else {
                    SupportAnnotation::unsupported("contradicted by its own evidence")
                });
            }
            node
        };
        nodes.push(node);
    }
    LogicTree::from_nodes("n0", nodes).expect("random construction is structurally valid")
}
