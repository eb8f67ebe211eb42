//! Synthetic report generation with known ground truth.
//!
//! Mimics how a research report gets written: a topic is either split into
//! sub-topics or explored by gathering evidence (top-down), then text is
//! composed bottom-up, each node written only once all of its children are.
//! The output is a (markdown report, ground-truth logic tree) pair whose tree
//! structure is recoverable exactly by the structural extractor, which is
//! what makes the pairs usable for validating extraction quality.

mod corpus;
mod text;

pub use corpus::{load_pair_corpus, write_pair_corpus, CorpusError, CorpusManifest, LoadedPair};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::logic_tree::{compute_stats, LogicNode, LogicTree, TreeStats};
use crate::report::{parse_report, ReportDocument};

/// The two ways to handle a topic while planning: break it into sub-topics,
/// or stop and collect evidence for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopicAction {
    Split,
    Explore,
}

/// One node of the planning tree. Split nodes hold sub-topics, explore nodes
/// hold evidence summaries; `written_text` is empty until the bottom-up
/// writing pass fills it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopicNode {
    pub topic: String,
    pub action: TopicAction,
    pub children: Vec<TopicNode>,
    pub evidence_summaries: Vec<String>,
    #[serde(default)]
    pub written_text: String,
}

impl TopicNode {
    pub fn split(topic: impl Into<String>, children: Vec<TopicNode>) -> Self {
        TopicNode {
            topic: topic.into(),
            action: TopicAction::Split,
            children,
            evidence_summaries: Vec::new(),
            written_text: String::new(),
        }
    }

    pub fn explore(topic: impl Into<String>, evidence_summaries: Vec<String>) -> Self {
        TopicNode {
            topic: topic.into(),
            action: TopicAction::Explore,
            children: Vec::new(),
            evidence_summaries,
            written_text: String::new(),
        }
    }

    /// Topic nodes in this subtree (the node itself included).
    pub fn topic_count(&self) -> usize {
        1 + self.children.iter().map(TopicNode::topic_count).sum::<usize>()
    }

    /// Evidence summaries in this subtree.
    pub fn evidence_count(&self) -> usize {
        self.evidence_summaries.len()
            + self.children.iter().map(TopicNode::evidence_count).sum::<usize>()
    }
}

/// Knobs for the synthetic generator. All ranges are inclusive on both ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationSpec {
    pub seed: u64,
    /// Depth of the topic tree, root at depth 1.
    pub depth_range: (usize, usize),
    /// Children per split node.
    pub branching_range: (usize, usize),
    /// Evidence summaries per explore node.
    pub evidence_range: (usize, usize),
    /// Words per evidence paragraph.
    pub words_range: (usize, usize),
}

impl Default for GenerationSpec {
    fn default() -> Self {
        GenerationSpec {
            seed: 0,
            depth_range: (2, 4),
            branching_range: (2, 4),
            evidence_range: (1, 4),
            words_range: (40, 220),
        }
    }
}

/// A spec no tree can satisfy.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("{name} range is empty: {lo} > {hi}")]
    EmptyRange { name: &'static str, lo: usize, hi: usize },
    #[error("depth must be at least 1, the root itself")]
    DepthBelowOne,
    #[error("depth must reach 2: a depth-1 tree has no split node, so the branching range can never be exercised")]
    DepthBelowBranching,
    #[error("depth beyond 6 cannot round-trip through markdown's six heading levels")]
    DepthBeyondHeadings,
    #[error("split nodes need at least 2 children, branching range starts at {0}")]
    BranchingBelowTwo(usize),
    #[error("explore nodes need at least 1 evidence summary, range starts at 0")]
    EvidenceBelowOne,
    #[error("paragraphs need at least 1 word, range starts at 0")]
    WordsBelowOne,
}

impl GenerationSpec {
    pub fn validate(&self) -> Result<(), SpecError> {
        let ranges = [
            ("depth", self.depth_range),
            ("branching", self.branching_range),
            ("evidence", self.evidence_range),
            ("words", self.words_range),
        ];
        for (name, (lo, hi)) in ranges {
            if lo > hi {
                return Err(SpecError::EmptyRange { name, lo, hi });
            }
        }
        if self.depth_range.0 < 1 {
            return Err(SpecError::DepthBelowOne);
        }
        if self.depth_range.1 < 2 {
            return Err(SpecError::DepthBelowBranching);
        }
        if self.depth_range.1 > 6 {
            return Err(SpecError::DepthBeyondHeadings);
        }
        if self.branching_range.0 < 2 {
            return Err(SpecError::BranchingBelowTwo(self.branching_range.0));
        }
        if self.evidence_range.0 < 1 {
            return Err(SpecError::EvidenceBelowOne);
        }
        if self.words_range.0 < 1 {
            return Err(SpecError::WordsBelowOne);
        }
        Ok(())
    }
}

/// Plans a topic tree: picks a target depth, then splits until that depth is
/// reached and explores there. Fully determined by the [`GenerationSpec`],
/// seed included.
pub fn generate_topic_tree(spec: &GenerationSpec) -> Result<TopicNode, SpecError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    // A split node must exist to exercise the branching range, so the
    // effective minimum depth is 2.
    let depth_lo = spec.depth_range.0.max(2);
    let target_depth = rng.gen_range(depth_lo..=spec.depth_range.1);
    let theme = text::pick_theme(&mut rng);
    Ok(build_topic(&mut rng, spec, theme, "1", 1, target_depth))
}

fn build_topic(
    rng: &mut ChaCha8Rng,
    spec: &GenerationSpec,
    topic: String,
    path: &str,
    depth: usize,
    target_depth: usize,
) -> TopicNode {
    if depth == target_depth {
        let count = rng.gen_range(spec.evidence_range.0..=spec.evidence_range.1);
        let mut summaries = Vec::with_capacity(count);
        for _ in 0..count {
            let words = rng.gen_range(spec.words_range.0..=spec.words_range.1);
            summaries.push(text::synth_paragraph(rng, words));
        }
        TopicNode::explore(topic, summaries)
    } else {
        let fanout = rng.gen_range(spec.branching_range.0..=spec.branching_range.1);
        let mut children = Vec::with_capacity(fanout);
        for i in 1..=fanout {
            let child_path = format!("{path}.{i}");
            let child_topic = text::pick_aspect(rng, &child_path);
            children.push(build_topic(
                rng,
                spec,
                child_topic,
                &child_path,
                depth + 1,
                target_depth,
            ));
        }
        TopicNode::split(topic, children)
    }
}

/// A topic tree breaking the split/explore shape rules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopicTreeError {
    #[error("split topic {0:?} has {1} children, needs at least 2")]
    SplitTooNarrow(String, usize),
    #[error("split topic {0:?} carries evidence summaries")]
    SplitWithEvidence(String),
    #[error("explore topic {0:?} has children")]
    ExploreWithChildren(String),
    #[error("explore topic {0:?} has no evidence summaries")]
    ExploreWithoutEvidence(String),
}

fn check_topic_tree(node: &TopicNode) -> Result<(), TopicTreeError> {
    match node.action {
        TopicAction::Split => {
            if node.children.len() < 2 {
                return Err(TopicTreeError::SplitTooNarrow(
                    node.topic.clone(),
                    node.children.len(),
                ));
            }
            if !node.evidence_summaries.is_empty() {
                return Err(TopicTreeError::SplitWithEvidence(node.topic.clone()));
            }
        }
        TopicAction::Explore => {
            if !node.children.is_empty() {
                return Err(TopicTreeError::ExploreWithChildren(node.topic.clone()));
            }
            if node.evidence_summaries.is_empty() {
                return Err(TopicTreeError::ExploreWithoutEvidence(node.topic.clone()));
            }
        }
    }
    node.children.iter().try_for_each(check_topic_tree)
}

/// The finished pair: the rendered report, its ground-truth tree (topics as
/// argument nodes, evidence summaries as evidence leaves), the precomputed
/// tree statistics, and the order topics were written in.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedPair {
    pub report: ReportDocument,
    pub gt_tree: LogicTree,
    pub gt_stats: TreeStats,
    /// Topic labels in completion order; every child precedes its parent.
    pub trace: Vec<String>,
}

/// Writes the report bottom-up and derives the ground-truth tree.
///
/// A topic's text is composed only after all of its children are written;
/// the markdown encodes topic nesting as heading levels and evidence
/// summaries as body paragraphs under their topic's heading.
pub fn hierarchical_write(root: &mut TopicNode) -> Result<SimulatedPair, TopicTreeError> {
    check_topic_tree(root)?;
    let mut trace = Vec::new();
    write_node(root, 1, &mut trace);
    let report = parse_report(&root.written_text);

    let mut nodes = Vec::new();
    collect_gt_nodes(root, "t1".to_string(), &mut nodes);
    let gt_tree =
        LogicTree::from_nodes("t1", nodes).expect("path-derived ids are unique by construction");
    let gt_stats = compute_stats(&gt_tree).expect("generated ground truth is always valid");
    Ok(SimulatedPair {
        report,
        gt_tree,
        gt_stats,
        trace,
    })
}

fn write_node(node: &mut TopicNode, depth: usize, trace: &mut Vec<String>) {
    for child in &mut node.children {
        write_node(child, depth + 1, trace);
    }
    // All children are ready; compose this node.
    let level = depth.min(6);
    let mut out = format!("{} {}\n", "#".repeat(level), node.topic);
    match node.action {
        TopicAction::Explore => {
            out.push('\n');
            out.push_str(&node.evidence_summaries.join("\n\n"));
            out.push('\n');
        }
        TopicAction::Split => {
            for child in &node.children {
                out.push('\n');
                out.push_str(&child.written_text);
            }
        }
    }
    node.written_text = out;
    trace.push(node.topic.clone());
}

fn collect_gt_nodes(topic: &TopicNode, id: String, nodes: &mut Vec<LogicNode>) {
    match topic.action {
        TopicAction::Explore => {
            let child_ids: Vec<String> = (1..=topic.evidence_summaries.len())
                .map(|i| format!("{id}.e{i}"))
                .collect();
            nodes.push(LogicNode::argument(id, &topic.topic).with_children(child_ids.clone()));
            for (child_id, summary) in child_ids.into_iter().zip(&topic.evidence_summaries) {
                nodes.push(LogicNode::evidence(child_id, summary));
            }
        }
        TopicAction::Split => {
            let child_ids: Vec<String> = (1..=topic.children.len())
                .map(|i| format!("{id}.{i}"))
                .collect();
            nodes.push(LogicNode::argument(id, &topic.topic).with_children(child_ids.clone()));
            for (child_id, child) in child_ids.into_iter().zip(&topic.children) {
                collect_gt_nodes(child, child_id, nodes);
            }
        }
    }
}

/// Generates a topic tree from a [`GenerationSpec`] and writes it out in
/// one step.
pub fn generate_pair(spec: &GenerationSpec) -> Result<SimulatedPair, SpecError> {
    let mut topic_tree = generate_topic_tree(spec)?;
    Ok(hierarchical_write(&mut topic_tree).expect("generated topic trees satisfy the shape rules"))
}

/// Requested more pairs than exist.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("asked for {wanted} pairs but only {available} are available")]
pub struct SelectionError {
    pub wanted: usize,
    pub available: usize,
}

/// Picks `n` pairs spreading coverage across (depth, branching, size)
/// buckets of the ground-truth trees: one pick per bucket in rotation until
/// the quota is filled. Returns indices into `pairs`, ascending. Fully
/// deterministic given the input order.
pub fn select_diverse_pairs(pairs: &[SimulatedPair], n: usize) -> Result<Vec<usize>, SelectionError> {
    if n > pairs.len() {
        return Err(SelectionError {
            wanted: n,
            available: pairs.len(),
        });
    }
    if n == pairs.len() {
        return Ok((0..n).collect());
    }
    let bucket_of = |stats: &TreeStats| {
        (
            stats.d_max,
            stats.child_avg.unwrap_or(0.0).round() as u64,
            crate::validation::SizeBin::for_node_count(stats.n_total),
        )
    };
    let mut buckets: std::collections::BTreeMap<_, Vec<usize>> = std::collections::BTreeMap::new();
    for (idx, pair) in pairs.iter().enumerate() {
        buckets.entry(bucket_of(&pair.gt_stats)).or_default().push(idx);
    }
    let mut queues: Vec<std::collections::VecDeque<usize>> = buckets
        .into_values()
        .map(std::collections::VecDeque::from)
        .collect();
    let mut picked = Vec::with_capacity(n);
    while picked.len() < n {
        for queue in &mut queues {
            if picked.len() == n {
                break;
            }
            if let Some(idx) = queue.pop_front() {
                picked.push(idx);
            }
        }
    }
    picked.sort_unstable();
    Ok(picked)
}
