//! Evaluation framework for long-form financial research reports.
//!
//! A report is judged in three steps: its argumentation is extracted into a
//! logic tree of argument and evidence nodes, each argument is checked
//! against the material beneath it, and the tree's shape feeds deterministic
//! metrics (width, depth, information density) that sit alongside
//! judge-scored rubric dimensions. Ten dimension scores combine into a
//! weighted final score per report, and reports line up on a leaderboard.
//!
//! Module map:
//!
//! - [`logic_tree`] — the tree type, validation rules, traversal statistics,
//!   and the canonical JSON document format;
//! - [`report`] — markdown parsing into sections plus word counting that
//!   treats CJK text fairly;
//! - [`rule_metrics`] — the formula-driven dimension scores;
//! - [`dimension`] / [`scorecard`] — the ten-dimension taxonomy, weighted
//!   aggregation, and leaderboard rendering;
//! - [`judge`] — the gateway that renders prompts, calls a pluggable backend
//!   (remote model, structural heuristic, or mock), retries, validates, and
//!   caches responses;
//! - [`simulator`] — synthetic report/tree pairs with known ground truth;
//! - [`validation`] — extraction-accuracy measurement against ground truth,
//!   with size-binned summaries and rank correlation;
//! - [`dataset`] — the benchmark question set and its category coverage
//!   rules.

pub mod dataset;
pub mod dimension;
pub mod judge;
pub mod logic_tree;
pub mod report;
pub mod rule_metrics;
pub mod scorecard;
pub mod simulator;
pub mod validation;
