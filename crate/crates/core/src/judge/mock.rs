//! Fixture backend for tests and offline runs. Every response is a pure
//! function of the call: extraction replays a configured tree (or falls back
//! to the structural mapping), rubric scores come from a fixed table, and
//! support verdicts follow a simple configurable rule.

use std::collections::BTreeMap;

use serde_json::json;

use crate::dimension::RubricDimension;
use crate::logic_tree::{serialize_tree, LogicTree};
use crate::report::parse_report;

use super::backend::{
    BackendError, Capabilities, CallPayload, JudgeBackend, JudgeCall,
};
use super::structural::extract_structural;

/// How the mock answers support-verdict calls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MockSupportRule {
    /// Every argument is judged supported.
    #[default]
    AlwaysSupported,
    /// An argument is supported only when at least one of its children has
    /// evidence somewhere beneath it; bare argument chains are rejected.
    RequireEvidence,
}

/// Deterministic stand-in for a model-backed judge.
#[derive(Debug, Clone, Default)]
pub struct MockBackend {
    fixed_tree: Option<LogicTree>,
    rubric_scores: BTreeMap<RubricDimension, f64>,
    support_rule: MockSupportRule,
}

/// Rubric score returned for dimensions without a configured override.
pub const DEFAULT_MOCK_SCORE: f64 = 80.0;

impl MockBackend {
    pub fn new() -> Self {
        Self::default()
    }

    /// Answer every extraction call with this exact tree instead of deriving
    /// one from the report.
    pub fn with_fixed_tree(mut self, tree: LogicTree) -> Self {
        self.fixed_tree = Some(tree);
        self
    }

    /// Override the score returned for one rubric dimension. Out-of-range
    /// values are passed through untouched so clamping can be exercised.
    pub fn with_rubric_score(mut self, dimension: RubricDimension, score: f64) -> Self {
        self.rubric_scores.insert(dimension, score);
        self
    }

    pub fn with_support_rule(mut self, rule: MockSupportRule) -> Self {
        self.support_rule = rule;
        self
    }
}

impl JudgeBackend for MockBackend {
    fn identity(&self) -> String {
        "mock/v1".to_string()
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities::all()
    }

    fn invoke(&self, call: &JudgeCall) -> Result<String, BackendError> {
        match &call.payload {
            CallPayload::Extraction { report_markdown } => match &self.fixed_tree {
                Some(tree) => serialize_tree(tree)
                    .map_err(|err| BackendError::rejected(format!("fixture tree invalid: {err}"))),
                None => {
                    let tree = extract_structural(&parse_report(report_markdown));
                    Ok(serialize_tree(&tree).expect("structural mapping emits valid trees"))
                }
            },
            CallPayload::SupportEval { children, .. } => {
                let supported = match self.support_rule {
                    MockSupportRule::AlwaysSupported => true,
                    MockSupportRule::RequireEvidence => {
                        children.iter().any(|c| c.evidence_descendants > 0)
                    }
                };
                let body = if supported {
                    json!({ "supported": true })
                } else {
                    json!({
                        "supported": false,
                        "rationale": "no factual evidence beneath this argument",
                    })
                };
                Ok(body.to_string())
            }
            CallPayload::Rubric { dimension, .. } => {
                let score = self
                    .rubric_scores
                    .get(dimension)
                    .copied()
                    .unwrap_or(DEFAULT_MOCK_SCORE);
                Ok(json!({
                    "score": score,
                    "rationale": format!("fixed mock score for {}", dimension.display_name()),
                })
                .to_string())
            }
        }
    }
}
