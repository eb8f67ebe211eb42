//! Judge gateway: the single entry point for model-backed evaluation calls.
//!
//! Backends only turn a rendered prompt into raw text. Everything else lives
//! here — prompt rendering against versioned templates, transport retries
//! with exponential backoff, re-asking when a response fails validation,
//! parsing responses into typed results, and a content-addressed on-disk
//! cache so repeated runs over the same inputs never re-invoke the backend.
//!
//! Only responses that passed validation are cached; a malformed response is
//! carried inside the resulting error instead, so retries always reach the
//! backend rather than replaying a known-bad reply.

mod backend;
mod cache;
mod mock;
mod prompts;
mod remote;
mod structural;

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Deserialize;
use thiserror::Error;

use crate::dimension::RubricDimension;
use crate::logic_tree::{
    deserialize_tree, InvalidTree, LogicTree, NodeId, NodeType, SupportAnnotation,
};
use crate::report::ReportDocument;

pub use backend::{
    BackendError, Capabilities, CallPayload, CapabilityKind, JudgeBackend, JudgeCall,
    SupportChild,
};
pub use cache::ResponseCache;
pub use mock::{MockBackend, MockSupportRule, DEFAULT_MOCK_SCORE};
pub use prompts::{
    rubric_text, EXTRACTION_PROMPT_VERSION, RUBRIC_PROMPT_VERSION, SUPPORT_PROMPT_VERSION,
};
pub use remote::{
    RemoteBackend, RemoteConfig, RemoteConfigError, API_KEY_ENV, ENDPOINT_ENV, MODEL_ENV,
};
pub use structural::{extract_structural, StructuralBackend};

/// One scored rubric dimension. `score` is always within `0.0..=100.0`; the
/// gateway clamps out-of-range backend values and logs the correction.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RubricScore {
    pub dimension: RubricDimension,
    pub score: f64,
    pub rationale: String,
}

/// A validated tree plus the audit trail of where it came from.
#[derive(Debug, Clone)]
pub struct ExtractionResult {
    pub tree: LogicTree,
    /// Identity string of the backend that produced the response.
    pub backend: String,
    /// Content digest of (backend identity, prompt version, rendered prompt);
    /// doubles as the cache key for the raw response.
    pub prompt_fingerprint: String,
    /// The backend's reply exactly as received.
    pub raw_response: String,
}

#[derive(Debug, Error)]
pub enum GatewayError {
    #[error("backend `{backend}` does not declare the `{capability}` capability")]
    MissingCapability {
        backend: String,
        capability: CapabilityKind,
    },
    #[error("cannot extract a tree from an empty report")]
    EmptyReport,
    #[error(transparent)]
    InvalidTree(#[from] InvalidTree),
    #[error("backend call failed after {attempts} attempt(s): {source}")]
    Backend {
        attempts: u32,
        #[source]
        source: BackendError,
    },
    #[error("response failed validation after {attempts} attempt(s): {reason}")]
    SchemaInvalid {
        attempts: u32,
        reason: String,
        /// Last raw response, kept for diagnosis since invalid replies are
        /// never written to the cache.
        raw_response: String,
    },
}

/// Retry policy knobs.
#[derive(Debug, Clone)]
pub struct GatewayOptions {
    /// How many times to ask again when a response parses but fails
    /// validation (includes the first ask).
    pub max_schema_attempts: u32,
    /// How many times to retry a retriable transport failure (includes the
    /// first try).
    pub max_transport_attempts: u32,
    /// First retry delay; each subsequent retry doubles it.
    pub backoff_base: Duration,
}

impl Default for GatewayOptions {
    fn default() -> Self {
        Self {
            max_schema_attempts: 3,
            max_transport_attempts: 3,
            backoff_base: Duration::from_millis(100),
        }
    }
}

pub struct JudgeGateway {
    backend: Box<dyn JudgeBackend>,
    cache: Option<ResponseCache>,
    options: GatewayOptions,
}

impl JudgeGateway {
    pub fn new(backend: Box<dyn JudgeBackend>) -> Self {
        Self {
            backend,
            cache: None,
            options: GatewayOptions::default(),
        }
    }

    /// Attach an on-disk response cache.
    pub fn with_cache(mut self, cache: ResponseCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn with_options(mut self, options: GatewayOptions) -> Self {
        self.options = options;
        self
    }

    pub fn backend_identity(&self) -> String {
        self.backend.identity()
    }

    pub fn capabilities(&self) -> Capabilities {
        self.backend.capabilities()
    }

    /// Extracts the logic tree for a report. The returned tree has already
    /// passed structural validation — an invalid tree never escapes.
    pub fn extract_tree(&self, report: &ReportDocument) -> Result<ExtractionResult, GatewayError> {
        self.ensure_capability(CapabilityKind::Extraction)?;
        if report.is_blank() {
            return Err(GatewayError::EmptyReport);
        }
        let call = prompts::extraction_call(report);
        let (tree, raw_response, prompt_fingerprint) =
            self.call_validated(&call, |response| {
                deserialize_tree(response).map_err(|err| err.to_string())
            })?;
        Ok(ExtractionResult {
            tree,
            backend: self.backend.identity(),
            prompt_fingerprint,
            raw_response,
        })
    }

    /// Asks the backend for a support verdict on every argument node that has
    /// children, judging each strictly from its immediate children. Returns
    /// an annotated copy; leaves and evidence nodes are never annotated.
    pub fn evaluate_support(&self, tree: &LogicTree) -> Result<LogicTree, GatewayError> {
        self.ensure_capability(CapabilityKind::SupportEval)?;
        tree.validate()?;
        let evidence_counts = evidence_descendant_counts(tree);
        let mut annotated = tree.clone();
        for id in tree.preorder_ids() {
            let node = tree.get(&id).expect("preorder ids resolve");
            if node.node_type != NodeType::Argument || node.children.is_empty() {
                continue;
            }
            let children: Vec<SupportChild> = node
                .children
                .iter()
                .map(|child_id| {
                    let child = tree.get(child_id).expect("child ids resolve");
                    SupportChild {
                        kind: child.node_type.to_string(),
                        text: child.text.clone(),
                        evidence_descendants: evidence_counts[child_id],
                    }
                })
                .collect();
            let call = prompts::support_call(&node.text, children);
            let (verdict, _, _) = self.call_validated(&call, parse_support)?;
            annotated
                .get_mut(&id)
                .expect("annotated copy has the same ids")
                .support = Some(verdict);
        }
        Ok(annotated)
    }

    /// Scores one rubric dimension of a report.
    pub fn score_rubric(
        &self,
        report: &ReportDocument,
        dimension: RubricDimension,
    ) -> Result<RubricScore, GatewayError> {
        self.ensure_capability(CapabilityKind::Rubric)?;
        let call = prompts::rubric_call(dimension, report);
        let ((raw_score, rationale), _, _) = self.call_validated(&call, parse_rubric)?;
        let score = if (0.0..=100.0).contains(&raw_score) {
            raw_score
        } else {
            let clamped = raw_score.clamp(0.0, 100.0);
            log::warn!(
                "rubric score {raw_score} for {} outside 0..=100; clamped to {clamped}",
                dimension.display_name()
            );
            clamped
        };
        Ok(RubricScore {
            dimension,
            score,
            rationale,
        })
    }

    fn ensure_capability(&self, capability: CapabilityKind) -> Result<(), GatewayError> {
        if self.backend.capabilities().declares(capability) {
            Ok(())
        } else {
            Err(GatewayError::MissingCapability {
                backend: self.backend.identity(),
                capability,
            })
        }
    }

    /// Runs one call end to end: cache lookup, transport retries, response
    /// validation with re-asks, and a cache write for the validated reply.
    fn call_validated<T>(
        &self,
        call: &JudgeCall,
        parse: impl Fn(&str) -> Result<T, String>,
    ) -> Result<(T, String, String), GatewayError> {
        let fingerprint =
            ResponseCache::key(&self.backend.identity(), &call.prompt_version, &call.prompt);
        let mut last_failure: Option<(String, String)> = None;
        for attempt in 1..=self.options.max_schema_attempts.max(1) {
            // The cache only ever holds validated responses, but consult it
            // just once: if a hit somehow fails to parse (corruption, code
            // drift), fall through to fresh backend calls.
            let use_cache = attempt == 1;
            let (response, from_cache) = self.fetch(call, &fingerprint, use_cache)?;
            match parse(&response) {
                Ok(value) => {
                    if !from_cache {
                        if let Some(cache) = &self.cache {
                            if let Err(err) = cache.put(&fingerprint, &response) {
                                log::warn!("response cache write failed: {err}");
                            }
                        }
                    }
                    return Ok((value, response, fingerprint));
                }
                Err(reason) => {
                    log::warn!(
                        "{} response failed validation (attempt {attempt}): {reason}",
                        call.kind
                    );
                    last_failure = Some((reason, response));
                }
            }
        }
        let (reason, raw_response) = last_failure.expect("loop ran at least once");
        Err(GatewayError::SchemaInvalid {
            attempts: self.options.max_schema_attempts.max(1),
            reason,
            raw_response,
        })
    }

    /// One response: a cache hit when allowed, otherwise a backend invocation
    /// with exponential backoff on retriable transport failures.
    fn fetch(
        &self,
        call: &JudgeCall,
        fingerprint: &str,
        use_cache: bool,
    ) -> Result<(String, bool), GatewayError> {
        if use_cache {
            if let Some(cache) = &self.cache {
                if let Some(hit) = cache.get(fingerprint) {
                    log::debug!("cache hit for {} call", call.kind);
                    return Ok((hit, true));
                }
            }
        }
        let max_attempts = self.options.max_transport_attempts.max(1);
        let mut attempt = 0;
        loop {
            attempt += 1;
            match self.backend.invoke(call) {
                Ok(response) => return Ok((response, false)),
                Err(err) if err.retriable && attempt < max_attempts => {
                    let delay = self.options.backoff_base * 2u32.saturating_pow(attempt - 1);
                    log::warn!(
                        "{} call attempt {attempt} failed ({err}); retrying in {delay:?}",
                        call.kind
                    );
                    std::thread::sleep(delay);
                }
                Err(err) => {
                    return Err(GatewayError::Backend {
                        attempts: attempt,
                        source: err,
                    })
                }
            }
        }
    }
}

/// Number of evidence nodes in each node's subtree (the node itself counts
/// when it is evidence). Assumes a validated tree.
fn evidence_descendant_counts(tree: &LogicTree) -> BTreeMap<NodeId, usize> {
    let mut counts = BTreeMap::new();
    fn count(tree: &LogicTree, id: &NodeId, counts: &mut BTreeMap<NodeId, usize>) -> usize {
        let node = tree.get(id).expect("validated tree resolves ids");
        let mut total = usize::from(node.node_type == NodeType::Evidence);
        for child in &node.children {
            total += count(tree, child, counts);
        }
        counts.insert(id.clone(), total);
        total
    }
    count(tree, tree.root_id(), &mut counts);
    counts
}

fn parse_support(response: &str) -> Result<SupportAnnotation, String> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Wire {
        supported: bool,
        #[serde(default)]
        rationale: Option<String>,
    }
    let wire: Wire = serde_json::from_str(response.trim()).map_err(|err| err.to_string())?;
    if !wire.supported
        && wire
            .rationale
            .as_deref()
            .map_or(true, |r| r.trim().is_empty())
    {
        return Err("an unsupported verdict must explain itself with a rationale".to_string());
    }
    Ok(SupportAnnotation {
        supported: wire.supported,
        rationale: wire.rationale,
    })
}

fn parse_rubric(response: &str) -> Result<(f64, String), String> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Wire {
        score: f64,
        #[serde(default)]
        rationale: String,
    }
    let wire: Wire = serde_json::from_str(response.trim()).map_err(|err| err.to_string())?;
    if !wire.score.is_finite() {
        return Err("score must be a finite number".to_string());
    }
    Ok((wire.score, wire.rationale))
}

#[cfg(test)]
mod tests {
    use std::sync::atomic::{AtomicU32, Ordering};
    use std::sync::Arc;

    use super::*;
    use crate::logic_tree::{compute_stats, LogicNode};
    use crate::report::parse_report;

    /// Wraps another backend and counts invocations, so tests can prove the
    /// cache absorbed a call.
    struct Counting<B> {
        inner: B,
        calls: Arc<AtomicU32>,
    }

    impl<B: JudgeBackend> JudgeBackend for Counting<B> {
        fn identity(&self) -> String {
            self.inner.identity()
        }
        fn capabilities(&self) -> Capabilities {
            self.inner.capabilities()
        }
        fn invoke(&self, call: &JudgeCall) -> Result<String, BackendError> {
            self.calls.fetch_add(1, Ordering::SeqCst);
            self.inner.invoke(call)
        }
    }

    /// Always returns the same raw text, regardless of the call.
    struct FixedText {
        text: String,
        calls: Arc<AtomicU32>,
    }

    impl JudgeBackend for FixedText {
        fn identity(&self) -> String {
            "fixed/v1".to_string()
        }
        fn capabilities(&self) -> Capabilities {
            Capabilities::all()
        }
        fn invoke(&self, _call: &JudgeCall) -> Result<String, BackendError> {
            self.calls.fetch_add(1, Ordering::SeqCst);
            Ok(self.text.clone())
        }
    }

    /// Fails with a retriable transport error `failures` times, then returns
    /// the payload.
    struct Flaky {
        failures: AtomicU32,
        then: String,
    }

    impl JudgeBackend for Flaky {
        fn identity(&self) -> String {
            "flaky/v1".to_string()
        }
        fn capabilities(&self) -> Capabilities {
            Capabilities::all()
        }
        fn invoke(&self, _call: &JudgeCall) -> Result<String, BackendError> {
            if self.failures.load(Ordering::SeqCst) > 0 {
                self.failures.fetch_sub(1, Ordering::SeqCst);
                return Err(BackendError::transport("connection reset"));
            }
            Ok(self.then.clone())
        }
    }

    fn fast_options() -> GatewayOptions {
        GatewayOptions {
            backoff_base: Duration::from_millis(0),
            ..GatewayOptions::default()
        }
    }

    fn report() -> ReportDocument {
        parse_report("# Thesis\n## P1\nfact one\n## P2\nfact two")
    }

    #[test]
    fn structural_extraction_round_trips_the_report_shape() {
        let gateway = JudgeGateway::new(Box::new(StructuralBackend));
        let result = gateway.extract_tree(&report()).unwrap();
        let stats = compute_stats(&result.tree).unwrap();
        assert_eq!(stats.n_total, 5);
        assert_eq!(stats.n_evidence, 2);
        assert_eq!(result.backend, "structural/v1");
        assert!(!result.prompt_fingerprint.is_empty());
        assert!(result.raw_response.contains("Thesis"));
    }

    #[test]
    fn empty_reports_are_refused_before_any_call() {
        let calls = Arc::new(AtomicU32::new(0));
        let gateway = JudgeGateway::new(Box::new(Counting {
            inner: MockBackend::new(),
            calls: Arc::clone(&calls),
        }));
        let err = gateway.extract_tree(&parse_report("   \n\n")).unwrap_err();
        assert!(matches!(err, GatewayError::EmptyReport));
        assert_eq!(calls.load(Ordering::SeqCst), 0);
    }

    #[test]
    fn missing_capability_is_reported_without_calling_the_backend() {
        let gateway = JudgeGateway::new(Box::new(StructuralBackend));
        let err = gateway
            .score_rubric(&report(), RubricDimension::ViewpointClarity)
            .unwrap_err();
        match err {
            GatewayError::MissingCapability {
                backend,
                capability,
            } => {
                assert_eq!(backend, "structural/v1");
                assert_eq!(capability, CapabilityKind::Rubric);
            }
            other => panic!("expected MissingCapability, got {other}"),
        }
    }

    #[test]
    fn support_annotations_land_on_internal_arguments_only() {
        let tree = LogicTree::from_nodes(
            NodeId::from("r"),
            vec![
                LogicNode::argument("r", "claim")
                    .with_children(vec![NodeId::from("a"), NodeId::from("e")]),
                LogicNode::argument("a", "sub-claim").with_children(vec![NodeId::from("e2")]),
                LogicNode::evidence("e", "fact"),
                LogicNode::evidence("e2", "another fact"),
            ],
        )
        .unwrap();
        let gateway = JudgeGateway::new(Box::new(MockBackend::new()));
        let annotated = gateway.evaluate_support(&tree).unwrap();
        assert!(annotated.get(&NodeId::from("r")).unwrap().support.is_some());
        assert!(annotated.get(&NodeId::from("a")).unwrap().support.is_some());
        assert!(annotated.get(&NodeId::from("e")).unwrap().support.is_none());
        assert!(annotated
            .get(&NodeId::from("e2"))
            .unwrap()
            .support
            .is_none());
        let stats = compute_stats(&annotated).unwrap();
        assert_eq!(stats.support_rate, Some(1.0));
    }

    #[test]
    fn evidence_free_chains_are_judged_unsupported_under_the_strict_rule() {
        // Root -> argument leaf: the child subtree holds no evidence at all.
        let tree = LogicTree::from_nodes(
            NodeId::from("r"),
            vec![
                LogicNode::argument("r", "claim").with_children(vec![NodeId::from("a")]),
                LogicNode::argument("a", "unsubstantiated"),
            ],
        )
        .unwrap();
        let gateway = JudgeGateway::new(Box::new(
            MockBackend::new().with_support_rule(MockSupportRule::RequireEvidence),
        ));
        let annotated = gateway.evaluate_support(&tree).unwrap();
        let verdict = annotated
            .get(&NodeId::from("r"))
            .unwrap()
            .support
            .as_ref()
            .unwrap();
        assert!(!verdict.supported);
        assert!(verdict.rationale.is_some());
        // The leaf argument gets no verdict of its own.
        assert!(annotated.get(&NodeId::from("a")).unwrap().support.is_none());
    }

    #[test]
    fn single_node_trees_need_no_support_calls() {
        let tree = LogicTree::from_nodes(
            NodeId::from("r"),
            vec![LogicNode::argument("r", "alone")],
        )
        .unwrap();
        let calls = Arc::new(AtomicU32::new(0));
        let gateway = JudgeGateway::new(Box::new(Counting {
            inner: MockBackend::new(),
            calls: Arc::clone(&calls),
        }));
        let annotated = gateway.evaluate_support(&tree).unwrap();
        assert!(annotated.get(&NodeId::from("r")).unwrap().support.is_none());
        assert_eq!(calls.load(Ordering::SeqCst), 0);
    }

    #[test]
    fn rubric_scores_pass_through_and_out_of_range_values_clamp() {
        let gateway = JudgeGateway::new(Box::new(
            MockBackend::new()
                .with_rubric_score(RubricDimension::ViewpointClarity, 87.44)
                .with_rubric_score(RubricDimension::ArticulationCoherence, 105.0),
        ));
        let in_range = gateway
            .score_rubric(&report(), RubricDimension::ViewpointClarity)
            .unwrap();
        assert_eq!(in_range.score, 87.44);
        assert!(!in_range.rationale.is_empty());

        let clamped = gateway
            .score_rubric(&report(), RubricDimension::ArticulationCoherence)
            .unwrap();
        assert_eq!(clamped.score, 100.0);
    }

    #[test]
    fn second_identical_extraction_is_served_from_the_cache() {
        let dir = tempfile::tempdir().unwrap();
        let calls = Arc::new(AtomicU32::new(0));
        let make_gateway = |calls: Arc<AtomicU32>| {
            JudgeGateway::new(Box::new(Counting {
                inner: MockBackend::new(),
                calls,
            }))
            .with_cache(ResponseCache::open(dir.path()).unwrap())
        };

        let first = make_gateway(Arc::clone(&calls)).extract_tree(&report()).unwrap();
        assert_eq!(calls.load(Ordering::SeqCst), 1);

        // A fresh gateway over the same cache directory: zero new calls, and
        // the raw response comes back byte-identical.
        let second = make_gateway(Arc::clone(&calls)).extract_tree(&report()).unwrap();
        assert_eq!(calls.load(Ordering::SeqCst), 1);
        assert_eq!(first.raw_response, second.raw_response);
        assert_eq!(first.prompt_fingerprint, second.prompt_fingerprint);
    }

    #[test]
    fn unparseable_responses_are_retried_then_reported_with_the_raw_text() {
        let calls = Arc::new(AtomicU32::new(0));
        let gateway = JudgeGateway::new(Box::new(FixedText {
            text: "this is not json".to_string(),
            calls: Arc::clone(&calls),
        }))
        .with_options(fast_options());
        let err = gateway
            .score_rubric(&report(), RubricDimension::ViewpointClarity)
            .unwrap_err();
        match err {
            GatewayError::SchemaInvalid {
                attempts,
                raw_response,
                ..
            } => {
                assert_eq!(attempts, 3);
                assert_eq!(raw_response, "this is not json");
            }
            other => panic!("expected SchemaInvalid, got {other}"),
        }
        assert_eq!(calls.load(Ordering::SeqCst), 3);
    }

    #[test]
    fn invalid_responses_never_reach_the_cache() {
        let dir = tempfile::tempdir().unwrap();
        let gateway = JudgeGateway::new(Box::new(FixedText {
            text: "garbage".to_string(),
            calls: Arc::new(AtomicU32::new(0)),
        }))
        .with_cache(ResponseCache::open(dir.path()).unwrap())
        .with_options(fast_options());
        let _ = gateway.score_rubric(&report(), RubricDimension::ViewpointClarity);
        let cached_files = std::fs::read_dir(dir.path()).unwrap().count();
        assert_eq!(cached_files, 0);
    }

    #[test]
    fn transport_failures_back_off_and_recover() {
        let gateway = JudgeGateway::new(Box::new(Flaky {
            failures: AtomicU32::new(2),
            then: r#"{"score": 55.0, "rationale": "ok"}"#.to_string(),
        }))
        .with_options(fast_options());
        let score = gateway
            .score_rubric(&report(), RubricDimension::ViewpointClarity)
            .unwrap();
        assert_eq!(score.score, 55.0);
    }

    #[test]
    fn persistent_transport_failure_reports_the_attempt_count() {
        let gateway = JudgeGateway::new(Box::new(Flaky {
            failures: AtomicU32::new(u32::MAX),
            then: String::new(),
        }))
        .with_options(fast_options());
        let err = gateway
            .score_rubric(&report(), RubricDimension::ViewpointClarity)
            .unwrap_err();
        match err {
            GatewayError::Backend { attempts, .. } => assert_eq!(attempts, 3),
            other => panic!("expected Backend error, got {other}"),
        }
    }

    #[test]
    fn unsupported_verdict_without_rationale_fails_validation() {
        let gateway = JudgeGateway::new(Box::new(FixedText {
            text: r#"{"supported": false}"#.to_string(),
            calls: Arc::new(AtomicU32::new(0)),
        }))
        .with_options(fast_options());
        let tree = LogicTree::from_nodes(
            NodeId::from("r"),
            vec![
                LogicNode::argument("r", "claim").with_children(vec![NodeId::from("e")]),
                LogicNode::evidence("e", "fact"),
            ],
        )
        .unwrap();
        let err = gateway.evaluate_support(&tree).unwrap_err();
        assert!(matches!(err, GatewayError::SchemaInvalid { .. }));
        assert!(err.to_string().contains("rationale"));
    }

    #[test]
    fn extraction_result_tree_is_always_validated() {
        // A backend replying with an evidence root must be rejected, no
        // matter how well-formed the JSON is.
        let gateway = JudgeGateway::new(Box::new(FixedText {
            text: r#"{"id": "r", "type": "evidence", "text": "just a fact"}"#.to_string(),
            calls: Arc::new(AtomicU32::new(0)),
        }))
        .with_options(fast_options());
        let err = gateway.extract_tree(&report()).unwrap_err();
        assert!(matches!(err, GatewayError::SchemaInvalid { .. }));
    }
}
