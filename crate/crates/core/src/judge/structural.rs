//! Deterministic extraction backend: maps the report's heading hierarchy to
//! argument nodes and its body paragraphs to evidence leaves. No model, no
//! network, total on any parsed report — the reference backend for testing
//! the pipeline and for validating against simulator-generated ground truth.

use crate::logic_tree::{serialize_tree, LogicNode, LogicTree, NodeId};
use crate::report::{parse_report, ReportDocument, Section};

use super::backend::{
    BackendError, Capabilities, CallPayload, JudgeBackend, JudgeCall,
};

/// Extraction-only backend applying [`extract_structural`].
#[derive(Debug, Default, Clone, Copy)]
pub struct StructuralBackend;

impl JudgeBackend for StructuralBackend {
    fn identity(&self) -> String {
        "structural/v1".to_string()
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities::extraction_only()
    }

    fn invoke(&self, call: &JudgeCall) -> Result<String, BackendError> {
        match &call.payload {
            CallPayload::Extraction { report_markdown } => {
                let tree = extract_structural(&parse_report(report_markdown));
                Ok(serialize_tree(&tree).expect("structural mapping emits valid trees"))
            }
            _ => Err(BackendError::rejected(format!(
                "structural backend does not implement {}",
                call.kind
            ))),
        }
    }
}

/// Heading-based tree derivation:
///
/// - every section becomes an argument node titled by its heading;
/// - each body paragraph becomes an evidence child, placed before the
///   section's subsections;
/// - text before the first heading becomes evidence directly under the root;
/// - when the document has exactly one top-level section and no such
///   preamble, that section is the root; otherwise a synthetic root argument
///   holds everything.
pub fn extract_structural(report: &ReportDocument) -> LogicTree {
    let mut counter = 0usize;
    let mut nodes = Vec::new();
    let preamble = report.sections.iter().find(|s| s.level == 0);
    let titled: Vec<&Section> = report.sections.iter().filter(|s| s.level >= 1).collect();

    let root_id = if preamble.is_none() && titled.len() == 1 {
        build_section(titled[0], &mut counter, &mut nodes)
    } else {
        let root_id = next_id(&mut counter);
        let mut children = Vec::new();
        if let Some(preamble) = preamble {
            for paragraph in preamble.body_paragraphs() {
                let id = next_id(&mut counter);
                nodes.push(LogicNode::evidence(id.clone(), paragraph));
                children.push(id);
            }
        }
        for section in titled {
            children.push(build_section(section, &mut counter, &mut nodes));
        }
        let text = report
            .title
            .clone()
            .filter(|t| !t.trim().is_empty())
            .unwrap_or_else(|| "Report".to_string());
        nodes.push(LogicNode::argument(root_id.clone(), text).with_children(children));
        root_id
    };

    LogicTree::from_nodes(root_id, nodes).expect("sequential ids are unique")
}

fn next_id(counter: &mut usize) -> NodeId {
    *counter += 1;
    NodeId::new(format!("n{counter}"))
}

fn build_section(section: &Section, counter: &mut usize, nodes: &mut Vec<LogicNode>) -> NodeId {
    let id = next_id(counter);
    let mut children = Vec::new();
    for paragraph in section.body_paragraphs() {
        let evidence_id = next_id(counter);
        nodes.push(LogicNode::evidence(evidence_id.clone(), paragraph));
        children.push(evidence_id);
    }
    for subsection in &section.subsections {
        children.push(build_section(subsection, counter, nodes));
    }
    let text = if section.heading.trim().is_empty() {
        "(untitled section)".to_string()
    } else {
        section.heading.clone()
    };
    nodes.push(LogicNode::argument(id.clone(), text).with_children(children));
    id
}
