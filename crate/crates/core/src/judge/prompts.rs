//! Versioned prompt templates. Templates live as text files shipped with
//! the crate; the version string is part of every cache key, so editing a
//! template means bumping the version, which cleanly invalidates old cached
//! responses.

use crate::dimension::RubricDimension;
use crate::report::ReportDocument;

use super::backend::{CallPayload, CapabilityKind, JudgeCall, SupportChild};

pub const EXTRACTION_PROMPT_VERSION: &str = "extract_tree/v1";
pub const SUPPORT_PROMPT_VERSION: &str = "support_eval/v1";
pub const RUBRIC_PROMPT_VERSION: &str = "rubric/v1";

const EXTRACTION_TEMPLATE: &str = include_str!("../../prompts/extract_tree_v1.txt");
const SUPPORT_TEMPLATE: &str = include_str!("../../prompts/support_eval_v1.txt");
const RUBRIC_TEMPLATE: &str = include_str!("../../prompts/rubric_v1.txt");

pub(super) fn extraction_call(report: &ReportDocument) -> JudgeCall {
    JudgeCall {
        kind: CapabilityKind::Extraction,
        prompt_version: EXTRACTION_PROMPT_VERSION.to_string(),
        prompt: EXTRACTION_TEMPLATE.replace("{{REPORT}}", &report.raw_text),
        payload: CallPayload::Extraction {
            report_markdown: report.raw_text.clone(),
        },
    }
}

pub(super) fn support_call(argument_text: &str, children: Vec<SupportChild>) -> JudgeCall {
    let mut listing = String::new();
    for (i, child) in children.iter().enumerate() {
        listing.push_str(&format!(
            "{}. [{}] (evidence beneath: {}) {}\n",
            i + 1,
            child.kind,
            child.evidence_descendants,
            child.text
        ));
    }
    JudgeCall {
        kind: CapabilityKind::SupportEval,
        prompt_version: SUPPORT_PROMPT_VERSION.to_string(),
        prompt: SUPPORT_TEMPLATE
            .replace("{{ARGUMENT}}", argument_text)
            .replace("{{CHILDREN}}", listing.trim_end()),
        payload: CallPayload::SupportEval {
            argument_text: argument_text.to_string(),
            children,
        },
    }
}

pub(super) fn rubric_call(dimension: RubricDimension, report: &ReportDocument) -> JudgeCall {
    JudgeCall {
        kind: CapabilityKind::Rubric,
        prompt_version: RUBRIC_PROMPT_VERSION.to_string(),
        prompt: RUBRIC_TEMPLATE
            .replace("{{DIMENSION}}", dimension.display_name())
            .replace("{{RUBRIC}}", rubric_text(dimension))
            .replace("{{REPORT}}", &report.raw_text),
        payload: CallPayload::Rubric {
            dimension,
            report_markdown: report.raw_text.clone(),
        },
    }
}

/// What each judged dimension means, spelled out for the scoring model.
pub fn rubric_text(dimension: RubricDimension) -> &'static str {
    match dimension {
        RubricDimension::VisualLinguisticSynergy => {
            "How well visual elements (tables, referenced charts and figures, \
             formatting) work with the prose. Strong reports place a visual \
             where the text needs it, reference it explicitly, and keep the \
             two consistent; weak reports have orphaned visuals, tables that \
             contradict the text, or dense prose where a table is called for. \
             Note: you see the markdown source, so judge image references by \
             their placement, captions and surrounding text."
        }
        RubricDimension::ArticulationProfessionalism => {
            "Whether the language meets the register of professional \
             investment research: precise financial terminology used \
             correctly, measured and attributable claims, consistent units \
             and tickers, no colloquial filler or hype."
        }
        RubricDimension::ArticulationCoherence => {
            "Whether the writing flows: sections follow a sensible order, \
             transitions connect them, paragraphs develop one idea each, and \
             nothing is duplicated or abruptly dropped."
        }
        RubricDimension::AnalysisFrameworkQuality => {
            "Whether the report applies a recognizable analytical framework \
             suited to the question (for example top-down sector-to-stock, \
             fundamentals plus valuation, event study with transmission \
             channels) and follows it through rather than assembling \
             disconnected observations."
        }
        RubricDimension::LogicConsistency => {
            "Whether claims are internally consistent: conclusions follow \
             from the premises given, no section contradicts another, and \
             quantitative statements agree with each other across the report."
        }
        RubricDimension::ViewpointClarity => {
            "Whether the report commits to clear viewpoints: a reader can \
             state the report's calls and their conditions after one read. \
             Hedged lists of possibilities without a stance score low."
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::parse_report;

    #[test]
    fn templates_have_no_unfilled_placeholders() {
        let report = parse_report("# T\nbody text");
        let calls = [
            extraction_call(&report),
            support_call(
                "the thesis",
                vec![SupportChild {
                    kind: "evidence".to_string(),
                    text: "a fact".to_string(),
                    evidence_descendants: 1,
                }],
            ),
            rubric_call(RubricDimension::ViewpointClarity, &report),
        ];
        for call in calls {
            assert!(!call.prompt.contains("{{"), "{}", call.prompt_version);
            assert!(!call.prompt.contains("}}"), "{}", call.prompt_version);
        }
    }

    #[test]
    fn extraction_prompt_embeds_the_report_verbatim() {
        let report = parse_report("# Unusual Heading 9919\nwith a body");
        let call = extraction_call(&report);
        assert!(call.prompt.contains("# Unusual Heading 9919"));
        assert_eq!(call.prompt_version, EXTRACTION_PROMPT_VERSION);
    }

    #[test]
    fn support_prompt_lists_children_in_order() {
        let call = support_call(
            "arg",
            vec![
                SupportChild {
                    kind: "argument".to_string(),
                    text: "first".to_string(),
                    evidence_descendants: 0,
                },
                SupportChild {
                    kind: "evidence".to_string(),
                    text: "second".to_string(),
                    evidence_descendants: 1,
                },
            ],
        );
        let first = call.prompt.find("1. [argument]").unwrap();
        let second = call.prompt.find("2. [evidence]").unwrap();
        assert!(first < second);
    }

    #[test]
    fn every_rubric_dimension_has_distinct_text() {
        let texts: std::collections::BTreeSet<_> =
            RubricDimension::ALL.iter().map(|d| rubric_text(*d)).collect();
        assert_eq!(texts.len(), RubricDimension::ALL.len());
    }
}
