//! The pluggable backend boundary: a backend receives one rendered call and
//! returns one raw text response. Everything else — prompt rendering,
//! response parsing, validation, retries, caching — lives in the gateway, so
//! backends stay small and interchangeable.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dimension::RubricDimension;

/// The three model-backed steps a backend may implement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapabilityKind {
    Extraction,
    SupportEval,
    Rubric,
}

impl fmt::Display for CapabilityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CapabilityKind::Extraction => f.write_str("extraction"),
            CapabilityKind::SupportEval => f.write_str("support_eval"),
            CapabilityKind::Rubric => f.write_str("rubric"),
        }
    }
}

/// Which steps a backend declares. Calls to undeclared capabilities are
/// rejected by the gateway before the backend is ever invoked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Capabilities {
    pub extraction: bool,
    pub support_eval: bool,
    pub rubric: bool,
}

impl Capabilities {
    pub fn all() -> Self {
        Capabilities {
            extraction: true,
            support_eval: true,
            rubric: true,
        }
    }

    pub fn extraction_only() -> Self {
        Capabilities {
            extraction: true,
            support_eval: false,
            rubric: false,
        }
    }

    pub fn declares(&self, kind: CapabilityKind) -> bool {
        match kind {
            CapabilityKind::Extraction => self.extraction,
            CapabilityKind::SupportEval => self.support_eval,
            CapabilityKind::Rubric => self.rubric,
        }
    }
}

/// A child of the argument under a support verdict, as presented to the
/// backend: its kind, its text, and how much evidence sits below it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportChild {
    /// "argument" or "evidence".
    pub kind: String,
    pub text: String,
    /// Evidence nodes in this child's subtree (the child itself included
    /// when it is evidence).
    pub evidence_descendants: usize,
}

/// Structured view of one call, alongside the rendered prompt. Remote
/// backends send the prompt to a model; deterministic backends read the
/// payload directly and synthesize a response in the same wire format a
/// model would produce.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CallPayload {
    Extraction {
        report_markdown: String,
    },
    SupportEval {
        argument_text: String,
        children: Vec<SupportChild>,
    },
    Rubric {
        dimension: RubricDimension,
        report_markdown: String,
    },
}

/// One unit of backend work.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JudgeCall {
    pub kind: CapabilityKind,
    /// Versioned template identifier, part of the cache key.
    pub prompt_version: String,
    /// The fully rendered prompt a model-backed backend would receive.
    pub prompt: String,
    pub payload: CallPayload,
}

/// Backend failure. `retriable` separates transient transport trouble
/// (timeouts, connection resets, 5xx) from permanent rejections (bad
/// credentials, malformed endpoint), which the gateway will not retry.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct BackendError {
    pub message: String,
    pub retriable: bool,
}

impl BackendError {
    pub fn transport(message: impl Into<String>) -> Self {
        BackendError {
            message: message.into(),
            retriable: true,
        }
    }

    pub fn rejected(message: impl Into<String>) -> Self {
        BackendError {
            message: message.into(),
            retriable: false,
        }
    }
}

/// A judge backend: one rendered call in, one raw text response out.
pub trait JudgeBackend: Send + Sync {
    /// Stable name/version string, part of cache keys and provenance.
    fn identity(&self) -> String;

    fn capabilities(&self) -> Capabilities;

    /// Executes the call. The response is raw text in the call kind's wire
    /// format; the gateway owns parsing and validation.
    fn invoke(&self, call: &JudgeCall) -> Result<String, BackendError>;
}
