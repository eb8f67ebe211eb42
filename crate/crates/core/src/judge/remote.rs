//! HTTP backend speaking the common chat-completions wire shape. The API key
//! is read from the environment only — never a flag or config value — and
//! every logged request or response body has the key redacted first.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::backend::{BackendError, Capabilities, JudgeBackend, JudgeCall};

/// Environment variable naming the chat-completions endpoint URL.
pub const ENDPOINT_ENV: &str = "REPORT_JUDGE_ENDPOINT";
/// Environment variable naming the model to request.
pub const MODEL_ENV: &str = "REPORT_JUDGE_MODEL";
/// Environment variable holding the API key. This is the only place the key
/// may come from.
pub const API_KEY_ENV: &str = "REPORT_JUDGE_API_KEY";

/// Connection settings for [`RemoteBackend`]. The key field is private and
/// excluded from `Debug` output so it cannot leak through error chains.
#[derive(Clone)]
pub struct RemoteConfig {
    pub endpoint: String,
    pub model: String,
    api_key: String,
    pub timeout: Duration,
}

impl std::fmt::Debug for RemoteConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RemoteConfig")
            .field("endpoint", &self.endpoint)
            .field("model", &self.model)
            .field("api_key", &"[REDACTED]")
            .field("timeout", &self.timeout)
            .finish()
    }
}

#[derive(Debug, Error)]
pub enum RemoteConfigError {
    #[error("missing required environment variable {0}")]
    MissingVar(&'static str),
}

impl RemoteConfig {
    /// Builds a config from explicit endpoint/model values (typically flags
    /// or a config file), falling back to the environment for either, and
    /// always taking the API key from [`API_KEY_ENV`].
    pub fn resolve(
        endpoint: Option<String>,
        model: Option<String>,
    ) -> Result<Self, RemoteConfigError> {
        let endpoint = endpoint
            .or_else(|| std::env::var(ENDPOINT_ENV).ok())
            .ok_or(RemoteConfigError::MissingVar(ENDPOINT_ENV))?;
        let model = model
            .or_else(|| std::env::var(MODEL_ENV).ok())
            .ok_or(RemoteConfigError::MissingVar(MODEL_ENV))?;
        let api_key = std::env::var(API_KEY_ENV)
            .ok()
            .filter(|k| !k.is_empty())
            .ok_or(RemoteConfigError::MissingVar(API_KEY_ENV))?;
        Ok(Self {
            endpoint,
            model,
            api_key,
            timeout: Duration::from_secs(120),
        })
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }
}

#[derive(Serialize)]
struct ChatRequest<'a> {
    model: &'a str,
    messages: Vec<ChatMessage<'a>>,
    temperature: f64,
}

#[derive(Serialize)]
struct ChatMessage<'a> {
    role: &'static str,
    content: &'a str,
}

#[derive(Deserialize)]
struct ChatResponse {
    choices: Vec<ChatChoice>,
}

#[derive(Deserialize)]
struct ChatChoice {
    message: ChatChoiceMessage,
}

#[derive(Deserialize)]
struct ChatChoiceMessage {
    content: String,
}

/// Judge backend that POSTs each rendered prompt to a chat-completions
/// endpoint and returns the first choice's message content.
pub struct RemoteBackend {
    config: RemoteConfig,
    client: reqwest::blocking::Client,
}

impl RemoteBackend {
    pub fn new(config: RemoteConfig) -> Result<Self, BackendError> {
        let client = reqwest::blocking::Client::builder()
            .timeout(config.timeout)
            .build()
            .map_err(|err| BackendError::rejected(format!("http client setup failed: {err}")))?;
        Ok(Self { config, client })
    }

    /// Strips the API key out of text destined for logs.
    fn redact(&self, text: &str) -> String {
        text.replace(&self.config.api_key, "[REDACTED]")
    }
}

impl JudgeBackend for RemoteBackend {
    fn identity(&self) -> String {
        format!("remote/{}", self.config.model)
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities::all()
    }

    fn invoke(&self, call: &JudgeCall) -> Result<String, BackendError> {
        let request = ChatRequest {
            model: &self.config.model,
            messages: vec![ChatMessage {
                role: "user",
                content: &call.prompt,
            }],
            temperature: 0.0,
        };
        if log::log_enabled!(log::Level::Debug) {
            let body = serde_json::to_string(&request).unwrap_or_default();
            log::debug!(
                "POST {} ({} call): {}",
                self.config.endpoint,
                call.kind,
                self.redact(&body)
            );
        }

        let response = self
            .client
            .post(&self.config.endpoint)
            .bearer_auth(&self.config.api_key)
            .json(&request)
            .send()
            .map_err(|err| BackendError::transport(self.redact(&err.to_string())))?;

        let status = response.status();
        let body = response
            .text()
            .map_err(|err| BackendError::transport(self.redact(&err.to_string())))?;
        log::debug!("response {}: {}", status, self.redact(&body));

        if status.is_server_error() || status.as_u16() == 429 {
            return Err(BackendError::transport(format!(
                "endpoint returned {status}: {}",
                self.redact(&body)
            )));
        }
        if !status.is_success() {
            return Err(BackendError::rejected(format!(
                "endpoint returned {status}: {}",
                self.redact(&body)
            )));
        }

        let parsed: ChatResponse = serde_json::from_str(&body).map_err(|err| {
            BackendError::rejected(format!("unparseable completion payload: {err}"))
        })?;
        parsed
            .choices
            .into_iter()
            .next()
            .map(|choice| choice.message.content)
            .ok_or_else(|| BackendError::rejected("completion had no choices".to_string()))
    }
}
