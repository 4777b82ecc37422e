//! Typed client for the Graph Nim HTTP service.

use graphnim::wire::{Analysis, ConfigWire, ErrorBody, GraphInfo, MoveWire, NewSessionRequest, SessionState};
use reqwest::{RequestBuilder, StatusCode};
use serde::de::DeserializeOwned;

#[derive(Debug, thiserror::Error)]
pub enum ClientError {
    #[error("request failed: {0}")]
    Transport(#[from] reqwest::Error),
    #[error("{status}: {}", body.message)]
    Api { status: StatusCode, body: ErrorBody },
}

impl ClientError {
    pub fn status(&self) -> Option<StatusCode> {
        match self {
            ClientError::Api { status, .. } => Some(*status),
            ClientError::Transport(e) => e.status(),
        }
    }
}

pub type Result<T> = std::result::Result<T, ClientError>;

#[derive(Debug, Clone)]
pub struct Client {
    base: String,
    http: reqwest::Client,
}

impl Client {
    /// `base` is the server root, e.g. `http://127.0.0.1:8080`.
    pub fn new(base: impl Into<String>) -> Self {
        Self {
            base: base.into().trim_end_matches('/').to_string(),
            http: reqwest::Client::new(),
        }
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    fn url(&self, path: &str) -> String {
        format!("{}{path}", self.base)
    }

    async fn send<T: DeserializeOwned>(&self, request: RequestBuilder) -> Result<T> {
        let response = request.send().await?;
        let status = response.status();
        if status.is_success() {
            return Ok(response.json().await?);
        }
        let text = response.text().await?;
        let body = serde_json::from_str(&text).unwrap_or(ErrorBody { error: "http".into(), message: text });
        Err(ClientError::Api { status, body })
    }

    pub async fn graphs(&self) -> Result<Vec<GraphInfo>> {
        self.send(self.http.get(self.url("/api/graphs"))).await
    }

    pub async fn analyze(&self, config: &ConfigWire) -> Result<Analysis> {
        self.send(self.http.post(self.url("/api/analyze")).json(config)).await
    }

    pub async fn new_session(&self, request: &NewSessionRequest) -> Result<SessionState> {
        self.send(self.http.post(self.url("/api/session")).json(request)).await
    }

    pub async fn session(&self, id: &str) -> Result<SessionState> {
        self.send(self.http.get(self.url(&format!("/api/session/{id}")))).await
    }

    pub async fn play_move(&self, id: &str, mv: &MoveWire) -> Result<SessionState> {
        self.send(self.http.post(self.url(&format!("/api/session/{id}/move"))).json(mv)).await
    }

    pub async fn what_if(&self, id: &str, mv: &MoveWire) -> Result<Analysis> {
        self.send(self.http.post(self.url(&format!("/api/session/{id}/whatif"))).json(mv)).await
    }
}
