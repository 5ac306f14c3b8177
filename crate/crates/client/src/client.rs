//! Async HTTP client for the hintbits service.

use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

use crate::api::*;

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("server replied {status}: {message}")]
    Api {
        kind: ApiErrorKind,
        message: String,
        status: u16,
    },
    #[error(transparent)]
    Http(#[from] reqwest::Error),
}

impl ClientError {
    /// Error kind as reported by the server, when this is an API error.
    pub fn kind(&self) -> Option<ApiErrorKind> {
        match self {
            ClientError::Api { kind, .. } => Some(*kind),
            ClientError::Http(_) => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ApiClient {
    base: String,
    http: reqwest::Client,
}

impl ApiClient {
    /// `base_url` like `http://127.0.0.1:8787`.
    pub fn new(base_url: impl Into<String>) -> Self {
        let mut base = base_url.into();
        while base.ends_with('/') {
            base.pop();
        }
        Self {
            base,
            http: reqwest::Client::new(),
        }
    }

    pub fn base_url(&self) -> &str {
        &self.base
    }

    async fn decode<T: DeserializeOwned>(resp: reqwest::Response) -> Result<T, ClientError> {
        let status = resp.status();
        if status.is_success() {
            return Ok(resp.json().await?);
        }
        let text = resp.text().await.unwrap_or_default();
        match serde_json::from_str::<ApiErrorBody>(&text) {
            Ok(body) => Err(ClientError::Api {
                kind: body.error.kind,
                message: body.error.message,
                status: status.as_u16(),
            }),
            Err(_) => Err(ClientError::Api {
                kind: ApiErrorKind::Internal,
                message: format!("unexpected response: {text}"),
                status: status.as_u16(),
            }),
        }
    }

    async fn get<T: DeserializeOwned>(&self, path: &str) -> Result<T, ClientError> {
        let resp = self.http.get(format!("{}{path}", self.base)).send().await?;
        Self::decode(resp).await
    }

    async fn post<B: Serialize, T: DeserializeOwned>(
        &self,
        path: &str,
        body: &B,
    ) -> Result<T, ClientError> {
        let resp = self
            .http
            .post(format!("{}{path}", self.base))
            .json(body)
            .send()
            .await?;
        Self::decode(resp).await
    }

    pub async fn health(&self) -> Result<HealthResponse, ClientError> {
        self.get("/v1/health").await
    }

    pub async fn load_embeddings(
        &self,
        req: &LoadEmbeddingsRequest,
    ) -> Result<StoreInfo, ClientError> {
        self.post("/v1/embeddings", req).await
    }

    pub async fn list_embeddings(&self) -> Result<StoreListResponse, ClientError> {
        self.get("/v1/embeddings").await
    }

    pub async fn rank(&self, req: &RankRequest) -> Result<RankResponse, ClientError> {
        self.post("/v1/rank", req).await
    }

    pub async fn eval(&self, req: &EvalRequest) -> Result<EvalResponse, ClientError> {
        self.post("/v1/eval", req).await
    }

    pub async fn simulate_game(
        &self,
        req: &SimulateGameRequest,
    ) -> Result<SimulateGameResponse, ClientError> {
        self.post("/v1/simulate/game", req).await
    }

    pub async fn simulate_model(
        &self,
        req: &SimulateModelRequest,
    ) -> Result<SimulateModelResponse, ClientError> {
        self.post("/v1/simulate/model", req).await
    }

    pub async fn dice_demo(&self) -> Result<DiceDemoResponse, ClientError> {
        self.get("/v1/dice-demo").await
    }
}
