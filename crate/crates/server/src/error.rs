use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;

use hintbits_client::api::{ApiErrorBody, ApiErrorDetail, ApiErrorKind};
use hintbits_core::embedding::EmbeddingError;
use hintbits_core::experiments::ExperimentError;
use hintbits_core::testsets::TestsetError;

#[derive(Debug)]
pub struct ApiError {
    pub kind: ApiErrorKind,
    pub message: String,
}

impl ApiError {
    pub fn invalid_params(message: impl Into<String>) -> Self {
        Self {
            kind: ApiErrorKind::InvalidParams,
            message: message.into(),
        }
    }

    pub fn input_unreadable(message: impl Into<String>) -> Self {
        Self {
            kind: ApiErrorKind::InputUnreadable,
            message: message.into(),
        }
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        Self {
            kind: ApiErrorKind::NotFound,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self {
            kind: ApiErrorKind::Internal,
            message: message.into(),
        }
    }

    fn status(&self) -> StatusCode {
        match self.kind {
            ApiErrorKind::InvalidParams => StatusCode::BAD_REQUEST,
            ApiErrorKind::InputUnreadable => StatusCode::UNPROCESSABLE_ENTITY,
            ApiErrorKind::NotFound => StatusCode::NOT_FOUND,
            ApiErrorKind::NoBoundQuestions => StatusCode::UNPROCESSABLE_ENTITY,
            ApiErrorKind::Internal => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = ApiErrorBody {
            error: ApiErrorDetail {
                kind: self.kind,
                message: self.message,
            },
        };
        (self.status(), Json(body)).into_response()
    }
}

impl From<EmbeddingError> for ApiError {
    fn from(err: EmbeddingError) -> Self {
        match err {
            EmbeddingError::InvalidVocabLimit => ApiError::invalid_params(err.to_string()),
            other => ApiError::input_unreadable(other.to_string()),
        }
    }
}

impl From<TestsetError> for ApiError {
    fn from(err: TestsetError) -> Self {
        match err {
            TestsetError::InvalidSampleSize => ApiError::invalid_params(err.to_string()),
            other => ApiError::input_unreadable(other.to_string()),
        }
    }
}

impl From<ExperimentError> for ApiError {
    fn from(err: ExperimentError) -> Self {
        match err {
            ExperimentError::NoBoundQuestions => ApiError {
                kind: ApiErrorKind::NoBoundQuestions,
                message: err.to_string(),
            },
            ExperimentError::InvalidParameter(_) | ExperimentError::InvalidConfig(_) => {
                ApiError::invalid_params(err.to_string())
            }
            other => ApiError::internal(other.to_string()),
        }
    }
}

impl From<tokio::task::JoinError> for ApiError {
    fn from(err: tokio::task::JoinError) -> Self {
        ApiError::internal(format!("worker task failed: {err}"))
    }
}
