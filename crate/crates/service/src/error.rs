use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use graphnim::wire::ErrorBody;
use graphnim::Error;

/// An error response: a status code plus `{ "error": code, "message": text }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        Self { status, code, message: message.into() }
    }

    pub fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "bad_request", message)
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, "not_found", message)
    }

    pub fn conflict(code: &'static str, message: impl Into<String>) -> Self {
        Self::new(StatusCode::CONFLICT, code, message)
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", message)
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::UnknownGraph(_) => "unknown_graph",
            Error::InvalidTopology(_) => "invalid_topology",
            Error::InvalidConfig(_) | Error::ZeroExponent | Error::NotGalaxy(_) => "invalid_weights",
            Error::IllegalMove(_) => "illegal_move",
            Error::Capacity(_) => "capacity",
            Error::Unsupported | Error::Dispatch { .. } => "unsupported",
            Error::Contradiction { .. } | Error::Io { .. } | Error::Report(_) => {
                return Self::internal(e.to_string());
            }
        };
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, code, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = ErrorBody { error: self.code.to_string(), message: self.message };
        (self.status, Json(body)).into_response()
    }
}
