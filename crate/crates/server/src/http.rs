// SPDX-License-Identifier: Apache-2.0

//! Routes under `/api/v1`. GET endpoints are public; POST and DELETE need
//! the bearer token. Every error body is
//! `{"error": {"code", "message", "details"}}`.

use std::collections::HashMap;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::rejection::BytesRejection;
use axum::extract::{DefaultBodyLimit, Path, Query, State};
use axum::http::{header, HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use chemdata::Format;
use serde_json::{json, Value};

use crate::auth::BearerToken;
use crate::service::{Query as MoleculeQuery, Service, ServiceError};
use crate::store::StoreError;

#[derive(Clone)]
pub struct AppState {
    pub service: Arc<Service>,
    pub token: BearerToken,
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
    details: Vec<String>,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        Self {
            status,
            code,
            message: message.into(),
            details: Vec::new(),
        }
    }

    fn unauthorized() -> Self {
        Self::new(
            StatusCode::UNAUTHORIZED,
            "unauthorized",
            "a valid bearer token is required",
        )
    }
}

impl From<ServiceError> for ApiError {
    fn from(e: ServiceError) -> Self {
        let message = e.to_string();
        match e {
            ServiceError::Unparseable { details, .. } => Self {
                details,
                ..Self::new(StatusCode::BAD_REQUEST, "unparseable_document", message)
            },
            ServiceError::BadParameter(_) => Self::new(StatusCode::BAD_REQUEST, "bad_parameter", message),
            ServiceError::NotFound(_) => Self::new(StatusCode::NOT_FOUND, "not_found", message),
            ServiceError::NoVibrations(_) => Self::new(StatusCode::NOT_FOUND, "no_vibrations", message),
            ServiceError::Conversion(_) => {
                Self::new(StatusCode::UNPROCESSABLE_ENTITY, "conversion_error", message)
            }
            ServiceError::Storage(ref inner) => {
                tracing::error!(error = %inner, "storage failure");
                let code = match inner {
                    StoreError::Io(_) => "storage_failure",
                    StoreError::Corrupt { .. } => "corrupt_record",
                };
                Self::new(StatusCode::INTERNAL_SERVER_ERROR, code, message)
            }
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({
            "error": {"code": self.code, "message": self.message, "details": self.details}
        });
        (self.status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

/// Runs blocking store work off the async executor.
async fn blocking<T, F>(f: F) -> ApiResult<T>
where
    F: FnOnce() -> Result<T, ServiceError> + Send + 'static,
    T: Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?
        .map_err(ApiError::from)
}

fn format_param(params: &HashMap<String, String>, default: Option<Format>) -> ApiResult<Option<Format>> {
    match params.get("format") {
        None => Ok(default),
        Some(name) => name
            .parse()
            .map(Some)
            .map_err(|_| ApiError::new(StatusCode::BAD_REQUEST, "bad_parameter", "format must be cjson or extchem")),
    }
}

fn json_text(text: String) -> Response {
    ([(header::CONTENT_TYPE, "application/json")], text).into_response()
}

async fn create(
    State(state): State<AppState>,
    headers: HeaderMap,
    Query(params): Query<HashMap<String, String>>,
    body: Result<Bytes, BytesRejection>,
) -> ApiResult<Response> {
    if !state.token.allows(&headers) {
        return Err(ApiError::unauthorized());
    }
    let body = body.map_err(|e| {
        let status = e.status();
        let code = if status == StatusCode::PAYLOAD_TOO_LARGE {
            "payload_too_large"
        } else {
            "bad_request"
        };
        ApiError::new(status, code, e.body_text())
    })?;
    let declared = format_param(&params, None)?;
    let text = String::from_utf8(body.to_vec())
        .map_err(|_| ApiError::new(StatusCode::BAD_REQUEST, "unparseable_document", "body is not UTF-8"))?;

    let service = state.service.clone();
    let ingested = blocking(move || service.ingest(&text, declared)).await?;
    let status = if ingested.created {
        StatusCode::CREATED
    } else {
        StatusCode::OK
    };
    Ok((status, Json(json!({"id": ingested.id}))).into_response())
}

async fn list(
    State(state): State<AppState>,
    Query(params): Query<HashMap<String, String>>,
) -> ApiResult<Json<Value>> {
    let query = MoleculeQuery::from_params(&params)?;
    let page = state.service.query(&query);
    let results: Vec<Value> = page
        .results
        .iter()
        .map(|e| {
            let mut row = json!({
                "id": e.id,
                "sourceFormat": e.source_format.as_str(),
                "createdAt": e.created_at,
            });
            if let (Value::Object(row), Ok(Value::Object(meta))) = (&mut row, serde_json::to_value(&e.metadata)) {
                row.extend(meta);
            }
            row
        })
        .collect();
    Ok(Json(json!({"results": results, "count": page.count})))
}

async fn fetch(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Query(params): Query<HashMap<String, String>>,
) -> ApiResult<Response> {
    let format = format_param(&params, Some(Format::Cjson))?.unwrap_or(Format::Cjson);
    let service = state.service.clone();
    let text = blocking(move || service.document(&id, format)).await?;
    Ok(json_text(text))
}

async fn calculations(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<Value>> {
    let service = state.service.clone();
    Ok(Json(blocking(move || service.calculations(&id)).await?))
}

async fn vibrations(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<Value>> {
    let service = state.service.clone();
    Ok(Json(blocking(move || service.vibrations(&id)).await?))
}

async fn remove(
    State(state): State<AppState>,
    headers: HeaderMap,
    Path(id): Path<String>,
) -> ApiResult<StatusCode> {
    if !state.token.allows(&headers) {
        return Err(ApiError::unauthorized());
    }
    let service = state.service.clone();
    blocking(move || service.delete(&id)).await?;
    Ok(StatusCode::NO_CONTENT)
}

async fn not_found() -> ApiError {
    ApiError::new(StatusCode::NOT_FOUND, "not_found", "no such endpoint")
}

pub fn router(state: AppState, body_limit: usize) -> Router {
    let api = Router::new()
        .route("/molecules", get(list).post(create))
        .route("/molecules/{id}", get(fetch).delete(remove))
        .route("/molecules/{id}/calculations", get(calculations))
        .route("/molecules/{id}/vibrations", get(vibrations));
    Router::new()
        .nest("/api/v1", api)
        .fallback(not_found)
        .layer(DefaultBodyLimit::max(body_limit))
        .with_state(state)
}
