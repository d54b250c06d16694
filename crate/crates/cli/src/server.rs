//! Stateless JSON service. Every request carries the whole FOLD document.

use axum::body::Bytes;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;
use tower_http::cors::{Any, CorsLayer};

use wbt_core::criteria::validate;
use wbt_core::export::{to_fold, SvgStyle};

use crate::api::{self, ApiError, GenerateRequest};

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match self {
            ApiError::BadRequest { .. } => StatusCode::BAD_REQUEST,
            ApiError::Domain { .. } => StatusCode::UNPROCESSABLE_ENTITY,
        };
        (status, Json(self.to_json())).into_response()
    }
}

fn parse<T: DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::BadRequest {
        message: format!("line {}, column {}: {e}", e.line(), e.column()),
        field: None,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FoldBody {
    fold: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ToggleBody {
    fold: Value,
    placement_index: usize,
    hinge_index: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SvgBody {
    fold: Value,
    #[serde(default)]
    style: Option<SvgStyle>,
}

fn json_bytes(bytes: Vec<u8>) -> Response {
    ([(header::CONTENT_TYPE, "application/json")], bytes).into_response()
}

async fn families() -> Response {
    Json(api::families()).into_response()
}

async fn generate(body: Bytes) -> Result<Response, ApiError> {
    let req: GenerateRequest = parse(&body)?;
    let cp = api::generate(&req)?;
    Ok(json_bytes(to_fold(&cp)))
}

async fn validate_fold(body: Bytes) -> Result<Response, ApiError> {
    let req: FoldBody = parse(&body)?;
    let cp = api::load(&req.fold)?;
    Ok(json_bytes(validate(&cp).to_json().into_bytes()))
}

async fn toggle_hinge(body: Bytes) -> Result<Response, ApiError> {
    let req: ToggleBody = parse(&body)?;
    let cp = api::load(&req.fold)?;
    let cp = api::toggle_hinge(&cp, req.placement_index, req.hinge_index)?;
    Ok(Json(api::edited(&cp)).into_response())
}

async fn correct(body: Bytes) -> Result<Response, ApiError> {
    let req: FoldBody = parse(&body)?;
    let cp = api::load(&req.fold)?;
    let cp = api::correct(&cp)?;
    Ok(Json(api::edited(&cp)).into_response())
}

async fn svg(body: Bytes) -> Result<Response, ApiError> {
    let req: SvgBody = parse(&body)?;
    let cp = api::load(&req.fold)?;
    Ok(([(header::CONTENT_TYPE, "image/svg+xml")], api::svg(&cp, req.style.as_ref())).into_response())
}

pub fn router() -> Router {
    let cors = CorsLayer::new()
        .allow_origin(Any)
        .allow_methods(Any)
        .allow_headers(Any);
    Router::new()
        .route("/api/families", get(families))
        .route("/api/generate", post(generate))
        .route("/api/validate", post(validate_fold))
        .route("/api/toggle_hinge", post(toggle_hinge))
        .route("/api/correct", post(correct))
        .route("/api/svg", post(svg))
        .layer(cors)
}

pub async fn serve(bind: &str, port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind((bind, port)).await?;
    log::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router())
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
