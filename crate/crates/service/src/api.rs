use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use helfi_core::model::{AlignmentGroup, VerseAlignment, VerseRef};
use helfi_core::Diagnostic;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;
use tower_http::services::ServeDir;

use crate::edit::Edit;
use crate::error::ServiceError;
use crate::store::{SearchKind, Store};

pub const DEFAULT_SESSION: &str = "default";

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = match &self {
            ServiceError::BadRequest(_) | ServiceError::InvalidEdit(_) | ServiceError::Format(_) => {
                StatusCode::BAD_REQUEST
            }
            ServiceError::UnknownVerse(_) | ServiceError::UnknownHeadword(_) => StatusCode::NOT_FOUND,
            ServiceError::RevisionConflict { .. }
            | ServiceError::NothingToUndo
            | ServiceError::NothingToRedo
            | ServiceError::StaleHistory { .. } => StatusCode::CONFLICT,
            ServiceError::InvariantViolation { .. } | ServiceError::ValidationFailed(_) | ServiceError::NoPath => {
                StatusCode::UNPROCESSABLE_ENTITY
            }
            ServiceError::Io(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        let mut body = json!({
            "code": self.code(),
            "message": self.to_string(),
            "diagnostics": self.diagnostics(),
        });
        match &self {
            ServiceError::InvariantViolation { rule, .. } => body["rule"] = json!(rule),
            ServiceError::RevisionConflict { current, .. } => body["revision"] = json!(current),
            _ => {}
        }
        (status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ServiceError>;

fn parse_ref(text: &str) -> Result<VerseRef, ServiceError> {
    text.parse().map_err(|e: helfi_core::Error| ServiceError::BadRequest(e.to_string()))
}

fn parse_body<T: DeserializeOwned>(bytes: &[u8]) -> Result<T, ServiceError> {
    serde_json::from_slice(bytes).map_err(|e| ServiceError::BadRequest(e.to_string()))
}

#[derive(Serialize)]
struct VerseView {
    verse: Arc<VerseAlignment>,
    revision: u64,
    groups: Vec<AlignmentGroup>,
}

#[derive(Deserialize)]
struct EditRequest {
    #[serde(default = "default_session")]
    session: String,
    base_revision: u64,
    edits: Vec<Edit>,
}

fn default_session() -> String {
    DEFAULT_SESSION.to_string()
}

#[derive(Deserialize, Default)]
struct SaveRequest {
    path: Option<PathBuf>,
    #[serde(default)]
    force: bool,
}

#[derive(Serialize)]
struct ValidateView {
    verses: usize,
    errors: usize,
    warnings: usize,
    diagnostics: Vec<Diagnostic>,
}

async fn meta(State(store): State<Arc<Store>>) -> Json<crate::store::Meta> {
    Json(store.meta())
}

async fn verse(State(store): State<Arc<Store>>, Path(r): Path<String>) -> ApiResult<VerseView> {
    let (verse, revision) = store.get_verse(&parse_ref(&r)?)?;
    // dangling links are reported by validation; the view still renders
    let groups = verse.alignment_groups().unwrap_or_default();
    Ok(Json(VerseView { verse, revision, groups }))
}

async fn neighbors(State(store): State<Arc<Store>>, Path(r): Path<String>) -> ApiResult<crate::store::Neighbors> {
    Ok(Json(store.neighbors(&parse_ref(&r)?)?))
}

async fn edits(State(store): State<Arc<Store>>, Path(r): Path<String>, body: Bytes) -> ApiResult<crate::store::Applied> {
    let verse_ref = parse_ref(&r)?;
    let req: EditRequest = parse_body(&body)?;
    Ok(Json(store.apply_edits(&req.session, &verse_ref, req.base_revision, &req.edits)?))
}

async fn undo(State(store): State<Arc<Store>>, Path(id): Path<String>) -> ApiResult<crate::store::Applied> {
    Ok(Json(store.undo(&id)?))
}

async fn redo(State(store): State<Arc<Store>>, Path(id): Path<String>) -> ApiResult<crate::store::Applied> {
    Ok(Json(store.redo(&id)?))
}

async fn validate(
    State(store): State<Arc<Store>>,
    Query(params): Query<HashMap<String, String>>,
) -> ApiResult<ValidateView> {
    let scope = params.get("scope").cloned();
    let summary = tokio::task::spawn_blocking(move || store.validate(scope.as_deref()))
        .await
        .map_err(|e| ServiceError::Io(std::io::Error::other(e)))??;
    Ok(Json(ValidateView {
        verses: summary.verses,
        errors: summary.error_count(),
        warnings: summary.warning_count(),
        diagnostics: summary.diagnostics,
    }))
}

async fn search(
    State(store): State<Arc<Store>>,
    Query(params): Query<HashMap<String, String>>,
) -> ApiResult<Vec<crate::store::Hit>> {
    let q = params.get("q").ok_or_else(|| ServiceError::BadRequest("missing `q`".into()))?;
    let kind = match params.get("type").map(String::as_str) {
        None | Some("lemma") => SearchKind::Lemma,
        Some("surface") => SearchKind::Surface,
        Some("strong") => SearchKind::Strong,
        Some(other) => return Err(ServiceError::BadRequest(format!("unknown search type `{other}`"))),
    };
    Ok(Json(store.search(q, kind)))
}

async fn concordance(
    State(store): State<Arc<Store>>,
    Path(headword): Path<String>,
) -> ApiResult<helfi_core::concord::HeadwordEntry> {
    let index = tokio::task::spawn_blocking({
        let store = Arc::clone(&store);
        move || store.concordance()
    })
    .await
    .map_err(|e| ServiceError::Io(std::io::Error::other(e)))??;
    index.entry(&headword).map(Json).ok_or(ServiceError::UnknownHeadword(headword))
}

async fn save(State(store): State<Arc<Store>>, body: Bytes) -> ApiResult<crate::store::Saved> {
    let req: SaveRequest = if body.iter().all(u8::is_ascii_whitespace) { SaveRequest::default() } else { parse_body(&body)? };
    let saved = tokio::task::spawn_blocking(move || store.save(req.path.as_deref(), req.force))
        .await
        .map_err(|e| ServiceError::Io(std::io::Error::other(e)))??;
    Ok(Json(saved))
}

/// The HTTP API; with `static_dir`, other paths serve files from it.
pub fn router(store: Arc<Store>, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/corpus/meta", get(meta))
        .route("/verse/{ref}", get(verse))
        .route("/verse/{ref}/neighbors", get(neighbors))
        .route("/verse/{ref}/edits", post(edits))
        .route("/session/{id}/undo", post(undo))
        .route("/session/{id}/redo", post(redo))
        .route("/validate", get(validate))
        .route("/search", get(search))
        .route("/concordance/{headword}", get(concordance))
        .route("/save", post(save))
        .with_state(store);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Serves until `shutdown` resolves.
pub async fn serve(
    listener: tokio::net::TcpListener,
    app: Router,
    shutdown: impl std::future::Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, app).with_graceful_shutdown(shutdown).await
}
