use std::sync::Arc;

use axum::extract::{Path, Request, State};
use axum::http::{HeaderValue, StatusCode};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;

use qbra_core::canonical_json;
use qbra_core::session::{Question, QuestionOption, SessionError};

use crate::state::{AppState, StartError};

pub const VERSION_HEADER: &str = "x-fixture-version";

#[derive(Debug)]
pub enum ApiError {
    NotFound(String),
    Conflict(String),
    InvalidOption { message: String, options: Vec<QuestionOption> },
    Unavailable(String),
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, body) = match self {
            ApiError::NotFound(m) => (StatusCode::NOT_FOUND, json!({"error": "not_found", "message": m})),
            ApiError::Conflict(m) => (StatusCode::CONFLICT, json!({"error": "conflict", "message": m})),
            ApiError::InvalidOption { message, options } => (
                StatusCode::UNPROCESSABLE_ENTITY,
                json!({"error": "invalid_option", "message": message, "options": options}),
            ),
            ApiError::Unavailable(m) => (StatusCode::SERVICE_UNAVAILABLE, json!({"error": "unavailable", "message": m})),
        };
        (status, Json(body)).into_response()
    }
}

/// Canonical JSON response body.
fn canonical<T: Serialize>(status: StatusCode, value: &T) -> Response {
    (status, [("content-type", "application/json")], canonical_json(value)).into_response()
}

fn unknown(id: &str) -> ApiError {
    ApiError::NotFound(format!("no live session '{id}'"))
}

#[derive(Serialize)]
struct Created<'a> {
    session_id: &'a str,
    question: Question,
}

#[derive(Deserialize)]
pub struct Selection {
    pub option_id: String,
}

#[derive(Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
enum Step<'a> {
    Question { question: Question },
    Closed { report: &'a qbra_core::advisor::Report },
}

async fn create_session(State(state): State<Arc<AppState>>) -> Result<Response, ApiError> {
    let slot = state.create_session().map_err(|e| match e {
        StartError::Unavailable(m) => ApiError::Unavailable(m),
        StartError::Session(e) => ApiError::Unavailable(e.to_string()),
    })?;
    let session = slot.session.lock().await;
    let question = session.current_question().map_err(|e| ApiError::Unavailable(e.to_string()))?;
    Ok(canonical(StatusCode::CREATED, &Created { session_id: session.id(), question }))
}

async fn get_question(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let slot = state.session(&id).ok_or_else(|| unknown(&id))?;
    let session = slot.session.lock().await;
    let question = session.current_question().map_err(|e| ApiError::Conflict(e.to_string()))?;
    Ok(canonical(StatusCode::OK, &question))
}

async fn post_selection(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Json(body): Json<Selection>,
) -> Result<Response, ApiError> {
    let slot = state.session(&id).ok_or_else(|| unknown(&id))?;
    let mut session = slot.session.lock().await;
    match session.select(&body.option_id) {
        Ok(()) => {}
        Err(SessionError::SessionClosed) => return Err(ApiError::Conflict("session is closed".into())),
        Err(e) => {
            let options = session.current_question().map(|q| q.options).unwrap_or_default();
            return Err(ApiError::InvalidOption { message: e.to_string(), options });
        }
    }
    let step = match session.report() {
        Some(report) => Step::Closed { report },
        None => Step::Question { question: session.current_question().expect("open session") },
    };
    Ok(canonical(StatusCode::OK, &step))
}

async fn post_close(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let slot = state.session(&id).ok_or_else(|| unknown(&id))?;
    let mut session = slot.session.lock().await;
    if session.is_closed() {
        return Err(ApiError::Conflict("session is already closed".into()));
    }
    session.close().map_err(|e| ApiError::Conflict(e.to_string()))?;
    let report = session.report().expect("closed session");
    Ok(canonical(StatusCode::OK, &Step::Closed { report }))
}

async fn get_recommendation(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let slot = state.session(&id).ok_or_else(|| unknown(&id))?;
    let session = slot.session.lock().await;
    let report = session.report().ok_or_else(|| ApiError::Conflict("session is still open".into()))?;
    Ok(canonical(StatusCode::OK, report))
}

async fn get_tree(State(state): State<Arc<AppState>>) -> Result<Response, ApiError> {
    let advisor = state.advisor().map_err(ApiError::Unavailable)?;
    Ok(canonical(StatusCode::OK, &json!({"version": advisor.tree().version(), "root": advisor.tree().to_view()})))
}

async fn get_problem(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let advisor = state.advisor().map_err(ApiError::Unavailable)?;
    let problem = advisor.db().get(&id).ok_or_else(|| ApiError::NotFound(format!("no problem '{id}'")))?;
    let (recommendation, speedup) = advisor.recommend_problem(&id).expect("problem exists");
    Ok(canonical(
        StatusCode::OK,
        &json!({"problem": problem.record, "speedup": speedup, "recommendation": recommendation}),
    ))
}

async fn health(State(state): State<Arc<AppState>>) -> Response {
    match state.advisor() {
        Ok(a) => canonical(
            StatusCode::OK,
            &json!({"status": "ok", "fixture_version": a.version(), "sessions": state.session_count()}),
        ),
        Err(e) => canonical(StatusCode::SERVICE_UNAVAILABLE, &json!({"status": "unavailable", "error": e})),
    }
}

async fn stamp_version(State(state): State<Arc<AppState>>, request: Request, next: Next) -> Response {
    let mut response = next.run(request).await;
    if let Some(v) = state.fixture_version().and_then(|v| HeaderValue::from_str(&v).ok()) {
        response.headers_mut().insert(VERSION_HEADER, v);
    }
    response
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}/question", get(get_question))
        .route("/sessions/{id}/selection", post(post_selection))
        .route("/sessions/{id}/close", post(post_close))
        .route("/sessions/{id}/recommendation", get(get_recommendation))
        .route("/bpm/tree", get(get_tree))
        .route("/problems/{id}", get(get_problem))
        .route("/health", get(health))
        .layer(middleware::from_fn_with_state(Arc::clone(&state), stamp_version))
        .with_state(state)
}
