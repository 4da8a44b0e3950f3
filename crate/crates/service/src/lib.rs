//! HTTP front end for playing the ESD labeling game against the engine.
//!
//! Routes:
//!
//! * `POST /api/session` creates a game; body `{"graph", "l", "side", "strategy"}`
//!   where `graph` is a family string (`"fan:8"`) or graph JSON and `side` is
//!   the side the human plays;
//! * `GET /api/session/{id}` returns the full snapshot;
//! * `POST /api/session/{id}/move` with `{"v", "label"}` plays a human move and
//!   the engine's reply;
//! * `DELETE /api/session/{id}` drops the session.
//!
//! Everything else is served from the static directory, if one is configured.

mod session;

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde_json::{json, Value};
use tower_http::services::ServeDir;
use uuid::Uuid;

pub use session::{CreateSession, GraphSpec, MoveOutcome, Session, SessionError, MAX_SESSION_VERTICES};

use esd_core::game::Move;

pub const DEFAULT_IDLE_TIMEOUT: Duration = Duration::from_secs(3600);

#[derive(Clone, Debug)]
pub struct Config {
    pub idle_timeout: Duration,
    pub static_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            idle_timeout: DEFAULT_IDLE_TIMEOUT,
            static_dir: None,
        }
    }
}

struct Entry {
    session: Mutex<Session>,
    last_access: Mutex<Instant>,
}

/// Shared session store. Each session has its own lock, so requests to one
/// session are serialized while different sessions proceed independently.
#[derive(Clone)]
pub struct AppState {
    sessions: Arc<Mutex<HashMap<Uuid, Arc<Entry>>>>,
    idle_timeout: Duration,
}

impl AppState {
    pub fn new(idle_timeout: Duration) -> Self {
        AppState {
            sessions: Arc::new(Mutex::new(HashMap::new())),
            idle_timeout,
        }
    }

    pub fn session_count(&self) -> usize {
        self.sessions.lock().unwrap().len()
    }

    fn insert(&self, session: Session) -> Uuid {
        let id = Uuid::new_v4();
        let entry = Arc::new(Entry {
            session: Mutex::new(session),
            last_access: Mutex::new(Instant::now()),
        });
        self.sessions.lock().unwrap().insert(id, entry);
        id
    }

    /// Looks a session up and refreshes its idle clock; expired sessions
    /// are dropped and reported missing.
    fn touch(&self, id: Uuid) -> Option<Arc<Entry>> {
        let mut map = self.sessions.lock().unwrap();
        let entry = map.get(&id)?.clone();
        let mut last = entry.last_access.lock().unwrap();
        if last.elapsed() > self.idle_timeout {
            drop(last);
            map.remove(&id);
            return None;
        }
        *last = Instant::now();
        drop(last);
        Some(entry)
    }

    /// Removes every session idle for longer than the timeout.
    pub fn sweep(&self) -> usize {
        let mut map = self.sessions.lock().unwrap();
        let before = map.len();
        map.retain(|_, e| e.last_access.lock().unwrap().elapsed() <= self.idle_timeout);
        before - map.len()
    }
}

pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError {
            status,
            message: message.into(),
        }
    }

    fn not_found(id: &str) -> Self {
        ApiError::new(StatusCode::NOT_FOUND, format!("no session {id}"))
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message }))).into_response()
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, r.body_text())
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, e.to_string())
    }
}

fn parse_id(raw: &str) -> Result<Uuid, ApiError> {
    Uuid::parse_str(raw).map_err(|_| ApiError::not_found(raw))
}

async fn create_session(
    State(app): State<AppState>,
    body: Result<Json<CreateSession>, JsonRejection>,
) -> Result<(StatusCode, Json<Value>), ApiError> {
    let Json(req) = body?;
    let (session, opening) = Session::create(req)?;
    let snapshot = session.snapshot();
    let id = app.insert(session);
    let mut body = snapshot;
    body["id"] = json!(id.to_string());
    body["engineReply"] = json!(opening);
    Ok((StatusCode::CREATED, Json(body)))
}

async fn get_session(State(app): State<AppState>, Path(raw): Path<String>) -> Result<Json<Value>, ApiError> {
    let id = parse_id(&raw)?;
    let entry = app.touch(id).ok_or_else(|| ApiError::not_found(&raw))?;
    let mut body = entry.session.lock().unwrap().snapshot();
    body["id"] = json!(raw);
    Ok(Json(body))
}

async fn post_move(
    State(app): State<AppState>,
    Path(raw): Path<String>,
    body: Result<Json<Move>, JsonRejection>,
) -> Result<(StatusCode, Json<Value>), ApiError> {
    let id = parse_id(&raw)?;
    let Json(m) = body?;
    let entry = app.touch(id).ok_or_else(|| ApiError::not_found(&raw))?;
    let mut session = entry.session.lock().unwrap();
    let outcome = session.human_move(m);
    let status = if outcome.out_of_turn {
        StatusCode::CONFLICT
    } else {
        StatusCode::OK
    };
    let mut snapshot = session.snapshot();
    snapshot["id"] = json!(raw);
    Ok((
        status,
        Json(json!({
            "accepted": outcome.accepted,
            "reason": outcome.reason,
            "conflict": outcome.conflict,
            "engineReply": outcome.engine_reply,
            "status": session.status(),
            "legalMoves": session.human_legal_moves(),
            "state": snapshot,
        })),
    ))
}

async fn delete_session(State(app): State<AppState>, Path(raw): Path<String>) -> Result<StatusCode, ApiError> {
    let id = parse_id(&raw)?;
    match app.sessions.lock().unwrap().remove(&id) {
        Some(_) => Ok(StatusCode::NO_CONTENT),
        None => Err(ApiError::not_found(&raw)),
    }
}

pub fn router(app: AppState, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/session", post(create_session))
        .route("/api/session/:id", get(get_session).delete(delete_session))
        .route("/api/session/:id/move", post(post_move))
        .with_state(app);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Builds the router and starts the background sweeper for idle sessions.
pub fn app(config: Config) -> (Router, AppState) {
    let state = AppState::new(config.idle_timeout);
    let sweeper = state.clone();
    let period = (config.idle_timeout / 4).clamp(Duration::from_millis(10), Duration::from_secs(60));
    tokio::spawn(async move {
        let mut ticker = tokio::time::interval(period);
        loop {
            ticker.tick().await;
            sweeper.sweep();
        }
    });
    (router(state.clone(), config.static_dir), state)
}
