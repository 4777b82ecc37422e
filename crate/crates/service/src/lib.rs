//! HTTP/JSON service over the Graph Nim engine.
//!
//! | method | path                          | body            | reply           |
//! |--------|-------------------------------|-----------------|-----------------|
//! | GET    | `/api/graphs`                 |                 | `[GraphInfo]`   |
//! | POST   | `/api/analyze`                | `ConfigWire`    | `Analysis`      |
//! | POST   | `/api/session`                | `NewSessionRequest` | `SessionState` |
//! | GET    | `/api/session/{id}`           |                 | `SessionState`  |
//! | POST   | `/api/session/{id}/move`      | `MoveWire`      | `SessionState`  |
//! | POST   | `/api/session/{id}/whatif`    | `MoveWire`      | `Analysis`      |
//!
//! Anything else is served from the static directory when one is configured.

mod error;
mod session;

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::routing::{get, post};
use axum::{Json, Router};
use graphnim::solver::DEFAULT_WEIGHT_CAP;
use graphnim::wire::{Analysis, ConfigWire, GraphInfo, MoveWire, NewSessionRequest, SessionState};
use graphnim::{GraphId, GraphTopology, Solver};
use tokio::net::TcpListener;
use tower_http::services::ServeDir;

pub use error::ApiError;
pub use session::{Session, SessionStore};

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    /// Directory served at `/` (the browser front end), if any.
    pub static_dir: Option<PathBuf>,
    pub max_sessions: usize,
    pub idle_timeout: Duration,
    /// Per-edge solver cap; larger weights are rejected with 422.
    pub weight_cap: u32,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            static_dir: None,
            max_sessions: 1024,
            idle_timeout: Duration::from_secs(3600),
            weight_cap: DEFAULT_WEIGHT_CAP,
        }
    }
}

pub struct AppState {
    solvers: HashMap<GraphId, Arc<Solver>>,
    sessions: SessionStore,
}

impl AppState {
    pub fn new(config: &ServiceConfig) -> Self {
        let solvers = GraphId::ALL
            .into_iter()
            .map(|id| {
                let solver = Solver::new(GraphTopology::catalog(id)).with_weight_cap(config.weight_cap);
                (id, Arc::new(solver))
            })
            .collect();
        Self {
            solvers,
            sessions: SessionStore::new(config.max_sessions, config.idle_timeout),
        }
    }

    pub fn sessions(&self) -> &SessionStore {
        &self.sessions
    }
}

type Shared = Arc<AppState>;
type ApiResult<T> = Result<Json<T>, ApiError>;

pub fn router(config: &ServiceConfig) -> Router {
    router_with_state(Arc::new(AppState::new(config)), config)
}

pub fn router_with_state(state: Shared, config: &ServiceConfig) -> Router {
    let api = Router::new()
        .route("/api/graphs", get(graphs))
        .route("/api/analyze", post(analyze))
        .route("/api/session", post(new_session))
        .route("/api/session/{id}", get(get_session))
        .route("/api/session/{id}/move", post(play_move))
        .route("/api/session/{id}/whatif", post(what_if))
        .with_state(state);
    match &config.static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Serves until the listener fails.
pub async fn serve(listener: TcpListener, config: &ServiceConfig) -> std::io::Result<()> {
    axum::serve(listener, router(config)).await
}

/// Binds `addr` and serves in a background task, returning the bound address.
pub async fn spawn(addr: SocketAddr, config: ServiceConfig) -> std::io::Result<SocketAddr> {
    let listener = TcpListener::bind(addr).await?;
    let local = listener.local_addr()?;
    tokio::spawn(async move {
        let _ = serve(listener, &config).await;
    });
    Ok(local)
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> Result<T, ApiError> {
    payload.map(|Json(t)| t).map_err(|e| ApiError::bad_request(e.body_text()))
}

/// Runs solver work off the async executor.
async fn blocking<T, F>(f: F) -> Result<T, ApiError>
where
    F: FnOnce() -> Result<T, ApiError> + Send + 'static,
    T: Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::internal(e.to_string()))?
}

fn solver_for(state: &AppState, graph: &str) -> Result<Arc<Solver>, ApiError> {
    let id: GraphId = graph.parse()?;
    Ok(state.solvers[&id].clone())
}

fn session_handle(state: &AppState, id: &str) -> Result<Arc<tokio::sync::Mutex<Session>>, ApiError> {
    state
        .sessions
        .get(id)
        .ok_or_else(|| ApiError::not_found(format!("no session `{id}`")))
}

async fn graphs() -> Json<Vec<GraphInfo>> {
    Json(GraphId::ALL.into_iter().map(GraphInfo::new).collect())
}

async fn analyze(State(state): State<Shared>, payload: Result<Json<ConfigWire>, JsonRejection>) -> ApiResult<Analysis> {
    let wire = body(payload)?;
    let (_, _, config) = wire.resolve()?;
    let solver = solver_for(&state, &wire.graph)?;
    blocking(move || Ok(Analysis::compute(&solver, &config)?)).await.map(Json)
}

async fn new_session(
    State(state): State<Shared>,
    payload: Result<Json<NewSessionRequest>, JsonRejection>,
) -> Result<(StatusCode, Json<SessionState>), ApiError> {
    let req = body(payload)?;
    let (_, _, config) = ConfigWire { graph: req.graph.clone(), weights: req.weights }.resolve()?;
    let solver = solver_for(&state, &req.graph)?;
    let id = uuid::Uuid::new_v4().to_string();
    let (session, snapshot) = blocking(move || {
        // reject over-cap weights before anything is stored
        solver.solve(&config)?;
        let session = Session::start(id, solver, config, req.first)?;
        let snapshot = session.state()?;
        Ok((session, snapshot))
    })
    .await?;
    state.sessions.insert(session);
    Ok((StatusCode::CREATED, Json(snapshot)))
}

async fn get_session(State(state): State<Shared>, Path(id): Path<String>) -> ApiResult<SessionState> {
    let session = session_handle(&state, &id)?.lock_owned().await;
    blocking(move || session.state()).await.map(Json)
}

async fn play_move(
    State(state): State<Shared>,
    Path(id): Path<String>,
    payload: Result<Json<MoveWire>, JsonRejection>,
) -> ApiResult<SessionState> {
    let handle = session_handle(&state, &id)?;
    let mv = body(payload)?;
    let mut session = handle.lock_owned().await;
    blocking(move || {
        session.human_move(&mv)?;
        session.state()
    })
    .await
    .map(Json)
}

async fn what_if(
    State(state): State<Shared>,
    Path(id): Path<String>,
    payload: Result<Json<MoveWire>, JsonRejection>,
) -> ApiResult<Analysis> {
    let handle = session_handle(&state, &id)?;
    let mv = body(payload)?;
    let session = handle.lock_owned().await;
    blocking(move || session.what_if(&mv)).await.map(Json)
}
