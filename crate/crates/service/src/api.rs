//! JSON-over-HTTP routes.
//!
//! All vertex labels on the wire are 1-based. Bodies are serialized with
//! fixed field order and 17-digit reals so repeated calls are byte-identical.

use std::collections::HashMap;
use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use gsv_core::json::GraphJson;
use gsv_core::sld::{auto_compute_policy, decay, thresholds, ComputePolicy};
use gsv_core::stabilizer::{enumerate_stabilizers, PauliJson};
use gsv_core::{
    decode_graph_id, generate, GeneratorKind, Graph, GraphId, GraphProperties, Parity, SldError,
};
use serde::Serialize;
use thiserror::Error;

use crate::cache::CacheError;
use crate::engine::{Engine, EngineError};

/// Most stabilizers returned by one request.
pub const MAX_STABILIZER_LIMIT: u64 = 1 << 16;

const DEFAULT_STABILIZER_LIMIT: u64 = 64;

#[derive(Debug, Error)]
pub enum ApiError {
    #[error("{0}")]
    BadRequest(String),
    #[error("{0}")]
    NotFound(String),
    #[error("{0}")]
    TooLarge(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("internal error: {0}")]
    Internal(String),
}

impl ApiError {
    fn status(&self) -> StatusCode {
        match self {
            ApiError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ApiError::NotFound(_) => StatusCode::NOT_FOUND,
            ApiError::TooLarge(_) => StatusCode::PAYLOAD_TOO_LARGE,
            ApiError::Engine(EngineError::Sld(e)) => match e {
                SldError::RequiresForce { .. } => StatusCode::UNPROCESSABLE_ENTITY,
                SldError::TooLarge { .. } => StatusCode::PAYLOAD_TOO_LARGE,
                SldError::Probability(_) | SldError::Domain(_) => StatusCode::BAD_REQUEST,
                SldError::Invalid(_) => StatusCode::INTERNAL_SERVER_ERROR,
            },
            ApiError::Engine(EngineError::Cache(e)) if e.is_retryable() => {
                StatusCode::SERVICE_UNAVAILABLE
            }
            ApiError::Engine(EngineError::Cache(_)) | ApiError::Internal(_) => {
                StatusCode::INTERNAL_SERVER_ERROR
            }
        }
    }
}

#[derive(Serialize)]
struct ErrorBody {
    error: String,
    retryable: bool,
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let retryable =
            matches!(&self, ApiError::Engine(EngineError::Cache(e)) if e.is_retryable());
        let mut resp = json(
            self.status(),
            &ErrorBody {
                error: self.to_string(),
                retryable,
            },
        );
        if retryable {
            resp.headers_mut()
                .insert(header::RETRY_AFTER, HeaderValue::from_static("1"));
        }
        resp
    }
}

impl From<CacheError> for ApiError {
    fn from(e: CacheError) -> Self {
        ApiError::Engine(EngineError::Cache(e))
    }
}

impl From<SldError> for ApiError {
    fn from(e: SldError) -> Self {
        ApiError::Engine(EngineError::Sld(e))
    }
}

fn json<T: Serialize>(status: StatusCode, body: &T) -> Response {
    match serde_json::to_vec(body) {
        Ok(bytes) => (status, [(header::CONTENT_TYPE, "application/json")], bytes).into_response(),
        Err(e) => (StatusCode::INTERNAL_SERVER_ERROR, e.to_string()).into_response(),
    }
}

fn ok<T: Serialize>(body: &T) -> Response {
    json(StatusCode::OK, body)
}

pub type AppState = Arc<Engine>;

pub fn router(engine: AppState) -> Router {
    Router::new()
        .route("/api/v1/graphs/{id}", get(graph_info))
        .route("/api/v1/graphs/{id}/sld", get(graph_sld))
        .route("/api/v1/graphs/{id}/thresholds", get(graph_thresholds))
        .route("/api/v1/graphs/{id}/stabilizers", get(graph_stabilizers))
        .route("/api/v1/graphs/{id}/lc/{vertex}", post(graph_lc))
        .route("/api/v1/predefined", get(predefined))
        .route("/api/v1/predefined/{kind}", get(predefined_graph))
        .route("/api/v1/random", get(random))
        .fallback(|| async { ApiError::NotFound("no such route".into()) })
        .with_state(engine)
}

type Params = Query<HashMap<String, String>>;

fn parse_id(id: &str) -> Result<Graph, ApiError> {
    decode_graph_id(id).map_err(|e| ApiError::BadRequest(e.to_string()))
}

fn param<T: std::str::FromStr>(
    params: &HashMap<String, String>,
    name: &str,
) -> Result<Option<T>, ApiError> {
    params
        .get(name)
        .map(|v| {
            v.parse::<T>()
                .map_err(|_| ApiError::BadRequest(format!("invalid {name}: {v:?}")))
        })
        .transpose()
}

fn required<T: std::str::FromStr>(
    params: &HashMap<String, String>,
    name: &str,
) -> Result<T, ApiError> {
    param(params, name)?.ok_or_else(|| ApiError::BadRequest(format!("missing parameter {name}")))
}

async fn blocking<T, F>(f: F) -> Result<T, ApiError>
where
    F: FnOnce() -> Result<T, ApiError> + Send + 'static,
    T: Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::Internal(e.to_string()))?
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GraphInfo {
    id: GraphId,
    graph: GraphJson,
    properties: GraphProperties,
    parity: Vec<Parity>,
    distillation_pair: Option<[usize; 2]>,
    policy: ComputePolicy,
}

async fn graph_info(Path(id): Path<String>) -> Result<Response, ApiError> {
    let g = parse_id(&id)?;
    Ok(ok(&GraphInfo {
        id: g.id(),
        graph: GraphJson::from(&g),
        properties: g.properties(),
        parity: g.parity_coloring(),
        distillation_pair: g.distillation_pair().map(|(i, j)| [i + 1, j + 1]),
        policy: auto_compute_policy(&g),
    }))
}

async fn graph_sld(
    State(engine): State<AppState>,
    Path(id): Path<String>,
    Query(params): Params,
) -> Result<Response, ApiError> {
    let g = parse_id(&id)?;
    let force = param::<bool>(&params, "force")?.unwrap_or(false);
    let noise = param::<f64>(&params, "noise")?;
    let sld = blocking(move || Ok(engine.sld(&g, force)?)).await?;
    match noise {
        Some(p) => Ok(ok(&decay(&sld, p)?.to_json())),
        None => Ok(ok(&sld.to_json())),
    }
}

async fn graph_thresholds(
    State(engine): State<AppState>,
    Path(id): Path<String>,
    Query(params): Params,
) -> Result<Response, ApiError> {
    let g = parse_id(&id)?;
    let force = param::<bool>(&params, "force")?.unwrap_or(false);
    let report = blocking(move || {
        let sld = engine.sld(&g, force)?;
        Ok(thresholds(&g, &sld))
    })
    .await?;
    Ok(ok(&report.to_json()))
}

#[derive(Serialize)]
struct StabilizerPage {
    n: usize,
    total: u64,
    stabilizers: Vec<PauliJson>,
}

async fn graph_stabilizers(
    Path(id): Path<String>,
    Query(params): Params,
) -> Result<Response, ApiError> {
    let g = parse_id(&id)?;
    let limit = param::<u64>(&params, "limit")?.unwrap_or(DEFAULT_STABILIZER_LIMIT);
    if limit > MAX_STABILIZER_LIMIT {
        return Err(ApiError::BadRequest(format!(
            "limit must be at most {MAX_STABILIZER_LIMIT}"
        )));
    }
    let stream = enumerate_stabilizers(&g).map_err(|e| ApiError::TooLarge(e.to_string()))?;
    let total = stream.len() as u64;
    let stabilizers = stream
        .take(limit as usize)
        .map(|s| s.pauli.to_json())
        .collect();
    Ok(ok(&StabilizerPage {
        n: g.n(),
        total,
        stabilizers,
    }))
}

#[derive(Serialize)]
struct IdBody {
    id: GraphId,
}

async fn graph_lc(Path((id, vertex)): Path<(String, String)>) -> Result<Response, ApiError> {
    let g = parse_id(&id)?;
    let v: usize = vertex
        .parse()
        .ok()
        .filter(|&v| v >= 1)
        .ok_or_else(|| ApiError::BadRequest(format!("invalid vertex {vertex:?}")))?;
    let lc = g
        .local_complement(v - 1)
        .map_err(|e| ApiError::BadRequest(e.to_string()))?;
    Ok(ok(&IdBody { id: lc.id() }))
}

#[derive(Serialize)]
struct KindList {
    kinds: Vec<GeneratorKind>,
}

async fn predefined() -> Response {
    ok(&KindList {
        kinds: GeneratorKind::ALL.to_vec(),
    })
}

async fn predefined_graph(
    Path(kind): Path<String>,
    Query(params): Params,
) -> Result<Response, ApiError> {
    let kind: GeneratorKind = kind
        .parse()
        .map_err(|e: gsv_core::GenerateError| ApiError::NotFound(e.to_string()))?;
    let n = required::<usize>(&params, "n")?;
    let g = generate(kind, n, param(&params, "p")?, param(&params, "seed")?)
        .map_err(|e| ApiError::BadRequest(e.to_string()))?;
    Ok(ok(&IdBody { id: g.id() }))
}

async fn random(Query(params): Params) -> Result<Response, ApiError> {
    let n = required::<usize>(&params, "n")?;
    let p = required::<f64>(&params, "p")?;
    let seed = required::<u64>(&params, "seed")?;
    let g = generate(GeneratorKind::Random, n, Some(p), Some(seed))
        .map_err(|e| ApiError::BadRequest(e.to_string()))?;
    Ok(ok(&IdBody { id: g.id() }))
}

/// Binds `addr` and serves the API until ctrl-c.
pub async fn serve(addr: std::net::SocketAddr, engine: AppState) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(addr = %listener.local_addr()?, "listening");
    axum::serve(listener, router(engine))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn storage_failures_are_retryable() {
        let err = ApiError::from(CacheError::Io {
            path: "cache.jsonl".into(),
            source: std::io::Error::other("disk full"),
        });
        let resp = err.into_response();
        assert_eq!(resp.status(), StatusCode::SERVICE_UNAVAILABLE);
        assert_eq!(resp.headers()[header::RETRY_AFTER], "1");
    }

    #[test]
    fn integrity_failures_are_internal() {
        let err = ApiError::from(CacheError::Integrity {
            key: "2:8".parse().unwrap(),
            version: "v".into(),
        });
        assert_eq!(
            err.into_response().status(),
            StatusCode::INTERNAL_SERVER_ERROR
        );
    }
}
