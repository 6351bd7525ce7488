//! Stateless HTTP/JSON front end. Every handler parses its body, runs one
//! core call on the blocking pool and returns canonical text forms.

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{header, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use cluster_core::quiver::QuiverJson;
use cluster_core::reptheory::{cc_value, CcObject, Representation, RepresentationJson};
use cluster_core::seed::{classify, exchange_graph, mutation_class, ClassLimits, SeedJson};
use cluster_core::{Error, LaurentPoly, Quiver, Seed};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};
use tower_http::cors::{Any, CorsLayer};

/// Server-side caps. Requests asking for more get 413.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_seeds: usize,
    pub max_quivers: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_seeds: 20_000, max_quivers: 1_000_000 }
    }
}

pub fn router(limits: Limits) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(Any)
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE]);
    Router::new()
        .route("/health", get(health))
        .route("/mutate", post(mutate))
        .route("/explore", post(explore))
        .route("/class", post(class))
        .route("/classify", post(classify_handler))
        .route("/cc", post(cc))
        .layer(cors)
        .with_state(limits)
}

/// An error response: `{"error": <name>, "detail": <text>}`.
#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    error: String,
    detail: String,
}

impl ApiError {
    fn malformed(detail: impl Into<String>) -> Self {
        ApiError { status: StatusCode::BAD_REQUEST, error: "MalformedJson".into(), detail: detail.into() }
    }

    fn too_large(detail: impl Into<String>) -> Self {
        ApiError { status: StatusCode::PAYLOAD_TOO_LARGE, error: "OverLimit".into(), detail: detail.into() }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        // payloads that fail format validation are the client's malformed input
        let status = match e {
            Error::Json(_)
            | Error::InvalidQuiver(_)
            | Error::InvalidSeed(_)
            | Error::LaurentParse(_)
            | Error::InvalidRepresentation(_)
            | Error::VariableMismatch(..) => StatusCode::BAD_REQUEST,
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        ApiError { status, error: e.name().to_string(), detail: e.to_string() }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.error, "detail": self.detail }))).into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;

fn parse<T: DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::malformed(e.to_string()))
}

async fn blocking<F>(f: F) -> ApiResult
where
    F: FnOnce() -> ApiResult + Send + 'static,
{
    tokio::task::spawn_blocking(f).await.unwrap_or_else(|e| {
        Err(ApiError { status: StatusCode::INTERNAL_SERVER_ERROR, error: "Internal".into(), detail: e.to_string() })
    })
}

fn limit(asked: Option<usize>, cap: usize) -> Result<usize, ApiError> {
    match asked {
        Some(0) => Err(ApiError::malformed("limit must be at least 1")),
        Some(n) if n > cap => Err(ApiError::too_large(format!("limit {n} exceeds the server cap {cap}"))),
        Some(n) => Ok(n),
        None => Ok(cap),
    }
}

fn vertices(at: &[usize], n: usize) -> Result<Vec<usize>, ApiError> {
    at.iter()
        .map(|&v| if v == 0 || v > n { Err(Error::VertexOutOfRange { vertex: v, n }.into()) } else { Ok(v - 1) })
        .collect()
}

fn variable(v: &LaurentPoly) -> Value {
    json!({ "text": v.to_string(), "fraction": v.to_fraction_string() })
}

async fn health() -> Json<Value> {
    Json(json!({ "status": "ok" }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MutateRequest {
    quiver: Option<QuiverJson>,
    seed: Option<SeedJson>,
    /// A single 1-based vertex.
    k: Option<usize>,
    /// A 1-based sequence, applied left to right.
    at: Option<Vec<usize>>,
}

async fn mutate(body: Bytes) -> ApiResult {
    let req: MutateRequest = parse(&body)?;
    blocking(move || {
        let mut seed = match (&req.seed, &req.quiver) {
            (Some(s), None) => Seed::try_from(s)?,
            (None, Some(q)) => Seed::initial(&Quiver::try_from(q)?),
            _ => return Err(ApiError::malformed("give exactly one of quiver or seed")),
        };
        let seq: Vec<usize> = match (req.k, req.at) {
            (Some(k), None) => vec![k],
            (None, Some(at)) => at,
            _ => return Err(ApiError::malformed("give exactly one of k or at")),
        };
        let mut new = Vec::new();
        for k in vertices(&seq, seed.n())? {
            seed = seed.mutate(k)?;
            let mut v = variable(&seed.cluster()[k]);
            v["at"] = json!(k + 1);
            new.push(v);
        }
        let j = SeedJson::from(&seed);
        let fractions: Vec<String> = seed.cluster().iter().map(LaurentPoly::to_fraction_string).collect();
        Ok(Json(json!({ "quiver": j.quiver, "cluster": j.cluster, "fractions": fractions, "new": new })))
    })
    .await
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExploreRequest {
    quiver: QuiverJson,
    limit: Option<usize>,
    /// Include every seed and edge, not only the summary.
    #[serde(default)]
    full: bool,
}

async fn explore(State(limits): State<Limits>, body: Bytes) -> ApiResult {
    let req: ExploreRequest = parse(&body)?;
    let max = limit(req.limit, limits.max_seeds)?;
    blocking(move || {
        let q = Quiver::try_from(&req.quiver)?;
        let g = exchange_graph(&q, max)?;
        if req.full {
            return Ok(Json(g.to_json(true)));
        }
        let vars: Vec<String> = g.cluster_variables().iter().map(ToString::to_string).collect();
        Ok(Json(json!({
            "seeds": g.vertex_count(),
            "edges_count": g.edge_count(),
            "variables_count": vars.len(),
            "truncated": g.truncated(),
            "variables": vars,
        })))
    })
    .await
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassRequest {
    quiver: QuiverJson,
    limit: Option<usize>,
}

async fn class(State(limits): State<Limits>, body: Bytes) -> ApiResult {
    let req: ClassRequest = parse(&body)?;
    let max = limit(req.limit, limits.max_quivers)?;
    blocking(move || {
        let c = mutation_class(&Quiver::try_from(&req.quiver)?, max, false)?;
        let s = c.stats();
        Ok(Json(json!({
            "size": s.size,
            "double_arrows": s.double_arrows,
            "max_mult": s.max_multiplicity,
            "truncated": c.truncated(),
        })))
    })
    .await
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassifyRequest {
    quiver: QuiverJson,
    limit: Option<usize>,
    early_exit: Option<bool>,
}

async fn classify_handler(State(limits): State<Limits>, body: Bytes) -> ApiResult {
    let req: ClassifyRequest = parse(&body)?;
    let max = limit(req.limit, limits.max_quivers)?;
    blocking(move || {
        let lim = ClassLimits { max_quivers: max, early_exit: req.early_exit.unwrap_or(true) };
        let c = classify(&Quiver::try_from(&req.quiver)?, lim)?;
        let mut v = c.to_json();
        v["summary"] = json!(c.summary());
        Ok(Json(v))
    })
    .await
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CcRequest {
    representation: Option<RepresentationJson>,
    quiver: Option<QuiverJson>,
    /// 1-based vertex of a shifted projective.
    shifted: Option<usize>,
    /// 1-based interval along a type-A path.
    interval: Option<[usize; 2]>,
}

async fn cc(body: Bytes) -> ApiResult {
    let req: CcRequest = parse(&body)?;
    blocking(move || {
        let (q, x) = match (&req.representation, &req.quiver, req.shifted, req.interval) {
            (Some(r), None, None, None) => {
                let v = Representation::try_from(r)?;
                (v.quiver().clone(), CcObject::Module(v))
            }
            (None, Some(q), Some(i), None) => {
                let q = Quiver::try_from(q)?;
                let i = vertices(&[i], q.n())?[0];
                (q, CcObject::ShiftedProjective(i))
            }
            (None, Some(q), None, Some([i, j])) => {
                let q = Quiver::try_from(q)?;
                if i == 0 || j == 0 {
                    return Err(Error::BadInterval(i, j).into());
                }
                let v = Representation::interval(&q, i - 1, j - 1)?;
                (q, CcObject::Module(v))
            }
            _ => {
                return Err(ApiError::malformed(
                    "give a representation, or a quiver with exactly one of shifted or interval",
                ))
            }
        };
        let value = cc_value(&q, &x)?;
        let mut v = variable(&value);
        v["object"] = json!(x.label());
        Ok(Json(v))
    })
    .await
}
