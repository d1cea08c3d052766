//! HTTP facade. All endpoints are POST with form parameters, accepted as
//! `application/x-www-form-urlencoded`, `multipart/form-data` or query string.

use std::collections::HashMap;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{FromRequest, Multipart, Request, State};
use axum::http::header::CONTENT_TYPE;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::post;
use axum::Router;
use tower_http::cors::CorsLayer;

use crate::recorder::{Ack, Recorder, ServiceError};

/// Form parameters from the query string and the request body.
#[derive(Debug, Default)]
pub struct Params(pub HashMap<String, String>);

impl Params {
    fn take(&mut self, key: &str) -> Option<String> {
        self.0.remove(key)
    }
}

fn bad_request(msg: impl ToString) -> Response {
    (StatusCode::BAD_REQUEST, msg.to_string()).into_response()
}

impl<S: Send + Sync> FromRequest<S> for Params {
    type Rejection = Response;

    async fn from_request(req: Request, state: &S) -> Result<Self, Self::Rejection> {
        let mut params = HashMap::new();
        if let Some(query) = req.uri().query() {
            let pairs: Vec<(String, String)> = serde_urlencoded::from_str(query).map_err(bad_request)?;
            params.extend(pairs);
        }
        let multipart = req
            .headers()
            .get(CONTENT_TYPE)
            .and_then(|v| v.to_str().ok())
            .is_some_and(|ct| ct.starts_with("multipart/form-data"));
        if multipart {
            let mut form = Multipart::from_request(req, state)
                .await
                .map_err(IntoResponse::into_response)?;
            while let Some(field) = form.next_field().await.map_err(bad_request)? {
                let Some(key) = field.name().map(str::to_owned) else {
                    continue;
                };
                let value = field.text().await.map_err(bad_request)?;
                params.insert(key, value);
            }
        } else {
            let body = Bytes::from_request(req, state)
                .await
                .map_err(IntoResponse::into_response)?;
            let pairs: Vec<(String, String)> = serde_urlencoded::from_bytes(&body).map_err(bad_request)?;
            params.extend(pairs);
        }
        Ok(Params(params))
    }
}

impl IntoResponse for Ack {
    fn into_response(self) -> Response {
        (StatusCode::OK, self.body()).into_response()
    }
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = match &self {
            ServiceError::MissingParameter(_) | ServiceError::Rejected(_) => StatusCode::BAD_REQUEST,
            ServiceError::NoSession => StatusCode::CONFLICT,
            ServiceError::Storage(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        (status, self.to_string()).into_response()
    }
}

type Shared = State<Arc<Recorder>>;

/// Runs a recorder call off the async executor; saving a model touches the disk.
async fn call<T: Send + 'static>(recorder: Arc<Recorder>, f: impl FnOnce(&Recorder) -> T + Send + 'static) -> T {
    tokio::task::spawn_blocking(move || f(&recorder))
        .await
        .expect("recorder call panicked")
}

async fn startrec(State(r): Shared, mut p: Params) -> Result<Ack, ServiceError> {
    let title = p.take("title");
    call(r, move |r| r.start(title.as_deref())).await
}

async fn vertex(State(r): Shared, mut p: Params) -> Result<Ack, ServiceError> {
    let name = p.take("name");
    call(r, move |r| r.vertex(name.as_deref())).await
}

async fn edge(State(r): Shared, mut p: Params) -> Result<Ack, ServiceError> {
    let name = p.take("name");
    call(r, move |r| r.edge(name.as_deref())).await
}

async fn keepalive(State(r): Shared) -> Ack {
    call(r, Recorder::keepalive).await
}

async fn stoprec(State(r): Shared) -> Result<Ack, ServiceError> {
    call(r, Recorder::stop).await
}

/// Routes with permissive CORS: the capture script posts from the origin of
/// the application under test.
pub fn router(recorder: Arc<Recorder>) -> Router {
    Router::new()
        .route("/startrec", post(startrec))
        .route("/vertex", post(vertex))
        .route("/edge", post(edge))
        .route("/keepalive", post(keepalive))
        .route("/stoprec", post(stoprec))
        .layer(CorsLayer::permissive())
        .with_state(recorder)
}
