// SPDX-License-Identifier: Apache-2.0

//! JSON session API over HTTP.

use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Serialize;

use crate::session::{lattice_hasse, CreateSession, MoveRequest, Rejection, Reply, SessionManager};

type Shared = Arc<SessionManager>;

fn respond<T: Serialize>(reply: Reply<T>, created: bool) -> Response {
    match reply {
        Ok(body) if created => (StatusCode::CREATED, Json(body)).into_response(),
        Ok(body) => Json(body).into_response(),
        Err(r) => {
            let code = if r.not_found {
                StatusCode::NOT_FOUND
            } else {
                StatusCode::UNPROCESSABLE_ENTITY
            };
            (code, Json(r)).into_response()
        }
    }
}

fn bad_body(e: JsonRejection) -> Response {
    (
        StatusCode::BAD_REQUEST,
        Json(Rejection {
            error: "ParseError".into(),
            message: e.body_text(),
            witness: None,
            sup: None,
            not_found: false,
        }),
    )
        .into_response()
}

async fn catalog(State(m): State<Shared>) -> Response {
    Json(m.catalog()).into_response()
}

async fn create(State(m): State<Shared>, body: Result<Json<CreateSession>, JsonRejection>) -> Response {
    match body {
        Ok(Json(req)) => respond(m.create(&req), true),
        Err(e) => bad_body(e),
    }
}

async fn state(State(m): State<Shared>, Path(id): Path<String>) -> Response {
    respond(m.state(&id), false)
}

async fn moves(
    State(m): State<Shared>,
    Path(id): Path<String>,
    body: Result<Json<MoveRequest>, JsonRejection>,
) -> Response {
    match body {
        Ok(Json(req)) => respond(m.submit(&id, &req.mv), false),
        Err(e) => bad_body(e),
    }
}

async fn session_hasse(State(m): State<Shared>, Path(id): Path<String>) -> Response {
    respond(m.hasse(&id), false)
}

async fn named_hasse(Path(name): Path<String>) -> Response {
    respond(lattice_hasse(&name), false)
}

pub fn router(manager: Shared) -> Router {
    Router::new()
        .route("/catalog", get(catalog))
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(state))
        .route("/sessions/{id}/moves", post(moves))
        .route("/sessions/{id}/hasse", get(session_hasse))
        .route("/lattices/{name}/hasse", get(named_hasse))
        .with_state(manager)
}

pub async fn serve(port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(SessionManager::new()))).await
}
