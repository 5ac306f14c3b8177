//! HTTP service exposing embedding loading, analogy evaluation, the
//! convergence simulation, the synthetic-model run, and the dice
//! walkthrough over JSON.
//!
//! Loaded embeddings are cached in memory keyed by content digest and load
//! options, so a long-running server pays the parse cost once per
//! embedding, whatever the number of clients.

mod error;
mod handlers;
mod state;

use axum::routing::{get, post};
use axum::Router;

pub use error::ApiError;
pub use state::AppState;

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/v1/health", get(handlers::health))
        .route(
            "/v1/embeddings",
            post(handlers::load_embeddings).get(handlers::list_embeddings),
        )
        .route("/v1/rank", post(handlers::rank))
        .route("/v1/eval", post(handlers::eval))
        .route("/v1/simulate/game", post(handlers::simulate_game))
        .route("/v1/simulate/model", post(handlers::simulate_model))
        .route("/v1/dice-demo", get(handlers::dice_demo))
        .with_state(state)
}

/// Serves until the listener fails or the process exits.
pub async fn serve(listener: tokio::net::TcpListener, state: AppState) -> std::io::Result<()> {
    axum::serve(listener, router(state)).await
}
