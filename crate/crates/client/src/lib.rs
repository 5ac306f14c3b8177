//! Wire types for the hintbits HTTP API, plus a thin async client.
//!
//! The `client` feature (on by default) pulls in reqwest; disable it to use
//! only the request/response types, which is what the server does.

pub mod api;

#[cfg(feature = "client")]
mod client;

#[cfg(feature = "client")]
pub use client::{ApiClient, ClientError};
