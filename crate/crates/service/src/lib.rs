//! HTTP front end for the advisor: session lifecycle, read-only fixture
//! views, TTL eviction and atomic fixture reload.

pub mod api;
pub mod config;
pub mod state;

pub use api::{router, VERSION_HEADER};
pub use config::{ConfigError, ServiceConfig};
pub use state::AppState;
