//! Host crate for the workspace acceptance checks; see `tests/acceptance.rs`.
