//! Sample fixtures compiled into the crate.

pub const BPM: &str = include_str!("../fixtures/bpm.json");
pub const PROBLEMS: &str = include_str!("../fixtures/problems.json");
pub const EMBEDDINGS: &str = include_str!("../fixtures/toy_embeddings.txt");
