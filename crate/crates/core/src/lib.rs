pub mod cli;
pub mod error;
pub mod folcheck;
pub mod graph;
pub mod invariants;
pub mod neighborhoods;
pub mod poly;
pub mod reconstruct;

pub use error::{Error, Result};
