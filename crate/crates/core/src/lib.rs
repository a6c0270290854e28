pub mod embedding;
pub mod engine;
pub mod error;
pub mod generators;
pub mod graph;
pub mod layering;
pub mod local;
pub mod separator;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
