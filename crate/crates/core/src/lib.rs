//! Exact construction and certification of cospectral graphs by coalescing
//! rooted graphs onto vertex partitions.

pub mod catalog;
pub mod codec;
mod error;
pub mod exact;
pub mod graphs;
pub mod matrices;
pub mod random;
pub mod search;
pub mod similarity;
pub mod verify;

pub use error::{Error, Result};
