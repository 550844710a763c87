//! High-girth algebraic graphs over prime fields, exact partitions of
//! complete graphs into high-girth parts, and decompositions of
//! bounded-degree graphs into parts without a given even cycle.

pub mod algebraic;
pub mod bounds;
pub mod error;
pub mod field;
pub mod generators;
pub mod graph;
pub mod io;
pub mod manifest;
pub mod partition;
pub mod rainbow;
pub mod random_cover;
pub mod verify;

pub use error::{Error, Result};
