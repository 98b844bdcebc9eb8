//! Connected covers of graphs, their nerves, and Helly-type computations.
//!
//! The crate is organised around a few value types: [`graph::Graph`],
//! [`simplicial::SimplicialComplex`] with its [`simplicial::Chain`]s,
//! [`covers::Cover`] and [`planar::Embedding`]. All of them are immutable
//! after construction. Exact searches (minors, Leray checks, piercing) are
//! bounded by the limits in [`Caps`]; exceeding a limit is an error, never a
//! silent approximation.

pub mod caps;
pub mod covers;
pub mod error;
pub mod fixtures;
pub mod gen;
pub mod graph;
pub mod helly;
pub mod linalg;
pub mod planar;
pub mod simplicial;

pub use caps::Caps;
pub use error::{Error, Result};
