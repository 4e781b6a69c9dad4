//! Exact multicut solvers for graphs that are close to planar.
//!
//! Two parameterizations are covered: unweighted graphs that become planar
//! after deleting a few edges ([`kplanar`]) and weighted graphs with a drawing
//! that has few crossings ([`crossing`]). A brute-force oracle
//! ([`cuts::oracle`]) backs every solver in tests.

#![allow(clippy::needless_range_loop)]

pub mod bench;
pub mod biclique;
pub mod crossing;
pub mod cuts;
pub mod dual;
pub mod error;
pub mod format;
pub mod gen;
pub mod graph;
pub mod instance;
pub mod kplanar;
pub mod planar;
pub mod solve;
pub mod states;
pub mod weight;

pub use error::{Error, Result};
pub use graph::{EdgeId, Graph, VertexId};
pub use instance::{DemandGraph, Instance, Solution};
pub use weight::Weight;
