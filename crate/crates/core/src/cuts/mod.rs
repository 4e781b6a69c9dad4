//! Flow and cut primitives, multicut verification and the reference oracle.

pub mod distance;
pub mod flow;
pub mod oracle;
pub mod verify;

pub use distance::cut_distance;
pub use flow::{boundary, degree_of_set, lambda, min_cut, relevant_set, MinCut};
pub use oracle::{all_minimum_multicuts, check_finite_feasible, oracle_min_multicut, oracle_with, OracleConfig, OracleMode};
pub use verify::{verify_multicut, verify_solution};
