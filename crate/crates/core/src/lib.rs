//! Desk-scale toolkit for quantum-style combinatorial optimization of
//! transport problems.
//!
//! The pipeline: encode a transport problem (TSP, capacitated routing,
//! traffic-signal grids) as a QUBO or higher-order binary cost, transform to
//! Ising form, solve by exhaustive search, simulated annealing, or a
//! classically simulated QAOA, and benchmark solvers with time-to-solution
//! and resource-scaling reports.

pub mod anneal;
pub mod bench;
pub mod encode;
pub mod error;
pub mod model;
pub mod qaoa;

pub use error::{Error, Result};
