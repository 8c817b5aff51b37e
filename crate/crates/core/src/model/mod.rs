//! Canonical model representations: QUBO, Ising, and pseudo-Boolean costs,
//! plus constraint compilation and the exhaustive-search oracle.

pub mod brute;
pub mod cost;
pub mod document;
pub mod ising;
pub mod poly;
pub mod qubo;

pub use brute::{brute_force_min, brute_force_min_with_cap, DEFAULT_BRUTE_FORCE_CAP};
pub use cost::{BinaryCost, CompiledCost};
pub use document::{model_from_json, model_to_json, AnyModel};
pub use ising::{to_ising, IsingModel};
pub use poly::PseudoBooleanPolynomial;
pub use qubo::{Assignment, QuboModel};
