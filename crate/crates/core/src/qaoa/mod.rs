//! Classically simulated QAOA: exact statevector ansatz execution,
//! Born-rule sampling, derivative-free angle search, and landscape slicing.

pub mod landscape;
pub mod nelder_mead;
pub mod optimize;
pub mod state;

pub use landscape::{
    csv_to_matrix, landscape_slice, landscape_slice_with_table, slice_to_csv, LandscapeSlice,
    SliceDirections,
};
pub use optimize::{
    optimize_angles, optimize_angles_from, optimize_angles_with_table, trace_to_csv,
    ObjectiveMode, OptimizeConfig, OptimizeOutcome,
};
pub use state::{
    run_qaoa_circuit, run_qaoa_with_table, CostTable, QaoaParams, SampleCounts, StateVector,
    DEFAULT_QUBIT_CAP,
};
