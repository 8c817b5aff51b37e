//! Transport-problem encoders: TSP (one-hot and compact binary), traffic
//! signal grids, two-phase capacitated routing, and resource accounting.

pub mod cvrp;
pub mod documents;
pub mod resources;
pub mod traffic;
pub mod tsp;

pub use cvrp::{
    cluster_tsp_instance, decode_clusters, encode_cvrp_clustering, Customer, CvrpDecode,
    CvrpInstance, CvrpLayout, Point,
};
pub use documents::{
    cvrp_from_json, decode_assignment_json, layout_from_json, layout_to_json, traffic_from_json,
    tsp_from_json, tsp_to_json, LayoutDoc,
};
pub use resources::{reports_to_csv, ResourceReport};
pub use traffic::{encode_traffic_grid, TrafficGrid};
pub use tsp::{
    decode_binary, decode_one_hot, encode_tsp_binary, encode_tsp_one_hot,
    encode_tsp_one_hot_fixed_start, tour_length, tsp_one_hot_objective, BinaryDecode,
    BinaryLayout, OneHotDecode, OneHotLayout, TspInstance,
};
