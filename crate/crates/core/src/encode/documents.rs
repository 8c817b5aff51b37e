//! JSON documents for transport problems and layout sidecars.
//!
//! Problem documents:
//!
//! * TSP — `{"distance": [[...], ...]}`
//! * traffic — `{"rows", "cols", "q_ns": [...], "q_ew": [...], "prev": [...], "A", "B", "G"}`
//! * CVRP — `{"depot": [x, y], "customers": [[x, y, demand], ...], "capacity", "vehicles"}`
//!
//! Layout sidecars carry whatever a decoder needs to interpret a raw
//! assignment, tagged by `encoding`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::cvrp::{Customer, CvrpInstance, Point};
use super::traffic::TrafficGrid;
use super::tsp::TspInstance;

#[derive(Deserialize)]
struct TspDoc {
    distance: Vec<Vec<f64>>,
}

pub fn tsp_from_json(json: &str) -> Result<TspInstance> {
    let doc: TspDoc =
        serde_json::from_str(json).map_err(|e| Error::Document(format!("tsp document: {e}")))?;
    TspInstance::new(doc.distance)
}

pub fn tsp_to_json(inst: &TspInstance) -> String {
    serde_json::json!({ "distance": inst.matrix() }).to_string()
}

#[derive(Deserialize)]
struct TrafficDoc {
    rows: usize,
    cols: usize,
    q_ns: Vec<f64>,
    q_ew: Vec<f64>,
    prev: Vec<i8>,
    #[serde(rename = "A")]
    bias_weight: f64,
    #[serde(rename = "B")]
    switch_weight: f64,
    #[serde(rename = "G")]
    green_wave_weight: f64,
}

pub fn traffic_from_json(json: &str) -> Result<TrafficGrid> {
    let doc: TrafficDoc = serde_json::from_str(json)
        .map_err(|e| Error::Document(format!("traffic document: {e}")))?;
    TrafficGrid::new(
        doc.rows,
        doc.cols,
        doc.q_ns,
        doc.q_ew,
        doc.prev,
        doc.bias_weight,
        doc.switch_weight,
        doc.green_wave_weight,
    )
}

#[derive(Deserialize)]
struct CvrpDoc {
    depot: (f64, f64),
    customers: Vec<(f64, f64, f64)>,
    capacity: f64,
    vehicles: usize,
}

pub fn cvrp_from_json(json: &str) -> Result<CvrpInstance> {
    let doc: CvrpDoc =
        serde_json::from_str(json).map_err(|e| Error::Document(format!("cvrp document: {e}")))?;
    let capacity = as_count(doc.capacity, "capacity")?;
    let customers = doc
        .customers
        .into_iter()
        .enumerate()
        .map(|(i, (x, y, demand))| {
            Ok(Customer {
                location: Point { x, y },
                demand: as_count(demand, &format!("customers[{i}] demand"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    CvrpInstance::new(Point { x: doc.depot.0, y: doc.depot.1 }, customers, capacity, doc.vehicles)
}

// Demands and capacities feed the binary slack encoding, which covers an
// integer range, so they must arrive integral.
fn as_count(v: f64, what: &str) -> Result<u64> {
    if !v.is_finite() || v < 0.0 || v.fract() != 0.0 {
        return Err(Error::Document(format!("{what} must be a nonnegative integer, got {v}")));
    }
    Ok(v as u64)
}

/// Decoder metadata written next to an encoded model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "encoding", rename_all = "kebab-case")]
pub enum LayoutDoc {
    OneHot {
        num_cities: usize,
        fixed_start: bool,
    },
    Binary {
        num_cities: usize,
        bits_per_position: usize,
    },
    Traffic {
        rows: usize,
        cols: usize,
    },
    CvrpClustering {
        customers: usize,
        vehicles: usize,
        demands: Vec<u64>,
        capacity: u64,
        /// Total variable count including capacity slack bits.
        num_vars: usize,
    },
}

pub fn layout_to_json(layout: &LayoutDoc) -> String {
    serde_json::to_string_pretty(layout).expect("layout serializes")
}

pub fn layout_from_json(json: &str) -> Result<LayoutDoc> {
    serde_json::from_str(json).map_err(|e| Error::Document(format!("layout sidecar: {e}")))
}

/// Interprets a raw solver assignment through a layout sidecar, producing
/// the `decoded` JSON fragment of a solution document. Infeasibility is a
/// value, not an error.
pub fn decode_assignment_json(
    x: &crate::model::qubo::Assignment,
    layout: &LayoutDoc,
) -> Result<serde_json::Value> {
    use super::tsp::{decode_binary, decode_one_hot, BinaryDecode, BinaryLayout, OneHotDecode,
        OneHotLayout};
    use serde_json::json;

    match layout {
        LayoutDoc::OneHot { num_cities, fixed_start } => {
            let l = OneHotLayout::new(*num_cities, *fixed_start)?;
            Ok(match decode_one_hot(x, &l)? {
                OneHotDecode::Tour(tour) => json!({ "type": "tour", "tour": tour }),
                OneHotDecode::Infeasible { bad_cities, bad_positions } => json!({
                    "type": "infeasible",
                    "bad_cities": bad_cities,
                    "bad_positions": bad_positions,
                }),
            })
        }
        LayoutDoc::Binary { num_cities, .. } => {
            let l = BinaryLayout::new(*num_cities)?;
            Ok(match decode_binary(x, &l)? {
                BinaryDecode::Tour(tour) => json!({ "type": "tour", "tour": tour }),
                BinaryDecode::Infeasible { invalid_positions, repeated_cities } => json!({
                    "type": "infeasible",
                    "invalid_positions": invalid_positions,
                    "repeated_cities": repeated_cities,
                }),
            })
        }
        LayoutDoc::Traffic { rows, cols } => {
            let n = rows * cols;
            if x.len() != n {
                return Err(Error::Dimension { expected: n, actual: x.len() });
            }
            let modes: Vec<i8> = x.to_spins();
            Ok(json!({ "type": "modes", "modes": modes }))
        }
        LayoutDoc::CvrpClustering { customers, vehicles, demands, capacity, num_vars } => {
            if x.len() != *num_vars {
                return Err(Error::Dimension { expected: *num_vars, actual: x.len() });
            }
            let mut clusters = vec![Vec::new(); *vehicles];
            let mut unassigned = Vec::new();
            for c in 0..*customers {
                let rides: Vec<usize> =
                    (0..*vehicles).filter(|&v| x.bit(c * vehicles + v) == 1).collect();
                if rides.len() == 1 {
                    clusters[rides[0]].push(c);
                } else {
                    unassigned.push(c);
                }
            }
            let overloaded: Vec<usize> = (0..*vehicles)
                .filter(|&v| {
                    let load: u64 = clusters[v].iter().map(|&c| demands[c]).sum();
                    load > *capacity
                })
                .collect();
            if unassigned.is_empty() && overloaded.is_empty() {
                Ok(json!({ "type": "clusters", "clusters": clusters }))
            } else {
                Ok(json!({
                    "type": "infeasible",
                    "unassigned_customers": unassigned,
                    "overloaded_vehicles": overloaded,
                }))
            }
        }
    }
}
