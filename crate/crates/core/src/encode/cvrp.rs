//! Two-phase capacitated vehicle routing: a clustering QUBO assigns
//! customers to vehicles (a knapsack-style subproblem), then each cluster
//! becomes an independent TSP over the depot plus its customers.

use crate::error::{Error, Result};
use crate::model::qubo::{Assignment, QuboModel};

use super::tsp::TspInstance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn distance(&self, other: &Point) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Customer {
    pub location: Point,
    pub demand: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvrpInstance {
    depot: Point,
    customers: Vec<Customer>,
    capacity: u64,
    vehicles: usize,
}

impl CvrpInstance {
    pub fn new(
        depot: Point,
        customers: Vec<Customer>,
        capacity: u64,
        vehicles: usize,
    ) -> Result<Self> {
        if vehicles == 0 {
            return Err(Error::Parameter("at least one vehicle is required".into()));
        }
        if customers.is_empty() {
            return Err(Error::Parameter("at least one customer is required".into()));
        }
        if let Some(c) = customers.iter().position(|cu| cu.demand == 0) {
            return Err(Error::Domain(format!("customer {c} has zero demand, must be positive")));
        }
        let total: u64 = customers.iter().map(|c| c.demand).sum();
        if total > capacity * vehicles as u64 {
            return Err(Error::Parameter(format!(
                "total demand {total} exceeds fleet capacity {}",
                capacity * vehicles as u64
            )));
        }
        Ok(Self { depot, customers, capacity, vehicles })
    }

    pub fn depot(&self) -> Point {
        self.depot
    }

    pub fn customers(&self) -> &[Customer] {
        &self.customers
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn vehicles(&self) -> usize {
        self.vehicles
    }
}

/// Variable map of the clustering QUBO: y_{customer, vehicle} at flat index
/// customer·vehicles + vehicle, followed by capacity slack bits per vehicle.
#[derive(Debug, Clone, PartialEq)]
pub struct CvrpLayout {
    customers: usize,
    vehicles: usize,
    seeds: Vec<usize>,
    slack_ranges: Vec<std::ops::Range<usize>>,
}

impl CvrpLayout {
    pub fn num_customers(&self) -> usize {
        self.customers
    }

    pub fn num_vehicles(&self) -> usize {
        self.vehicles
    }

    /// Seed customer chosen for each vehicle.
    pub fn seeds(&self) -> &[usize] {
        &self.seeds
    }

    pub fn slack_ranges(&self) -> &[std::ops::Range<usize>] {
        &self.slack_ranges
    }

    pub fn var(&self, customer: usize, vehicle: usize) -> usize {
        debug_assert!(customer < self.customers && vehicle < self.vehicles);
        customer * self.vehicles + vehicle
    }
}

/// Clustering decode outcome: per-vehicle customer lists, or the violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CvrpDecode {
    Clusters(Vec<Vec<usize>>),
    Infeasible { unassigned_customers: Vec<usize>, overloaded_vehicles: Vec<usize> },
}

/// Phase 1: clustering QUBO.
///
/// Objective Σ d(customer, seed_vehicle)·y_{c,v}; one assignment per
/// customer (equality penalty) and per-vehicle demand ≤ capacity
/// (inequality penalty with binary slack). Vehicle seeds are customers
/// picked by greedy max–min dispersion away from the depot and each other.
/// `lambda = None` uses the dominance default of the assignment objective.
pub fn encode_cvrp_clustering(
    inst: &CvrpInstance,
    lambda: Option<f64>,
) -> Result<(QuboModel, CvrpLayout)> {
    let c = inst.customers.len();
    let v = inst.vehicles;
    let seeds = select_seeds(inst);

    let mut layout = CvrpLayout { customers: c, vehicles: v, seeds, slack_ranges: Vec::new() };
    let mut model = QuboModel::new(c * v);
    for customer in 0..c {
        for vehicle in 0..v {
            let seed = layout.seeds[vehicle];
            let d = inst.customers[customer].location.distance(&inst.customers[seed].location);
            if d != 0.0 {
                model.add_linear(layout.var(customer, vehicle), d)?;
            }
        }
    }

    let lambda = match lambda {
        Some(l) if l > 0.0 && l.is_finite() => l,
        Some(l) => {
            return Err(Error::Parameter(format!("penalty weight must be positive, got {l}")))
        }
        None => model.default_penalty_weight(),
    };

    // Every customer rides exactly one vehicle.
    for customer in 0..c {
        let mut a = vec![0.0; model.num_vars()];
        for vehicle in 0..v {
            a[layout.var(customer, vehicle)] = 1.0;
        }
        model = model.with_equality_penalty(&a, 1.0, lambda)?;
    }

    // Vehicle loads stay within capacity; slack variables are appended per
    // vehicle, so later constraints act on the grown model.
    for vehicle in 0..v {
        let mut a = vec![0.0; model.num_vars()];
        for customer in 0..c {
            a[layout.var(customer, vehicle)] = inst.customers[customer].demand as f64;
        }
        let (grown, slack) = model.with_inequality_penalty(&a, inst.capacity, lambda)?;
        model = grown;
        layout.slack_ranges.push(slack);
    }

    Ok((model, layout))
}

/// Greedy max–min dispersion: the first seed is the customer farthest from
/// the depot; each further seed maximizes its minimum distance to the depot
/// and all chosen seeds. Ties break toward the lower customer index.
fn select_seeds(inst: &CvrpInstance) -> Vec<usize> {
    let c = inst.customers.len();
    let mut seeds: Vec<usize> = Vec::with_capacity(inst.vehicles);
    for _ in 0..inst.vehicles.min(c) {
        let mut best: Option<(usize, f64)> = None;
        for candidate in 0..c {
            if seeds.contains(&candidate) {
                continue;
            }
            let loc = inst.customers[candidate].location;
            let mut score = loc.distance(&inst.depot);
            for &s in &seeds {
                score = score.min(loc.distance(&inst.customers[s].location));
            }
            match best {
                Some((_, b)) if score <= b => {}
                _ => best = Some((candidate, score)),
            }
        }
        seeds.push(best.expect("fewer seeds than customers").0);
    }
    // More vehicles than customers: reuse customer locations cyclically so
    // every vehicle still has a seed (extra vehicles stay empty at optimum).
    while seeds.len() < inst.vehicles {
        seeds.push(seeds[seeds.len() % c.max(1)]);
    }
    seeds
}

/// Reads per-vehicle clusters out of a phase-1 assignment. Slack bits are
/// ignored; feasibility is judged on the assignment variables and the real
/// vehicle loads.
pub fn decode_clusters(
    x: &Assignment,
    inst: &CvrpInstance,
    layout: &CvrpLayout,
) -> Result<CvrpDecode> {
    let expected = layout
        .slack_ranges
        .last()
        .map(|r| r.end)
        .unwrap_or(layout.customers * layout.vehicles);
    if x.len() != expected {
        return Err(Error::Dimension { expected, actual: x.len() });
    }
    let mut clusters = vec![Vec::new(); layout.vehicles];
    let mut unassigned = Vec::new();
    for customer in 0..layout.customers {
        let rides: Vec<usize> = (0..layout.vehicles)
            .filter(|&v| x.bit(layout.var(customer, v)) == 1)
            .collect();
        if rides.len() == 1 {
            clusters[rides[0]].push(customer);
        } else {
            unassigned.push(customer);
        }
    }
    let overloaded: Vec<usize> = (0..layout.vehicles)
        .filter(|&v| {
            let load: u64 = clusters[v].iter().map(|&c| inst.customers[c].demand).sum();
            load > inst.capacity
        })
        .collect();
    if unassigned.is_empty() && overloaded.is_empty() {
        Ok(CvrpDecode::Clusters(clusters))
    } else {
        Ok(CvrpDecode::Infeasible {
            unassigned_customers: unassigned,
            overloaded_vehicles: overloaded,
        })
    }
}

/// Phase 2: the TSP over the depot plus one vehicle's customers.
///
/// City 0 of the returned instance is the depot; city k ≥ 1 is
/// `cluster[k−1]`. Distances are Euclidean, computed here once.
pub fn cluster_tsp_instance(inst: &CvrpInstance, cluster: &[usize]) -> Result<TspInstance> {
    let mut points = Vec::with_capacity(cluster.len() + 1);
    points.push(inst.depot);
    for &c in cluster {
        let customer = inst
            .customers
            .get(c)
            .ok_or_else(|| Error::Domain(format!("customer {c} out of range")))?;
        points.push(customer.location);
    }
    let n = points.len();
    let d = (0..n)
        .map(|i| (0..n).map(|j| points[i].distance(&points[j])).collect())
        .collect();
    TspInstance::new(d)
}
