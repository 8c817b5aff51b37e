//! Gradient-free angle optimization for the layered ansatz.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::anneal::derive_seed;
use crate::error::{Error, Result};
use crate::model::cost::BinaryCost;

use super::nelder_mead::NelderMead;
use super::state::{run_qaoa_with_table, CostTable, QaoaParams};

/// How the optimizer scores a parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObjectiveMode {
    /// Exact statevector expectation: noiseless and reproducible.
    Exact,
    /// Shot-based estimate of the expectation. Per-evaluation sampling seeds
    /// derive deterministically from the optimizer seed.
    Sampled { shots: u64 },
}

#[derive(Debug, Clone)]
pub struct OptimizeConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub mode: ObjectiveMode,
    pub seed: u64,
}

impl Default for OptimizeConfig {
    fn default() -> Self {
        Self { restarts: 10, max_iters: 500, mode: ObjectiveMode::Exact, seed: 0 }
    }
}

pub struct OptimizeOutcome {
    pub params: QaoaParams,
    pub expectation: f64,
    /// Running best expectation per optimizer iteration, across restarts.
    pub trace: Vec<f64>,
}

/// Minimizes the circuit expectation over 2p angles with Nelder–Mead from
/// `restarts` random starts drawn in γ ∈ [0, π), β ∈ [0, π/2).
pub fn optimize_angles(
    cost: &impl BinaryCost,
    depth: usize,
    config: &OptimizeConfig,
) -> Result<OptimizeOutcome> {
    let table = CostTable::build(cost)?;
    optimize_angles_with_table(&table, depth, config)
}

pub fn optimize_angles_with_table(
    table: &CostTable,
    depth: usize,
    config: &OptimizeConfig,
) -> Result<OptimizeOutcome> {
    if depth < 1 {
        return Err(Error::Parameter("depth must be at least 1".into()));
    }
    if config.restarts < 1 {
        return Err(Error::Parameter("need at least one restart".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut inits = Vec::with_capacity(config.restarts);
    for _ in 0..config.restarts {
        let gammas: Vec<f64> =
            (0..depth).map(|_| rng.gen_range(0.0..std::f64::consts::PI)).collect();
        let betas: Vec<f64> =
            (0..depth).map(|_| rng.gen_range(0.0..std::f64::consts::FRAC_PI_2)).collect();
        inits.push(QaoaParams::new(gammas, betas)?);
    }
    optimize_from_inits(table, depth, &inits, config)
}

/// Refines the given starting parameters only; used e.g. to seed depth p+1
/// with a padded depth-p optimum.
pub fn optimize_angles_from(
    table: &CostTable,
    init: &QaoaParams,
    config: &OptimizeConfig,
) -> Result<OptimizeOutcome> {
    optimize_from_inits(table, init.depth(), std::slice::from_ref(init), config)
}

fn optimize_from_inits(
    table: &CostTable,
    depth: usize,
    inits: &[QaoaParams],
    config: &OptimizeConfig,
) -> Result<OptimizeOutcome> {
    let mut eval_count: u64 = 0;
    let mut evaluate = |flat: &[f64]| -> f64 {
        let params = QaoaParams::from_flat(depth, flat).expect("optimizer keeps layout");
        let state = run_qaoa_with_table(table, &params).expect("dimensions fixed");
        eval_count += 1;
        match config.mode {
            ObjectiveMode::Exact => state.expectation(table).expect("dimensions fixed"),
            ObjectiveMode::Sampled { shots } => {
                let counts = state
                    .sample(shots, derive_seed(config.seed, eval_count))
                    .expect("shots validated");
                counts
                    .counts()
                    .iter()
                    .map(|(&k, &c)| table.energy(k as usize) * c as f64)
                    .sum::<f64>()
                    / shots as f64
            }
        }
    };

    let solver = NelderMead { max_iters: config.max_iters, ..Default::default() };
    let mut best: Option<(QaoaParams, f64)> = None;
    let mut trace: Vec<f64> = Vec::new();
    for init in inits {
        if init.depth() != depth {
            return Err(Error::Parameter(format!(
                "init has depth {}, expected {depth}",
                init.depth()
            )));
        }
        let result = solver.minimize(&mut evaluate, &init.to_flat());
        // Keep the global running best so the concatenated trace stays
        // non-increasing across restarts.
        let mut floor = best.as_ref().map(|(_, v)| *v).unwrap_or(f64::INFINITY);
        for &v in &result.trace {
            floor = floor.min(v);
            trace.push(floor);
        }
        if best.as_ref().map(|(_, v)| result.best_value < *v).unwrap_or(true) {
            best = Some((QaoaParams::from_flat(depth, &result.best_point)?, result.best_value));
        }
    }
    let (params, expectation) = best.expect("at least one restart");
    Ok(OptimizeOutcome { params, expectation, trace })
}

/// CSV rendering of an optimizer trace: `iter,best_expectation`.
pub fn trace_to_csv(trace: &[f64]) -> String {
    let mut out = String::from("iter,best_expectation\n");
    for (i, v) in trace.iter().enumerate() {
        out.push_str(&format!("{i},{v}\n"));
    }
    out
}
