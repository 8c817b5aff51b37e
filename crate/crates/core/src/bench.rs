//! Time-to-solution benchmarking and resource-scaling sweeps.
//!
//! TTS is the expected time to observe the optimum at least once with 99%
//! confidence: `T · ln(0.01) / ln(1 − p)` for per-run time T and per-run
//! success probability p.

use serde::Serialize;
use serde_json::json;

use crate::anneal::{anneal_compiled, derive_seed, success_fraction, AnnealSchedule};
use crate::encode::resources::ResourceReport;
use crate::encode::traffic::{encode_traffic_grid, TrafficGrid};
use crate::encode::tsp::{encode_tsp_binary, encode_tsp_one_hot, TspInstance};
use crate::error::{Error, Result};
use crate::model::brute::brute_force_min_with_cap;
use crate::model::cost::{BinaryCost, CompiledCost};
use crate::model::DEFAULT_BRUTE_FORCE_CAP;

const CONFIDENCE_TARGET: f64 = 0.99;

/// `T · ln(1 − 0.99) / ln(1 − p)`.
///
/// At p = 1 a single run always succeeds, so TTS = T by convention (the
/// formula itself is singular there). p ≤ 0 has no defined TTS and is an
/// error rather than a silent infinity.
pub fn compute_tts(run_time: f64, success_probability: f64) -> Result<f64> {
    if !(run_time > 0.0) || !run_time.is_finite() {
        return Err(Error::Parameter(format!("run time must be positive, got {run_time}")));
    }
    if success_probability <= 0.0 {
        return Err(Error::Undefined(format!(
            "TTS is undefined for success probability {success_probability}"
        )));
    }
    if success_probability > 1.0 {
        return Err(Error::Parameter(format!(
            "success probability {success_probability} exceeds 1"
        )));
    }
    if success_probability >= 1.0 {
        return Ok(run_time);
    }
    Ok(run_time * (1.0 - CONFIDENCE_TARGET).ln() / (1.0 - success_probability).ln())
}

/// 95% Wilson score interval for a binomial fraction.
pub fn wilson_interval(p_hat: f64, runs: usize) -> (f64, f64) {
    let z = 1.959963984540054_f64;
    let n = runs as f64;
    let z2 = z * z;
    let center = (p_hat + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z * (p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n);
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Solver selection for a TTS experiment.
#[derive(Debug, Clone, PartialEq)]
pub enum SolverSpec {
    /// Exhaustive search; p = 1 by construction.
    BruteForce,
    Anneal(AnnealSchedule),
}

impl SolverSpec {
    pub fn descriptor(&self) -> serde_json::Value {
        match self {
            SolverSpec::BruteForce => json!({ "kind": "brute" }),
            SolverSpec::Anneal(s) => json!({
                "kind": "sa",
                "sweeps": s.sweeps(),
                "t0": s.temp_initial(),
                "t1": s.temp_final(),
            }),
        }
    }
}

/// One benchmarking task: a cost, a solver, a run budget, and a master seed.
pub struct ExperimentSpec<'a, C: BinaryCost> {
    pub cost: &'a C,
    pub solver: SolverSpec,
    pub runs: usize,
    pub seed: u64,
    /// Instance descriptor copied into the report.
    pub instance: serde_json::Value,
    /// Known optimum, when an external oracle supplies it. Otherwise the
    /// exhaustive oracle runs first (and must fit under `brute_force_cap`).
    pub optimal_energy: Option<f64>,
    pub brute_force_cap: usize,
}

impl<'a, C: BinaryCost> ExperimentSpec<'a, C> {
    pub fn new(cost: &'a C, solver: SolverSpec, runs: usize, seed: u64) -> Self {
        Self {
            cost,
            solver,
            runs,
            seed,
            instance: json!({ "num_vars": cost.num_vars() }),
            optimal_energy: None,
            brute_force_cap: DEFAULT_BRUTE_FORCE_CAP,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TtsReport {
    /// Mean solver wall time per run, seconds. Model construction and the
    /// oracle are excluded.
    #[serde(rename = "T")]
    pub run_time: f64,
    pub p: f64,
    pub runs: usize,
    /// None when no run succeeded (p = 0): undefined rather than infinite.
    pub tts: Option<f64>,
    pub ci95: (f64, f64),
    pub seed: u64,
    pub solver: serde_json::Value,
    pub instance: serde_json::Value,
    /// Best energy over all runs and the oracle optimum, for inspection.
    pub best_energy: f64,
    pub optimal_energy: f64,
    /// Per-run best energies; deterministic given the master seed.
    pub energies: Vec<f64>,
}

impl TtsReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with timing-derived fields (`T`, `tts`) removed; what remains is
    /// reproducible byte-for-byte for a fixed spec.
    pub fn deterministic_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        let obj = value.as_object_mut().expect("report is an object");
        obj.remove("T");
        obj.remove("tts");
        serde_json::to_string_pretty(&value).expect("report serializes")
    }
}

/// Runs the solver `runs` times with derived seeds, estimates the success
/// probability against the oracle optimum, and computes TTS.
pub fn run_tts_experiment<C: BinaryCost>(spec: &ExperimentSpec<'_, C>) -> Result<TtsReport> {
    if spec.runs < 1 {
        return Err(Error::Parameter("runs must be at least 1".into()));
    }
    let optimal_energy = match spec.optimal_energy {
        Some(e) => e,
        None => brute_force_min_with_cap(spec.cost, spec.brute_force_cap)?.1,
    };

    let compiled = CompiledCost::compile(spec.cost);
    let mut energies = Vec::with_capacity(spec.runs);
    let mut total_time = 0.0;
    for i in 0..spec.runs {
        let run_seed = derive_seed(spec.seed, i as u64);
        match &spec.solver {
            SolverSpec::BruteForce => {
                let started = std::time::Instant::now();
                let (_, e) = brute_force_min_with_cap(spec.cost, spec.brute_force_cap)?;
                total_time += started.elapsed().as_secs_f64();
                energies.push(e);
            }
            SolverSpec::Anneal(schedule) => {
                let result = anneal_compiled(&compiled, schedule, run_seed)?;
                total_time += result.wall_time;
                energies.push(result.best_energy);
            }
        }
    }

    let p = success_fraction(energies.iter().copied(), optimal_energy);
    // Wall clocks can report 0 for very fast runs; clamp to one nanosecond
    // so TTS stays well-defined.
    let run_time = (total_time / spec.runs as f64).max(1e-9);
    let tts = if p > 0.0 { Some(compute_tts(run_time, p)?) } else { None };
    let best_energy = energies.iter().copied().fold(f64::INFINITY, f64::min);

    Ok(TtsReport {
        run_time,
        p,
        runs: spec.runs,
        tts,
        ci95: wilson_interval(p, spec.runs),
        seed: spec.seed,
        solver: spec.solver.descriptor(),
        instance: spec.instance.clone(),
        best_energy,
        optimal_energy,
        energies,
    })
}

/// Encoding family selector for resource-scaling sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncoderKind {
    TspOneHot,
    TspBinary,
    TrafficGrid,
}

impl EncoderKind {
    pub fn name(&self) -> &'static str {
        match self {
            EncoderKind::TspOneHot => "one-hot",
            EncoderKind::TspBinary => "binary",
            EncoderKind::TrafficGrid => "traffic",
        }
    }
}

/// Resource counts for one encoder at one size, on a deterministic
/// unit-distance (TSP) or unit-weight (traffic) instance.
pub fn measure_encoding(kind: EncoderKind, size: usize) -> Result<ResourceReport> {
    if size < 2 {
        return Err(Error::Parameter(format!("size must be at least 2, got {size}")));
    }
    match kind {
        EncoderKind::TspOneHot => {
            let inst = unit_tsp(size)?;
            let (model, _) = encode_tsp_one_hot(&inst, None)?;
            Ok(ResourceReport::for_qubo(&model))
        }
        EncoderKind::TspBinary => {
            let inst = unit_tsp(size)?;
            let (poly, _) = encode_tsp_binary(&inst)?;
            Ok(ResourceReport::for_polynomial(&poly))
        }
        EncoderKind::TrafficGrid => {
            let n = size * size;
            let grid = TrafficGrid::new(
                size,
                size,
                vec![1.0; n],
                vec![0.0; n],
                vec![1; n],
                1.0,
                1.0,
                1.0,
            )?;
            let ising = encode_traffic_grid(&grid);
            Ok(ResourceReport::for_qubo(&ising.to_qubo()))
        }
    }
}

fn unit_tsp(n: usize) -> Result<TspInstance> {
    let d = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
        .collect();
    TspInstance::new(d)
}

/// Sweeps the selected encodings over `sizes` and renders a CSV table with
/// columns `size,encoding,num_vars,nnz,max_degree,density`.
pub fn scaling_sweep(kinds: &[EncoderKind], sizes: &[usize]) -> Result<String> {
    if sizes.is_empty() {
        return Err(Error::Parameter("sizes must be nonempty".into()));
    }
    let mut out = String::from("size,encoding,num_vars,nnz,max_degree,density\n");
    for &size in sizes {
        for &kind in kinds {
            let r = measure_encoding(kind, size)?;
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                size,
                kind.name(),
                r.num_variables,
                r.num_quadratic_nonzero,
                r.max_degree,
                r.density
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::qubo::QuboModel;

    #[test]
    fn tts_formula_reference_points() {
        assert_eq!(compute_tts(1.0, 0.99).unwrap(), 1.0);
        let tts = compute_tts(2.0, 0.5).unwrap();
        assert!((tts - 13.2877).abs() < 1e-3, "got {tts}");
        assert_eq!(compute_tts(3.0, 1.0).unwrap(), 3.0);
    }

    #[test]
    fn tts_rejects_degenerate_inputs() {
        assert!(matches!(compute_tts(1.0, 0.0), Err(Error::Undefined(_))));
        assert!(matches!(compute_tts(1.0, -0.1), Err(Error::Undefined(_))));
        assert!(matches!(compute_tts(0.0, 0.5), Err(Error::Parameter(_))));
        assert!(matches!(compute_tts(1.0, 1.5), Err(Error::Parameter(_))));
    }

    #[test]
    fn tts_is_monotone() {
        // Decreasing in p for fixed T; increasing in T for fixed p.
        let mut last = f64::INFINITY;
        for i in 1..100 {
            let p = i as f64 / 100.0;
            let tts = compute_tts(1.0, p).unwrap();
            assert!(tts < last, "TTS must strictly decrease in p");
            last = tts;
        }
        assert!(compute_tts(2.0, 0.3).unwrap() > compute_tts(1.0, 0.3).unwrap());
    }

    #[test]
    fn wilson_interval_brackets_the_estimate() {
        let (lo, hi) = wilson_interval(0.5, 100);
        assert!(lo < 0.5 && 0.5 < hi);
        assert!(lo > 0.39 && hi < 0.61);
        let (lo, hi) = wilson_interval(1.0, 50);
        assert!(lo > 0.9 && hi > 1.0 - 1e-12);
        let (lo, _) = wilson_interval(0.0, 50);
        assert!(lo.abs() < 1e-12);
    }

    #[test]
    fn brute_force_experiment_has_unit_probability() {
        let mut m = QuboModel::new(4);
        m.add_linear(0, -1.0).unwrap();
        m.add_quadratic(1, 2, 0.5).unwrap();
        let spec = ExperimentSpec::new(&m, SolverSpec::BruteForce, 5, 0);
        let report = run_tts_experiment(&spec).unwrap();
        assert_eq!(report.p, 1.0);
        assert_eq!(report.tts, Some(report.run_time));
        assert_eq!(report.best_energy, report.optimal_energy);
    }

    #[test]
    fn zero_success_flags_undefined_tts() {
        let mut m = QuboModel::new(3);
        m.add_linear(0, -1.0).unwrap();
        // Impossible target: below the true optimum.
        let mut spec = ExperimentSpec::new(
            &m,
            SolverSpec::Anneal(AnnealSchedule::new(5, 1.0, 0.1).unwrap()),
            10,
            0,
        );
        spec.optimal_energy = Some(-100.0);
        let report = run_tts_experiment(&spec).unwrap();
        assert_eq!(report.p, 0.0);
        assert_eq!(report.tts, None);
        assert!(report.to_json().contains("\"tts\": null"));
    }

    #[test]
    fn report_data_fields_are_reproducible() {
        let mut m = QuboModel::new(6);
        for i in 0..6 {
            m.add_linear(i, (i as f64) - 2.5).unwrap();
        }
        m.add_quadratic(0, 5, 2.0).unwrap();
        let schedule = AnnealSchedule::new(50, 2.0, 1e-2).unwrap();
        let run = || {
            let spec =
                ExperimentSpec::new(&m, SolverSpec::Anneal(schedule), 20, 7);
            run_tts_experiment(&spec).unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a.p, b.p);
        assert_eq!(a.energies, b.energies);
        assert_eq!(a.deterministic_json(), b.deterministic_json());
    }

    #[test]
    fn sweep_matches_encoding_size_laws() {
        let csv = scaling_sweep(
            &[EncoderKind::TspOneHot, EncoderKind::TspBinary],
            &[4, 8, 16],
        )
        .unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "size,encoding,num_vars,nnz,max_degree,density");
        let vars: Vec<(usize, &str, usize)> = lines[1..]
            .iter()
            .map(|l| {
                let cells: Vec<&str> = l.split(',').collect();
                (cells[0].parse().unwrap(), cells[1], cells[2].parse().unwrap())
            })
            .collect();
        assert!(vars.contains(&(4, "one-hot", 16)));
        assert!(vars.contains(&(8, "one-hot", 64)));
        assert!(vars.contains(&(16, "one-hot", 256)));
        assert!(vars.contains(&(4, "binary", 8)));
        assert!(vars.contains(&(8, "binary", 24)));
        assert!(vars.contains(&(16, "binary", 64)));
    }

    #[test]
    fn sweep_rejects_empty_and_tiny_sizes() {
        assert!(scaling_sweep(&[EncoderKind::TspOneHot], &[]).is_err());
        assert!(measure_encoding(EncoderKind::TspOneHot, 0).is_err());
    }

    #[test]
    fn traffic_sweep_counts_grid_edges() {
        let r = measure_encoding(EncoderKind::TrafficGrid, 3).unwrap();
        assert_eq!(r.num_variables, 9);
        // 3x3 grid: 12 edges.
        assert_eq!(r.num_quadratic_nonzero, 12);
    }
}
