//! Command implementations: wiring between documents on disk and the
//! library. Data outputs are deterministic for a fixed seed; wall-clock
//! timings go to stderr only.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use serde_json::json;

use qopt_core::anneal::{simulated_anneal, AnnealSchedule};
use qopt_core::bench::{
    run_tts_experiment, scaling_sweep, EncoderKind, ExperimentSpec, SolverSpec,
};
use qopt_core::encode::{
    cvrp_from_json, decode_assignment_json, encode_cvrp_clustering, encode_traffic_grid,
    encode_tsp_binary, encode_tsp_one_hot, encode_tsp_one_hot_fixed_start, layout_from_json,
    layout_to_json, traffic_from_json, tsp_from_json, LayoutDoc, ResourceReport,
};
use qopt_core::model::{
    brute_force_min_with_cap, model_from_json, model_to_json, AnyModel, Assignment, BinaryCost,
};
use qopt_core::qaoa::{
    landscape_slice_with_table, optimize_angles_with_table, run_qaoa_with_table, slice_to_csv,
    trace_to_csv, CostTable, ObjectiveMode, OptimizeConfig, QaoaParams, SliceDirections,
};
use qopt_core::Error;

use crate::{
    Encoding, EncodeArgs, EncoderChoice, LandscapeArgs, OutputFormat, ResourcesArgs, Solver,
    SolveArgs, TtsArgs, TtsSolver,
};

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource(_) => 3,
        Error::Undefined(_) => 4,
        _ => 2,
    }
}

fn read_input(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Document(format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: &Path, content: &str) -> Result<(), Error> {
    std::fs::write(path, content)
        .map_err(|e| Error::Document(format!("cannot write {}: {e}", path.display())))
}

fn sidecar(path: &Path, extension: &str) -> PathBuf {
    path.with_extension(extension)
}

pub fn encode(args: EncodeArgs) -> Result<ExitCode, Error> {
    let input = read_input(&args.input)?;
    let (model, layout, report) = match args.encoding {
        Encoding::OneHot => {
            let inst = tsp_from_json(&input)?;
            let (m, l) = if args.fixed_start {
                encode_tsp_one_hot_fixed_start(&inst, args.lambda)?
            } else {
                encode_tsp_one_hot(&inst, args.lambda)?
            };
            let report = ResourceReport::for_qubo(&m);
            let layout = LayoutDoc::OneHot {
                num_cities: l.num_cities(),
                fixed_start: l.fixed_start(),
            };
            (AnyModel::Qubo(m), layout, report)
        }
        Encoding::Binary => {
            let inst = tsp_from_json(&input)?;
            let (poly, l) = encode_tsp_binary(&inst)?;
            let report = ResourceReport::for_polynomial(&poly);
            let layout = LayoutDoc::Binary {
                num_cities: l.num_cities(),
                bits_per_position: l.bits_per_position(),
            };
            (AnyModel::Hobo(poly), layout, report)
        }
        Encoding::Traffic => {
            let grid = traffic_from_json(&input)?;
            let qubo = encode_traffic_grid(&grid).to_qubo();
            let report = ResourceReport::for_qubo(&qubo);
            let layout = LayoutDoc::Traffic { rows: grid.rows(), cols: grid.cols() };
            (AnyModel::Qubo(qubo), layout, report)
        }
        Encoding::Cvrp => {
            let inst = cvrp_from_json(&input)?;
            let (m, l) = encode_cvrp_clustering(&inst, args.lambda)?;
            let report = ResourceReport::for_qubo(&m);
            let layout = LayoutDoc::CvrpClustering {
                customers: l.num_customers(),
                vehicles: l.num_vehicles(),
                demands: inst.customers().iter().map(|c| c.demand).collect(),
                capacity: inst.capacity(),
                num_vars: m.num_vars(),
            };
            (AnyModel::Qubo(m), layout, report)
        }
    };

    if args.fixed_start && args.encoding != Encoding::OneHot {
        return Err(Error::Parameter("--fixed-start applies to one-hot encoding only".into()));
    }

    write_output(&args.out, &model_to_json(&model))?;
    let layout_path = sidecar(&args.out, "layout.json");
    write_output(&layout_path, &layout_to_json(&layout))?;
    println!(
        "encoded {} -> {} (layout {}), seed {}: {}",
        args.input.display(),
        args.out.display(),
        layout_path.display(),
        args.seed,
        report.summary()
    );
    Ok(ExitCode::SUCCESS)
}

fn load_layout(args_layout: &Option<PathBuf>, model_path: &Path) -> Result<Option<LayoutDoc>, Error> {
    if let Some(path) = args_layout {
        return Ok(Some(layout_from_json(&read_input(path)?)?));
    }
    let default_path = sidecar(model_path, "layout.json");
    if default_path.exists() {
        return Ok(Some(layout_from_json(&read_input(&default_path)?)?));
    }
    Ok(None)
}

fn anneal_schedule(
    cost: &impl BinaryCost,
    sweeps: usize,
    t0: Option<f64>,
    t1: Option<f64>,
) -> Result<AnnealSchedule, Error> {
    match (t0, t1) {
        (Some(t0), Some(t1)) => AnnealSchedule::new(sweeps, t0, t1),
        (None, None) => AnnealSchedule::default_for(cost, sweeps),
        _ => Err(Error::Parameter("--t0 and --t1 must be given together".into())),
    }
}

pub fn solve(args: SolveArgs) -> Result<ExitCode, Error> {
    let model = model_from_json(&read_input(&args.model)?)?;
    let layout = load_layout(&args.layout, &args.model)?;
    let started = std::time::Instant::now();

    let (assignment, energy, solver_meta) = match args.solver {
        Solver::Brute => {
            let (x, e) = brute_force_min_with_cap(&model, args.brute_cap)?;
            (x, e, json!({ "kind": "brute", "cap": args.brute_cap }))
        }
        Solver::Sa => {
            let schedule = anneal_schedule(&model, args.sweeps, args.t0, args.t1)?;
            let result = simulated_anneal(&model, &schedule, args.seed)?;
            let meta = json!({
                "kind": "sa",
                "sweeps": schedule.sweeps(),
                "t0": schedule.temp_initial(),
                "t1": schedule.temp_final(),
                "final_trajectory_energy": result.energy_trajectory.last(),
            });
            (result.best_assignment, result.best_energy, meta)
        }
        Solver::Qaoa => {
            let table = CostTable::build_with_cap(&model, args.qubit_cap)?;
            let mode = if args.sampled {
                ObjectiveMode::Sampled { shots: args.shots }
            } else {
                ObjectiveMode::Exact
            };
            let config = OptimizeConfig {
                restarts: args.restarts,
                max_iters: args.max_iters,
                mode,
                seed: args.seed,
            };
            let outcome = optimize_angles_with_table(&table, args.p, &config)?;
            let state = run_qaoa_with_table(&table, &outcome.params)?;
            let counts = state.sample(args.shots, args.seed)?;
            // Best sampled bitstring by cost; BTreeMap order makes ties
            // deterministic.
            let (&best_index, _) = counts
                .counts()
                .iter()
                .min_by(|(&a, _), (&b, _)| {
                    table.energy(a as usize).total_cmp(&table.energy(b as usize))
                })
                .expect("at least one shot");
            let x = Assignment::from_index(best_index, table.num_qubits());
            let e = table.energy(best_index as usize);

            let trace_path = sidecar(&args.out, "trace.csv");
            write_output(&trace_path, &trace_to_csv(&outcome.trace))?;
            let meta = json!({
                "kind": "qaoa",
                "p": args.p,
                "restarts": args.restarts,
                "max_iters": args.max_iters,
                "mode": if args.sampled { "sampled" } else { "exact" },
                "shots": args.shots,
                "expectation": outcome.expectation,
                "gammas": outcome.params.gammas(),
                "betas": outcome.params.betas(),
                "trace": trace_path.display().to_string(),
            });
            (x, e, meta)
        }
    };
    let elapsed = started.elapsed().as_secs_f64();

    let decoded = match &layout {
        Some(l) => decode_assignment_json(&assignment, l)?,
        None => serde_json::Value::Null,
    };
    let doc = json!({
        "assignment": assignment.as_slice(),
        "energy": energy,
        "decoded": decoded,
        "solver": solver_meta,
        "seed": args.seed,
    });
    write_output(&args.out, &format!("{:#}\n", doc))?;
    println!("solved {} -> {} (energy {energy})", args.model.display(), args.out.display());
    eprintln!("solver time: {elapsed:.3} s");
    Ok(ExitCode::SUCCESS)
}

pub fn tts(args: TtsArgs) -> Result<ExitCode, Error> {
    if args.runs < 1 {
        return Err(Error::Parameter("--runs must be at least 1".into()));
    }
    let model = model_from_json(&read_input(&args.model)?)?;
    let solver = match args.solver {
        TtsSolver::Brute => SolverSpec::BruteForce,
        TtsSolver::Sa => {
            SolverSpec::Anneal(anneal_schedule(&model, args.sweeps, args.t0, args.t1)?)
        }
    };
    let mut spec = ExperimentSpec::new(&model, solver, args.runs, args.seed);
    spec.instance = json!({
        "path": args.model.display().to_string(),
        "num_vars": model.num_vars(),
    });
    spec.optimal_energy = args.optimal_energy;
    spec.brute_force_cap = args.brute_cap;

    let report = run_tts_experiment(&spec)?;
    write_output(&args.out, &format!("{}\n", report.to_json()))?;
    println!(
        "tts report -> {} (p = {}, runs = {})",
        args.out.display(),
        report.p,
        report.runs
    );
    if report.tts.is_none() {
        eprintln!("error: no run reached the optimum; TTS is undefined at p = 0");
        return Ok(ExitCode::from(4));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn landscape(args: LandscapeArgs) -> Result<ExitCode, Error> {
    let model = model_from_json(&read_input(&args.model)?)?;
    let table = CostTable::build_with_cap(&model, args.qubit_cap)?;

    let center = match &args.center {
        Some(flat) => QaoaParams::from_flat(args.p, flat)?,
        None => QaoaParams::zeros(args.p)?,
    };
    let directions = if args.axis_aligned {
        SliceDirections::AxisAligned
    } else {
        SliceDirections::Random { seed: args.seed }
    };
    let slice = landscape_slice_with_table(&table, &center, args.grid, args.extent, directions)?;

    write_output(&args.out, &slice_to_csv(&slice))?;
    let meta = json!({
        "center_gammas": slice.center.gammas(),
        "center_betas": slice.center.betas(),
        "direction_u": slice.direction_u,
        "direction_v": slice.direction_v,
        "offsets": slice.offsets,
        "axis_aligned": args.axis_aligned,
        "seed": args.seed,
        "resolution": args.grid,
        "extent": args.extent,
    });
    let meta_path = sidecar(&args.out, "meta.json");
    write_output(&meta_path, &format!("{:#}\n", meta))?;
    println!(
        "landscape {}x{} -> {} (metadata {})",
        args.grid,
        args.grid,
        args.out.display(),
        meta_path.display()
    );
    Ok(ExitCode::SUCCESS)
}

pub fn resources(args: ResourcesArgs) -> Result<ExitCode, Error> {
    let kinds: Vec<EncoderKind> = args
        .encoder
        .iter()
        .map(|e| match e {
            EncoderChoice::OneHot => EncoderKind::TspOneHot,
            EncoderChoice::Binary => EncoderKind::TspBinary,
            EncoderChoice::Traffic => EncoderKind::TrafficGrid,
        })
        .collect();
    let csv = scaling_sweep(&kinds, &args.sizes)?;
    let content = match args.format {
        OutputFormat::Csv => csv,
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = csv
                .lines()
                .skip(1)
                .map(|line| {
                    let cells: Vec<&str> = line.split(',').collect();
                    json!({
                        "size": cells[0].parse::<usize>().unwrap_or(0),
                        "encoding": cells[1],
                        "num_vars": cells[2].parse::<usize>().unwrap_or(0),
                        "nnz": cells[3].parse::<usize>().unwrap_or(0),
                        "max_degree": cells[4].parse::<usize>().unwrap_or(0),
                        "density": cells[5].parse::<f64>().unwrap_or(0.0),
                    })
                })
                .collect();
            format!("{:#}\n", serde_json::Value::Array(rows))
        }
    };
    write_output(&args.out, &content)?;
    println!(
        "resource sweep ({} encodings x {} sizes) -> {}, seed {}",
        kinds.len(),
        args.sizes.len(),
        args.out.display(),
        args.seed
    );
    Ok(ExitCode::SUCCESS)
}
