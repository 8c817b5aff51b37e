//! Two-dimensional slices of the angle landscape for density plots.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::cost::BinaryCost;

use super::state::{run_qaoa_with_table, CostTable, QaoaParams};

/// Slice plane orientation in the 2p-dimensional angle space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SliceDirections {
    /// Two random orthonormal directions, seeded.
    Random { seed: u64 },
    /// First cost angle and first mixing angle; for p = 1 this is the full
    /// (γ, β) plane.
    AxisAligned,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LandscapeSlice {
    pub center: QaoaParams,
    pub direction_u: Vec<f64>,
    pub direction_v: Vec<f64>,
    /// Grid offsets applied along both directions.
    pub offsets: Vec<f64>,
    /// values[i][j] = expectation at center + offsets[i]·u + offsets[j]·v.
    pub values: Vec<Vec<f64>>,
}

impl LandscapeSlice {
    pub fn resolution(&self) -> usize {
        self.offsets.len()
    }

    pub fn variance(&self) -> f64 {
        let flat: Vec<f64> = self.values.iter().flatten().copied().collect();
        let mean = flat.iter().sum::<f64>() / flat.len() as f64;
        flat.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / flat.len() as f64
    }
}

/// Evaluates the exact expectation on a `resolution`² grid spanning
/// ±`extent` along two directions through `center`.
pub fn landscape_slice(
    cost: &impl BinaryCost,
    center: &QaoaParams,
    resolution: usize,
    extent: f64,
    directions: SliceDirections,
) -> Result<LandscapeSlice> {
    let table = CostTable::build(cost)?;
    landscape_slice_with_table(&table, center, resolution, extent, directions)
}

pub fn landscape_slice_with_table(
    table: &CostTable,
    center: &QaoaParams,
    resolution: usize,
    extent: f64,
    directions: SliceDirections,
) -> Result<LandscapeSlice> {
    if resolution < 2 {
        return Err(Error::Parameter(format!("resolution must be at least 2, got {resolution}")));
    }
    if !(extent > 0.0) || !extent.is_finite() {
        return Err(Error::Parameter(format!("extent must be positive, got {extent}")));
    }
    let depth = center.depth();
    let dim = 2 * depth;

    let (direction_u, direction_v) = match directions {
        SliceDirections::AxisAligned => {
            let mut u = vec![0.0; dim];
            let mut v = vec![0.0; dim];
            u[0] = 1.0; // first cost angle
            v[depth] = 1.0; // first mixing angle
            (u, v)
        }
        SliceDirections::Random { seed } => random_orthonormal_pair(dim, seed),
    };

    let step = 2.0 * extent / (resolution - 1) as f64;
    let offsets: Vec<f64> = (0..resolution).map(|i| -extent + i as f64 * step).collect();

    let flat_center = center.to_flat();
    let mut values = Vec::with_capacity(resolution);
    for &a in &offsets {
        let mut row = Vec::with_capacity(resolution);
        for &b in &offsets {
            let flat: Vec<f64> = flat_center
                .iter()
                .zip(direction_u.iter().zip(&direction_v))
                .map(|(c, (u, v))| c + a * u + b * v)
                .collect();
            let params = QaoaParams::from_flat(depth, &flat)?;
            let state = run_qaoa_with_table(table, &params)?;
            row.push(state.expectation(table)?);
        }
        values.push(row);
    }

    Ok(LandscapeSlice { center: center.clone(), direction_u, direction_v, offsets, values })
}

/// Two orthonormal vectors drawn from seeded Gaussians (Box–Muller) with
/// Gram–Schmidt orthogonalization.
fn random_orthonormal_pair(dim: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gaussian = move || {
        let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.gen();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    };
    loop {
        let u: Vec<f64> = (0..dim).map(|_| gaussian()).collect();
        let u_norm = norm(&u);
        if u_norm < 1e-12 {
            continue;
        }
        let u: Vec<f64> = u.iter().map(|x| x / u_norm).collect();

        let raw: Vec<f64> = (0..dim).map(|_| gaussian()).collect();
        let dot: f64 = raw.iter().zip(&u).map(|(a, b)| a * b).sum();
        let v: Vec<f64> = raw.iter().zip(&u).map(|(r, ui)| r - dot * ui).collect();
        let v_norm = norm(&v);
        if v_norm < 1e-12 {
            continue; // dim = 1 or a degenerate draw
        }
        let v: Vec<f64> = v.iter().map(|x| x / v_norm).collect();
        return (u, v);
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// CSV rendering: one row per grid line, full f64 round-trip precision.
pub fn slice_to_csv(slice: &LandscapeSlice) -> String {
    let mut out = String::new();
    for row in &slice.values {
        let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn csv_to_matrix(csv: &str) -> Result<Vec<Vec<f64>>> {
    csv.lines()
        .map(|line| {
            line.split(',')
                .map(|cell| {
                    cell.parse::<f64>()
                        .map_err(|e| Error::Document(format!("bad csv cell {cell:?}: {e}")))
                })
                .collect()
        })
        .collect()
}
