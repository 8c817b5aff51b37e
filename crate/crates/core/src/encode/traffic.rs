//! Traffic-signal grid encoder.
//!
//! One spin per intersection selects the active signal mode: +1 serves
//! east–west flow, −1 serves north–south. The single-active-mode constraint
//! holds by construction since the spin itself is the binary mode choice.
//! Three weighted interactions shape the energy:
//!
//! * bias (A): a linear term pushing each intersection toward the mode with
//!   the longer waiting queue,
//! * switching (B): alignment with the previous mode, penalizing flips,
//! * green wave (G): ferromagnetic coupling between grid neighbours,
//!   rewarding synchronized corridors.

use crate::error::{Error, Result};
use crate::model::ising::IsingModel;

#[derive(Debug, Clone, PartialEq)]
pub struct TrafficGrid {
    rows: usize,
    cols: usize,
    queue_ns: Vec<f64>,
    queue_ew: Vec<f64>,
    prev_mode: Vec<i8>,
    bias_weight: f64,
    switch_weight: f64,
    green_wave_weight: f64,
}

impl TrafficGrid {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        rows: usize,
        cols: usize,
        queue_ns: Vec<f64>,
        queue_ew: Vec<f64>,
        prev_mode: Vec<i8>,
        bias_weight: f64,
        switch_weight: f64,
        green_wave_weight: f64,
    ) -> Result<Self> {
        let n = rows * cols;
        if rows == 0 || cols == 0 {
            return Err(Error::Parameter("grid must have at least one intersection".into()));
        }
        for (name, v) in [("q_ns", &queue_ns), ("q_ew", &queue_ew)] {
            if v.len() != n {
                return Err(Error::Dimension { expected: n, actual: v.len() });
            }
            if let Some(&q) = v.iter().find(|&&q| !(q >= 0.0) || !q.is_finite()) {
                return Err(Error::Domain(format!("{name} contains invalid queue length {q}")));
            }
        }
        if prev_mode.len() != n {
            return Err(Error::Dimension { expected: n, actual: prev_mode.len() });
        }
        if let Some(&m) = prev_mode.iter().find(|&&m| m != 1 && m != -1) {
            return Err(Error::Domain(format!("previous mode {m} is not ±1")));
        }
        for (name, w) in
            [("A", bias_weight), ("B", switch_weight), ("G", green_wave_weight)]
        {
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::Domain(format!("weight {name} = {w} must be nonnegative")));
            }
        }
        Ok(Self {
            rows,
            cols,
            queue_ns,
            queue_ew,
            prev_mode,
            bias_weight,
            switch_weight,
            green_wave_weight,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_intersections(&self) -> usize {
        self.rows * self.cols
    }

    pub fn intersection(&self, r: usize, c: usize) -> usize {
        r * self.cols + c
    }

    /// Pairs of 4-neighbour adjacent intersections (right and down edges).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let i = self.intersection(r, c);
                if c + 1 < self.cols {
                    edges.push((i, self.intersection(r, c + 1)));
                }
                if r + 1 < self.rows {
                    edges.push((i, self.intersection(r + 1, c)));
                }
            }
        }
        edges
    }
}

/// Ising energy of a signal configuration:
///
/// ```text
/// E(σ) = Σᵢ A·(q_ns[i] − q_ew[i])·σᵢ − Σᵢ B·prev[i]·σᵢ − Σ_{⟨i,j⟩} G·σᵢσⱼ
/// ```
///
/// The bias sign convention makes σ = −1 (north–south service) optimal where
/// the north–south queue is longer.
pub fn encode_traffic_grid(grid: &TrafficGrid) -> IsingModel {
    let mut ising = IsingModel::new(grid.num_intersections());
    for i in 0..grid.num_intersections() {
        let bias = grid.bias_weight * (grid.queue_ns[i] - grid.queue_ew[i]);
        let keep = grid.switch_weight * grid.prev_mode[i] as f64;
        ising.add_field(i, bias - keep).expect("index in range");
    }
    for (i, j) in grid.edges() {
        ising.add_coupling(i, j, -grid.green_wave_weight).expect("index in range");
    }
    ising
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(rows: usize, cols: usize, a: f64, b: f64, g: f64) -> TrafficGrid {
        let n = rows * cols;
        TrafficGrid::new(rows, cols, vec![0.0; n], vec![0.0; n], vec![1; n], a, b, g).unwrap()
    }

    #[test]
    fn validation_rejects_bad_grids() {
        assert!(TrafficGrid::new(1, 1, vec![-1.0], vec![0.0], vec![1], 1.0, 0.0, 0.0).is_err());
        assert!(TrafficGrid::new(1, 1, vec![0.0], vec![0.0], vec![0], 1.0, 0.0, 0.0).is_err());
        assert!(TrafficGrid::new(1, 1, vec![0.0], vec![0.0], vec![1], -1.0, 0.0, 0.0).is_err());
        assert!(TrafficGrid::new(1, 2, vec![0.0], vec![0.0, 0.0], vec![1, 1], 0.0, 0.0, 0.0)
            .is_err());
    }

    #[test]
    fn symmetric_queues_without_memory_are_degenerate() {
        let n = 4;
        let g = TrafficGrid::new(
            2,
            2,
            vec![3.0; n],
            vec![3.0; n],
            vec![1; n],
            1.0,
            0.0,
            0.0,
        )
        .unwrap();
        let ising = encode_traffic_grid(&g);
        assert!(ising.field().is_empty());
        assert!(ising.coupling().is_empty());
        for k in 0..16u64 {
            let spins: Vec<i8> = (0..4).map(|i| if (k >> i) & 1 == 1 { -1 } else { 1 }).collect();
            assert_eq!(ising.energy(&spins).unwrap(), 0.0);
        }
    }

    #[test]
    fn longer_north_south_queue_selects_north_south_mode() {
        let g =
            TrafficGrid::new(1, 1, vec![5.0], vec![1.0], vec![1], 1.0, 0.0, 0.0).unwrap();
        let ising = encode_traffic_grid(&g);
        let up = ising.energy(&[1]).unwrap();
        let down = ising.energy(&[-1]).unwrap();
        assert!(down < up, "north–south mode (σ = −1) must win: {down} vs {up}");
    }

    #[test]
    fn green_wave_alone_has_two_aligned_ground_states() {
        let ising = encode_traffic_grid(&grid(2, 2, 0.0, 0.0, 1.0));
        let mut best = f64::INFINITY;
        let mut argmins = Vec::new();
        for k in 0..16u64 {
            let spins: Vec<i8> = (0..4).map(|i| if (k >> i) & 1 == 1 { -1 } else { 1 }).collect();
            let e = ising.energy(&spins).unwrap();
            if e < best {
                best = e;
                argmins = vec![spins];
            } else if e == best {
                argmins.push(spins);
            }
        }
        assert_eq!(best, -4.0); // 4 edges, all aligned
        assert_eq!(argmins.len(), 2);
        assert!(argmins.contains(&vec![1, 1, 1, 1]));
        assert!(argmins.contains(&vec![-1, -1, -1, -1]));
    }

    #[test]
    fn switching_term_prefers_previous_mode() {
        let g = TrafficGrid::new(1, 1, vec![0.0], vec![0.0], vec![-1], 0.0, 2.0, 0.0).unwrap();
        let ising = encode_traffic_grid(&g);
        assert!(ising.energy(&[-1]).unwrap() < ising.energy(&[1]).unwrap());
    }

    #[test]
    fn global_flip_symmetry() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..25 {
            let rows = rng.gen_range(1..=3);
            let cols = rng.gen_range(1..=3);
            let n = rows * cols;
            let q_ns: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..20.0)).collect();
            let q_ew: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..20.0)).collect();
            let prev: Vec<i8> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
            let a = rng.gen_range(0.0..2.0);
            let b = rng.gen_range(0.0..2.0);
            let g = rng.gen_range(0.0..2.0);

            let original = TrafficGrid::new(rows, cols, q_ns.clone(), q_ew.clone(), prev.clone(), a, b, g)
                .unwrap();
            let mirrored = TrafficGrid::new(
                rows,
                cols,
                q_ew,
                q_ns,
                prev.iter().map(|&m| -m).collect(),
                a,
                b,
                g,
            )
            .unwrap();
            let e1 = encode_traffic_grid(&original);
            let e2 = encode_traffic_grid(&mirrored);
            for _ in 0..20 {
                let spins: Vec<i8> =
                    (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
                let flipped: Vec<i8> = spins.iter().map(|&s| -s).collect();
                let lhs = e1.energy(&spins).unwrap();
                let rhs = e2.energy(&flipped).unwrap();
                assert!((lhs - rhs).abs() <= 1e-12, "{lhs} vs {rhs}");
            }
        }
    }
}
