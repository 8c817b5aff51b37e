//! Exact statevector simulation of the alternating cost-phase / mixer ansatz.
//!
//! Basis convention: amplitude index k encodes the assignment whose bit i is
//! `(k >> i) & 1` (little-endian, matching [`Assignment::from_index`]).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::cost::BinaryCost;
use crate::model::qubo::Assignment;

/// Default qubit cap: 2²⁴ complex doubles is 256 MiB of state.
pub const DEFAULT_QUBIT_CAP: usize = 24;

/// Cost evaluated on every basis index, shared across circuit runs.
pub struct CostTable {
    num_qubits: usize,
    energies: Vec<f64>,
}

impl CostTable {
    pub fn build(cost: &impl BinaryCost) -> Result<Self> {
        Self::build_with_cap(cost, DEFAULT_QUBIT_CAP)
    }

    pub fn build_with_cap(cost: &impl BinaryCost, cap: usize) -> Result<Self> {
        let n = cost.num_vars();
        check_qubit_count(n, cap)?;
        let mut bits = vec![0u8; n];
        let energies = (0..1u64 << n)
            .map(|k| {
                for (i, b) in bits.iter_mut().enumerate() {
                    *b = ((k >> i) & 1) as u8;
                }
                cost.energy_of_bits(&bits)
            })
            .collect();
        Ok(Self { num_qubits: n, energies })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn energy(&self, index: usize) -> f64 {
        self.energies[index]
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Arithmetic mean of the cost over all bitstrings.
    pub fn mean(&self) -> f64 {
        self.energies.iter().sum::<f64>() / self.energies.len() as f64
    }

    pub fn min(&self) -> f64 {
        self.energies.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// 2ⁿ complex amplitudes with unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Equal superposition: every amplitude 2^{−n/2}, as produced by a
    /// Hadamard on each qubit of |0...0⟩.
    pub fn uniform(num_qubits: usize) -> Result<Self> {
        Self::uniform_with_cap(num_qubits, DEFAULT_QUBIT_CAP)
    }

    pub fn uniform_with_cap(num_qubits: usize, cap: usize) -> Result<Self> {
        check_qubit_count(num_qubits, cap)?;
        let dim = 1usize << num_qubits;
        let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self { num_qubits, amps: vec![amp; dim] })
    }

    /// The computational basis state |index⟩.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        check_qubit_count(num_qubits, DEFAULT_QUBIT_CAP)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::Domain(format!("basis index {index} out of range for {dim}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    pub fn norm_sqr_sum(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Diagonal cost unitary: amplitude_k ← amplitude_k · exp(−i·γ·C(k)).
    /// Norm-preserving; probabilities are unchanged for any γ.
    pub fn apply_cost_phase(&mut self, table: &CostTable, gamma: f64) -> Result<()> {
        if table.num_qubits != self.num_qubits {
            return Err(Error::Dimension {
                expected: self.num_qubits,
                actual: table.num_qubits,
            });
        }
        for (a, &c) in self.amps.iter_mut().zip(&table.energies) {
            *a *= Complex64::from_polar(1.0, -gamma * c);
        }
        Ok(())
    }

    /// Transverse mixer exp(−iβX) on every qubit: for each pair of basis
    /// states differing in one bit,
    /// `[[cos β, −i sin β], [−i sin β, cos β]]`.
    pub fn apply_mixer(&mut self, beta: f64) {
        let c = beta.cos();
        let s = beta.sin();
        let mis = Complex64::new(0.0, -s);
        for qubit in 0..self.num_qubits {
            let stride = 1usize << qubit;
            let mut base = 0usize;
            while base < self.amps.len() {
                for low in base..base + stride {
                    let high = low + stride;
                    let a = self.amps[low];
                    let b = self.amps[high];
                    self.amps[low] = c * a + mis * b;
                    self.amps[high] = mis * a + c * b;
                }
                base += stride << 1;
            }
        }
    }

    /// Σ_k |amplitude_k|² · C(k).
    pub fn expectation(&self, table: &CostTable) -> Result<f64> {
        if table.num_qubits != self.num_qubits {
            return Err(Error::Dimension {
                expected: self.num_qubits,
                actual: table.num_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&table.energies)
            .map(|(a, &c)| a.norm_sqr() * c)
            .sum())
    }

    /// Born-rule sampling: `shots` i.i.d. draws from |amplitude|², seeded.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<SampleCounts> {
        if shots < 1 {
            return Err(Error::Parameter("shots must be at least 1".into()));
        }
        let mut cumulative = Vec::with_capacity(self.amps.len());
        let mut acc = 0.0;
        for a in &self.amps {
            acc += a.norm_sqr();
            cumulative.push(acc);
        }
        let total = acc;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for _ in 0..shots {
            let u: f64 = rng.gen::<f64>() * total;
            let idx = cumulative.partition_point(|&c| c <= u).min(self.amps.len() - 1);
            *counts.entry(idx as u64).or_insert(0) += 1;
        }
        Ok(SampleCounts { num_qubits: self.num_qubits, shots, counts })
    }
}

/// Measured bitstring histogram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleCounts {
    num_qubits: usize,
    shots: u64,
    counts: BTreeMap<u64, u64>,
}

impl SampleCounts {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn count(&self, index: u64) -> u64 {
        self.counts.get(&index).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn assignment(&self, index: u64) -> Assignment {
        Assignment::from_index(index, self.num_qubits)
    }

    /// "x₀x₁...x_{n−1}" rendering of a basis index.
    pub fn bitstring(&self, index: u64) -> String {
        (0..self.num_qubits).map(|i| if (index >> i) & 1 == 1 { '1' } else { '0' }).collect()
    }
}

/// Layer parameters: `depth` cost angles (gammas) and mixing angles (betas).
#[derive(Debug, Clone, PartialEq)]
pub struct QaoaParams {
    gammas: Vec<f64>,
    betas: Vec<f64>,
}

impl QaoaParams {
    pub fn new(gammas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        if gammas.is_empty() || gammas.len() != betas.len() {
            return Err(Error::Parameter(format!(
                "need equal, nonzero angle counts; got {} gammas and {} betas",
                gammas.len(),
                betas.len()
            )));
        }
        if gammas.iter().chain(&betas).any(|a| !a.is_finite()) {
            return Err(Error::Parameter("angles must be finite".into()));
        }
        Ok(Self { gammas, betas })
    }

    pub fn zeros(depth: usize) -> Result<Self> {
        Self::new(vec![0.0; depth], vec![0.0; depth])
    }

    pub fn depth(&self) -> usize {
        self.gammas.len()
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    /// Flat layout [γ₁..γ_p, β₁..β_p] used by the optimizer.
    pub fn to_flat(&self) -> Vec<f64> {
        self.gammas.iter().chain(&self.betas).copied().collect()
    }

    pub fn from_flat(depth: usize, flat: &[f64]) -> Result<Self> {
        if flat.len() != 2 * depth {
            return Err(Error::Parameter(format!(
                "expected {} angles, got {}",
                2 * depth,
                flat.len()
            )));
        }
        Self::new(flat[..depth].to_vec(), flat[depth..].to_vec())
    }

    /// The p+1-layer parameter set that reproduces this circuit exactly:
    /// existing angles followed by a zero layer.
    pub fn padded(&self) -> Self {
        let mut gammas = self.gammas.clone();
        let mut betas = self.betas.clone();
        gammas.push(0.0);
        betas.push(0.0);
        Self { gammas, betas }
    }
}

/// Uniform initialization followed by alternating cost and mixer layers.
pub fn run_qaoa_circuit(cost: &impl BinaryCost, params: &QaoaParams) -> Result<StateVector> {
    let table = CostTable::build(cost)?;
    run_qaoa_with_table(&table, params)
}

pub fn run_qaoa_with_table(table: &CostTable, params: &QaoaParams) -> Result<StateVector> {
    let mut state = StateVector::uniform(table.num_qubits())?;
    for (&gamma, &beta) in params.gammas.iter().zip(&params.betas) {
        state.apply_cost_phase(table, gamma)?;
        state.apply_mixer(beta);
    }
    Ok(state)
}

fn check_qubit_count(n: usize, cap: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::Parameter("need at least one qubit".into()));
    }
    if n > cap {
        return Err(Error::Resource(format!("{n} qubits exceed the statevector cap of {cap}")));
    }
    Ok(())
}
