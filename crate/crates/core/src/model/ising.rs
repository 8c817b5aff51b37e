//! Spin-variable (Ising) form of a binary quadratic model.
//!
//! Under the substitution σ = 1 − 2x a QUBO becomes
//!
//! ```text
//! H(σ) = energy_offset + Σᵢ field[i]·σᵢ + Σ_{i<j} coupling[(i,j)]·σᵢσⱼ
//! ```
//!
//! with σᵢ ∈ {+1, −1}. [`to_ising`] and [`IsingModel::to_qubo`] are exact
//! inverses of each other up to floating-point rounding; the defining
//! property is `H(1 − 2x) = C(x)` for every assignment x.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::cost::BinaryCost;
use crate::model::qubo::QuboModel;

/// Sparse Ising energy over spins σ ∈ {+1, −1}ⁿ.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IsingModel {
    num_vars: usize,
    field: BTreeMap<usize, f64>,
    coupling: BTreeMap<(usize, usize), f64>,
    energy_offset: f64,
}

impl IsingModel {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            field: BTreeMap::new(),
            coupling: BTreeMap::new(),
            energy_offset: 0.0,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn energy_offset(&self) -> f64 {
        self.energy_offset
    }

    pub fn field(&self) -> &BTreeMap<usize, f64> {
        &self.field
    }

    pub fn coupling(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.coupling
    }

    pub fn field_coeff(&self, i: usize) -> f64 {
        self.field.get(&i).copied().unwrap_or(0.0)
    }

    pub fn coupling_coeff(&self, i: usize, j: usize) -> f64 {
        let key = if i < j { (i, j) } else { (j, i) };
        self.coupling.get(&key).copied().unwrap_or(0.0)
    }

    pub fn add_offset(&mut self, c: f64) {
        self.energy_offset += c;
    }

    pub fn add_field(&mut self, i: usize, c: f64) -> Result<()> {
        self.check_index(i)?;
        if c != 0.0 {
            let e = self.field.entry(i).or_insert(0.0);
            *e += c;
            if *e == 0.0 {
                self.field.remove(&i);
            }
        }
        Ok(())
    }

    /// Adds `c` to the pairwise coupling of {i, j}. Both symmetric
    /// contributions are combined into the single canonical i < j entry.
    pub fn add_coupling(&mut self, i: usize, j: usize, c: f64) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            // σᵢ² = 1, so a diagonal coupling is a constant.
            self.energy_offset += c;
            return Ok(());
        }
        if c != 0.0 {
            let key = if i < j { (i, j) } else { (j, i) };
            let e = self.coupling.entry(key).or_insert(0.0);
            *e += c;
            if *e == 0.0 {
                self.coupling.remove(&key);
            }
        }
        Ok(())
    }

    /// Evaluates `energy_offset + Σ field·σ + Σ coupling·σσ` for σᵢ ∈ {±1}.
    pub fn energy(&self, spins: &[i8]) -> Result<f64> {
        if spins.len() != self.num_vars {
            return Err(Error::Dimension { expected: self.num_vars, actual: spins.len() });
        }
        if let Some(&s) = spins.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::Domain(format!("spin entry {s} is not ±1")));
        }
        let mut e = self.energy_offset;
        for (&i, &w) in &self.field {
            e += w * spins[i] as f64;
        }
        for (&(i, j), &c) in &self.coupling {
            e += c * (spins[i] * spins[j]) as f64;
        }
        Ok(e)
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.field
            .values()
            .chain(self.coupling.values())
            .fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Converts back to binary-variable form via σ = 1 − 2x.
    pub fn to_qubo(&self) -> QuboModel {
        let mut q = QuboModel::new(self.num_vars);
        let mut constant = self.energy_offset;
        // σᵢ = 1 − 2xᵢ: field w·σᵢ = w − 2w·xᵢ.
        for (&i, &w) in &self.field {
            constant += w;
            q.add_linear(i, -2.0 * w).expect("index validated");
        }
        // c·σᵢσⱼ = c(1 − 2xᵢ − 2xⱼ + 4xᵢxⱼ).
        for (&(i, j), &c) in &self.coupling {
            constant += c;
            q.add_linear(i, -2.0 * c).expect("index validated");
            q.add_linear(j, -2.0 * c).expect("index validated");
            q.add_quadratic(i, j, 4.0 * c).expect("index validated");
        }
        q.add_offset(constant);
        q
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.num_vars {
            return Err(Error::Dimension { expected: self.num_vars, actual: i });
        }
        Ok(())
    }
}

impl BinaryCost for IsingModel {
    fn num_vars(&self) -> usize {
        self.num_vars
    }

    fn energy_of_bits(&self, bits: &[u8]) -> f64 {
        debug_assert_eq!(bits.len(), self.num_vars);
        let spin = |b: u8| 1.0 - 2.0 * b as f64;
        let mut e = self.energy_offset;
        for (&i, &w) in &self.field {
            e += w * spin(bits[i]);
        }
        for (&(i, j), &c) in &self.coupling {
            e += c * spin(bits[i]) * spin(bits[j]);
        }
        e
    }

    fn terms(&self) -> (f64, Vec<(Vec<usize>, f64)>) {
        self.to_qubo().terms()
    }
}

/// Exact spin-space transform of a QUBO.
///
/// For the canonical upper-triangular storage the full symmetric coupling
/// J = (Q + Qᵀ)/8 contributes twice per stored pair, so the stored spin
/// coupling for (i, j) is Q_{ij}/4. The field picks up −h/2 − (row sums)/4
/// and the energy offset (Σ_{i<j} Q_{ij})/4 + (Σ hᵢ)/2 plus the model's own
/// additive constant.
pub fn to_ising(model: &QuboModel) -> IsingModel {
    let n = model.num_vars();
    let mut ising = IsingModel::new(n);
    let mut offset = model.offset();

    for (&i, &h) in model.linear() {
        offset += 0.5 * h;
        ising.add_field(i, -0.5 * h).expect("index validated");
    }
    for (&(i, j), &q) in model.quadratic() {
        offset += 0.25 * q;
        ising.add_field(i, -0.25 * q).expect("index validated");
        ising.add_field(j, -0.25 * q).expect("index validated");
        ising.add_coupling(i, j, 0.25 * q).expect("index validated");
    }
    ising.add_offset(offset);
    ising
}
