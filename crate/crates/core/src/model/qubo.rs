//! Quadratic binary models and penalty-based constraint compilation.
//!
//! A [`QuboModel`] stores a cost over binary variables x ∈ {0,1}ⁿ:
//!
//! ```text
//! C(x) = offset + Σᵢ linear[i]·xᵢ + Σ_{i<j} quadratic[(i,j)]·xᵢxⱼ
//! ```
//!
//! Storage is sparse and canonical: quadratic keys always satisfy i < j,
//! symmetric or duplicate contributions are summed into the canonical key,
//! and diagonal contributions are folded into the linear part because
//! xᵢ² = xᵢ for binary variables.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::cost::BinaryCost;

/// A binary variable assignment, one bit per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    bits: Vec<u8>,
}

impl Assignment {
    /// Wraps a bit vector, rejecting entries other than 0 or 1.
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::Domain(format!("assignment entry {b} is not a bit")));
        }
        Ok(Self { bits })
    }

    /// The assignment encoded by integer `index`: bit i of `index` becomes xᵢ.
    pub fn from_index(index: u64, num_vars: usize) -> Self {
        let bits = (0..num_vars).map(|i| ((index >> i) & 1) as u8).collect();
        Self { bits }
    }

    pub fn zeros(num_vars: usize) -> Self {
        Self { bits: vec![0; num_vars] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i]
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.bits
    }

    /// The spin image σᵢ = 1 − 2xᵢ ∈ {+1, −1}.
    pub fn to_spins(&self) -> Vec<i8> {
        self.bits.iter().map(|&b| 1 - 2 * b as i8).collect()
    }

    /// Inverse of [`Assignment::to_spins`]; rejects entries other than ±1.
    pub fn from_spins(spins: &[i8]) -> Result<Self> {
        let mut bits = Vec::with_capacity(spins.len());
        for &s in spins {
            match s {
                1 => bits.push(0),
                -1 => bits.push(1),
                other => {
                    return Err(Error::Domain(format!("spin entry {other} is not ±1")));
                }
            }
        }
        Ok(Self { bits })
    }
}

impl From<Assignment> for Vec<u8> {
    fn from(a: Assignment) -> Vec<u8> {
        a.bits
    }
}

/// Sparse quadratic cost over binary variables.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QuboModel {
    num_vars: usize,
    linear: BTreeMap<usize, f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
    offset: f64,
}

impl QuboModel {
    /// An all-zero model over `num_vars` variables.
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            linear: BTreeMap::new(),
            quadratic: BTreeMap::new(),
            offset: 0.0,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn add_offset(&mut self, c: f64) {
        self.offset += c;
    }

    /// Adds `c` to the linear coefficient of variable `i`.
    pub fn add_linear(&mut self, i: usize, c: f64) -> Result<()> {
        self.check_index(i)?;
        check_finite(c)?;
        accumulate(&mut self.linear, i, c);
        Ok(())
    }

    /// Adds `c` to the quadratic coefficient of the pair {i, j}.
    ///
    /// Indices are canonicalized to i < j; a diagonal pair (i == j) folds
    /// into the linear part.
    pub fn add_quadratic(&mut self, i: usize, j: usize, c: f64) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        check_finite(c)?;
        if i == j {
            accumulate(&mut self.linear, i, c);
        } else {
            let key = if i < j { (i, j) } else { (j, i) };
            accumulate(&mut self.quadratic, key, c);
        }
        Ok(())
    }

    pub fn linear(&self) -> &BTreeMap<usize, f64> {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.quadratic
    }

    pub fn linear_coeff(&self, i: usize) -> f64 {
        self.linear.get(&i).copied().unwrap_or(0.0)
    }

    pub fn quadratic_coeff(&self, i: usize, j: usize) -> f64 {
        let key = if i < j { (i, j) } else { (j, i) };
        self.quadratic.get(&key).copied().unwrap_or(0.0)
    }

    /// Evaluates `offset + Σ hᵢxᵢ + Σ_{i<j} Q_{ij} xᵢxⱼ`.
    pub fn energy(&self, x: &Assignment) -> Result<f64> {
        if x.len() != self.num_vars {
            return Err(Error::Dimension { expected: self.num_vars, actual: x.len() });
        }
        Ok(self.energy_of_bits(x.as_slice()))
    }

    /// Sum of absolute values of all linear and quadratic coefficients.
    pub fn coefficient_abs_sum(&self) -> f64 {
        self.linear.values().map(|c| c.abs()).sum::<f64>()
            + self.quadratic.values().map(|c| c.abs()).sum::<f64>()
    }

    /// Penalty weight guaranteed to make constraint violations dominate the
    /// current objective: `1 + Σ|hᵢ| + Σ|Q_{ij}|`.
    ///
    /// With integer constraint coefficients any violation costs at least this
    /// weight, which exceeds the full spread of the unpenalized energies.
    pub fn default_penalty_weight(&self) -> f64 {
        1.0 + self.coefficient_abs_sum()
    }

    /// Returns a new model with the penalty `λ(aᵀx − b)²` folded in.
    pub fn with_equality_penalty(&self, a: &[f64], b: f64, lambda: f64) -> Result<QuboModel> {
        if lambda <= 0.0 || !lambda.is_finite() {
            return Err(Error::Parameter(format!("penalty weight must be positive, got {lambda}")));
        }
        if a.len() != self.num_vars {
            return Err(Error::Dimension { expected: self.num_vars, actual: a.len() });
        }
        let mut out = self.clone();
        // (Σ aᵢxᵢ − b)² = b² + Σᵢ (aᵢ² − 2b·aᵢ) xᵢ + 2 Σ_{i<j} aᵢaⱼ xᵢxⱼ,
        // using xᵢ² = xᵢ on the diagonal.
        out.add_offset(lambda * b * b);
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0.0 {
                continue;
            }
            out.add_linear(i, lambda * (ai * ai - 2.0 * b * ai))?;
            for (j, &aj) in a.iter().enumerate().skip(i + 1) {
                if aj == 0.0 {
                    continue;
                }
                out.add_quadratic(i, j, 2.0 * lambda * ai * aj)?;
            }
        }
        Ok(out)
    }

    /// Encodes `aᵀx ≤ b` by appending binary-weighted slack variables and the
    /// penalty `λ(aᵀx + s − b)²`.
    ///
    /// Returns the extended model and the index range of the slack variables.
    /// The slack weights are 1, 2, 4, ... with the top weight trimmed so the
    /// representable slack range is exactly [0, b].
    pub fn with_inequality_penalty(
        &self,
        a: &[f64],
        b: u64,
        lambda: f64,
    ) -> Result<(QuboModel, std::ops::Range<usize>)> {
        if lambda <= 0.0 || !lambda.is_finite() {
            return Err(Error::Parameter(format!("penalty weight must be positive, got {lambda}")));
        }
        if a.len() != self.num_vars {
            return Err(Error::Dimension { expected: self.num_vars, actual: a.len() });
        }
        let weights = slack_weights(b);
        let slack_start = self.num_vars;
        let slack_end = slack_start + weights.len();

        let mut grown = QuboModel::new(slack_end);
        grown.offset = self.offset;
        grown.linear = self.linear.clone();
        grown.quadratic = self.quadratic.clone();

        let mut coeffs = vec![0.0; slack_end];
        coeffs[..a.len()].copy_from_slice(a);
        for (k, &w) in weights.iter().enumerate() {
            coeffs[slack_start + k] = w as f64;
        }
        let out = grown.with_equality_penalty(&coeffs, b as f64, lambda)?;
        Ok((out, slack_start..slack_end))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.num_vars {
            return Err(Error::Dimension { expected: self.num_vars, actual: i });
        }
        Ok(())
    }
}

impl BinaryCost for QuboModel {
    fn num_vars(&self) -> usize {
        self.num_vars
    }

    fn energy_of_bits(&self, bits: &[u8]) -> f64 {
        debug_assert_eq!(bits.len(), self.num_vars);
        let mut e = self.offset;
        for (&i, &c) in &self.linear {
            if bits[i] == 1 {
                e += c;
            }
        }
        for (&(i, j), &c) in &self.quadratic {
            if bits[i] == 1 && bits[j] == 1 {
                e += c;
            }
        }
        e
    }

    fn terms(&self) -> (f64, Vec<(Vec<usize>, f64)>) {
        let mut terms = Vec::with_capacity(self.linear.len() + self.quadratic.len());
        for (&i, &c) in &self.linear {
            terms.push((vec![i], c));
        }
        for (&(i, j), &c) in &self.quadratic {
            terms.push((vec![i, j], c));
        }
        (self.offset, terms)
    }
}

/// Binary slack weights covering exactly [0, b]: powers of two with the top
/// weight trimmed. Empty for b = 0.
pub(crate) fn slack_weights(b: u64) -> Vec<u64> {
    if b == 0 {
        return Vec::new();
    }
    let num_bits = 64 - b.leading_zeros() as usize; // ⌈log₂(b+1)⌉
    let mut weights: Vec<u64> = (0..num_bits - 1).map(|k| 1u64 << k).collect();
    let covered: u64 = weights.iter().sum();
    weights.push(b - covered);
    weights
}

fn accumulate<K: Ord + Copy>(map: &mut BTreeMap<K, f64>, key: K, c: f64) {
    if c == 0.0 {
        return;
    }
    let entry = map.entry(key).or_insert(0.0);
    *entry += c;
    if *entry == 0.0 {
        map.remove(&key);
    }
}

fn check_finite(c: f64) -> Result<()> {
    if !c.is_finite() {
        return Err(Error::Domain(format!("coefficient {c} is not finite")));
    }
    Ok(())
}
