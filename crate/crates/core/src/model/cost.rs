//! Common cost-function interface for solvers.
//!
//! Every model kind exposes its energy over binary assignments plus a flat
//! multilinear term list. [`CompiledCost`] pre-indexes that term list per
//! variable so solvers can evaluate single-bit-flip energy deltas without
//! re-evaluating the whole cost.

/// A cost function over binary assignments.
pub trait BinaryCost {
    fn num_vars(&self) -> usize;

    /// Energy of a bit slice whose length equals `num_vars()`.
    fn energy_of_bits(&self, bits: &[u8]) -> f64;

    /// Constant offset plus multilinear terms (sorted, duplicate-free index
    /// sets with nonzero coefficients).
    fn terms(&self) -> (f64, Vec<(Vec<usize>, f64)>);

    /// Largest absolute term coefficient, offset excluded.
    fn max_abs_coefficient(&self) -> f64 {
        let (_, terms) = self.terms();
        terms.iter().fold(0.0f64, |m, (_, c)| m.max(c.abs()))
    }
}

struct Term {
    vars: Vec<usize>,
    coeff: f64,
}

/// Term-list view of a cost with per-variable adjacency, enabling O(deg)
/// incremental flip deltas.
pub struct CompiledCost {
    num_vars: usize,
    offset: f64,
    terms: Vec<Term>,
    by_var: Vec<Vec<u32>>,
}

impl CompiledCost {
    pub fn compile(cost: &impl BinaryCost) -> Self {
        let num_vars = cost.num_vars();
        let (offset, raw) = cost.terms();
        let terms: Vec<Term> =
            raw.into_iter().map(|(vars, coeff)| Term { vars, coeff }).collect();
        let mut by_var = vec![Vec::new(); num_vars];
        for (t, term) in terms.iter().enumerate() {
            for &v in &term.vars {
                by_var[v].push(t as u32);
            }
        }
        Self { num_vars, offset, terms, by_var }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn energy(&self, bits: &[u8]) -> f64 {
        debug_assert_eq!(bits.len(), self.num_vars);
        let mut e = self.offset;
        'terms: for term in &self.terms {
            for &v in &term.vars {
                if bits[v] == 0 {
                    continue 'terms;
                }
            }
            e += term.coeff;
        }
        e
    }

    /// Energy change if bit `i` were flipped in `bits`.
    ///
    /// Only terms containing `i` can change, and only when every other
    /// variable in the term is set; the monomial then moves between 0 and
    /// coeff depending on the flip direction.
    pub fn flip_delta(&self, bits: &[u8], i: usize) -> f64 {
        let direction = 1.0 - 2.0 * bits[i] as f64; // +1 for 0→1, −1 for 1→0
        let mut affected = 0.0;
        'terms: for &t in &self.by_var[i] {
            let term = &self.terms[t as usize];
            for &v in &term.vars {
                if v != i && bits[v] == 0 {
                    continue 'terms;
                }
            }
            affected += term.coeff;
        }
        direction * affected
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.iter().fold(0.0f64, |m, t| m.max(t.coeff.abs()))
    }
}
