//! Arbitrary-degree pseudo-Boolean cost functions.
//!
//! Terms map a sorted set of variable indices to a coefficient; the empty
//! set is the constant term. Repeated indices fold away under xᵢ² = xᵢ, so
//! every polynomial is stored multilinear.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::cost::BinaryCost;
use crate::model::qubo::{Assignment, QuboModel};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PseudoBooleanPolynomial {
    num_vars: usize,
    terms: BTreeMap<Vec<usize>, f64>,
}

impl PseudoBooleanPolynomial {
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: f64) -> Self {
        let mut p = Self::new(num_vars);
        p.add_term(&[], c).expect("constant term is always valid");
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn term_map(&self) -> &BTreeMap<Vec<usize>, f64> {
        &self.terms
    }

    /// Highest term cardinality; 0 for constant or empty polynomials.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Adds `c · Π_{k ∈ indices} x_k`. Indices are sorted and deduplicated
    /// (binary idempotence), and cancelled terms are pruned.
    pub fn add_term(&mut self, indices: &[usize], c: f64) -> Result<()> {
        if !c.is_finite() {
            return Err(Error::Domain(format!("coefficient {c} is not finite")));
        }
        if let Some(&i) = indices.iter().find(|&&i| i >= self.num_vars) {
            return Err(Error::Dimension { expected: self.num_vars, actual: i });
        }
        if c == 0.0 {
            return Ok(());
        }
        let mut key = indices.to_vec();
        key.sort_unstable();
        key.dedup();
        let entry = self.terms.entry(key.clone()).or_insert(0.0);
        *entry += c;
        if *entry == 0.0 {
            self.terms.remove(&key);
        }
        Ok(())
    }

    /// Adds every term of `other`, scaled by `scale`.
    pub fn add_scaled(&mut self, other: &PseudoBooleanPolynomial, scale: f64) -> Result<()> {
        for (set, &c) in &other.terms {
            self.add_term(set, scale * c)?;
        }
        Ok(())
    }

    /// Multilinear product of two polynomials over the same variable space.
    pub fn multiply(&self, other: &PseudoBooleanPolynomial) -> PseudoBooleanPolynomial {
        let mut out = PseudoBooleanPolynomial::new(self.num_vars.max(other.num_vars));
        for (s1, &c1) in &self.terms {
            for (s2, &c2) in &other.terms {
                let mut set = s1.clone();
                set.extend_from_slice(s2);
                out.add_term(&set, c1 * c2).expect("indices already validated");
            }
        }
        out
    }

    pub fn energy(&self, x: &Assignment) -> Result<f64> {
        if x.len() != self.num_vars {
            return Err(Error::Dimension { expected: self.num_vars, actual: x.len() });
        }
        Ok(self.energy_of_bits(x.as_slice()))
    }

    /// Lossless conversion for polynomials of degree ≤ 2.
    pub fn to_qubo(&self) -> Result<QuboModel> {
        let mut q = QuboModel::new(self.num_vars);
        for (set, &c) in &self.terms {
            match set.as_slice() {
                [] => q.add_offset(c),
                [i] => q.add_linear(*i, c)?,
                [i, j] => q.add_quadratic(*i, *j, c)?,
                _ => {
                    return Err(Error::Domain(format!(
                        "degree-{} term cannot convert to a quadratic model",
                        set.len()
                    )));
                }
            }
        }
        Ok(q)
    }

    pub fn from_qubo(model: &QuboModel) -> Self {
        let mut p = Self::new(model.num_vars());
        p.add_term(&[], model.offset()).expect("constant");
        for (&i, &c) in model.linear() {
            p.add_term(&[i], c).expect("validated");
        }
        for (&(i, j), &c) in model.quadratic() {
            p.add_term(&[i, j], c).expect("validated");
        }
        p
    }
}

impl BinaryCost for PseudoBooleanPolynomial {
    fn num_vars(&self) -> usize {
        self.num_vars
    }

    fn energy_of_bits(&self, bits: &[u8]) -> f64 {
        debug_assert_eq!(bits.len(), self.num_vars);
        let mut e = 0.0;
        'terms: for (set, &c) in &self.terms {
            for &i in set {
                if bits[i] == 0 {
                    continue 'terms;
                }
            }
            e += c;
        }
        e
    }

    fn terms(&self) -> (f64, Vec<(Vec<usize>, f64)>) {
        let mut offset = 0.0;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (set, &c) in &self.terms {
            if set.is_empty() {
                offset += c;
            } else {
                terms.push((set.clone(), c));
            }
        }
        (offset, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_polynomial_ignores_assignment() {
        let p = PseudoBooleanPolynomial::constant(3, 5.0);
        for k in 0..8u64 {
            let x = Assignment::from_index(k, 3);
            assert_eq!(p.energy(&x).unwrap(), 5.0);
        }
    }

    #[test]
    fn monomial_evaluation() {
        let mut p = PseudoBooleanPolynomial::new(3);
        p.add_term(&[0, 1, 2], 2.0).unwrap();
        assert_eq!(p.energy(&Assignment::new(vec![1, 1, 1]).unwrap()).unwrap(), 2.0);
        assert_eq!(p.energy(&Assignment::new(vec![1, 1, 0]).unwrap()).unwrap(), 0.0);
        assert_eq!(p.degree(), 3);
    }

    #[test]
    fn duplicate_indices_fold_idempotently() {
        let mut p = PseudoBooleanPolynomial::new(2);
        p.add_term(&[0, 0, 1], 3.0).unwrap();
        assert_eq!(p.term_map().get(&vec![0, 1]), Some(&3.0));
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn out_of_range_index_is_rejected() {
        let mut p = PseudoBooleanPolynomial::new(2);
        assert!(p.add_term(&[2], 1.0).is_err());
    }

    #[test]
    fn quadratic_round_trip_is_lossless() {
        let mut q = QuboModel::new(4);
        q.add_offset(0.75);
        q.add_linear(0, 1.0).unwrap();
        q.add_linear(3, -2.0).unwrap();
        q.add_quadratic(0, 2, 0.5).unwrap();
        q.add_quadratic(1, 3, -1.5).unwrap();

        let p = PseudoBooleanPolynomial::from_qubo(&q);
        let back = p.to_qubo().unwrap();
        assert_eq!(back, q);
        for k in 0..16u64 {
            let x = Assignment::from_index(k, 4);
            assert_eq!(p.energy(&x).unwrap(), q.energy(&x).unwrap());
        }
    }

    #[test]
    fn cubic_polynomial_refuses_quadratic_conversion() {
        let mut p = PseudoBooleanPolynomial::new(3);
        p.add_term(&[0, 1, 2], 1.0).unwrap();
        assert!(p.to_qubo().is_err());
    }

    #[test]
    fn product_respects_idempotence() {
        // (1 − x₀)(1 − x₀) must equal (1 − x₀).
        let mut lit = PseudoBooleanPolynomial::new(1);
        lit.add_term(&[], 1.0).unwrap();
        lit.add_term(&[0], -1.0).unwrap();
        let sq = lit.multiply(&lit);
        assert_eq!(sq, lit);
    }
}
