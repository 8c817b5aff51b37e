//! Exact resource accounting for encoded models: variable counts, quadratic
//! nonzeros, top degree, and upper-triangle density.

use serde::Serialize;

use crate::model::poly::PseudoBooleanPolynomial;
use crate::model::qubo::QuboModel;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResourceReport {
    pub num_variables: usize,
    pub num_quadratic_nonzero: usize,
    pub max_degree: usize,
    /// Fraction of the n(n−1)/2 upper-triangle slots with a nonzero
    /// quadratic coefficient; 0 when there is no upper triangle.
    pub density: f64,
}

impl ResourceReport {
    pub fn for_qubo(model: &QuboModel) -> Self {
        let n = model.num_vars();
        let nnz = model.quadratic().len();
        let max_degree = if nnz > 0 {
            2
        } else if !model.linear().is_empty() {
            1
        } else {
            0
        };
        Self { num_variables: n, num_quadratic_nonzero: nnz, max_degree, density: density(n, nnz) }
    }

    pub fn for_polynomial(poly: &PseudoBooleanPolynomial) -> Self {
        let n = poly.num_vars();
        let nnz = poly.term_map().keys().filter(|set| set.len() == 2).count();
        Self {
            num_variables: n,
            num_quadratic_nonzero: nnz,
            max_degree: poly.degree(),
            density: density(n, nnz),
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "vars={} quadratic_nnz={} max_degree={} density={:.6}",
            self.num_variables, self.num_quadratic_nonzero, self.max_degree, self.density
        )
    }
}

fn density(n: usize, nnz: usize) -> f64 {
    let slots = n * n.saturating_sub(1) / 2;
    if slots == 0 {
        0.0
    } else {
        nnz as f64 / slots as f64
    }
}

/// CSV table for a sweep of reports, one row per problem size:
/// `size,num_vars,nnz,max_degree,density`.
pub fn reports_to_csv(rows: &[(usize, ResourceReport)]) -> String {
    let mut out = String::from("size,num_vars,nnz,max_degree,density\n");
    for (size, r) in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            size, r.num_variables, r.num_quadratic_nonzero, r.max_degree, r.density
        ));
    }
    out
}
