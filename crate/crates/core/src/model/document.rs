//! JSON document format for quadratic and higher-order models.
//!
//! ```json
//! { "num_vars": 3, "offset": 0.0,
//!   "linear": [[0, 1.5]], "quadratic": [[0, 1, -2.0]],
//!   "terms": [[[0, 1, 2], 0.25]] }
//! ```
//!
//! `terms` is present only for higher-order models; degree ≤ 2 content stays
//! in `offset`/`linear`/`quadratic` either way. Indices are 0-based; the
//! loader rejects out-of-range indices and non-finite coefficients.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::cost::BinaryCost;
use crate::model::poly::PseudoBooleanPolynomial;
use crate::model::qubo::QuboModel;

/// A model document: quadratic or arbitrary-degree.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyModel {
    Qubo(QuboModel),
    Hobo(PseudoBooleanPolynomial),
}

impl AnyModel {
    pub fn num_vars(&self) -> usize {
        match self {
            AnyModel::Qubo(m) => m.num_vars(),
            AnyModel::Hobo(p) => p.num_vars(),
        }
    }
}

impl BinaryCost for AnyModel {
    fn num_vars(&self) -> usize {
        AnyModel::num_vars(self)
    }

    fn energy_of_bits(&self, bits: &[u8]) -> f64 {
        match self {
            AnyModel::Qubo(m) => m.energy_of_bits(bits),
            AnyModel::Hobo(p) => p.energy_of_bits(bits),
        }
    }

    fn terms(&self) -> (f64, Vec<(Vec<usize>, f64)>) {
        match self {
            AnyModel::Qubo(m) => m.terms(),
            AnyModel::Hobo(p) => p.terms(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ModelDoc {
    num_vars: usize,
    #[serde(default)]
    offset: f64,
    #[serde(default)]
    linear: Vec<(usize, f64)>,
    #[serde(default)]
    quadratic: Vec<(usize, usize, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    terms: Option<Vec<(Vec<usize>, f64)>>,
}

pub fn model_to_json(model: &AnyModel) -> String {
    let doc = match model {
        AnyModel::Qubo(m) => ModelDoc {
            num_vars: m.num_vars(),
            offset: m.offset(),
            linear: m.linear().iter().map(|(&i, &c)| (i, c)).collect(),
            quadratic: m.quadratic().iter().map(|(&(i, j), &c)| (i, j, c)).collect(),
            terms: None,
        },
        AnyModel::Hobo(p) => {
            let mut offset = 0.0;
            let mut linear = Vec::new();
            let mut quadratic = Vec::new();
            let mut terms = Vec::new();
            for (set, &c) in p.term_map() {
                match set.as_slice() {
                    [] => offset += c,
                    [i] => linear.push((*i, c)),
                    [i, j] => quadratic.push((*i, *j, c)),
                    _ => terms.push((set.clone(), c)),
                }
            }
            ModelDoc { num_vars: p.num_vars(), offset, linear, quadratic, terms: Some(terms) }
        }
    };
    serde_json::to_string_pretty(&doc).expect("model document serializes")
}

pub fn model_from_json(json: &str) -> Result<AnyModel> {
    let doc: ModelDoc = serde_json::from_str(json)
        .map_err(|e| Error::Document(format!("model document: {e}")))?;
    if let Some(terms) = doc.terms {
        let mut p = PseudoBooleanPolynomial::new(doc.num_vars);
        check_finite(doc.offset)?;
        p.add_term(&[], doc.offset)?;
        for (i, c) in doc.linear {
            p.add_term(&[i], c)?;
        }
        for (i, j, c) in doc.quadratic {
            p.add_term(&[i, j], c)?;
        }
        for (set, c) in terms {
            p.add_term(&set, c)?;
        }
        Ok(AnyModel::Hobo(p))
    } else {
        let mut m = QuboModel::new(doc.num_vars);
        check_finite(doc.offset)?;
        m.add_offset(doc.offset);
        for (i, c) in doc.linear {
            m.add_linear(i, c)?;
        }
        for (i, j, c) in doc.quadratic {
            m.add_quadratic(i, j, c)?;
        }
        Ok(AnyModel::Qubo(m))
    }
}

fn check_finite(c: f64) -> Result<()> {
    if !c.is_finite() {
        return Err(Error::Document(format!("non-finite coefficient {c}")));
    }
    Ok(())
}
