use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{ExactPolynomial, Monomial, PolyError, VariableSet};

/// JSON shape of one term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub exponents: Vec<u32>,
    pub coef: String,
}

/// Terms in descending graded lexicographic order.
pub(super) fn sorted_terms(p: &ExactPolynomial) -> Vec<(&Monomial, &BigInt)> {
    let mut v: Vec<_> = p.terms.iter().collect();
    v.sort_by(|a, b| b.0.grlex_cmp(a.0));
    v
}

pub(super) fn to_text(p: &ExactPolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let names = p.ring.names();
    let mut out = String::new();
    for (k, (m, c)) in sorted_terms(p).into_iter().enumerate() {
        if c.sign() == Sign::Minus {
            out.push('-');
        } else if k > 0 {
            out.push('+');
        }
        let mag = c.abs();
        let mut factors: Vec<String> = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[i].clone()),
                _ => factors.push(format!("{}^{}", names[i], e)),
            }
        }
        if factors.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

impl ExactPolynomial {
    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        sorted_terms(self)
            .into_iter()
            .map(|(m, c)| JsonTerm { exponents: m.0.clone(), coef: c.to_string() })
            .collect()
    }

    pub fn from_json_terms(ring: &VariableSet, terms: &[JsonTerm]) -> Result<Self, PolyError> {
        let mut p = ExactPolynomial::zero(ring);
        for t in terms {
            if t.exponents.len() != ring.len() {
                return Err(PolyError::Json(format!(
                    "expected {} exponents, got {}",
                    ring.len(),
                    t.exponents.len()
                )));
            }
            let c: BigInt = t
                .coef
                .parse()
                .map_err(|_| PolyError::Json(format!("bad coefficient `{}`", t.coef)))?;
            p.add_term(Monomial(t.exponents.clone()), c);
        }
        Ok(p)
    }
}
