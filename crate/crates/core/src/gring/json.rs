//! Canonical JSON documents for rings and their elements.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::gring::coeff::{format_scalar, parse_scalar, CoeffRing};
use crate::gring::matrix::PolyMatrix;
use crate::gring::poly::GradedPoly;
use crate::gring::ring::{RingSpec, Variable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarDoc {
    pub name: String,
    pub deg: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDoc {
    pub coeffs: String,
    pub vars: Vec<VarDoc>,
    pub trunc: u32,
}

impl RingDoc {
    pub fn from_ring(ring: &RingSpec) -> Self {
        RingDoc {
            coeffs: ring.coeffs().label(),
            vars: ring.vars().iter().map(|v| VarDoc { name: v.name.clone(), deg: v.degree }).collect(),
            trunc: ring.trunc(),
        }
    }

    pub fn to_ring(&self) -> Result<Arc<RingSpec>> {
        let coeffs: CoeffRing = self.coeffs.parse()?;
        let vars = self.vars.iter().map(|v| Variable::new(v.name.clone(), v.deg)).collect();
        RingSpec::new(coeffs, vars, self.trunc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub mono: BTreeMap<String, u32>,
    pub coef: String,
}

/// A polynomial document: either the canonical term list or, for
/// hand-written input, an expression string such as `"x^2 - a"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyDoc {
    Terms {
        terms: Vec<TermDoc>,
    },
    Text(String),
}

impl PolyDoc {
    /// Canonical form: terms in monomial order, zero exponents omitted.
    pub fn from_poly(p: &GradedPoly) -> Self {
        let vars = p.ring().vars();
        let terms = p
            .terms()
            .map(|(m, c)| TermDoc {
                mono: m
                    .exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (vars[i].name.clone(), e))
                    .collect(),
                coef: format_scalar(c),
            })
            .collect();
        PolyDoc::Terms { terms }
    }

    pub fn to_poly(&self, ring: &Arc<RingSpec>) -> Result<GradedPoly> {
        match self {
            PolyDoc::Text(s) => GradedPoly::parse(ring, s),
            PolyDoc::Terms { terms } => {
                let mut p = GradedPoly::zero(ring);
                for t in terms {
                    let mut exps = vec![0u32; ring.nvars()];
                    for (name, &e) in &t.mono {
                        exps[ring.var_index(name)?] += e;
                    }
                    let mono = ring.monomial(exps)?;
                    let c = ring.coeffs().admit(parse_scalar(&t.coef)?)?;
                    p.add_term(mono, c);
                }
                Ok(p)
            }
        }
    }
}

/// A matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<PolyDoc>>,
}

impl MatrixDoc {
    pub fn from_matrix(m: &PolyMatrix) -> Self {
        MatrixDoc {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| PolyDoc::from_poly(m.get(i, j))).collect())
                .collect(),
        }
    }

    /// Same matrix with entries printed as expression strings.
    pub fn from_matrix_text(m: &PolyMatrix) -> Self {
        MatrixDoc {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| PolyDoc::Text(m.get(i, j).to_string())).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self, ring: &Arc<RingSpec>) -> Result<PolyMatrix> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(AlgebraError::ShapeMismatch(format!(
                "matrix document does not have shape {}x{}",
                self.rows, self.cols
            )));
        }
        let entries = self.entries.iter().flatten().map(|e| e.to_poly(ring)).collect::<Result<_>>()?;
        PolyMatrix::new(ring, self.rows, self.cols, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_round_trip() {
        let r = RingSpec::with_vars(CoeffRing::prime_field(7).unwrap(), &[("a", 2), ("x", 1)], 5).unwrap();
        let doc = RingDoc::from_ring(&r);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(text, r#"{"coeffs":"Fp(7)","vars":[{"name":"a","deg":2},{"name":"x","deg":1}],"trunc":5}"#);
        let back: RingDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(*back.to_ring().unwrap(), *r);
    }

    #[test]
    fn poly_round_trip_is_bit_exact() {
        let r = RingSpec::with_vars(CoeffRing::Rationals, &[("a", 2), ("x", 1)], 5).unwrap();
        let p = GradedPoly::parse(&r, "-3/4*x*a + x^2 - 7").unwrap();
        let text = serde_json::to_string(&PolyDoc::from_poly(&p)).unwrap();
        let doc: PolyDoc = serde_json::from_str(&text).unwrap();
        let q = doc.to_poly(&r).unwrap();
        assert_eq!(p, q);
        assert_eq!(serde_json::to_string(&PolyDoc::from_poly(&q)).unwrap(), text);
    }

    #[test]
    fn text_form_accepted() {
        let r = RingSpec::with_vars(CoeffRing::Integers, &[("a", 2)], 3).unwrap();
        let doc: PolyDoc = serde_json::from_str(r#""a + 1""#).unwrap();
        assert_eq!(doc.to_poly(&r).unwrap(), GradedPoly::parse(&r, "1 + a").unwrap());
    }
}
