//! Serializable result records shared by the command-line tools.

use serde::{Deserialize, Serialize};

use crate::algebra::{BivariateLaurent, KappaPolynomial};
use crate::combinatorics::Kind;
use crate::spec::ParamPoly;

/// Version of every JSON document this crate emits.
pub const SCHEMA_VERSION: u32 = 1;

/// `α_n^{(g)}` or `m_n^{(g)}` in canonical rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentRecord {
    pub kind: Kind,
    pub g: u32,
    pub n: usize,
    pub poly: String,
}

impl MomentRecord {
    pub fn new(kind: Kind, g: u32, n: usize, poly: &KappaPolynomial) -> Self {
        Self { kind, g, n, poly: poly.to_string() }
    }
}

/// A specialized coefficient sequence, `coeffs[k]` for `n = n_min + k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub kind: Kind,
    pub g: u32,
    pub spec: String,
    pub n_min: usize,
    pub coeffs: Vec<ParamPoly>,
}

/// A cylinder moment `α^{(0)}_{i,j}` / `m^{(0)}_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderRecord {
    pub kind: Kind,
    pub i: usize,
    pub j: usize,
    pub poly: String,
}

/// Sorted `(deg1, deg2, poly)` triples of a bivariate series.
pub fn bivariate_dump(s: &BivariateLaurent) -> Vec<(i64, i64, String)> {
    s.iter().map(|((a, b), c)| (a, b, c.to_string())).collect()
}

/// `(monomial, coefficient)` rows in canonical order, for CSV output.
pub fn polynomial_rows(p: &KappaPolynomial) -> Vec<(String, String)> {
    p.canonical_terms().into_iter().map(|(m, c)| (m.to_string(), c.to_string())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_json() {
        let p: KappaPolynomial = "5*k4 + k2^2 + 4*k1*k3".parse().unwrap();
        let r = MomentRecord::new(Kind::Permutation, 1, 4, &p);
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"kind":"permutation","g":1,"n":4,"poly":"4*k1*k3 + k2^2 + 5*k4"}"#
        );
        let rows = polynomial_rows(&p);
        assert_eq!(rows[0], ("k1*k3".to_string(), "4".to_string()));
    }
}
