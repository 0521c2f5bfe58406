//! Canonical JSON forms of towers, classes, witnesses, and matrices.
//!
//! Output is compact `serde_json` text with 1-based generator indices, sorted
//! subsets, terms in basis order, and no zero coefficients; encoding the
//! decoded value of a canonical document reproduces it byte for byte.
//! Integers are arbitrary precision.

use std::str::FromStr;

use bott_core::iso::{FilteredIsoWitness, RingHomMatrix};
use bott_core::linalg::IntMatrix;
use bott_core::{BottTower, CohClass, Sign, Subset};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("expected an integer, found {0}")]
    NotAnInteger(String),
    #[error("tower declares n = {declared} but has {rows} coefficient rows")]
    HeightMismatch { declared: usize, rows: usize },
    #[error("sign must be 1 or -1, found {0}")]
    BadSign(i64),
    #[error("subset {0:?} repeats an index or uses index 0")]
    BadSubset(Vec<usize>),
    #[error(transparent)]
    Core(#[from] bott_core::Error),
}

pub type Result<T, E = FormatError> = std::result::Result<T, E>;

pub fn big_to_number(v: &BigInt) -> Number {
    Number::from_str(&v.to_string()).expect("integers are valid JSON numbers")
}

pub fn number_to_big(n: &Number) -> Result<BigInt> {
    let s = n.to_string();
    BigInt::from_str(&s).map_err(|_| FormatError::NotAnInteger(s))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TowerJson {
    pub n: usize,
    pub coeffs: Vec<Vec<Number>>,
}

impl TowerJson {
    pub fn from_tower(t: &BottTower) -> TowerJson {
        TowerJson {
            n: t.height(),
            coeffs: t
                .coeffs()
                .iter()
                .map(|row| row.iter().map(big_to_number).collect())
                .collect(),
        }
    }

    pub fn to_tower(&self) -> Result<BottTower> {
        if self.coeffs.len() != self.n {
            return Err(FormatError::HeightMismatch {
                declared: self.n,
                rows: self.coeffs.len(),
            });
        }
        let rows = self
            .coeffs
            .iter()
            .map(|row| row.iter().map(number_to_big).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(BottTower::new(self.n, rows)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub subset: Vec<usize>,
    pub coeff: Number,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ClassJson {
    pub terms: Vec<TermJson>,
}

impl ClassJson {
    pub fn from_class(c: &CohClass) -> ClassJson {
        ClassJson {
            terms: c
                .terms()
                .map(|(s, v)| TermJson {
                    subset: s.indices().collect(),
                    coeff: big_to_number(v),
                })
                .collect(),
        }
    }

    /// Accepts terms in any order; repeated subsets are summed.
    pub fn to_class(&self, tower: &BottTower) -> Result<CohClass> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let s = Subset::from_indices(t.subset.iter().copied())?;
            if s.len() != t.subset.len() {
                return Err(FormatError::BadSubset(t.subset.clone()));
            }
            terms.push((s, number_to_big(&t.coeff)?));
        }
        Ok(CohClass::from_terms(tower, terms)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct WitnessJson {
    pub source: TowerJson,
    pub target: TowerJson,
    pub signs: Vec<i64>,
    pub shifts: Vec<ClassJson>,
}

pub fn sign_from_i64(v: i64) -> Result<Sign> {
    Sign::from_i64(v).ok_or(FormatError::BadSign(v))
}

impl WitnessJson {
    pub fn from_witness(w: &FilteredIsoWitness) -> WitnessJson {
        WitnessJson {
            source: TowerJson::from_tower(&w.source),
            target: TowerJson::from_tower(&w.target),
            signs: w.signs.iter().map(|s| s.to_i64()).collect(),
            shifts: w.shifts.iter().map(ClassJson::from_class).collect(),
        }
    }

    pub fn to_witness(&self) -> Result<FilteredIsoWitness> {
        let source = self.source.to_tower()?;
        let target = self.target.to_tower()?;
        let signs = self
            .signs
            .iter()
            .map(|&s| sign_from_i64(s))
            .collect::<Result<Vec<_>>>()?;
        let shifts = self
            .shifts
            .iter()
            .map(|c| c.to_class(&target))
            .collect::<Result<Vec<_>>>()?;
        Ok(FilteredIsoWitness {
            source,
            target,
            signs,
            shifts,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MatrixJson {
    pub source: TowerJson,
    pub target: TowerJson,
    /// Row-major; column `i` is the image of the `i`-th source generator.
    pub matrix: Vec<Vec<Number>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &RingHomMatrix) -> MatrixJson {
        MatrixJson {
            source: TowerJson::from_tower(&m.source),
            target: TowerJson::from_tower(&m.target),
            matrix: matrix_rows(&m.images),
        }
    }

    pub fn to_matrix(&self) -> Result<RingHomMatrix> {
        let source = self.source.to_tower()?;
        let target = self.target.to_tower()?;
        let n = source.height();
        let rows = self
            .matrix
            .iter()
            .map(|r| r.iter().map(number_to_big).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let images = IntMatrix::from_rows(n, rows)?;
        Ok(RingHomMatrix {
            source,
            target,
            images,
        })
    }
}

pub fn matrix_rows(m: &IntMatrix) -> Vec<Vec<Number>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(big_to_number).collect())
        .collect()
}

/// Compact canonical text.
pub fn to_canonical<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("in-memory JSON serialization cannot fail")
}

pub fn tower_to_json(t: &BottTower) -> String {
    to_canonical(&TowerJson::from_tower(t))
}

pub fn tower_from_json(text: &str) -> Result<BottTower> {
    serde_json::from_str::<TowerJson>(text)?.to_tower()
}

pub fn class_to_json(c: &CohClass) -> String {
    to_canonical(&ClassJson::from_class(c))
}

pub fn class_from_json(tower: &BottTower, text: &str) -> Result<CohClass> {
    serde_json::from_str::<ClassJson>(text)?.to_class(tower)
}

pub fn witness_to_json(w: &FilteredIsoWitness) -> String {
    to_canonical(&WitnessJson::from_witness(w))
}

pub fn witness_from_json(text: &str) -> Result<FilteredIsoWitness> {
    serde_json::from_str::<WitnessJson>(text)?.to_witness()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_format() {
        let t = BottTower::from_i64(&[&[], &[1], &[0, 2]]).unwrap();
        assert_eq!(tower_to_json(&t), r#"{"n":3,"coeffs":[[],[1],[0,2]]}"#);
        let back = tower_from_json(r#"{"n": 3, "coeffs": [[], [1], [0, 2]]}"#).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn tower_errors() {
        assert!(matches!(
            tower_from_json(r#"{"n":2,"coeffs":[[]]}"#),
            Err(FormatError::HeightMismatch { .. })
        ));
        assert!(matches!(
            tower_from_json(r#"{"n":2,"coeffs":[[],[1,2]]}"#),
            Err(FormatError::Core(bott_core::Error::MalformedTower {
                stage: 2,
                ..
            }))
        ));
        assert!(matches!(
            tower_from_json(r#"{"n":2,"coeffs":[[],[1.5]]}"#),
            Err(FormatError::NotAnInteger(_))
        ));
    }

    #[test]
    fn class_format() {
        let t = BottTower::trivial(2).unwrap();
        let c = class_from_json(
            &t,
            r#"{"terms":[{"subset":[2,1],"coeff":-3},{"subset":[1],"coeff":2},{"subset":[2],"coeff":0}]}"#,
        )
        .unwrap();
        assert_eq!(
            class_to_json(&c),
            r#"{"terms":[{"subset":[1],"coeff":2},{"subset":[1,2],"coeff":-3}]}"#
        );
        assert!(class_from_json(&t, r#"{"terms":[{"subset":[3],"coeff":1}]}"#).is_err());
        assert!(class_from_json(&t, r#"{"terms":[{"subset":[1,1],"coeff":1}]}"#).is_err());
    }

    #[test]
    fn big_coefficients_survive() {
        let t = BottTower::trivial(1).unwrap();
        let text = r#"{"terms":[{"subset":[1],"coeff":123456789012345678901234567890}]}"#;
        let c = class_from_json(&t, text).unwrap();
        assert_eq!(class_to_json(&c), text);
    }
}
