//! JSON interchange formats.
//!
//! Coefficients are written either as a rational literal string `"p/q"`
//! (integers may also be plain JSON numbers) or as `{"poly": "<text>"}` using
//! the polynomial text syntax, e.g. `{"poly": "-1/2 * a_1_2 + a_2_1^2"}`.
//!
//! ```text
//! matrix:          {"n": 2, "entries": [["0", "1"], ["-1", "0"]]}
//! tensor:          {"n": 3, "k": 3, "values": [{"idx": [1, 2, 3], "val": "1"}]}
//! tensor family:   {"n": 5, "tensors": [<tensor>, ...]}  (a bare tensor also works)
//! pair (F, R):     {"edges": [[2, 4], [4, 1]], "roots": [13]}
//! cactus:          {"n": 5, "blocks": [[1, 2, 3], [3, 4, 5]]}
//! refined cactus:  {"n": 5, "sequences": [[2, 3, 1], [3, 5, 4]]}
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cactus::{Cactus, RefinedCactus};
use crate::forest::Edge;
use crate::linalg::{AntisymmetricTensor, IndexSet, SquareMatrix, TensorFamily};
use crate::ring::{Polynomial, Rational, Ring};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad coefficient: {0}")]
    Coefficient(String),
    #[error("declared n = {declared} but found {found}")]
    Size { declared: usize, found: usize },
    #[error(transparent)]
    Model(#[from] crate::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Integer(i64),
    Literal(String),
    Poly { poly: String },
}

impl CoeffJson {
    pub fn is_constant(&self) -> bool {
        match self {
            CoeffJson::Integer(_) | CoeffJson::Literal(_) => true,
            CoeffJson::Poly { poly } => poly
                .parse::<Polynomial>()
                .is_ok_and(|p| p.as_constant().is_some()),
        }
    }
}

/// Rings that can be read from and written to [`CoeffJson`].
pub trait Coefficient: Ring {
    fn from_coeff(c: &CoeffJson) -> Result<Self, FormatError>;
    fn to_coeff(&self) -> CoeffJson;
}

impl Coefficient for Rational {
    fn from_coeff(c: &CoeffJson) -> Result<Self, FormatError> {
        match c {
            CoeffJson::Integer(v) => Ok(Rational::from(*v)),
            CoeffJson::Literal(s) => s
                .trim()
                .parse()
                .map_err(|e: crate::ring::ParseRationalError| FormatError::Coefficient(e.to_string())),
            CoeffJson::Poly { .. } => Polynomial::from_coeff(c)?
                .as_constant()
                .ok_or_else(|| FormatError::Coefficient("polynomial where a rational was expected".into())),
        }
    }

    fn to_coeff(&self) -> CoeffJson {
        CoeffJson::Literal(self.to_string())
    }
}

impl Coefficient for Polynomial {
    fn from_coeff(c: &CoeffJson) -> Result<Self, FormatError> {
        match c {
            CoeffJson::Poly { poly } => poly
                .parse()
                .map_err(|e: crate::ring::ParsePolynomialError| FormatError::Coefficient(e.to_string())),
            _ => Ok(Polynomial::constant(Rational::from_coeff(c)?)),
        }
    }

    fn to_coeff(&self) -> CoeffJson {
        match self.as_constant() {
            Some(q) => q.to_coeff(),
            None => CoeffJson::Poly {
                poly: self.to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<CoeffJson>>,
}

impl MatrixJson {
    pub fn is_constant(&self) -> bool {
        self.entries.iter().flatten().all(CoeffJson::is_constant)
    }

    pub fn to_matrix<R: Coefficient>(&self) -> Result<SquareMatrix<R>, FormatError> {
        if self.entries.len() != self.n {
            return Err(FormatError::Size {
                declared: self.n,
                found: self.entries.len(),
            });
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(R::from_coeff).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SquareMatrix::from_rows(rows)?)
    }

    pub fn from_matrix<R: Coefficient>(m: &SquareMatrix<R>) -> Self {
        MatrixJson {
            n: m.n(),
            entries: m.rows().map(|r| r.iter().map(R::to_coeff).collect()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorEntryJson {
    pub idx: Vec<usize>,
    pub val: CoeffJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorJson {
    pub n: usize,
    pub k: usize,
    pub values: Vec<TensorEntryJson>,
}

impl TensorJson {
    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|e| e.val.is_constant())
    }

    /// Entries may use any index order; the antisymmetry sign is applied.
    /// Repeated tuples (up to order) are rejected.
    pub fn to_tensor<R: Coefficient>(&self) -> Result<AntisymmetricTensor<R>, FormatError> {
        let mut t = AntisymmetricTensor::zero(self.n, self.k)?;
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.values {
            let mut key = e.idx.clone();
            key.sort_unstable();
            if !seen.insert(key.clone()) {
                return Err(FormatError::Coefficient(format!("tensor index {key:?} given twice")));
            }
            t.set(&e.idx, R::from_coeff(&e.val)?)?;
        }
        Ok(t)
    }

    pub fn from_tensor<R: Coefficient>(t: &AntisymmetricTensor<R>) -> Self {
        TensorJson {
            n: t.n(),
            k: t.arity(),
            values: t
                .entries()
                .map(|(idx, v)| TensorEntryJson {
                    idx: idx.to_vec(),
                    val: v.to_coeff(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub n: usize,
    pub tensors: Vec<TensorJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilyInput {
    Family(FamilyJson),
    Single(TensorJson),
}

impl FamilyInput {
    pub fn into_family_json(self) -> FamilyJson {
        match self {
            FamilyInput::Family(f) => f,
            FamilyInput::Single(t) => FamilyJson {
                n: t.n,
                tensors: vec![t],
            },
        }
    }
}

impl FamilyJson {
    pub fn is_constant(&self) -> bool {
        self.tensors.iter().all(TensorJson::is_constant)
    }

    pub fn to_family<R: Coefficient>(&self) -> Result<TensorFamily<R>, FormatError> {
        let tensors = self
            .tensors
            .iter()
            .map(TensorJson::to_tensor)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TensorFamily::from_tensors(self.n, tensors)?)
    }

    pub fn from_family<R: Coefficient>(f: &TensorFamily<R>) -> Self {
        FamilyJson {
            n: f.n(),
            tensors: f.tensors().map(TensorJson::from_tensor).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub edges: Vec<[usize; 2]>,
    pub roots: Vec<usize>,
}

impl PairJson {
    pub fn edges(&self) -> Vec<Edge> {
        self.edges.iter().map(|&[u, v]| (u, v)).collect()
    }

    pub fn roots(&self) -> Result<IndexSet, FormatError> {
        Ok(IndexSet::new(self.roots.clone())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CactusJson {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl CactusJson {
    pub fn to_cactus(&self) -> Result<Cactus, FormatError> {
        Ok(Cactus::new(self.n, self.blocks.clone())?)
    }

    pub fn from_cactus(c: &Cactus) -> Self {
        CactusJson {
            n: c.n(),
            blocks: c.blocks().to_vec(),
        }
    }
}

/// `n` may be omitted; it then defaults to the largest label used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinedCactusJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub sequences: Vec<Vec<usize>>,
}

impl RefinedCactusJson {
    pub fn to_refined(&self) -> Result<RefinedCactus, FormatError> {
        let n = self
            .n
            .unwrap_or_else(|| self.sequences.iter().flatten().copied().max().unwrap_or(1));
        Ok(RefinedCactus::new(n, self.sequences.clone())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let text = r#"{"n": 2, "entries": [["1/2", 3], [{"poly": "x - 1"}, "0"]]}"#;
        let m: MatrixJson = serde_json::from_str(text).unwrap();
        assert!(!m.is_constant());
        let p = m.to_matrix::<Polynomial>().unwrap();
        assert_eq!(p[(1, 0)], "x - 1".parse().unwrap());
        let back = MatrixJson::from_matrix(&p);
        assert_eq!(back.to_matrix::<Polynomial>().unwrap(), p);
        assert!(m.to_matrix::<Rational>().is_err());
    }

    #[test]
    fn size_mismatch() {
        let m: MatrixJson = serde_json::from_str(r#"{"n": 3, "entries": [["1"]]}"#).unwrap();
        assert!(matches!(m.to_matrix::<Rational>(), Err(FormatError::Size { .. })));
    }

    #[test]
    fn tensor_signs_and_family() {
        let text = r#"{"n": 3, "k": 3, "values": [{"idx": [2, 1, 3], "val": "5"}]}"#;
        let f: FamilyInput = serde_json::from_str(text).unwrap();
        let fam = f.into_family_json().to_family::<Rational>().unwrap();
        assert_eq!(fam.get(3).unwrap().get(&[1, 2, 3]), Rational::from(-5));
        let again = FamilyJson::from_family(&fam).to_family::<Rational>().unwrap();
        assert_eq!(again, fam);
    }

    #[test]
    fn pair_and_cacti() {
        let p: PairJson = serde_json::from_str(r#"{"edges": [[1, 2]], "roots": [3]}"#).unwrap();
        assert_eq!(p.edges(), vec![(1, 2)]);
        let c: CactusJson = serde_json::from_str(r#"{"n": 3, "blocks": [[3, 1, 2]]}"#).unwrap();
        assert_eq!(c.to_cactus().unwrap().blocks(), &[vec![1, 2, 3]]);
        let r: RefinedCactusJson = serde_json::from_str(r#"{"sequences": [[2, 3, 1]]}"#).unwrap();
        assert_eq!(r.to_refined().unwrap().n(), 3);
    }
}
