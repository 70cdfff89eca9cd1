//! JSON schemas for self-maps and subvariety models.
//!
//! A map file is an object `{"p", "k", "g", "polynomials", "inverse"?}` where
//! each polynomial is a list of `[coefficient, [e_1, ..., e_g]]` pairs with
//! integer coefficients. Subvariety files carry `{"generators", "point"}` in
//! the same polynomial encoding.

use serde::{Deserialize, Serialize};

use crate::dynamics::{PolySelfMap, SubvarietyModel};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Sparse polynomial encoding: `[coefficient, exponent-vector]` pairs.
pub type SparsePoly = Vec<(i64, Vec<u32>)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub p: u64,
    pub k: u32,
    pub g: usize,
    pub polynomials: Vec<SparsePoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<SparsePoly>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubvarietyFile {
    pub generators: Vec<SparsePoly>,
    pub point: Vec<i64>,
}

fn poly_from_sparse(vars: usize, sparse: &SparsePoly) -> Result<IntPoly> {
    let mut terms = Vec::with_capacity(sparse.len());
    for (c, exps) in sparse {
        if exps.len() != vars {
            return Err(Error::Mismatch(format!(
                "exponent vector {exps:?} does not have {vars} entries"
            )));
        }
        terms.push((*c, exps.as_slice()));
    }
    Ok(IntPoly::from_terms(vars, &terms))
}

impl MapFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|err| Error::InvalidParameter(format!("malformed map file: {err}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("map files always serialize")
    }

    pub fn build(&self) -> Result<PolySelfMap> {
        if self.polynomials.len() != self.g {
            return Err(Error::Mismatch(format!(
                "map declares g = {} but has {} polynomials",
                self.g,
                self.polynomials.len()
            )));
        }
        let polynomials = self
            .polynomials
            .iter()
            .map(|s| poly_from_sparse(self.g, s))
            .collect::<Result<Vec<_>>>()?;
        let inverse = match &self.inverse {
            None => None,
            Some(polys) => Some(
                polys
                    .iter()
                    .map(|s| poly_from_sparse(self.g, s))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        PolySelfMap::new(self.p, self.k, polynomials, inverse)
    }
}

impl SubvarietyFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|err| Error::InvalidParameter(format!("malformed subvariety file: {err}")))
    }

    pub fn build(&self) -> Result<SubvarietyModel> {
        let vars = self.point.len();
        let generators = self
            .generators
            .iter()
            .map(|s| poly_from_sparse(vars, s))
            .collect::<Result<Vec<_>>>()?;
        SubvarietyModel::new(generators, self.point.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics;

    #[test]
    fn parses_translation_map() {
        let text = r#"{"p": 3, "k": 2, "g": 1, "polynomials": [[[1, [1]], [1, [0]]]]}"#;
        let file = MapFile::from_json(text).unwrap();
        let map = file.build().unwrap();
        assert_eq!(map.vars(), 1);
        let report = dynamics::orbit_of_point(&map, &[0], 2).unwrap();
        assert_eq!((report.tail, report.cycle), (0, 9));
    }

    #[test]
    fn parses_map_with_inverse() {
        let text = r#"{
            "p": 5, "k": 2, "g": 2,
            "polynomials": [[[1, [0, 1]]], [[1, [1, 0]]]],
            "inverse": [[[1, [0, 1]]], [[1, [1, 0]]]]
        }"#;
        let map = MapFile::from_json(text).unwrap().build().unwrap();
        assert!(map.inverse().is_some());
    }

    #[test]
    fn round_trip() {
        let text = r#"{"p": 3, "k": 1, "g": 1, "polynomials": [[[2, [1]]]]}"#;
        let file = MapFile::from_json(text).unwrap();
        let again = MapFile::from_json(&file.to_json()).unwrap();
        assert_eq!(file, again);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(MapFile::from_json("{").is_err());
        // Arity mismatch between g and the exponent vectors.
        let text = r#"{"p": 3, "k": 1, "g": 2, "polynomials": [[[1, [1]]], [[1, [1]]]]}"#;
        assert!(MapFile::from_json(text).unwrap().build().is_err());
        // Declared g does not match the polynomial count.
        let text = r#"{"p": 3, "k": 1, "g": 2, "polynomials": [[[1, [1, 0]]]]}"#;
        assert!(MapFile::from_json(text).unwrap().build().is_err());
    }

    #[test]
    fn subvariety_file() {
        let text = r#"{"generators": [[[1, [1, 0]]]], "point": [0, 4]}"#;
        let model = SubvarietyFile::from_json(text).unwrap().build().unwrap();
        assert_eq!(model.sample_point(), &[0, 4]);
    }
}
