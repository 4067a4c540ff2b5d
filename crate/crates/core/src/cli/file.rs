//! The JSON presentation format.
//!
//! ```json
//! { "base": "Q", "dim": 2, "unit": ["1", "0"],
//!   "table": [[["1","0"], ["0","1"]], [["0","1"], ["-1","0"]]],
//!   "names": ["1", "i"] }
//! ```
//!
//! `base` is `"Q"`, `"Z"` or `{"Fp": p}`. Scalars are always strings.

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element, ValidationReport};
use crate::error::{Error, Result};
use crate::scalar::{BaseRing, Scalar};
use crate::witness::Witness;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseSpec {
    Label(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl BaseSpec {
    pub fn to_base(&self) -> Result<BaseRing> {
        match self {
            BaseSpec::Label(l) if l == "Q" => Ok(BaseRing::Rational),
            BaseSpec::Label(l) if l == "Z" => Ok(BaseRing::Integer),
            BaseSpec::Label(l) => Err(Error::Parse(format!("base: expected \"Q\", \"Z\" or {{\"Fp\": p}}, got \"{l}\""))),
            BaseSpec::Prime { fp } => BaseRing::prime(*fp),
        }
    }

    pub fn from_base(base: BaseRing) -> Self {
        match base {
            BaseRing::Rational => BaseSpec::Label("Q".into()),
            BaseRing::Integer => BaseSpec::Label("Z".into()),
            BaseRing::Prime(p) => BaseSpec::Prime { fp: p },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub base: BaseSpec,
    pub dim: usize,
    pub unit: Vec<String>,
    pub table: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

fn parse_vector(field: &str, texts: &[String], dim: usize, base: BaseRing) -> Result<Element> {
    if texts.len() != dim {
        return Err(Error::Parse(format!("{field}: expected {dim} scalars, got {}", texts.len())));
    }
    let coords = texts
        .iter()
        .enumerate()
        .map(|(w, t)| Scalar::parse(t, base).map_err(|e| Error::Parse(format!("{field}[{w}]: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Element::new(coords))
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Build the presentation. Shapes and scalars are checked; the algebra
    /// laws are not.
    pub fn to_algebra(&self) -> Result<Algebra> {
        let base = self.base.to_base()?;
        let n = self.dim;
        if n == 0 {
            return Err(Error::Parse("dim: must be at least 1".into()));
        }
        let unit = parse_vector("unit", &self.unit, n, base)?;
        if self.table.len() != n {
            return Err(Error::Parse(format!("table: expected {n} rows, got {}", self.table.len())));
        }
        let mut table = Vec::with_capacity(n * n);
        for (s, row) in self.table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse(format!("table[{s}]: expected {n} entries, got {}", row.len())));
            }
            for (t, entry) in row.iter().enumerate() {
                table.push(parse_vector(&format!("table[{s}][{t}]"), entry, n, base)?);
            }
        }
        Algebra::new(base, unit, table, self.names.clone())
    }

    pub fn from_algebra(alg: &Algebra) -> Self {
        let n = alg.dim();
        let strings = |e: &Element| e.coords().iter().map(ToString::to_string).collect::<Vec<_>>();
        AlgebraFile {
            base: BaseSpec::from_base(alg.base()),
            dim: n,
            unit: strings(alg.unit()),
            table: (0..n).map(|s| (0..n).map(|t| strings(alg.basis_product(s, t))).collect()).collect(),
            names: Some(alg.names().to_vec()),
        }
    }
}

#[derive(Debug)]
pub enum LoadError {
    Input(Error),
    /// The presentation is not associative or not unital.
    Invalid { report: Box<ValidationReport>, witness: Witness },
}

impl From<Error> for LoadError {
    fn from(e: Error) -> Self {
        LoadError::Input(e)
    }
}

/// Validate a parsed presentation; the first failing law aborts with its witness.
pub fn validated(alg: Algebra) -> std::result::Result<Algebra, LoadError> {
    let report = alg.validate();
    if let Some((s, t, u)) = report.associativity_failure {
        return Err(LoadError::Invalid { report: Box::new(report), witness: Witness::NonAssociative { s, t, u } });
    }
    if let Some(index) = report.unit_failure {
        return Err(LoadError::Invalid { report: Box::new(report), witness: Witness::NotUnital { index } });
    }
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn round_trip() {
        for alg in [
            builtins::hamilton(),
            builtins::lipschitz(),
            builtins::matrix(2, BaseRing::Prime(5)).unwrap(),
            builtins::quaternion(&Scalar::from_ratio(1, 2), &Scalar::from_ratio(-3, 1), BaseRing::Rational).unwrap(),
        ] {
            let file = AlgebraFile::from_algebra(&alg);
            let back = AlgebraFile::from_json(&file.to_json()).unwrap().to_algebra().unwrap();
            assert_eq!(back, alg);
        }
    }

    #[test]
    fn fp_base_syntax() {
        let f = AlgebraFile::from_algebra(&builtins::matrix(1, BaseRing::Prime(7)).unwrap());
        assert!(f.to_json().contains("\"Fp\": 7"));
        let bad = f.to_json().replace("\"Fp\": 7", "\"Fp\": 8");
        assert!(matches!(AlgebraFile::from_json(&bad).unwrap().to_algebra(), Err(Error::NotPrime(8))));
    }

    #[test]
    fn field_errors_are_located() {
        let mut f = AlgebraFile::from_algebra(&builtins::hamilton());
        f.table[1][2][3] = "x".into();
        let err = f.to_algebra().unwrap_err().to_string();
        assert!(err.contains("table[1][2][3]"), "{err}");
        let err = AlgebraFile::from_json("{\"base\": \"Q\",\n \"dim\": }").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn broken_associativity_aborts() {
        let mut f = AlgebraFile::from_algebra(&builtins::hamilton());
        // i·j = -k instead of k
        f.table[1][2] = vec!["0".into(), "0".into(), "0".into(), "-1".into()];
        let alg = f.to_algebra().unwrap();
        match validated(alg.clone()) {
            Err(LoadError::Invalid { witness, .. }) => assert!(witness.verify(&alg)),
            other => panic!("{other:?}"),
        }
    }
}
