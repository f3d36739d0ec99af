//! JSON algebra files. Numbers are `[re, im]` pairs; key names are part
//! of the format: `dimension`, `mul`, `unit`, `counit`, `hermitian`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error as CoreError;
use crate::frobenius::{AxiomReport, FrobeniusAlgebra};
use crate::hermitian::HermitianStructure;
use crate::tensor::{Matrix, Scalar};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dimension: usize,
    /// `mul[i][j][k]` is the coefficient of basis vector k in b_i · b_j.
    pub mul: Vec<Vec<Vec<[f64; 2]>>>,
    pub unit: Vec<[f64; 2]>,
    pub counit: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hermitian: Option<Vec<Vec<[f64; 2]>>>,
}

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read file: {0}")]
    Io(#[from] std::io::Error),

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("bad shape: {0}")]
    Shape(String),

    #[error("algebra fails axioms ({}): associativity {:.3e}, commutativity {:.3e}, unit {:.3e}, smallest β singular value {:.3e}",
        .0.failures().join(", "), .0.associativity, .0.commutativity, .0.unit, .0.beta_min_singular)]
    Axioms(AxiomReport),

    #[error("bad hermitian matrix: {0}")]
    Hermitian(String),
}

fn to_scalar(p: [f64; 2]) -> Scalar {
    Scalar::new(p[0], p[1])
}

/// Parses and validates: shapes must match `dimension`, entries must be
/// finite, the algebra must pass `verify_axioms` at `tol`, and any
/// Hermitian matrix must be conjugate-symmetric and nondegenerate.
pub fn parse_algebra(
    text: &str,
    tol: f64,
) -> Result<(FrobeniusAlgebra, Option<HermitianStructure>), FileError> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    from_file(&file, tol)
}

pub fn load_algebra(
    path: &Path,
    tol: f64,
) -> Result<(FrobeniusAlgebra, Option<HermitianStructure>), FileError> {
    let text = std::fs::read_to_string(path)?;
    parse_algebra(&text, tol)
}

pub fn from_file(
    file: &AlgebraFile,
    tol: f64,
) -> Result<(FrobeniusAlgebra, Option<HermitianStructure>), FileError> {
    let n = file.dimension;
    if file.mul.len() != n {
        return Err(FileError::Shape(format!("mul has {} rows, dimension is {n}", file.mul.len())));
    }
    let mut mul = Vec::with_capacity(n * n * n);
    for (i, plane) in file.mul.iter().enumerate() {
        if plane.len() != n {
            return Err(FileError::Shape(format!(
                "mul[{i}] has {} rows, dimension is {n}",
                plane.len()
            )));
        }
        for (j, row) in plane.iter().enumerate() {
            if row.len() != n {
                return Err(FileError::Shape(format!(
                    "mul[{i}][{j}] has {} entries, dimension is {n}",
                    row.len()
                )));
            }
            mul.extend(row.iter().copied().map(to_scalar));
        }
    }
    if file.unit.len() != n || file.counit.len() != n {
        return Err(FileError::Shape(format!(
            "unit/counit have {}/{} entries, dimension is {n}",
            file.unit.len(),
            file.counit.len()
        )));
    }
    let unit: Vec<Scalar> = file.unit.iter().copied().map(to_scalar).collect();
    let counit: Vec<Scalar> = file.counit.iter().copied().map(to_scalar).collect();

    let algebra = FrobeniusAlgebra::new(n, mul, unit, counit).map_err(|e| match e {
        CoreError::NonFinite(what) => FileError::Shape(format!("non-finite number in {what}")),
        other => FileError::Shape(other.to_string()),
    })?;
    let report = algebra.verify_axioms(tol);
    if !report.pass() {
        return Err(FileError::Axioms(report));
    }

    let hermitian = match &file.hermitian {
        None => None,
        Some(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(FileError::Shape(format!(
                    "hermitian matrix is not {n}x{n}"
                )));
            }
            let mat = Matrix::from_rows(
                rows.iter().map(|r| r.iter().copied().map(to_scalar).collect()).collect(),
            )
            .map_err(|e| FileError::Hermitian(e.to_string()))?;
            Some(
                HermitianStructure::new(mat, tol)
                    .map_err(|e| FileError::Hermitian(e.to_string()))?,
            )
        }
    };
    Ok((algebra, hermitian))
}

/// Serializes library values back into the file schema.
pub fn to_file(a: &FrobeniusAlgebra, h: Option<&HermitianStructure>) -> AlgebraFile {
    let n = a.dim();
    let pair = |z: Scalar| [z.re, z.im];
    AlgebraFile {
        dimension: n,
        mul: (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| pair(a.structure_constant(i, j, k))).collect())
                    .collect()
            })
            .collect(),
        unit: a.unit().iter().map(|&z| pair(z)).collect(),
        counit: a.counit().iter().map(|&z| pair(z)).collect(),
        hermitian: h.map(|h| {
            (0..n)
                .map(|i| (0..n).map(|j| pair(h.matrix()[(i, j)])).collect())
                .collect()
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_one_dim_file() {
        let text = r#"{"dimension":1,"mul":[[[[1,0]]]],"unit":[[1,0]],"counit":[[1,0]]}"#;
        let (a, h) = parse_algebra(text, 1e-9).unwrap();
        assert_eq!(a.dim(), 1);
        assert!(h.is_none());
    }

    #[test]
    fn zero_counit_fails_nondegeneracy() {
        let text = r#"{"dimension":1,"mul":[[[[1,0]]]],"unit":[[1,0]],"counit":[[0,0]]}"#;
        match parse_algebra(text, 1e-9).unwrap_err() {
            FileError::Axioms(report) => assert!(!report.nondegenerate()),
            other => panic!("expected axiom violation, got {other}"),
        }
    }

    #[test]
    fn diagonal_with_hermitian_is_unitary_pair() {
        // h = β here: both diag(1, 2)
        let text = r#"{
            "dimension": 2,
            "mul": [
                [[[1,0],[0,0]], [[0,0],[0,0]]],
                [[[0,0],[0,0]], [[0,0],[1,0]]]
            ],
            "unit": [[1,0],[1,0]],
            "counit": [[1,0],[2,0]],
            "hermitian": [[[1,0],[0,0]],[[0,0],[2,0]]]
        }"#;
        let (a, h) = parse_algebra(text, 1e-9).unwrap();
        let h = h.expect("hermitian present");
        assert!(h.is_positive_definite(1e-9));
        let c = crate::unitary::classify(&a, &h, 1e-9).unwrap();
        assert!((c.weights[0] - 1.0).abs() < 1e-10);
        assert!((c.weights[1] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn shape_errors_are_reported() {
        let text = r#"{"dimension":2,"mul":[[[[1,0]]]],"unit":[[1,0]],"counit":[[1,0]]}"#;
        assert!(matches!(parse_algebra(text, 1e-9), Err(FileError::Shape(_))));
        let text = r#"{"dimension":1,"mul":[[[[1,0]]]],"unit":[[1,0]],"counit":[[1,0]],"hermitian":[[[1,0],[0,0]]]}"#;
        assert!(matches!(parse_algebra(text, 1e-9), Err(FileError::Shape(_))));
    }

    #[test]
    fn non_finite_rejected() {
        let text = r#"{"dimension":1,"mul":[[[[1e999,0]]]],"unit":[[1,0]],"counit":[[1,0]]}"#;
        // 1e999 overflows to infinity in JSON parsing → rejected either by
        // serde or by the finiteness check
        assert!(parse_algebra(text, 1e-9).is_err());
    }

    #[test]
    fn non_hermitian_matrix_rejected() {
        let text = r#"{"dimension":1,"mul":[[[[1,0]]]],"unit":[[1,0]],"counit":[[1,0]],"hermitian":[[[0,1]]]}"#;
        assert!(matches!(parse_algebra(text, 1e-9), Err(FileError::Hermitian(_))));
    }

    #[test]
    fn round_trip_through_schema() {
        let pair = crate::testgen::random_unitary_pair(3, 5);
        let file = to_file(&pair.algebra, Some(&pair.hermitian));
        let text = serde_json::to_string(&file).unwrap();
        let (a, h) = parse_algebra(&text, 1e-9).unwrap();
        assert_eq!(a.dim(), 3);
        assert!(h.unwrap().is_positive_definite(1e-9));
        assert_eq!(a, pair.algebra);
    }
}
