//! JSON encodings: states as `{"dim":4,"re":[[..]],"im":[[..]]}` (row-major)
//! and coordinates as `{"s":[..],"p":[..],"beta":[[..]]}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::bloch::{bloch_compose, MakhlinCoordinates};
use super::matrix::ComplexMatrix;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("state JSON is inconsistent: {0}")]
    Shape(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl StateJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let n = m.dim();
        Self {
            dim: n,
            re: (0..n).map(|i| m.row(i).iter().map(|z| z.re).collect()).collect(),
            im: (0..n).map(|i| m.row(i).iter().map(|z| z.im).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, JsonError> {
        let n = self.dim;
        if n == 0 {
            return Err(JsonError::Shape("dim must be positive".into()));
        }
        let rows_ok = |rows: &Vec<Vec<f64>>| rows.len() == n && rows.iter().all(|r| r.len() == n);
        if !rows_ok(&self.re) || !rows_ok(&self.im) {
            return Err(JsonError::Shape(format!("re and im must both be {n}×{n}")));
        }
        Ok(ComplexMatrix::from_fn(n, |i, j| Complex64::new(self.re[i][j], self.im[i][j])))
    }
}

/// Either accepted input encoding.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum StateInput {
    Matrix(StateJson),
    Coordinates(MakhlinCoordinates),
}

impl StateInput {
    pub fn to_matrix(&self) -> Result<ComplexMatrix, JsonError> {
        match self {
            StateInput::Matrix(s) => s.to_matrix(),
            StateInput::Coordinates(c) => Ok(bloch_compose(c)),
        }
    }
}

/// Parses a state in either the matrix or the coordinate encoding.
pub fn parse_state_input(text: &str) -> Result<ComplexMatrix, JsonError> {
    let input: StateInput = serde_json::from_str(text)?;
    input.to_matrix()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let m = ComplexMatrix::from_fn(4, |i, j| Complex64::new(i as f64 * 0.1, j as f64 - 1.5));
        let text = serde_json::to_string(&StateJson::from_matrix(&m)).unwrap();
        assert!(text.starts_with("{\"dim\":4,\"re\":[["));
        assert_eq!(parse_state_input(&text).unwrap(), m);
    }

    #[test]
    fn coordinates_accepted() {
        let text = r#"{"s":[0,0,0.5],"p":[0,0,0.5],"beta":[[0,0,0],[0,0,0],[0,0,0.25]]}"#;
        let m = parse_state_input(text).unwrap();
        assert!((m[(0, 0)].re - 1.0).abs() < 1e-15);
        assert!(m[(3, 3)].norm() < 1e-15);
    }

    #[test]
    fn ragged_rows_rejected() {
        let text = r#"{"dim":2,"re":[[1,0],[0]],"im":[[0,0],[0,0]]}"#;
        assert!(matches!(parse_state_input(text), Err(JsonError::Shape(_))));
        assert!(matches!(parse_state_input("{\"dim\":"), Err(JsonError::Syntax(_))));
    }
}
