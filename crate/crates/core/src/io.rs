//! JSON interchange for matrices and states.
//!
//! ```json
//! {"dim": 2, "re": [0, 1, 1, 0], "im": [0, 0, 0, 0]}
//! ```
//!
//! `re` and `im` hold row-major parts: `dim * dim` entries for a matrix,
//! `dim` entries for a state. A missing `im` means a real object.

use ndarray::{Array1, Array2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{HermitianOperator, Projector, State};
use crate::C64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexArrayJson {
    pub dim: usize,
    pub re: Vec<f64>,
    #[serde(default)]
    pub im: Vec<f64>,
}

impl ComplexArrayJson {
    pub fn from_matrix(m: &Array2<C64>) -> Self {
        Self {
            dim: m.nrows(),
            re: m.iter().map(|z| z.re).collect(),
            im: m.iter().map(|z| z.im).collect(),
        }
    }

    pub fn from_state(psi: &State) -> Self {
        let a = psi.amplitudes();
        Self { dim: a.len(), re: a.iter().map(|z| z.re).collect(), im: a.iter().map(|z| z.im).collect() }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain numeric struct")
    }

    fn entries(&self, expected: usize) -> Result<Vec<C64>> {
        if self.dim == 0 {
            return Err(Error::Format("field `dim` must be at least 1".into()));
        }
        if self.re.len() != expected {
            return Err(Error::Format(format!(
                "field `re` has {} entries, expected {expected}",
                self.re.len()
            )));
        }
        if !self.im.is_empty() && self.im.len() != expected {
            return Err(Error::Format(format!(
                "field `im` has {} entries, expected {expected}",
                self.im.len()
            )));
        }
        Ok((0..expected)
            .map(|k| C64::new(self.re[k], self.im.get(k).copied().unwrap_or(0.0)))
            .collect())
    }

    /// Whether the payload has matrix (`dim^2`) rather than state (`dim`) length.
    pub fn is_matrix(&self) -> bool {
        self.dim > 1 && self.re.len() == self.dim * self.dim
    }

    pub fn to_matrix(&self) -> Result<Array2<C64>> {
        let n = self.dim;
        let entries = self.entries(n * n)?;
        Ok(Array2::from_shape_vec((n, n), entries).expect("length checked"))
    }

    pub fn to_hermitian(&self) -> Result<HermitianOperator> {
        HermitianOperator::new(self.to_matrix()?)
    }

    pub fn to_projector(&self) -> Result<Projector> {
        Projector::new(self.to_matrix()?)
    }

    pub fn to_state(&self) -> Result<State> {
        State::from_array(Array1::from(self.entries(self.dim)?))
    }
}
