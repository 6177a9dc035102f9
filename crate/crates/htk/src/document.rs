//! The `htk/1` JSON tensor document.
//!
//! ```json
//! {"schema": "htk/1", "kind": "elasticity", "convention": "voigt",
//!  "matrix": [[...6 reals...], ...], "metadata": {"source": "lab"}}
//! ```
//!
//! `kind` is `elasticity` (6×6), `harmonic4` (6×6, totally symmetric and
//! traceless) or `symmetric2` (3×3). Six-by-six matrices use the pair order
//! `11, 22, 33, 23, 13, 12`. With `convention: "kelvin"` (the default) the
//! entries are `w_I w_J C_ijkl` with `w = (1, 1, 1, √2, √2, √2)`; with
//! `"voigt"` they are the plain stiffness entries `C_ijkl`, and the
//! conversion is `K = W C W` with `W = diag(w)`. Output is always Kelvin.

use std::collections::BTreeMap;

use htk_core::elasticity::ElasticityTensor;
use htk_core::kelvin::{harm4_from_kelvin, SQRT2};
use htk_core::{HarmTensor, Kelvin6, Mat3};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA: &str = "htk/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Elasticity,
    Harmonic4,
    Symmetric2,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Kelvin,
    Voigt,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorDocument {
    pub schema: String,
    pub kind: Kind,
    #[serde(default)]
    pub convention: Convention,
    pub matrix: Vec<Vec<f64>>,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

/// A document checked and converted to core types.
#[derive(Clone, Debug)]
pub enum Tensor {
    Elasticity(ElasticityTensor),
    Harmonic4(HarmTensor),
    Symmetric2(Mat3),
}

/// `w_I w_J`, with the shear-shear product written as an exact 2.
fn weight(i: usize, j: usize) -> f64 {
    match (i >= 3, j >= 3) {
        (false, false) => 1.0,
        (true, true) => 2.0,
        _ => SQRT2,
    }
}

pub fn voigt_to_kelvin(c: &[[f64; 6]; 6]) -> [[f64; 6]; 6] {
    std::array::from_fn(|i| std::array::from_fn(|j| weight(i, j) * c[i][j]))
}

#[cfg(test)]
fn kelvin_to_voigt(k: &[[f64; 6]; 6]) -> [[f64; 6]; 6] {
    std::array::from_fn(|i| std::array::from_fn(|j| k[i][j] / weight(i, j)))
}

fn square<const N: usize>(rows: &[Vec<f64>]) -> Result<[[f64; N]; N], CliError> {
    if rows.len() != N || rows.iter().any(|r| r.len() != N) {
        let cols = rows.first().map_or(0, Vec::len);
        return Err(CliError::Dimension(format!(
            "expected a {N}×{N} matrix, found {}×{cols}",
            rows.len()
        )));
    }
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j])))
}

impl TensorDocument {
    pub fn kelvin(kind: Kind, k: &Kelvin6, metadata: BTreeMap<String, String>) -> Self {
        Self {
            schema: SCHEMA.into(),
            kind,
            convention: Convention::Kelvin,
            matrix: k.matrix().iter().map(|r| r.to_vec()).collect(),
            metadata,
        }
    }

    pub fn tensor(&self) -> Result<Tensor, CliError> {
        if self.schema != SCHEMA {
            return Err(CliError::Document(format!(
                "unsupported schema {:?}, expected {SCHEMA:?}",
                self.schema
            )));
        }
        match self.kind {
            Kind::Symmetric2 => {
                let m = Mat3(square::<3>(&self.matrix)?);
                if !m.is_finite() || !m.is_symmetric(1e-12 * m.max_abs()) {
                    return Err(CliError::Document("symmetric2 matrix is not finite and symmetric".into()));
                }
                Ok(Tensor::Symmetric2(m.sym()))
            }
            Kind::Elasticity | Kind::Harmonic4 => {
                let mut m = square::<6>(&self.matrix)?;
                if self.convention == Convention::Voigt {
                    m = voigt_to_kelvin(&m);
                }
                let k = Kelvin6::new(m)?;
                Ok(match self.kind {
                    Kind::Elasticity => Tensor::Elasticity(ElasticityTensor::from_kelvin(k)),
                    _ => Tensor::Harmonic4(harm4_from_kelvin(&k)?),
                })
            }
        }
    }
}
