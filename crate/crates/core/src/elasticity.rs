//! Elasticity tensors and their harmonic quintuple `(α, β, a′, b′, H)`:
//!
//! `E = α Id ⊗₍₄₎ Id + β Id ⊗₍₂,₂₎ Id + Id ⊗₍₄₎ a′ + Id ⊗₍₂,₂₎ b′ + H`.

use crate::error::{Error, Result};
use crate::harmonic::harmonic_projection;
use crate::kelvin::{harm4_from_kelvin, kelvin_from_harm4, Kelvin6};
use crate::linalg::{Mat3, Rotation};
use crate::tensor::{HarmTensor, SymTensor};

/// A fourth-order tensor with minor and major symmetries, held in Kelvin form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ElasticityTensor {
    kelvin: Kelvin6,
}

impl ElasticityTensor {
    pub fn from_kelvin(kelvin: Kelvin6) -> Self {
        Self { kelvin }
    }

    pub fn new(m: [[f64; 6]; 6]) -> Result<Self> {
        Ok(Self {
            kelvin: Kelvin6::new(m)?,
        })
    }

    /// `3κ J + 2μ K` with `J = Id ⊗ Id / 3` and `K = I − J`.
    pub fn isotropic(kappa: f64, mu: f64) -> Self {
        Self::from_kelvin(Kelvin6::from_components(|i, j, k, l| {
            let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
            let jj = d(i, j) * d(k, l) / 3.0;
            let ii = 0.5 * (d(i, k) * d(j, l) + d(i, l) * d(j, k));
            3.0 * kappa * jj + 2.0 * mu * (ii - jj)
        }))
    }

    pub fn kelvin(&self) -> &Kelvin6 {
        &self.kelvin
    }

    pub fn component(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.kelvin.component(i, j, k, l)
    }

    /// Dilatation tensor `d = tr₁₂ E`.
    pub fn dilatation(&self) -> Mat3 {
        self.kelvin.tr12()
    }

    /// Voigt tensor `v = tr₁₃ E`.
    pub fn voigt(&self) -> Mat3 {
        self.kelvin.tr13()
    }

    pub fn rotate(&self, g: &Rotation) -> Self {
        Self::from_kelvin(self.kelvin.rotate(g))
    }

    pub fn norm(&self) -> f64 {
        self.kelvin.norm()
    }
}

/// The harmonic components of an elasticity tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct ElasticityQuintuple {
    pub alpha: f64,
    pub beta: f64,
    pub a_prime: Mat3,
    pub b_prime: Mat3,
    pub h: HarmTensor,
}

/// `(a ⊗₍₄₎ b)_ijkl`.
pub fn sym4_product(a: &Mat3, b: &Mat3, i: usize, j: usize, k: usize, l: usize) -> f64 {
    (a[(i, j)] * b[(k, l)]
        + b[(i, j)] * a[(k, l)]
        + a[(i, k)] * b[(j, l)]
        + b[(i, k)] * a[(j, l)]
        + a[(i, l)] * b[(j, k)]
        + b[(i, l)] * a[(j, k)])
        / 6.0
}

/// `(a ⊗₍₂,₂₎ b)_ijkl`.
pub fn young22_product(a: &Mat3, b: &Mat3, i: usize, j: usize, k: usize, l: usize) -> f64 {
    (2.0 * a[(i, j)] * b[(k, l)] + 2.0 * b[(i, j)] * a[(k, l)]
        - a[(i, k)] * b[(j, l)]
        - a[(i, l)] * b[(j, k)]
        - b[(i, k)] * a[(j, l)]
        - b[(i, l)] * a[(j, k)])
        / 6.0
}

pub fn decompose_elasticity(e: &ElasticityTensor) -> ElasticityQuintuple {
    let d = e.dilatation();
    let v = e.voigt();
    let (trd, trv) = (d.trace(), v.trace());
    let (dp, vp) = (d.deviator(), v.deviator());
    let sym = SymTensor::from_components(4, &e.kelvin.to_components())
        .expect("81 components");
    ElasticityQuintuple {
        alpha: (trd + 2.0 * trv) / 15.0,
        beta: (trd - trv) / 6.0,
        a_prime: (dp + vp.scale(2.0)).scale(2.0 / 7.0),
        b_prime: (dp - vp).scale(2.0),
        h: harmonic_projection(&sym),
    }
}

pub fn recompose_elasticity(q: &ElasticityQuintuple) -> Result<ElasticityTensor> {
    if q.h.order() != 4 {
        return Err(Error::Dimension {
            expected: 4,
            found: q.h.order(),
        });
    }
    let id = Mat3::identity();
    let hk = kelvin_from_harm4(&q.h)?;
    let (a, b) = (q.a_prime, q.b_prime);
    let rest = Kelvin6::from_components(|i, j, k, l| {
        q.alpha * sym4_product(&id, &id, i, j, k, l)
            + q.beta * young22_product(&id, &id, i, j, k, l)
            + sym4_product(&id, &a, i, j, k, l)
            + young22_product(&id, &b, i, j, k, l)
    });
    Ok(ElasticityTensor::from_kelvin(rest + hk))
}

/// The fourth-order harmonic part as a Kelvin matrix, checked harmonic.
pub fn harmonic_part_kelvin(e: &ElasticityTensor) -> Result<Kelvin6> {
    let h = decompose_elasticity(e).h;
    let k = kelvin_from_harm4(&h)?;
    harm4_from_kelvin(&k)?;
    Ok(k)
}
