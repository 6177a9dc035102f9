//! Second-order covariants `d₂ … d₁₀` of a fourth-order harmonic tensor,
//! the invariants `Jₖ = tr dₖ` and the rational invariants built on them.

use crate::error::{Error, Result};
use crate::kelvin::{kelvin_from_harm4, Kelvin6};
use crate::linalg::Mat3;
use crate::math::{abs, powi, sqrt};
use crate::tensor::HarmTensor;

/// Relative size below which a homogeneous invariant of degree `d` is
/// treated as zero: `|I| ≤ DEGENERACY · ‖h‖ᵈ`.
pub const DEGENERACY: f64 = 1e-8;

/// `d₂ … d₁₀`; `d[k − 2]` holds `dₖ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CovariantSet {
    pub d: [Mat3; 9],
}

impl CovariantSet {
    /// `dₖ` for `k ∈ 2..=10`.
    pub fn get(&self, k: usize) -> &Mat3 {
        &self.d[k - 2]
    }

    /// Deviatoric part of the symmetric part of `dₖ`.
    pub fn deviatoric(&self, k: usize) -> Mat3 {
        deviator(&self.get(k).sym())
    }
}

/// `m′ = m − (tr m / 3) Id`.
pub fn deviator(m: &Mat3) -> Mat3 {
    m.deviator()
}

fn check_order4(h: &HarmTensor) -> Result<Kelvin6> {
    if h.order() != 4 {
        return Err(Error::Dimension {
            expected: 4,
            found: h.order(),
        });
    }
    kelvin_from_harm4(h)
}

pub fn covariants(h: &HarmTensor) -> Result<CovariantSet> {
    let k = check_order4(h)?;
    Ok(covariants_kelvin(&k))
}

pub(crate) fn covariants_kelvin(k: &Kelvin6) -> CovariantSet {
    let h2 = k.compose(k);
    let h3 = h2.compose(k);
    let d2 = h2.tr13().sym();
    let d3 = h3.tr13().sym();
    let d2s = d2 * d2;
    let d = [
        d2,
        d3,
        d2s,
        d2 * k.apply(&d2),
        d2s * d2,
        d2s * k.apply(&d2),
        d2s * h2.apply(&d2),
        d2s * k.apply(&d2s),
        d2s * h2.apply(&d2s),
    ];
    CovariantSet { d }
}

/// The integrity basis `J₂ … J₁₀` and the rational invariants derived from
/// it. The `σ` family is only defined when `K₆ ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantSet {
    /// `j[k − 2] = Jₖ`.
    pub j: [f64; 9],
    pub k4: f64,
    pub k6: f64,
    pub k10: f64,
    pub l10: f64,
    pub m10: f64,
    pub delta3: f64,
    pub sigma1: Option<f64>,
    pub sigma2: Option<f64>,
    pub sigma3: Option<f64>,
    pub sigma_eq: Option<f64>,
    pub lode: Option<f64>,
    /// `‖h‖`, kept for scale-aware thresholds.
    pub norm: f64,
    /// Sum of the absolute values of the terms in `K₄, K₆, K₁₀, L₁₀, M₁₀`.
    pub scales: CancellationScales,
}

/// Each of `K₄, K₆, K₁₀, L₁₀, M₁₀` vanishes on a more symmetric stratum
/// through cancellation between its terms, so it is compared against the
/// size of those terms rather than against a power of `‖h‖`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CancellationScales {
    pub k4: f64,
    pub k6: f64,
    pub k10: f64,
    pub l10: f64,
    pub m10: f64,
}

impl InvariantSet {
    /// `Jₖ` for `k ∈ 2..=10`.
    pub fn jk(&self, k: usize) -> f64 {
        self.j[k - 2]
    }

    /// Threshold for an invariant of polynomial degree `deg`.
    pub fn threshold(&self, deg: i32) -> f64 {
        DEGENERACY * powi(self.norm, deg)
    }

    /// `K₄ > 0` beyond cancellation noise.
    pub fn k4_positive(&self) -> bool {
        self.k4 > DEGENERACY * self.scales.k4
    }

    /// `K₆ ≠ 0` (equivalently `Δ₃ ≠ 0`) beyond cancellation noise.
    pub fn k6_nonzero(&self) -> bool {
        abs(self.k6) > DEGENERACY * self.scales.k6
    }

    pub fn k10_positive(&self) -> bool {
        self.k10 > DEGENERACY * self.scales.k10
    }

    pub fn l10_nonzero(&self) -> bool {
        abs(self.l10) > DEGENERACY * self.scales.l10
    }

    pub fn m10_nonzero(&self) -> bool {
        abs(self.m10) > DEGENERACY * self.scales.m10
    }
}

pub fn invariants(h: &HarmTensor) -> Result<InvariantSet> {
    let k = check_order4(h)?;
    Ok(invariants_from(&covariants_kelvin(&k), h.norm()))
}

pub(crate) fn invariants_from(c: &CovariantSet, norm: f64) -> InvariantSet {
    let j: [f64; 9] = core::array::from_fn(|i| c.d[i].trace());
    let jk = |k: usize| j[k - 2];
    let (j2, j3, j4, j5, j6, j7) = (jk(2), jk(3), jk(4), jk(5), jk(6), jk(7));
    let k4 = 3.0 * j4 - j2 * j2;
    let k6 = 6.0 * j6 - 9.0 * j2 * j4 - 20.0 * j3 * j3 + 3.0 * j2 * j2 * j2;
    let k10 = 2.0 * j2 * k4 * k4 - 35.0 * j5 * j5;
    let l10 = k10 - 25.0 * j5 * j5;
    let m10 = k10 - 100.0 * j5 * j5;
    let delta3 = k6 / 432.0;
    let a = abs;
    let s4 = 3.0 * a(j4) + j2 * j2;
    let s10 = 2.0 * a(j2) * k4 * k4 + 35.0 * j5 * j5;
    let scales = CancellationScales {
        k4: s4,
        k6: 6.0 * a(j6) + 9.0 * a(j2 * j4) + 20.0 * j3 * j3 + 3.0 * a(j2 * j2 * j2),
        k10: s10,
        l10: s10 + 25.0 * j5 * j5,
        m10: s10 + 100.0 * j5 * j5,
    };

    let mut out = InvariantSet {
        j,
        k4,
        k6,
        k10,
        l10,
        m10,
        delta3,
        sigma1: None,
        sigma2: None,
        sigma3: None,
        sigma_eq: None,
        lode: None,
        norm,
        scales,
    };
    if !out.k6_nonzero() || norm == 0.0 {
        return out;
    }
    let s1 = 9.0 * (3.0 * j7 - 3.0 * j2 * j5 + 3.0 * j3 * j4 - j2 * j2 * j3) / (2.0 * k6);
    let s2 = 4.0 / 7.0 * s1 * s1 - j2 / 14.0;
    let s3 = -j3 / 24.0 + s1 * s1 * s1 / 7.0 - s1 * j2 / 56.0;
    out.sigma1 = Some(s1);
    out.sigma2 = Some(s2);
    out.sigma3 = Some(s3);
    let eq2 = s1 * s1 - 3.0 * s2;
    if eq2 > out.threshold(2) {
        let eq = sqrt(eq2);
        out.sigma_eq = Some(eq);
        out.lode = Some((s1 * s1 * s1 - 4.5 * s1 * s2 + 13.5 * s3) / (eq * eq * eq));
    }
    out
}
