//! Equivariant reconstruction of fourth-order harmonic tensors from their
//! second-order covariants: transverse and orthotropic classes exactly,
//! tetragonal and trigonal classes up to a cubic remainder.

use alloc::vec::Vec;

use crate::covariants::{covariants, DEGENERACY, covariants_kelvin, invariants_from, CovariantSet, InvariantSet};
use crate::error::{Error, Result};
use crate::harmonic::{harmonic_product, harmonic_projection};
use crate::kelvin::{kelvin_from_harm4, SQRT2};
use crate::linalg::{Mat3, Rotation};
use crate::math::{abs, sqrt};
use crate::normal_form;
use crate::tensor::{HarmTensor, SymTensor};

pub use crate::normal_form::{ClassTag, NormalForm, Params};

/// Relative tolerance on `49σ₂ − 8σ₁²` (against `σ₁²`) for the square test.
pub const SQUARE_TOL: f64 = 1e-6;

fn analyse(h: &HarmTensor) -> Result<(CovariantSet, InvariantSet)> {
    let k = kelvin_from_harm4(h)?;
    if h.order() != 4 {
        return Err(Error::Dimension {
            expected: 4,
            found: h.order(),
        });
    }
    let c = covariants_kelvin(&k);
    let inv = invariants_from(&c, h.norm());
    Ok((c, inv))
}

fn degenerate(quantity: &'static str, value: f64, threshold: f64) -> Error {
    Error::Degenerate {
        quantity,
        value,
        threshold,
    }
}

/// `a ∗ b` for symmetric second-order tensors (deviatoric parts taken).
pub fn ast2(a: &Mat3, b: &Mat3) -> HarmTensor {
    harmonic_product(&HarmTensor::from_deviator(a), &HarmTensor::from_deviator(b))
}

/// `(H²)₀`: compose `H` with itself, symmetrize, project onto harmonics.
pub fn h_squared_harmonic(h: &HarmTensor) -> Result<HarmTensor> {
    if h.order() != 4 {
        return Err(Error::Dimension {
            expected: 4,
            found: h.order(),
        });
    }
    let k = kelvin_from_harm4(h)?;
    let comps = k.compose(&k).to_components();
    let t = SymTensor::from_components(4, &comps)?;
    Ok(harmonic_projection(&t))
}

/// Thm O(2): `H = (63/25)(1/J₃) d₂′ ∗ d₂′`.
pub fn reconstruct_transverse(h: &HarmTensor) -> Result<HarmTensor> {
    let (c, inv) = analyse(h)?;
    let j3 = inv.jk(3);
    let thr = inv.threshold(3);
    if abs(j3) <= thr || inv.norm == 0.0 {
        return Err(degenerate("J₃", j3, thr));
    }
    let d2 = c.deviatoric(2);
    let thr2 = inv.threshold(2);
    if d2.norm() <= thr2 {
        // spheric d₂, as for every cubic tensor
        return Err(degenerate("‖d₂′‖", d2.norm(), thr2));
    }
    Ok(ast2(&d2, &d2).scale(63.0 / (25.0 * j3)))
}

/// `δ = 7J₃/(18J₂)` for a transversely isotropic tensor.
pub fn transverse_delta(h: &HarmTensor) -> Result<f64> {
    let (_, inv) = analyse(h)?;
    let j2 = inv.jk(2);
    if j2 <= inv.threshold(2) || inv.norm == 0.0 {
        return Err(degenerate("J₂", j2, inv.threshold(2)));
    }
    Ok(7.0 * inv.jk(3) / (18.0 * j2))
}

/// The symmetric functions `σ₁, σ₂, σ₃` of an orthotropic tensor.
fn sigmas(inv: &InvariantSet) -> Result<(f64, f64, f64)> {
    match (inv.sigma1, inv.sigma2, inv.sigma3) {
        (Some(a), Some(b), Some(c)) => Ok((a, b, c)),
        _ => Err(degenerate("Δ₃", inv.delta3, DEGENERACY * inv.scales.k6 / 432.0)),
    }
}

fn lambda_prime_from(c: &CovariantSet, inv: &InvariantSet) -> Result<Mat3> {
    let (s1, s2, s3) = sigmas(inv)?;
    let a2 = 2.0 * (112.0 * s1 * s1 * s3 + 21.0 * s1 * s2 * s2 - 270.0 * s2 * s3);
    let a3 = 8.0 * (14.0 * s1 * s3 - 11.0 * s1 * s1 * s2 + 15.0 * s2 * s2);
    let sum = c.deviatoric(2).scale(a2)
        + c.deviatoric(3).scale(a3)
        + c.deviatoric(4).scale(-54.0 * s3)
        + c.deviatoric(5).scale(11.0 * s2);
    Ok(sum.scale(1.0 / (8.0 * inv.delta3)))
}

/// `λ′(H)`, the deviatoric part of the covariant `g ⋆ diag(λ)`.
pub fn lambda_prime(h: &HarmTensor) -> Result<Mat3> {
    let (c, inv) = analyse(h)?;
    lambda_prime_from(&c, &inv)
}

/// Coefficients `h₁, h₂, h₃` of the orthotropic reconstruction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrthoCoefficients {
    pub h1: f64,
    pub h2: f64,
    pub h3: f64,
}

/// Rational form in `σ₁, σ₂, σ₃` and `Δ₃`.
pub fn ortho_coefficients_rational(inv: &InvariantSet) -> Result<OrthoCoefficients> {
    let (s1, s2, s3) = sigmas(inv)?;
    let d = inv.delta3;
    let p = 8.0 * s1 * s1 * s1 - 31.0 * s1 * s2 + 63.0 * s3;
    Ok(OrthoCoefficients {
        h1: (s1 * s1 - 3.0 * s2) * p / (9.0 * d),
        h2: -(16.0 * s1 * s1 * s1 * s1 - 86.0 * s1 * s1 * s2 + 90.0 * s1 * s3 + 84.0 * s2 * s2)
            / (6.0 * d),
        h3: p / d,
    })
}

/// Form in `σ₁`, `σ_eq` and the Lode invariant `ℒ`.
pub fn ortho_coefficients_lode(inv: &InvariantSet) -> Result<OrthoCoefficients> {
    let (s1, _, _) = sigmas(inv)?;
    let (eq, l) = match (inv.sigma_eq, inv.lode) {
        (Some(e), Some(l)) => (e, l),
        _ => return Err(degenerate("σ_eq", 0.0, inv.threshold(1))),
    };
    let w = 2.0 * (1.0 - l * l);
    if w <= 0.0 {
        return Err(degenerate("1 − ℒ²", w / 2.0, 0.0));
    }
    let a = 5.0 * s1 + 7.0 * l * eq;
    Ok(OrthoCoefficients {
        h1: a / (w * eq * eq),
        h2: -3.0 * (5.0 * l * s1 + 7.0 * eq) / (w * eq * eq * eq),
        h3: 9.0 * a / (w * eq * eq * eq * eq),
    })
}

/// Thm D₂: `H = h₁ λ′∗λ′ + 2h₂ λ′∗(λ′²)′ + h₃ (λ′²)′∗(λ′²)′`, rational
/// coefficients.
pub fn reconstruct_orthotropic(h: &HarmTensor) -> Result<HarmTensor> {
    let (c, inv) = analyse(h)?;
    let l = lambda_prime_from(&c, &inv)?;
    let co = ortho_coefficients_rational(&inv)?;
    Ok(ortho_combination(&l, &co))
}

fn ortho_combination(l: &Mat3, co: &OrthoCoefficients) -> HarmTensor {
    let l2 = (*l * *l).deviator();
    ast2(l, l).scale(co.h1) + ast2(l, &l2).scale(2.0 * co.h2) + ast2(&l2, &l2).scale(co.h3)
}

/// Square root `b` with `b ∗ b = H`, when `H` is a perfect harmonic
/// square (orthotropic or transversely isotropic). The sign is arbitrary.
pub fn perfect_square_test(h: &HarmTensor) -> Option<Mat3> {
    let (c, inv) = analyse(h).ok()?;
    if inv.norm == 0.0 {
        return None;
    }
    let root = match sigmas(&inv) {
        Ok((s1, s2, _)) => {
            if s1 <= 0.0 || abs(49.0 * s2 - 8.0 * s1 * s1) > SQUARE_TOL * s1 * s1 {
                return None;
            }
            let l = lambda_prime_from(&c, &inv).ok()?;
            let lode = inv.lode?;
            let scale = sqrt(49.0 / (10.0 * (1.0 - lode) * s1));
            (l - (l * l).deviator().scale(21.0 / (5.0 * s1))).scale(scale)
        }
        Err(_) => {
            // transverse branch: a square iff J₃ > 0
            let j3 = inv.jk(3);
            if j3 <= inv.threshold(3) {
                return None;
            }
            c.deviatoric(2).scale(sqrt(63.0 / (25.0 * j3)))
        }
    };
    let back = ast2(&root, &root);
    if back.rel_dist(h) <= 1e-8 {
        Some(root)
    } else {
        None
    }
}

/// `(σ, δ)` of a tetragonal or trigonal tensor, with the `σ > 0` convention.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SigmaDelta {
    pub sigma: f64,
    pub delta: f64,
}

fn sigma_delta(c: &CovariantSet, inv: &InvariantSet, trigonal: bool) -> Result<SigmaDelta> {
    let k4 = inv.k4;
    if inv.norm == 0.0 {
        return Err(degenerate("K₁₀", inv.k10, 0.0));
    }
    let (name, cubic, ok, scale) = if trigonal {
        ("M₁₀", inv.m10, inv.m10_nonzero(), inv.scales.m10)
    } else {
        ("L₁₀", inv.l10, inv.l10_nonzero(), inv.scales.l10)
    };
    // on the cubic stratum d₂′ is roundoff and every term-based scale
    // collapses with it
    if c.deviatoric(2).norm() <= inv.threshold(2) {
        return Err(degenerate(name, cubic, DEGENERACY * scale));
    }
    if !inv.k10_positive() {
        return Err(degenerate("K₁₀", inv.k10, DEGENERACY * inv.scales.k10));
    }
    if !ok {
        return Err(degenerate(name, cubic, DEGENERACY * scale));
    }
    // K₁₀ > 0 already forces K₄ ≠ 0; this guards the sign convention
    if !inv.k4_positive() {
        return Err(degenerate("K₄", k4, DEGENERACY * inv.scales.k4));
    }
    let delta = inv.jk(5) / (4.0 * k4);
    let mut sigma = sqrt(inv.k10) / (4.0 * k4);
    if trigonal {
        sigma /= SQRT2;
    }
    Ok(SigmaDelta { sigma, delta })
}

pub fn tetragonal_params(h: &HarmTensor) -> Result<SigmaDelta> {
    let (c, inv) = analyse(h)?;
    sigma_delta(&c, &inv, false)
}

pub fn trigonal_params(h: &HarmTensor) -> Result<SigmaDelta> {
    let (c, inv) = analyse(h)?;
    sigma_delta(&c, &inv, true)
}

/// A transversely isotropic part plus a cubic remainder.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitResult {
    pub transverse_part: HarmTensor,
    pub cubic_part: HarmTensor,
    pub branch: u8,
}

impl SplitResult {
    pub fn sum(&self) -> HarmTensor {
        &self.transverse_part + &self.cubic_part
    }
}

fn check_branch(k: u8) -> Result<f64> {
    match k {
        1 => Ok(1.0),
        2 => Ok(-1.0),
        _ => Err(Error::Domain("branch must be 1 or 2")),
    }
}

/// Thm D₄: `H = 𝒯ᵏ(H) + 𝒞ᵏ(H)`.
pub fn tetragonal_split(h: &HarmTensor, k: u8) -> Result<SplitResult> {
    let e = check_branch(k)?;
    let (c, inv) = analyse(h)?;
    let SigmaDelta { sigma: s, delta: d } = sigma_delta(&c, &inv, false)?;
    let d2 = c.deviatoric(2);
    let gap = 25.0 * d * d - s * s;
    let t = ast2(&d2, &d2).scale(7.0 / 16.0 * (5.0 * d + e * s) / (gap * gap));
    let den = 5.0 * d - e * s;
    let cubic = h.scale(1.0 - 14.0 * d / den) + h_squared_harmonic(h)?.scale(7.0 / (2.0 * den));
    Ok(SplitResult {
        transverse_part: t,
        cubic_part: cubic,
        branch: k,
    })
}

/// Thm D₃: `H = 𝒯̃ᵏ(H) + 𝒞̃ᵏ(H)`.
pub fn trigonal_split(h: &HarmTensor, k: u8) -> Result<SplitResult> {
    let e = check_branch(k)?;
    let (c, inv) = analyse(h)?;
    let SigmaDelta { sigma: s, delta: d } = sigma_delta(&c, &inv, true)?;
    let d2 = c.deviatoric(2);
    let gap = 50.0 * d * d - s * s;
    let t = ast2(&d2, &d2).scale(7.0 * (10.0 * d - e * s * SQRT2) / (8.0 * gap * gap));
    let den = 10.0 * d + e * s * SQRT2;
    let cubic = h.scale(1.0 - 7.0 * d / den) - h_squared_harmonic(h)?.scale(7.0 / (6.0 * den));
    Ok(SplitResult {
        transverse_part: t,
        cubic_part: cubic,
        branch: k,
    })
}

/// The tetragonal split written with `J₅, K₄, K₁₀, L₁₀`; it coincides
/// with branch 1.
pub fn tetragonal_split_invariant(h: &HarmTensor) -> Result<SplitResult> {
    let (c, inv) = analyse(h)?;
    sigma_delta(&c, &inv, false)?;
    let (j5, k4, l10) = (inv.jk(5), inv.k4, inv.l10);
    let w = 5.0 * j5 + sqrt(inv.k10);
    let d2 = c.deviatoric(2);
    let t = ast2(&d2, &d2).scale(28.0 * k4 * k4 * k4 * w / (l10 * l10));
    let cubic = h.scale(1.0 + 14.0 * j5 * w / l10) - h_squared_harmonic(h)?.scale(14.0 * k4 * w / l10);
    Ok(SplitResult {
        transverse_part: t,
        cubic_part: cubic,
        branch: 1,
    })
}

/// The trigonal split written with `J₅, K₄, K₁₀, M₁₀`; it coincides
/// with branch 2.
pub fn trigonal_split_invariant(h: &HarmTensor) -> Result<SplitResult> {
    let (c, inv) = analyse(h)?;
    sigma_delta(&c, &inv, true)?;
    let (j5, k4, m10) = (inv.jk(5), inv.k4, inv.m10);
    let w = 10.0 * j5 + sqrt(inv.k10);
    let d2 = c.deviatoric(2);
    let t = ast2(&d2, &d2).scale(224.0 * k4 * k4 * k4 * w / (m10 * m10));
    let cubic = h.scale(1.0 + 7.0 * j5 * w / m10)
        + h_squared_harmonic(h)?.scale(14.0 * k4 * w / (3.0 * m10));
    Ok(SplitResult {
        transverse_part: t,
        cubic_part: cubic,
        branch: 2,
    })
}

/// Generators of the octahedral group fixing the branch-`k` cubic part of
/// a tensor in normal-form position; conjugate by `g` for `g ⋆ H₀`.
pub fn branch_generators(tag: ClassTag, k: u8) -> Result<Vec<Rotation>> {
    match (tag, k) {
        (ClassTag::Tetragonal, 1) => Ok(normal_form::o1_generators()),
        (ClassTag::Tetragonal, 2) => Ok(normal_form::o2_generators()),
        (ClassTag::Trigonal, 1) => Ok(normal_form::o1_trigonal_generators()),
        (ClassTag::Trigonal, 2) => Ok(normal_form::o2_trigonal_generators()),
        _ => Err(Error::Domain("branch generators exist for tetragonal and trigonal, k ∈ {1, 2}")),
    }
}

/// Reconstruction for the classes that admit one; the split classes
/// return `𝒯¹ + 𝒞¹`.
pub fn reconstruct(tag: ClassTag, h: &HarmTensor) -> Result<HarmTensor> {
    match tag {
        ClassTag::Transverse => reconstruct_transverse(h),
        ClassTag::Orthotropic => reconstruct_orthotropic(h),
        ClassTag::Tetragonal => Ok(tetragonal_split(h, 1)?.sum()),
        ClassTag::Trigonal => Ok(trigonal_split(h, 1)?.sum()),
        ClassTag::Cubic => Err(Error::Domain(
            "cubic tensors have spheric second-order covariants and cannot be reconstructed from them",
        )),
    }
}

/// `d₂′` as a convenience for callers outside the crate.
pub fn d2_prime(h: &HarmTensor) -> Result<Mat3> {
    Ok(covariants(h)?.deviatoric(2))
}
