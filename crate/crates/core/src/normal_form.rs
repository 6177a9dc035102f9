//! Normal forms of the fourth-order harmonic symmetry classes, the
//! transverse and cubic fixtures, and generator lists for the octahedral
//! groups that appear in the tetragonal and trigonal splits.

use alloc::vec::Vec;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::kelvin::{harm4_from_kelvin, Kelvin6, SQRT2};
use crate::linalg::{Rotation, Vec3};
use crate::math::{acos, sqrt};
use crate::tensor::HarmTensor;

use core::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

/// Symmetry classes that have a parametrized normal form here.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassTag {
    Transverse,
    Orthotropic,
    Tetragonal,
    Trigonal,
    /// The cubic fixture `𝒞₀¹`, scaled by a single parameter.
    Cubic,
}

impl ClassTag {
    pub fn name(self) -> &'static str {
        match self {
            ClassTag::Transverse => "transverse",
            ClassTag::Orthotropic => "orthotropic",
            ClassTag::Tetragonal => "tetragonal",
            ClassTag::Trigonal => "trigonal",
            ClassTag::Cubic => "cubic",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "transverse" => ClassTag::Transverse,
            "orthotropic" => ClassTag::Orthotropic,
            "tetragonal" => ClassTag::Tetragonal,
            "trigonal" => ClassTag::Trigonal,
            "cubic" => ClassTag::Cubic,
            _ => return None,
        })
    }
}

/// Normal-form parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Params {
    /// `δ` (transverse) or the scale of `𝒞₀¹` (cubic).
    Delta(f64),
    Lambdas([f64; 3]),
    SigmaDelta { sigma: f64, delta: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalForm {
    pub tag: ClassTag,
    pub params: Params,
    pub kelvin: Kelvin6,
}

impl NormalForm {
    pub fn tensor(&self) -> HarmTensor {
        harm4_from_kelvin(&self.kelvin).expect("normal forms are harmonic")
    }

    /// `g ⋆ H₀`.
    pub fn rotated(&self, g: &Rotation) -> HarmTensor {
        self.tensor().rotate(g)
    }

    /// `g ⋆ H₀` for a random `g`.
    pub fn random_member<R: RngCore + ?Sized>(&self, rng: &mut R) -> (HarmTensor, Rotation) {
        let g = Rotation::random(rng);
        (self.rotated(&g), g)
    }
}

fn sym6(entries: &[(usize, usize, f64)]) -> Kelvin6 {
    let mut m = [[0.0; 6]; 6];
    for &(i, j, v) in entries {
        m[i][j] = v;
        m[j][i] = v;
    }
    Kelvin6::new(m).expect("symmetric by construction")
}

fn transverse_block(d: f64) -> Vec<(usize, usize, f64)> {
    alloc::vec![
        (0, 0, 3.0 * d),
        (0, 1, d),
        (0, 2, -4.0 * d),
        (1, 1, 3.0 * d),
        (1, 2, -4.0 * d),
        (2, 2, 8.0 * d),
        (3, 3, -8.0 * d),
        (4, 4, -8.0 * d),
        (5, 5, 2.0 * d),
    ]
}

pub fn transverse(delta: f64) -> Result<NormalForm> {
    if delta == 0.0 || !delta.is_finite() {
        return Err(Error::Domain("transverse normal form needs δ ≠ 0"));
    }
    Ok(NormalForm {
        tag: ClassTag::Transverse,
        params: Params::Delta(delta),
        kelvin: sym6(&transverse_block(delta)),
    })
}

pub fn orthotropic(l: [f64; 3]) -> Result<NormalForm> {
    let [a, b, c] = l;
    if a == b || b == c || a == c || !l.iter().all(|v| v.is_finite()) {
        return Err(Error::Domain("orthotropic normal form needs distinct λ"));
    }
    Ok(NormalForm {
        tag: ClassTag::Orthotropic,
        params: Params::Lambdas(l),
        kelvin: sym6(&[
            (0, 0, b + c),
            (0, 1, -c),
            (0, 2, -b),
            (1, 1, c + a),
            (1, 2, -a),
            (2, 2, b + a),
            (3, 3, -2.0 * a),
            (4, 4, -2.0 * b),
            (5, 5, -2.0 * c),
        ]),
    })
}

pub fn tetragonal(sigma: f64, delta: f64) -> Result<NormalForm> {
    if sigma == 0.0 || sigma * sigma == 25.0 * delta * delta || !(sigma + delta).is_finite() {
        return Err(Error::Domain("tetragonal normal form needs σ ≠ 0 and σ² ≠ 25δ²"));
    }
    let (s, d) = (sigma, delta);
    Ok(NormalForm {
        tag: ClassTag::Tetragonal,
        params: Params::SigmaDelta { sigma, delta },
        kelvin: sym6(&[
            (0, 0, 3.0 * d - s),
            (0, 1, d + s),
            (0, 2, -4.0 * d),
            (1, 1, 3.0 * d - s),
            (1, 2, -4.0 * d),
            (2, 2, 8.0 * d),
            (3, 3, -8.0 * d),
            (4, 4, -8.0 * d),
            (5, 5, 2.0 * d + 2.0 * s),
        ]),
    })
}

pub fn trigonal(sigma: f64, delta: f64) -> Result<NormalForm> {
    if sigma == 0.0 || sigma * sigma == 50.0 * delta * delta || !(sigma + delta).is_finite() {
        return Err(Error::Domain("trigonal normal form needs σ ≠ 0 and σ² ≠ 50δ²"));
    }
    let mut e = transverse_block(delta);
    e.extend([
        (0, 3, -SQRT2 * sigma),
        (1, 3, SQRT2 * sigma),
        (4, 5, -2.0 * sigma),
    ]);
    Ok(NormalForm {
        tag: ClassTag::Trigonal,
        params: Params::SigmaDelta { sigma, delta },
        kelvin: sym6(&e),
    })
}

/// `scale · 𝒞₀¹`.
pub fn cubic(scale: f64) -> Result<NormalForm> {
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::Domain("cubic fixture needs a nonzero scale"));
    }
    Ok(NormalForm {
        tag: ClassTag::Cubic,
        params: Params::Delta(scale),
        kelvin: cubic1().scale(scale),
    })
}

pub fn normal_form(tag: ClassTag, params: Params) -> Result<NormalForm> {
    match (tag, params) {
        (ClassTag::Transverse, Params::Delta(d)) => transverse(d),
        (ClassTag::Cubic, Params::Delta(c)) => cubic(c),
        (ClassTag::Orthotropic, Params::Lambdas(l)) => orthotropic(l),
        (ClassTag::Tetragonal, Params::SigmaDelta { sigma, delta }) => tetragonal(sigma, delta),
        (ClassTag::Trigonal, Params::SigmaDelta { sigma, delta }) => trigonal(sigma, delta),
        _ => Err(Error::Domain("parameters do not fit the class")),
    }
}

/// `𝒯₀`, spanning the fixed space of O(2).
pub fn t0() -> Kelvin6 {
    sym6(&transverse_block(1.0))
}

/// `𝒞₀¹`, fixed by the octahedral group `𝕆₁`.
pub fn cubic1() -> Kelvin6 {
    sym6(&[
        (0, 0, 8.0),
        (0, 1, -4.0),
        (0, 2, -4.0),
        (1, 1, 8.0),
        (1, 2, -4.0),
        (2, 2, 8.0),
        (3, 3, -8.0),
        (4, 4, -8.0),
        (5, 5, -8.0),
    ])
}

/// `𝒞₀²`, fixed by `𝕆₂ = r 𝕆₁ r⁻¹`.
pub fn cubic2() -> Kelvin6 {
    sym6(&[
        (0, 0, -2.0),
        (0, 1, 6.0),
        (0, 2, -4.0),
        (1, 1, -2.0),
        (1, 2, -4.0),
        (2, 2, 8.0),
        (3, 3, -8.0),
        (4, 4, -8.0),
        (5, 5, 12.0),
    ])
}

fn trigonal_cubic(sign: f64) -> Kelvin6 {
    let mut e = transverse_block(1.0);
    e.extend([
        (0, 3, -10.0 * sign),
        (1, 3, 10.0 * sign),
        (4, 5, -10.0 * SQRT2 * sign),
    ]);
    sym6(&e)
}

/// `𝒞̃₀¹`, fixed by `𝕆̃₁ = r₃ 𝕆₁ r₃⁻¹`.
pub fn trigonal_cubic1() -> Kelvin6 {
    trigonal_cubic(1.0)
}

/// `𝒞̃₀²`, fixed by `𝕆̃₂ = r_t 𝕆̃₁ r_t⁻¹`.
pub fn trigonal_cubic2() -> Kelvin6 {
    trigonal_cubic(-1.0)
}

/// `r = R(e₃, π/4)`.
pub fn r_tetragonal() -> Rotation {
    Rotation::about_axis(Vec3::e3(), FRAC_PI_4)
}

/// `r_t = R(e₃, π/3)`.
pub fn r_trigonal() -> Rotation {
    Rotation::about_axis(Vec3::e3(), FRAC_PI_3)
}

/// `r₃ = R(e₃, π/4) ∘ R(e₁ − e₂, arccos(1/√3))`.
pub fn r3() -> Rotation {
    let tilt = Rotation::about_axis(Vec3::new(1.0, -1.0, 0.0), acos(1.0 / sqrt(3.0)));
    r_tetragonal().compose(&tilt)
}

/// Generators of `𝕆₁`: quarter turns about the coordinate axes.
pub fn o1_generators() -> Vec<Rotation> {
    [Vec3::e1(), Vec3::e2(), Vec3::e3()]
        .into_iter()
        .map(|a| Rotation::about_axis(a, FRAC_PI_2))
        .collect()
}

fn conjugated(by: &Rotation, gens: Vec<Rotation>) -> Vec<Rotation> {
    gens.iter().map(|g| by.conjugate(g)).collect()
}

/// Generators of `𝕆₂ = r 𝕆₁ r⁻¹`.
pub fn o2_generators() -> Vec<Rotation> {
    conjugated(&r_tetragonal(), o1_generators())
}

/// Generators of `𝕆̃₁ = r₃ 𝕆₁ r₃⁻¹`.
pub fn o1_trigonal_generators() -> Vec<Rotation> {
    conjugated(&r3(), o1_generators())
}

/// Generators of `𝕆̃₂ = r_t 𝕆̃₁ r_t⁻¹`.
pub fn o2_trigonal_generators() -> Vec<Rotation> {
    conjugated(&r_trigonal(), o1_trigonal_generators())
}

/// Rotations about `e₃` by `2πk/count`, used to probe O(2) invariance.
pub fn axial_samples(count: usize) -> Vec<Rotation> {
    (1..=count)
        .map(|k| Rotation::about_axis(Vec3::e3(), 2.0 * core::f64::consts::PI * k as f64 / count as f64 + 0.1))
        .collect()
}

/// `rotate(g, H₀(tag, params))` for a random rotation `g`.
pub fn random_in_class<R: RngCore + ?Sized>(
    tag: ClassTag,
    params: Params,
    rng: &mut R,
) -> Result<(HarmTensor, Rotation)> {
    Ok(normal_form(tag, params)?.random_member(rng))
}

fn uniform<R: RngCore + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * crate::linalg::unit_f64(rng)
}

fn signed<R: RngCore + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let v = uniform(rng, lo, hi);
    if rng.next_u32() & 1 == 0 {
        v
    } else {
        -v
    }
}

/// Parameters drawn from ranges where every class is numerically well
/// separated from the more symmetric ones:
///
/// * transverse, cubic: `|δ| ∈ [0.2, 3]`;
/// * orthotropic: `λ ∈ [−3, 3]³`, pairwise gaps `≥ 0.2`, and `|σ₁| ≤ σ_eq`
///   (a common shift of the `λᵢ` adds a cubic tensor, and a dominant shift
///   makes the rational invariants cancel badly);
/// * tetragonal, trigonal: `σ ∈ [0.2, 3]`, `δ ∈ [−2, 2]`, and `σ` at least
///   `0.1` away from the cubic value `5|δ|`, resp. `√50 |δ|`.
pub fn sample_params<R: RngCore + ?Sized>(tag: ClassTag, rng: &mut R) -> Params {
    match tag {
        ClassTag::Transverse | ClassTag::Cubic => Params::Delta(signed(rng, 0.2, 3.0)),
        ClassTag::Orthotropic => loop {
            let l = [0; 3].map(|_| uniform(rng, -3.0, 3.0));
            let gaps = [(0, 1), (1, 2), (0, 2)].map(|(i, j)| (l[i] - l[j]).abs());
            let s1 = l[0] + l[1] + l[2];
            let eq = sqrt((gaps[0] * gaps[0] + gaps[1] * gaps[1] + gaps[2] * gaps[2]) / 2.0);
            if gaps.iter().all(|&g| g >= 0.2) && s1.abs() <= eq {
                return Params::Lambdas(l);
            }
        },
        ClassTag::Tetragonal | ClassTag::Trigonal => {
            let ratio = if tag == ClassTag::Tetragonal { 5.0 } else { sqrt(50.0) };
            loop {
                let sigma = uniform(rng, 0.2, 3.0);
                let delta = uniform(rng, -2.0, 2.0);
                if (sigma - ratio * delta.abs()).abs() >= 0.1 {
                    return Params::SigmaDelta { sigma, delta };
                }
            }
        }
    }
}
