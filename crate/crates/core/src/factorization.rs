//! Maxwell multipoles: every real harmonic tensor of order `n` is
//! `(x·w₁) ∗ ⋯ ∗ (x·wₙ)`. The vectors come from the roots of its binary
//! form, which pair up as `λ, −1/λ̄`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand_core::RngCore;

use crate::binary_forms::{cartan_map, BinaryForm};
use crate::error::{Error, Result};
use crate::harmonic::harmonic_product;
use crate::linalg::{Rotation, Vec3};
use crate::roots::{horner, poly_roots};
use crate::tensor::HarmTensor;

type C = Complex64;

/// Coefficients below this fraction of the largest one count as zero when
/// stripping `u`/`v` factors.
const ZERO_COEFF: f64 = 64.0 * f64::EPSILON;

/// Relative tolerance for matching a root with its antipode `−1/λ̄`.
pub const PAIR_TOL: f64 = 1e-6;

/// Relative tolerance on `Im α`.
pub const ALPHA_TOL: f64 = 1e-9;

/// Rebuild tolerance advertised by [`maxwell_multipoles`].
pub const REBUILD_TOL: f64 = 1e-8;

/// Projective roots of a binary form: the roots of `f(t, 1)` (zeros
/// included) and the multiplicity of `∞`.
#[derive(Clone, Debug, PartialEq)]
pub struct Roots {
    pub finite: Vec<C>,
    pub infinite: usize,
}

/// Roots of `f` with multiplicity.
pub fn find_roots(f: &BinaryForm) -> Result<Roots> {
    let c = f.coeffs();
    let scale = f.max_abs();
    if scale == 0.0 {
        return Err(Error::Domain("zero binary form has no roots"));
    }
    let small = |z: &C| z.norm() <= ZERO_COEFF * scale;
    let top = c.iter().rposition(|z| !small(z)).expect("nonzero form");
    let bottom = c.iter().position(|z| !small(z)).expect("nonzero form");
    let infinite = c.len() - 1 - top;
    let mut finite = vec![C::new(0.0, 0.0); bottom];
    finite.extend(poly_roots(&c[bottom..=top]));
    Ok(Roots { finite, infinite })
}

/// Largest `|f(λ, 1)|` over the finite roots (and `|f(1, 0)|`-type residual
/// of the reversed polynomial at `0` for `∞`), relative to `max |aₖ|`.
pub fn root_residual(f: &BinaryForm, roots: &Roots) -> f64 {
    let scale = f.max_abs();
    let c = f.coeffs();
    let mut worst: f64 = 0.0;
    for &l in &roots.finite {
        let r = if l.norm() <= 1.0 {
            horner(c, l).0.norm()
        } else {
            // p(λ)/λ^d = reversed polynomial at 1/λ
            let rev: Vec<C> = c.iter().rev().copied().collect();
            horner(&rev, l.inv()).0.norm()
        };
        worst = worst.max(r / scale);
    }
    if roots.infinite > 0 {
        worst = worst.max(c[c.len() - 1].norm() / scale);
    }
    worst
}

/// The factored form `α uʳvʳ ∏ (u − λᵢv)(λ̄ᵢu + v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairedRoots {
    pub finite_pairs: Vec<C>,
    pub infinity_multiplicity: usize,
    pub alpha: f64,
}

impl PairedRoots {
    /// Coefficients of the factored form, ascending in `u`.
    pub fn to_form(&self) -> BinaryForm {
        let mut c = vec![C::new(0.0, 0.0); self.infinity_multiplicity];
        c.push(C::new(self.alpha, 0.0));
        for &l in &self.finite_pairs {
            c = mul(&c, &pair_factor(l));
        }
        c.extend(core::iter::repeat(C::new(0.0, 0.0)).take(self.infinity_multiplicity));
        BinaryForm::general(c).expect("even degree by construction")
    }
}

/// `(u − λv)(λ̄u + v)` ascending in `u`: `[−λ, 1 − |λ|², λ̄]`.
fn pair_factor(l: C) -> [C; 3] {
    [-l, C::new(1.0 - l.norm_sqr(), 0.0), l.conj()]
}

fn mul(a: &[C], b: &[C]) -> Vec<C> {
    let mut out = vec![C::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Pairs each finite nonzero root with its antipode `−1/λ̄` and extracts
/// the real scalar `α`.
pub fn pair_roots(roots: &Roots, f: &BinaryForm) -> Result<PairedRoots> {
    let zeros = roots.finite.iter().filter(|z| z.norm() == 0.0).count();
    if zeros != roots.infinite {
        return Err(Error::Conditioning {
            reason: "zero and infinite roots do not balance",
            residual: zeros.abs_diff(roots.infinite) as f64,
        });
    }
    let rest: Vec<C> = roots.finite.iter().copied().filter(|z| z.norm() != 0.0).collect();
    let mut used = vec![false; rest.len()];
    let mut pairs = Vec::with_capacity(rest.len() / 2);
    for i in 0..rest.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let anti = -rest[i].conj().inv();
        let mut best: Option<(usize, f64)> = None;
        for j in 0..rest.len() {
            if used[j] {
                continue;
            }
            let d = (rest[j] - anti).norm();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        match best {
            Some((j, d)) if d <= PAIR_TOL * anti.norm().max(1.0) => {
                used[j] = true;
                // keep the representative inside the unit disc
                let l = if rest[i].norm() <= rest[j].norm() {
                    rest[i]
                } else {
                    rest[j]
                };
                pairs.push(l);
            }
            other => {
                return Err(Error::Conditioning {
                    reason: "root has no antipodal partner",
                    residual: other.map_or(f64::INFINITY, |(_, d)| d),
                })
            }
        }
    }
    let r = roots.infinite;
    let c = f.coeffs();
    let top = c[c.len() - 1 - r];
    let denom: C = pairs.iter().map(|l| l.conj()).product();
    let alpha = top / denom;
    if crate::math::abs(alpha.im) > ALPHA_TOL * alpha.norm() {
        return Err(Error::Conditioning {
            reason: "scalar factor is not real",
            residual: crate::math::abs(alpha.im) / alpha.norm(),
        });
    }
    Ok(PairedRoots {
        finite_pairs: pairs,
        infinity_multiplicity: r,
        alpha: alpha.re,
    })
}

/// The multipole vectors of a harmonic tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct MultipoleSet {
    pub vectors: Vec<Vec3>,
    /// Set when roots cluster or the rebuild misses [`REBUILD_TOL`].
    pub ill_conditioned: bool,
    /// `‖rebuild − h‖ / ‖h‖`.
    pub residual: f64,
}

/// `(x·w₁) ∗ ⋯ ∗ (x·wₙ)`.
pub fn rebuild_from_multipoles(vectors: &[Vec3]) -> HarmTensor {
    let mut acc = HarmTensor::scalar(1.0);
    for &w in vectors {
        acc = harmonic_product(&acc, &HarmTensor::from_vector(w));
    }
    acc
}

/// Maxwell multipoles of `h`. A random rotation drawn from `rng` moves the
/// multipoles away from the stereographic pole before root finding.
pub fn maxwell_multipoles<R: RngCore + ?Sized>(h: &HarmTensor, rng: &mut R) -> Result<MultipoleSet> {
    let n = h.order();
    let norm = h.norm();
    if n == 0 {
        return Err(Error::Domain("order-0 tensors have no multipoles"));
    }
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::Domain("zero tensor has no multipoles"));
    }
    let g = Rotation::random(rng);
    let f = cartan_map(&h.rotate(&g));
    let roots = find_roots(&f)?;
    let paired = pair_roots(&roots, &f)?;
    let ginv = g.inverse();
    let mut vectors = Vec::with_capacity(n);
    for &l in &paired.finite_pairs {
        let w = Vec3::new(2.0 * l.re, 2.0 * l.im, 1.0 - l.norm_sqr());
        vectors.push(ginv.apply(w));
    }
    for _ in 0..paired.infinity_multiplicity {
        vectors.push(ginv.apply(Vec3::e3()));
    }
    vectors[0] = vectors[0].scale(paired.alpha);
    let residual = rebuild_from_multipoles(&vectors).rel_dist(h);
    let clustered = roots.finite.iter().enumerate().any(|(i, a)| {
        roots.finite[i + 1..]
            .iter()
            .any(|b| (a - b).norm() <= 1e-5 * a.norm().max(1.0))
    });
    Ok(MultipoleSet {
        vectors,
        ill_conditioned: clustered || residual > REBUILD_TOL,
        residual,
    })
}

/// `h = h₁ ∗ ⋯ ∗ h_k` with every factor of order `n`; factors group `n`
/// consecutive multipoles.
pub fn factor_equal_orders<R: RngCore + ?Sized>(
    h: &HarmTensor,
    k: usize,
    n: usize,
    rng: &mut R,
) -> Result<Vec<HarmTensor>> {
    if k == 0 || k * n != h.order() {
        return Err(Error::Domain("tensor order must equal k·n"));
    }
    if k == 1 {
        return Ok(vec![h.clone()]);
    }
    let m = maxwell_multipoles(h, rng)?;
    Ok(m.vectors.chunks(n).map(rebuild_from_multipoles).collect())
}

/// `h = h₁ ∗ h₁ − h₂ ∗ h₂` for even-order `h`.
pub fn square_difference<R: RngCore + ?Sized>(h: &HarmTensor, rng: &mut R) -> Result<(HarmTensor, HarmTensor)> {
    let order = h.order();
    if order % 2 != 0 {
        return Err(Error::Domain("square difference needs an even order"));
    }
    let n = order / 2;
    if h.norm() == 0.0 {
        return Ok((HarmTensor::zero(n), HarmTensor::zero(n)));
    }
    if order == 0 {
        return Err(Error::Domain("square difference needs a positive order"));
    }
    let f = factor_equal_orders(h, 2, n, rng)?;
    let h1 = (&f[0] + &f[1]) * 0.5;
    let h2 = (&f[0] - &f[1]) * 0.5;
    Ok((h1, h2))
}
