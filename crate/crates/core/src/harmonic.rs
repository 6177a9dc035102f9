//! Harmonic decomposition `p = h₀ + q h₁ + ⋯ + qʳ hᵣ` and the harmonic
//! product `h₁ ∗ h₂ = (h₁ h₂)₀`.

use alloc::vec::Vec;

use crate::math::{binomial, gcd};
use crate::tensor::{HarmTensor, SymTensor};

/// The harmonic parts of a symmetric tensor; `parts[k]` has order `n − 2k`.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicParts {
    parts: Vec<HarmTensor>,
}

impl HarmonicParts {
    pub fn parts(&self) -> &[HarmTensor] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<HarmTensor> {
        self.parts
    }

    /// `Σ qᵏ hₖ`.
    pub fn recompose(&self) -> SymTensor {
        recompose_parts(&self.parts)
    }
}

fn recompose_parts(parts: &[HarmTensor]) -> SymTensor {
    let mut acc = SymTensor::zero(parts[parts.len() - 1].order());
    for h in parts.iter().rev() {
        // Horner in q: acc ← q·acc + h
        acc = if acc.order() == h.order() {
            &acc + h.as_sym()
        } else {
            &acc.mul_q() + h.as_sym()
        };
    }
    acc
}

/// `μ(k) = (2n−4k+1)!(n−k)! / ((2n−2k+1)! k! (n−2k)!)`, reduced exactly.
///
/// Written as `C(n−k, k) / ∏_{m=2n−4k+2}^{2n−2k+1} m` and evaluated in
/// `u128` before the single rounding to `f64`.
pub fn mu(n: usize, k: usize) -> f64 {
    assert!(2 * k <= n, "μ(k) needs 2k ≤ n");
    let mut num = binomial(n - k, k);
    let mut den: u128 = 1;
    for m in (2 * n - 4 * k + 2)..=(2 * n - 2 * k + 1) {
        let m = m as u128;
        let g = gcd(num, m);
        num /= g;
        den *= m / g;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    num as f64 / den as f64
}

/// Full harmonic decomposition of `t`.
pub fn harmonic_decompose(t: &SymTensor) -> HarmonicParts {
    let n = t.order();
    let r = n / 2;
    if n < 2 {
        return HarmonicParts {
            parts: alloc::vec![HarmTensor::new_unchecked(t.clone())],
        };
    }
    // hₖ = μ(k) △ᵏ (p − Σ_{j>k} qʲ hⱼ), computed from k = r downwards.
    let mut parts: Vec<Option<HarmTensor>> = alloc::vec![None; r + 1];
    let mut rest = t.clone();
    for k in (0..=r).rev() {
        let mut lap = rest.clone();
        for _ in 0..k {
            lap = lap.laplacian().expect("order checked above");
        }
        let h = lap.scale(mu(n, k));
        // subtract qᵏ hₖ from the remainder
        let mut qh = h.clone();
        for _ in 0..k {
            qh = qh.mul_q();
        }
        rest = &rest - &qh;
        parts[k] = Some(HarmTensor::new_unchecked(h));
    }
    HarmonicParts {
        parts: parts.into_iter().map(|p| p.expect("filled")).collect(),
    }
}

/// Orthogonal projection `(t)₀` onto harmonic tensors of the same order.
pub fn harmonic_projection(t: &SymTensor) -> HarmTensor {
    let n = t.order();
    if n < 2 {
        return HarmTensor::new_unchecked(t.clone());
    }
    let parts = harmonic_decompose(t).into_parts();
    // h₀ = p − Σ_{k≥1} qᵏ hₖ
    let tail = recompose_parts(&parts[1..]).mul_q();
    HarmTensor::new_unchecked(t - &tail)
}

/// Harmonic product `h₁ ∗ h₂ = (h₁ ⊙ h₂)₀`.
pub fn harmonic_product(h1: &HarmTensor, h2: &HarmTensor) -> HarmTensor {
    // a scalar times a harmonic tensor is already harmonic
    if h1.order() == 0 {
        return h2.scale(h1.as_sym().coeffs()[0]);
    }
    if h2.order() == 0 {
        return h1.scale(h2.as_sym().coeffs()[0]);
    }
    harmonic_projection(&h1.as_sym().sym_product(h2.as_sym()))
}

/// `h ∗ ⋯ ∗ h` (`k ≥ 1` factors).
pub fn harmonic_power(h: &HarmTensor, k: usize) -> HarmTensor {
    assert!(k >= 1, "harmonic_power needs at least one factor");
    let mut acc = h.clone();
    for _ in 1..k {
        acc = harmonic_product(&acc, h);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Mat3, Vec3};
    use crate::math::factorial;
    use crate::tensor::coeff_len;

    #[test]
    fn mu_matches_factorial_formula() {
        for n in 0..=12usize {
            for k in 0..=n / 2 {
                let num = factorial(2 * n - 4 * k + 1) * factorial(n - k);
                let den = factorial(2 * n - 2 * k + 1) * factorial(k) * factorial(n - 2 * k);
                let expect = num as f64 / den as f64;
                assert!((mu(n, k) - expect).abs() <= 1e-15 * expect, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn top_part_uses_odd_factorial() {
        // n = 2r gives hᵣ = △ʳp/(2r+1)!
        assert_eq!(mu(4, 2), 1.0 / 120.0);
        assert_eq!(mu(2, 1), 1.0 / 6.0);
    }

    #[test]
    fn second_order_split_is_deviator_plus_trace() {
        let s = Mat3([[1.0, 0.2, -0.3], [0.2, 2.0, 0.5], [-0.3, 0.5, -4.0]]);
        let parts = harmonic_decompose(&SymTensor::from_matrix(&s)).into_parts();
        assert!((parts[0].to_matrix() - s.deviator()).norm() < 1e-15);
        assert!((parts[1].as_sym().coeffs()[0] - s.trace() / 3.0).abs() < 1e-15);
    }

    #[test]
    fn q_is_purely_spherical() {
        let parts = harmonic_decompose(&SymTensor::q()).into_parts();
        assert_eq!(parts[0].norm(), 0.0);
        assert_eq!(parts[1].as_sym().coeffs()[0], 1.0);
    }

    #[test]
    fn parts_are_harmonic_and_recompose() {
        for n in 0..=8 {
            let coeffs = (0..coeff_len(n)).map(|i| ((i * 7 + 3) % 11) as f64 - 5.0).collect();
            let t = SymTensor::from_coeffs(n, coeffs).unwrap();
            let hp = harmonic_decompose(&t);
            for h in hp.parts() {
                assert!(h.as_sym().is_harmonic(1e-12), "order {n}");
            }
            assert!((&hp.recompose() - &t).norm() <= 1e-12 * t.norm());
        }
    }

    #[test]
    fn product_of_two_vectors() {
        let e1 = HarmTensor::from_vector(Vec3::e1());
        let p = harmonic_product(&e1, &e1);
        let expect = Mat3::diag([2.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0]);
        assert!((p.to_matrix() - expect).norm() < 1e-15);
    }

    #[test]
    fn constant_one_is_unit() {
        let h = HarmTensor::from_deviator(&Mat3([[1.0, 2.0, 0.0], [2.0, -1.0, 0.5], [0.0, 0.5, 3.0]]));
        let p = harmonic_product(&HarmTensor::scalar(1.0), &h);
        assert!(p.rel_dist(&h) < 1e-15);
    }
}
