//! Totally symmetric tensors on ℝ³ stored as homogeneous polynomials.
//!
//! A tensor `T` of order `n` is identified with `p(x) = T(x, …, x)`. The
//! coefficients of `p` are kept in graded-lexicographic order: `xⁿ, xⁿ⁻¹y,
//! xⁿ⁻¹z, xⁿ⁻²y², …, zⁿ`. With this identification the symmetric product is
//! polynomial multiplication and the trace is a scaled Laplacian.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{Mat3, Rotation, Vec3};
use crate::math::{abs, multinomial3, sqrt};

/// Relative tolerance used by the structural checks (tracelessness).
pub const STRUCTURE_TOL: f64 = 1e-12;

/// Number of monomials of degree `n` in three variables.
pub const fn coeff_len(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

/// Position of `xᵃ yᵇ zᶜ` in the graded-lex layout.
#[inline]
pub const fn monomial_index(_a: usize, b: usize, c: usize) -> usize {
    let m = b + c;
    m * (m + 1) / 2 + c
}

/// Exponents `(a, b, c)` of every monomial of degree `n`, in storage order.
pub fn monomials(order: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..=order).flat_map(move |m| (0..=m).map(move |c| (order - m, m - c, c)))
}

/// Totally symmetric tensor of order `n` on ℝ³.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensor {
    order: usize,
    coeffs: Vec<f64>,
}

impl SymTensor {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![0.0; coeff_len(order)],
        }
    }

    /// Wraps polynomial coefficients; the length must be `(n+1)(n+2)/2`.
    pub fn from_coeffs(order: usize, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != coeff_len(order) {
            return Err(Error::Dimension {
                expected: coeff_len(order),
                found: coeffs.len(),
            });
        }
        Ok(Self { order, coeffs })
    }

    pub fn scalar(value: f64) -> Self {
        Self {
            order: 0,
            coeffs: vec![value],
        }
    }

    /// The linear form `x · w`.
    pub fn from_vector(w: Vec3) -> Self {
        Self {
            order: 1,
            coeffs: vec![w.x, w.y, w.z],
        }
    }

    /// Quadratic form of the symmetric part of `m`.
    pub fn from_matrix(m: &Mat3) -> Self {
        let s = m.sym();
        let mut t = Self::zero(2);
        t.coeffs[monomial_index(2, 0, 0)] = s[(0, 0)];
        t.coeffs[monomial_index(1, 1, 0)] = 2.0 * s[(0, 1)];
        t.coeffs[monomial_index(1, 0, 1)] = 2.0 * s[(0, 2)];
        t.coeffs[monomial_index(0, 2, 0)] = s[(1, 1)];
        t.coeffs[monomial_index(0, 1, 1)] = 2.0 * s[(1, 2)];
        t.coeffs[monomial_index(0, 0, 2)] = s[(2, 2)];
        t
    }

    /// `q = x² + y² + z²`, the polynomial of the identity tensor.
    pub fn q() -> Self {
        Self::from_matrix(&Mat3::identity())
    }

    /// Builds the polynomial `T_{i₁…iₙ} x_{i₁}⋯x_{iₙ}` from a full
    /// `3ⁿ` component array (row-major, last index fastest). Non-symmetric
    /// input is implicitly symmetrized.
    pub fn from_components(order: usize, comps: &[f64]) -> Result<Self> {
        let len = 3usize.pow(order as u32);
        if comps.len() != len {
            return Err(Error::Dimension {
                expected: len,
                found: comps.len(),
            });
        }
        let mut t = Self::zero(order);
        for (flat, &v) in comps.iter().enumerate() {
            let (a, b, c) = exponents_of_flat(flat, order);
            t.coeffs[monomial_index(a, b, c)] += v;
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Coefficient of `xᵃ yᵇ zᶜ`; `a + b + c` must equal the order.
    pub fn coeff(&self, a: usize, b: usize, c: usize) -> f64 {
        debug_assert_eq!(a + b + c, self.order);
        self.coeffs[monomial_index(a, b, c)]
    }

    /// Component `T_{i₁…iₙ}` for indices in `0..3`.
    pub fn component(&self, idx: &[usize]) -> f64 {
        assert_eq!(idx.len(), self.order, "index length must equal the order");
        let mut cnt = [0usize; 3];
        for &i in idx {
            cnt[i] += 1;
        }
        self.coeffs[monomial_index(cnt[0], cnt[1], cnt[2])] / multinomial3(cnt[0], cnt[1], cnt[2])
    }

    /// All `3ⁿ` components, last index fastest.
    pub fn to_components(&self) -> Vec<f64> {
        let len = 3usize.pow(self.order as u32);
        (0..len)
            .map(|flat| {
                let (a, b, c) = exponents_of_flat(flat, self.order);
                self.coeffs[monomial_index(a, b, c)] / multinomial3(a, b, c)
            })
            .collect()
    }

    /// Second-order tensor as a 3×3 matrix. Panics unless the order is 2.
    pub fn to_matrix(&self) -> Mat3 {
        assert_eq!(self.order, 2, "to_matrix needs an order-2 tensor");
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m[(i, j)] = self.component(&[i, j]);
            }
        }
        m
    }

    /// Order-1 tensor as a vector. Panics unless the order is 1.
    pub fn to_vector(&self) -> Vec3 {
        assert_eq!(self.order, 1, "to_vector needs an order-1 tensor");
        Vec3::new(self.coeffs[0], self.coeffs[1], self.coeffs[2])
    }

    /// Value of the polynomial at `x`.
    pub fn eval(&self, x: Vec3) -> f64 {
        monomials(self.order)
            .zip(&self.coeffs)
            .map(|((a, b, c), &k)| {
                k * crate::math::powi(x.x, a as i32)
                    * crate::math::powi(x.y, b as i32)
                    * crate::math::powi(x.z, c as i32)
            })
            .sum()
    }

    /// Symmetric tensor product `a ⊙ b`, i.e. the product of polynomials.
    pub fn sym_product(&self, other: &SymTensor) -> SymTensor {
        // fixed operand order keeps the floating-point sums, and hence the
        // product, exactly commutative
        let (x, y) = if self.canonical_cmp(other).is_gt() {
            (other, self)
        } else {
            (self, other)
        };
        x.sym_product_ordered(y)
    }

    fn canonical_cmp(&self, other: &SymTensor) -> core::cmp::Ordering {
        self.order.cmp(&other.order).then_with(|| {
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.total_cmp(b))
                .find(|o| o.is_ne())
                .unwrap_or(core::cmp::Ordering::Equal)
        })
    }

    fn sym_product_ordered(&self, other: &SymTensor) -> SymTensor {
        let mut out = SymTensor::zero(self.order + other.order);
        for ((a1, b1, c1), &k1) in monomials(self.order).zip(&self.coeffs) {
            if k1 == 0.0 {
                continue;
            }
            for ((a2, b2, c2), &k2) in monomials(other.order).zip(&other.coeffs) {
                out.coeffs[monomial_index(a1 + a2, b1 + b2, c1 + c2)] += k1 * k2;
            }
        }
        out
    }

    /// Laplacian `△p`, a polynomial of degree `n − 2` (zero tensor of order
    /// 0 when `n < 2` is not representable, so this requires `n ≥ 2`).
    pub fn laplacian(&self) -> Result<SymTensor> {
        if self.order < 2 {
            return Err(Error::Domain("Laplacian needs order at least 2"));
        }
        let mut out = SymTensor::zero(self.order - 2);
        for ((a, b, c), &k) in monomials(self.order).zip(&self.coeffs) {
            if a >= 2 {
                out.coeffs[monomial_index(a - 2, b, c)] += (a * (a - 1)) as f64 * k;
            }
            if b >= 2 {
                out.coeffs[monomial_index(a, b - 2, c)] += (b * (b - 1)) as f64 * k;
            }
            if c >= 2 {
                out.coeffs[monomial_index(a, b, c - 2)] += (c * (c - 1)) as f64 * k;
            }
        }
        Ok(out)
    }

    /// Trace `tr T`, computed from `△p = n(n−1) φ(tr T)`.
    pub fn trace(&self) -> Result<SymTensor> {
        let n = self.order as f64;
        Ok(self.laplacian()?.scale(1.0 / (n * (n - 1.0))))
    }

    /// Multiplication by `q = x² + y² + z²`.
    pub fn mul_q(&self) -> SymTensor {
        let mut out = SymTensor::zero(self.order + 2);
        for ((a, b, c), &k) in monomials(self.order).zip(&self.coeffs) {
            out.coeffs[monomial_index(a + 2, b, c)] += k;
            out.coeffs[monomial_index(a, b + 2, c)] += k;
            out.coeffs[monomial_index(a, b, c + 2)] += k;
        }
        out
    }

    /// `g ⋆ T`: the polynomial `p(g⁻¹ x)`.
    pub fn rotate(&self, g: &Rotation) -> SymTensor {
        let n = self.order;
        let m = g.matrix();
        // (g⁻¹ x)_i = Σ_j g_ji x_j
        let forms: [SymTensor; 3] = core::array::from_fn(|i| {
            SymTensor::from_vector(Vec3::new(m[(0, i)], m[(1, i)], m[(2, i)]))
        });
        let powers: [Vec<SymTensor>; 3] = core::array::from_fn(|i| {
            let mut p = Vec::with_capacity(n + 1);
            p.push(SymTensor::scalar(1.0));
            for k in 1..=n {
                let next = p[k - 1].sym_product(&forms[i]);
                p.push(next);
            }
            p
        });
        let mut out = SymTensor::zero(n);
        for ((a, b, c), &k) in monomials(n).zip(&self.coeffs) {
            if k == 0.0 {
                continue;
            }
            let term = powers[0][a].sym_product(&powers[1][b]).sym_product(&powers[2][c]);
            out.axpy(k, &term);
        }
        out
    }

    /// Euclidean inner product of the underlying tensors,
    /// `S_{i₁…iₙ} T_{i₁…iₙ}`.
    pub fn inner(&self, other: &SymTensor) -> f64 {
        assert_eq!(self.order, other.order, "inner product needs equal orders");
        monomials(self.order)
            .zip(self.coeffs.iter().zip(&other.coeffs))
            .map(|((a, b, c), (x, y))| x * y / multinomial3(a, b, c))
            .sum()
    }

    /// `‖T‖ = √(T · T)`.
    pub fn norm(&self) -> f64 {
        sqrt(self.inner(self))
    }

    pub fn scale(&self, s: f64) -> SymTensor {
        SymTensor {
            order: self.order,
            coeffs: self.coeffs.iter().map(|v| v * s).collect(),
        }
    }

    /// `self += s · other`.
    pub fn axpy(&mut self, s: f64, other: &SymTensor) {
        assert_eq!(self.order, other.order, "axpy needs equal orders");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += s * b;
        }
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|v| v.is_finite())
    }

    /// Whether `‖tr T‖ ≤ tol · ‖T‖` (order < 2 tensors are always harmonic).
    pub fn is_harmonic(&self, tol: f64) -> bool {
        match self.trace() {
            Err(_) => true,
            Ok(tr) => tr.norm() <= tol * self.norm(),
        }
    }
}

/// Index counts of a flat `3ⁿ` position (last index fastest).
fn exponents_of_flat(mut flat: usize, order: usize) -> (usize, usize, usize) {
    let mut cnt = [0usize; 3];
    for _ in 0..order {
        cnt[flat % 3] += 1;
        flat /= 3;
    }
    (cnt[0], cnt[1], cnt[2])
}

macro_rules! impl_linear_ops {
    ($ty:ty, $inner:ident) => {
        impl Add<&$ty> for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                out.$inner.axpy_raw(1.0, &rhs.$inner);
                out
            }
        }
        impl Sub<&$ty> for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                out.$inner.axpy_raw(-1.0, &rhs.$inner);
                out
            }
        }
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul<f64> for &$ty {
            type Output = $ty;
            fn mul(self, s: f64) -> $ty {
                let mut out = self.clone();
                out.$inner.scale_raw(s);
                out
            }
        }
        impl Mul<f64> for $ty {
            type Output = $ty;
            fn mul(self, s: f64) -> $ty {
                &self * s
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                &self * -1.0
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                self * -1.0
            }
        }
    };
}

trait RawLinear {
    fn axpy_raw(&mut self, s: f64, other: &Self);
    fn scale_raw(&mut self, s: f64);
}

impl RawLinear for SymTensor {
    fn axpy_raw(&mut self, s: f64, other: &Self) {
        self.axpy(s, other);
    }
    fn scale_raw(&mut self, s: f64) {
        for v in self.coeffs.iter_mut() {
            *v *= s;
        }
    }
}

impl Add<&SymTensor> for &SymTensor {
    type Output = SymTensor;
    fn add(self, rhs: &SymTensor) -> SymTensor {
        let mut out = self.clone();
        out.axpy(1.0, rhs);
        out
    }
}
impl Sub<&SymTensor> for &SymTensor {
    type Output = SymTensor;
    fn sub(self, rhs: &SymTensor) -> SymTensor {
        let mut out = self.clone();
        out.axpy(-1.0, rhs);
        out
    }
}
impl Add for SymTensor {
    type Output = SymTensor;
    fn add(self, rhs: SymTensor) -> SymTensor {
        &self + &rhs
    }
}
impl Sub for SymTensor {
    type Output = SymTensor;
    fn sub(self, rhs: SymTensor) -> SymTensor {
        &self - &rhs
    }
}
impl Mul<f64> for &SymTensor {
    type Output = SymTensor;
    fn mul(self, s: f64) -> SymTensor {
        self.scale(s)
    }
}
impl Mul<f64> for SymTensor {
    type Output = SymTensor;
    fn mul(self, s: f64) -> SymTensor {
        self.scale(s)
    }
}
impl Neg for SymTensor {
    type Output = SymTensor;
    fn neg(self) -> SymTensor {
        self.scale(-1.0)
    }
}
impl Neg for &SymTensor {
    type Output = SymTensor;
    fn neg(self) -> SymTensor {
        self.scale(-1.0)
    }
}

/// A traceless totally symmetric tensor, i.e. a harmonic polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmTensor {
    inner: SymTensor,
}

impl_linear_ops!(HarmTensor, inner);

impl HarmTensor {
    /// Accepts `t` when `‖tr t‖ ≤ 1e-12 ‖t‖`.
    pub fn new(t: SymTensor) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::Domain("tensor has non-finite components"));
        }
        if !t.is_harmonic(STRUCTURE_TOL) {
            return Err(Error::Domain("tensor is not traceless"));
        }
        Ok(Self { inner: t })
    }

    /// Wraps `t` without checking; callers guarantee tracelessness.
    pub(crate) fn new_unchecked(t: SymTensor) -> Self {
        Self { inner: t }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            inner: SymTensor::zero(order),
        }
    }

    /// The constant harmonic polynomial `c` (unit of `∗` when `c = 1`).
    pub fn scalar(c: f64) -> Self {
        Self {
            inner: SymTensor::scalar(c),
        }
    }

    /// The linear form `x · w`.
    pub fn from_vector(w: Vec3) -> Self {
        Self {
            inner: SymTensor::from_vector(w),
        }
    }

    /// Deviatoric part of the symmetric part of `m` as an order-2 harmonic
    /// tensor.
    pub fn from_deviator(m: &Mat3) -> Self {
        Self {
            inner: SymTensor::from_matrix(&m.sym().deviator()),
        }
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn as_sym(&self) -> &SymTensor {
        &self.inner
    }

    pub fn into_sym(self) -> SymTensor {
        self.inner
    }

    pub fn norm(&self) -> f64 {
        self.inner.norm()
    }

    pub fn inner(&self, other: &HarmTensor) -> f64 {
        self.inner.inner(&other.inner)
    }

    pub fn component(&self, idx: &[usize]) -> f64 {
        self.inner.component(idx)
    }

    pub fn to_matrix(&self) -> Mat3 {
        self.inner.to_matrix()
    }

    pub fn to_vector(&self) -> Vec3 {
        self.inner.to_vector()
    }

    pub fn rotate(&self, g: &Rotation) -> HarmTensor {
        HarmTensor {
            inner: self.inner.rotate(g),
        }
    }

    pub fn scale(&self, s: f64) -> HarmTensor {
        self * s
    }

    /// `‖self − other‖ / ‖other‖` (absolute distance when `other` is zero).
    pub fn rel_dist(&self, other: &HarmTensor) -> f64 {
        let d = (self - other).norm();
        let n = other.norm();
        if n > 0.0 {
            d / n
        } else {
            d
        }
    }
}

/// Largest absolute coefficient, handy for scale-aware tolerances.
pub fn max_abs_coeff(t: &SymTensor) -> f64 {
    t.coeffs.iter().fold(0.0, |m, v| m.max(abs(*v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_2;
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_sym(order: usize, rng: &mut ChaCha8Rng) -> SymTensor {
        let coeffs = (0..coeff_len(order))
            .map(|_| crate::linalg::unit_f64(rng) * 2.0 - 1.0)
            .collect();
        SymTensor::from_coeffs(order, coeffs).unwrap()
    }

    #[test]
    fn layout_is_graded_lex() {
        let m: Vec<_> = monomials(2).collect();
        assert_eq!(
            m,
            vec![(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
        );
        for (i, (a, b, c)) in monomials(5).enumerate() {
            assert_eq!(monomial_index(a, b, c), i);
        }
    }

    #[test]
    fn product_of_e1_with_itself() {
        let e1 = SymTensor::from_vector(Vec3::e1());
        let t = e1.sym_product(&e1);
        let m = t.to_matrix();
        assert_eq!(m, Mat3::diag([1.0, 0.0, 0.0]));
    }

    #[test]
    fn product_e1_e2_polarizes_to_half() {
        let t = SymTensor::from_vector(Vec3::e1()).sym_product(&SymTensor::from_vector(Vec3::e2()));
        assert_eq!(t.coeff(1, 1, 0), 1.0);
        assert_eq!(t.component(&[0, 1]), 0.5);
        assert_eq!(t.component(&[1, 0]), 0.5);
        assert_eq!(t.component(&[0, 0]), 0.0);
    }

    #[test]
    fn unit_of_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = random_sym(4, &mut rng);
        assert_eq!(SymTensor::scalar(1.0).sym_product(&t), t);
    }

    #[test]
    fn trace_of_identity_is_three() {
        let tr = SymTensor::q().trace().unwrap();
        assert_eq!(tr.order(), 0);
        assert!((tr.coeffs()[0] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn trace_of_x4_is_x2() {
        let mut t = SymTensor::zero(4);
        t.coeffs[monomial_index(4, 0, 0)] = 1.0;
        let tr = t.trace().unwrap();
        let mut expect = SymTensor::zero(2);
        expect.coeffs[monomial_index(2, 0, 0)] = 1.0;
        assert_eq!(tr, expect);
    }

    #[test]
    fn trace_rejects_low_order() {
        assert!(SymTensor::from_vector(Vec3::e1()).trace().is_err());
    }

    #[test]
    fn quarter_turn_maps_x_to_y() {
        let g = Rotation::about_axis(Vec3::e3(), FRAC_PI_2);
        let t = SymTensor::from_vector(Vec3::e1()).rotate(&g);
        assert!((t.to_vector() - Vec3::e2()).norm() < 1e-15);
    }

    #[test]
    fn identity_rotation_is_noop() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t = random_sym(5, &mut rng);
        let r = t.rotate(&Rotation::identity());
        assert!((&r - &t).norm() < 1e-15 * t.norm());
    }

    #[test]
    fn norms_of_small_tensors() {
        assert_eq!(SymTensor::zero(3).norm(), 0.0);
        assert!((SymTensor::q().norm() - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn weighted_norm_matches_component_contraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for order in 0..=6 {
            let t = random_sym(order, &mut rng);
            let brute: f64 = t.to_components().iter().map(|v| v * v).sum();
            assert!((t.norm() - brute.sqrt()).abs() <= 1e-13 * brute.sqrt().max(1.0));
        }
    }

    #[test]
    fn components_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for order in 0..=5 {
            let t = random_sym(order, &mut rng);
            let back = SymTensor::from_components(order, &t.to_components()).unwrap();
            assert!((&back - &t).norm() <= 1e-14 * t.norm());
        }
    }

    #[test]
    fn rotation_matches_component_transform() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = Rotation::random(&mut rng);
        let t = random_sym(3, &mut rng);
        let comps = t.to_components();
        let m = g.matrix();
        let mut rotated = [0.0; 27];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let mut s = 0.0;
                    for a in 0..3 {
                        for b in 0..3 {
                            for c in 0..3 {
                                s += m[(i, a)] * m[(j, b)] * m[(k, c)] * comps[9 * a + 3 * b + c];
                            }
                        }
                    }
                    rotated[9 * i + 3 * j + k] = s;
                }
            }
        }
        let r = t.rotate(&g);
        for (x, y) in r.to_components().iter().zip(rotated.iter()) {
            assert!((x - y).abs() < 1e-13);
        }
        let _ = rng.next_u32();
    }

    #[test]
    fn harm_tensor_rejects_trace() {
        assert!(HarmTensor::new(SymTensor::q()).is_err());
        let dev = SymTensor::from_matrix(&Mat3::diag([1.0, -1.0, 0.0]));
        assert!(HarmTensor::new(dev).is_ok());
    }
}
