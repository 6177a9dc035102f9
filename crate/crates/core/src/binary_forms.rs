//! The Cartan isomorphism between real harmonic polynomials of degree `n`
//! and binary forms `f(u, v) = Σ aₖ uᵏ v²ⁿ⁻ᵏ` of degree `2n` satisfying
//! `a₂ₙ₋ₖ = (−1)ⁿ⁻ᵏ conj(aₖ)`.
//!
//! Coefficients are stored in ascending `k` (the `v²ⁿ` coefficient first).

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::harmonic::harmonic_projection;
use crate::linalg::{Mat3, Vec3};
use crate::tensor::{monomials, HarmTensor, SymTensor};

type C = Complex64;

const I: C = C::new(0.0, 1.0);

/// Relative tolerance of the reality check on coefficients.
pub const REALITY_TOL: f64 = 1e-12;

/// A binary form of even degree with complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm {
    coeffs: Vec<C>,
}

impl BinaryForm {
    /// A real binary form; the reality constraint is checked.
    pub fn new(coeffs: Vec<C>) -> Result<Self> {
        let f = Self::general(coeffs)?;
        if f.reality_defect() > REALITY_TOL * f.max_abs() {
            return Err(Error::Domain("binary form violates the reality constraint"));
        }
        Ok(f)
    }

    /// Any even-degree complex binary form.
    pub fn general(coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.len() % 2 == 0 {
            return Err(Error::Domain("binary form needs an even degree"));
        }
        Ok(Self { coeffs })
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![C::new(1.0, 0.0)],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Half the degree, i.e. the order of the matching harmonic tensor.
    pub fn half_degree(&self) -> usize {
        self.degree() / 2
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// `max_k |a₂ₙ₋ₖ − (−1)ⁿ⁻ᵏ conj(aₖ)|`.
    pub fn reality_defect(&self) -> f64 {
        let d = self.degree();
        let n = d / 2;
        (0..=n)
            .map(|k| {
                let sign = if (n - k) % 2 == 0 { 1.0 } else { -1.0 };
                (self.coeffs[d - k] - self.coeffs[k].conj() * sign).norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn eval(&self, u: C, v: C) -> C {
        let d = self.degree();
        let mut acc = C::new(0.0, 0.0);
        for (k, a) in self.coeffs.iter().enumerate() {
            acc += a * u.powu(k as u32) * v.powu((d - k) as u32);
        }
        acc
    }

    /// The form with conjugated coefficients.
    pub fn conj(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }
}

/// Product of homogeneous binary polynomials (ascending in `u`).
fn poly_mul(a: &[C], b: &[C]) -> Vec<C> {
    let mut out = vec![C::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Plain product `f₁ f₂`.
pub fn form_multiply(f1: &BinaryForm, f2: &BinaryForm) -> BinaryForm {
    BinaryForm {
        coeffs: poly_mul(&f1.coeffs, &f2.coeffs),
    }
}

fn powers(base: &[C], n: usize) -> Vec<Vec<C>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(vec![C::new(1.0, 0.0)]);
    for k in 1..=n {
        let next = poly_mul(&out[k - 1], base);
        out.push(next);
    }
    out
}

/// `ψ(h)(u, v) = h((u²−v²)/2, (u²+v²)/2i, uv)`.
pub fn cartan_map(h: &HarmTensor) -> BinaryForm {
    cartan_substitute(h.as_sym())
}

pub(crate) fn cartan_substitute(p: &SymTensor) -> BinaryForm {
    let n = p.order();
    let half = C::new(0.5, 0.0);
    // ascending in u: [v², uv, u²]
    let x = [-half, C::new(0.0, 0.0), half];
    let y = [-I * half, C::new(0.0, 0.0), -I * half];
    let z = [C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 0.0)];
    let (px, py, pz) = (powers(&x, n), powers(&y, n), powers(&z, n));
    let mut coeffs = vec![C::new(0.0, 0.0); 2 * n + 1];
    for ((a, b, c), &k) in monomials(n).zip(p.coeffs()) {
        if k == 0.0 {
            continue;
        }
        let term = poly_mul(&poly_mul(&px[a], &py[b]), &pz[c]);
        for (o, t) in coeffs.iter_mut().zip(&term) {
            *o += t * k;
        }
    }
    BinaryForm { coeffs }
}

/// A polynomial in `x, y, z` with complex coefficients, as real and
/// imaginary parts.
#[derive(Clone)]
struct ComplexPoly {
    re: SymTensor,
    im: SymTensor,
}

impl ComplexPoly {
    fn linear(re: Vec3, im: Vec3) -> Self {
        Self {
            re: SymTensor::from_vector(re),
            im: SymTensor::from_vector(im),
        }
    }

    fn one() -> Self {
        Self {
            re: SymTensor::scalar(1.0),
            im: SymTensor::scalar(0.0),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re.sym_product(&o.re) - &self.im.sym_product(&o.im),
            im: &self.re.sym_product(&o.im) + &self.im.sym_product(&o.re),
        }
    }

    fn powers(&self, n: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(Self::one());
        for k in 1..=n {
            let next = out[k - 1].mul(self);
            out.push(next);
        }
        out
    }
}

/// `ψ⁻¹(f)`: substitute `uᵏv²ⁿ⁻ᵏ → zᵏ(−x+iy)ⁿ⁻ᵏ` (k ≤ n) or
/// `z²ⁿ⁻ᵏ(x+iy)ᵏ⁻ⁿ` (k ≥ n) and take the harmonic part.
pub fn cartan_inverse(f: &BinaryForm) -> Result<HarmTensor> {
    let scale = f.max_abs();
    if f.reality_defect() > REALITY_TOL * scale {
        return Err(Error::Domain("binary form violates the reality constraint"));
    }
    let n = f.half_degree();
    let z = ComplexPoly::linear(Vec3::e3(), Vec3::default()).powers(n);
    let minus = ComplexPoly::linear(Vec3::new(-1.0, 0.0, 0.0), Vec3::e2()).powers(n);
    let plus = ComplexPoly::linear(Vec3::e1(), Vec3::e2()).powers(n);
    let mut re = SymTensor::zero(n);
    let mut im = SymTensor::zero(n);
    for (k, a) in f.coeffs.iter().enumerate() {
        if *a == C::new(0.0, 0.0) {
            continue;
        }
        let term = if k <= n {
            z[k].mul(&minus[n - k])
        } else {
            z[2 * n - k].mul(&plus[k - n])
        };
        re.axpy(a.re, &term.re);
        re.axpy(-a.im, &term.im);
        im.axpy(a.re, &term.im);
        im.axpy(a.im, &term.re);
    }
    let h = harmonic_projection(&re);
    let hi = harmonic_projection(&im);
    if hi.norm() > 1e-11 * h.norm().max(scale) {
        return Err(Error::Conditioning {
            reason: "inverse Cartan map left an imaginary part",
            residual: hi.norm(),
        });
    }
    Ok(h)
}

/// Order 1: `f = conj(a₀) u² + a₁ uv − a₀ v²` with `a₀ = (w₁ + i w₂)/2`,
/// `a₁ = w₃`.
pub fn order1_form(w: Vec3) -> BinaryForm {
    let a0 = C::new(w.x, w.y) * 0.5;
    let a1 = C::new(w.z, 0.0);
    BinaryForm {
        coeffs: vec![-a0, a1, a0.conj()],
    }
}

/// Inverse of [`order1_form`]: `w₁ = a₀ + conj(a₀)`, `w₂ = −i(a₀ − conj(a₀))`,
/// `w₃ = a₁`, where `a₀ = −(coefficient of v²)`.
pub fn order1_vector(f: &BinaryForm) -> Result<Vec3> {
    if f.degree() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: f.degree(),
        });
    }
    let a0 = -f.coeffs[0];
    let a1 = f.coeffs[1];
    Ok(Vec3::new(
        (a0 + a0.conj()).re,
        (-I * (a0 - a0.conj())).re,
        a1.re,
    ))
}

/// Order 2: `a₀ = h₁₁/4 − h₂₂/4 + (i/2)h₁₂`, `a₁ = −h₁₃ − i h₂₃`,
/// `a₂ = (3/2)h₃₃`.
pub fn order2_form(h: &Mat3) -> BinaryForm {
    let a0 = C::new(h[(0, 0)] / 4.0 - h[(1, 1)] / 4.0, h[(0, 1)] / 2.0);
    let a1 = C::new(-h[(0, 2)], -h[(1, 2)]);
    let a2 = C::new(1.5 * h[(2, 2)], 0.0);
    BinaryForm {
        coeffs: vec![a0, a1, a2, -a1.conj(), a0.conj()],
    }
}

/// Inverse of [`order2_form`] as a 3×3 matrix.
pub fn order2_matrix(f: &BinaryForm) -> Result<Mat3> {
    if f.degree() != 4 {
        return Err(Error::Dimension {
            expected: 4,
            found: f.degree(),
        });
    }
    let (a0, a1, a2) = (f.coeffs[0], f.coeffs[1], f.coeffs[2]);
    let h11 = a0 + a0.conj() - a2 / 3.0;
    let h12 = -I * (a0 - a0.conj());
    let h13 = -(a1 + a1.conj()) / 2.0;
    let h22 = -a0 - a0.conj() - a2 / 3.0;
    let h23 = I * (a1 - a1.conj()) / 2.0;
    let h33 = a2 * (2.0 / 3.0);
    Ok(Mat3([
        [h11.re, h12.re, h13.re],
        [h12.re, h22.re, h23.re],
        [h13.re, h23.re, h33.re],
    ]))
}

/// Order 4 from components `H(i, j, k, l)` (zero-based).
pub fn order4_form(h: impl Fn(usize, usize, usize, usize) -> f64) -> BinaryForm {
    let c = |s: &str| {
        let b = s.as_bytes();
        h(
            (b[0] - b'1') as usize,
            (b[1] - b'1') as usize,
            (b[2] - b'1') as usize,
            (b[3] - b'1') as usize,
        )
    };
    let a0 = C::new(
        -(8.0 * c("1122") + c("1133") + c("2233")) / 16.0,
        (2.0 * c("1112") + c("1233")) / 4.0,
    );
    let a1 = C::new(
        (4.0 * c("1223") + c("1333")) / 2.0,
        (c("2223") - 3.0 * c("1123")) / 2.0,
    );
    let a2 = C::new(7.0 / 4.0 * (c("1133") - c("2233")), 7.0 / 2.0 * c("1233"));
    let a3 = C::new(-7.0 / 2.0 * c("1333"), 7.0 / 2.0 * (c("1123") + c("2223")));
    let a4 = C::new(-35.0 / 8.0 * (c("1133") + c("2233")), 0.0);
    BinaryForm {
        coeffs: vec![
            a0,
            a1,
            a2,
            a3,
            a4,
            -a3.conj(),
            a2.conj(),
            -a1.conj(),
            a0.conj(),
        ],
    }
}

/// Inverse of [`order4_form`]: the order-4 tensor as full components
/// (last index fastest).
pub fn order4_components(f: &BinaryForm) -> Result<[f64; 81]> {
    if f.degree() != 8 {
        return Err(Error::Dimension {
            expected: 8,
            found: f.degree(),
        });
    }
    let a = |k: usize| f.coeffs[k];
    let b = |k: usize| f.coeffs[k].conj();
    let h1112 = (I / 4.0 * (b(0) * 4.0 - a(0) * 4.0 - b(2) * (2.0 / 7.0) + a(2) * (2.0 / 7.0))).re;
    let h1122 = (-a(0) - b(0) + a(4) / 35.0).re;
    let h1123 = (I / 4.0 * (a(1) - b(1) + b(3) / 7.0 - a(3) / 7.0)).re;
    let h1133 = (b(2) / 7.0 + a(2) / 7.0 - a(4) * (4.0 / 35.0)).re;
    let h1223 = ((b(1) + a(1) + b(3) / 7.0 + a(3) / 7.0) / 4.0).re;
    let h1233 = (I / 7.0 * (b(2) - a(2))).re;
    let h1333 = (-(a(3) + b(3)) / 7.0).re;
    let h2223 = (I / 4.0 * (b(1) - a(1) + b(3) * (3.0 / 7.0) - a(3) * (3.0 / 7.0))).re;
    let h2233 = (-a(2) / 7.0 - b(2) / 7.0 - a(4) * (4.0 / 35.0)).re;
    let h1111 = -h1122 - h1133;
    let h1113 = -h1223 - h1333;
    let h1222 = -h1112 - h1233;
    let h2222 = -h1122 - h2233;
    let h2333 = -h1123 - h2223;
    let h3333 = -h1133 - h2233;
    let mut out = [0.0; 81];
    for (flat, o) in out.iter_mut().enumerate() {
        let mut cnt = [0usize; 3];
        let mut r = flat;
        for _ in 0..4 {
            cnt[r % 3] += 1;
            r /= 3;
        }
        *o = match cnt {
            [4, 0, 0] => h1111,
            [3, 1, 0] => h1112,
            [3, 0, 1] => h1113,
            [2, 2, 0] => h1122,
            [2, 1, 1] => h1123,
            [2, 0, 2] => h1133,
            [1, 3, 0] => h1222,
            [1, 2, 1] => h1223,
            [1, 1, 2] => h1233,
            [1, 0, 3] => h1333,
            [0, 4, 0] => h2222,
            [0, 3, 1] => h2223,
            [0, 2, 2] => h2233,
            [0, 1, 3] => h2333,
            _ => h3333,
        };
    }
    Ok(out)
}

/// Stereographic projection from the north pole `(0, 0, 1)`; `None` is `∞`.
pub fn stereographic(w0: Vec3) -> Option<C> {
    let d = 1.0 - w0.z;
    if d == 0.0 {
        None
    } else {
        Some(C::new(w0.x / d, w0.y / d))
    }
}

/// Inverse stereographic projection; `None` maps to the north pole.
pub fn stereographic_inverse(lambda: Option<C>) -> Vec3 {
    match lambda {
        None => Vec3::e3(),
        Some(l) => {
            let m = l.norm_sqr();
            let s = 2.0 / (m + 1.0);
            Vec3::new(s * l.re, s * l.im, (m - 1.0) / (m + 1.0))
        }
    }
}
