//! Kelvin 6×6 view of fourth-order tensors with minor symmetries.
//!
//! Pair order is `(11, 22, 33, 23, 13, 12)` and `K_IJ = w_I w_J A_ijkl` with
//! `w = (1, 1, 1, √2, √2, √2)`. With this normalization the double
//! contraction `A_ijpq B_pqkl` is an ordinary matrix product.

use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{sym_eigen, Mat3, Rotation};
use crate::math::sqrt;
use crate::tensor::{HarmTensor, SymTensor, STRUCTURE_TOL};

pub const SQRT2: f64 = core::f64::consts::SQRT_2;

/// Index pairs in Kelvin order.
pub const PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1)];

const WEIGHTS: [f64; 6] = [1.0, 1.0, 1.0, SQRT2, SQRT2, SQRT2];

/// Kelvin position of the unordered pair `{i, j}`.
pub const fn pair_index(i: usize, j: usize) -> usize {
    if i == j {
        i
    } else {
        6 - i - j // {1,2}→3, {0,2}→4, {0,1}→5
    }
}

#[inline]
fn weight(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        SQRT2
    }
}

/// A symmetric 6×6 matrix in Kelvin normalization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Kelvin6 {
    m: [[f64; 6]; 6],
}

impl Kelvin6 {
    /// Accepts `m` when it is finite and symmetric within `1e-12 · max|m|`.
    pub fn new(m: [[f64; 6]; 6]) -> Result<Self> {
        let k = Self { m };
        if !m.iter().flatten().all(|v| v.is_finite()) {
            return Err(Error::Domain("Kelvin matrix has non-finite entries"));
        }
        let scale = k.max_abs().max(f64::MIN_POSITIVE);
        for i in 0..6 {
            for j in 0..i {
                if crate::math::abs(m[i][j] - m[j][i]) > STRUCTURE_TOL * scale {
                    return Err(Error::Domain("Kelvin matrix is not symmetric"));
                }
            }
        }
        Ok(k)
    }

    /// Wraps a matrix the caller knows to be symmetric, averaging away
    /// rounding asymmetry.
    pub(crate) fn new_symmetrized(m: [[f64; 6]; 6]) -> Self {
        let mut out = [[0.0; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                out[i][j] = 0.5 * (m[i][j] + m[j][i]);
            }
        }
        Self { m: out }
    }

    pub fn zero() -> Self {
        Self { m: [[0.0; 6]; 6] }
    }

    /// Identity on symmetric second-order tensors.
    pub fn identity() -> Self {
        let mut m = [[0.0; 6]; 6];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self { m }
    }

    pub fn matrix(&self) -> &[[f64; 6]; 6] {
        &self.m
    }

    /// Builds the matrix from a component function `A(i, j, k, l)` that has
    /// minor and major symmetries.
    pub fn from_components(f: impl Fn(usize, usize, usize, usize) -> f64) -> Self {
        let mut m = [[0.0; 6]; 6];
        for (a, &(i, j)) in PAIRS.iter().enumerate() {
            for (b, &(k, l)) in PAIRS.iter().enumerate() {
                m[a][b] = WEIGHTS[a] * WEIGHTS[b] * f(i, j, k, l);
            }
        }
        Self::new_symmetrized(m)
    }

    /// Component `A_ijkl`.
    pub fn component(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.m[pair_index(i, j)][pair_index(k, l)] / (weight(i, j) * weight(k, l))
    }

    /// All 81 components, last index fastest.
    pub fn to_components(&self) -> [f64; 81] {
        let mut out = [0.0; 81];
        for (n, v) in out.iter_mut().enumerate() {
            *v = self.component(n / 27, (n / 9) % 3, (n / 3) % 3, n % 3);
        }
        out
    }

    /// `(AB)_ijkl = A_ijpq B_pqkl`. The result need not be symmetric, so
    /// the raw matrix is returned.
    pub fn compose_raw(&self, other: &Kelvin6) -> [[f64; 6]; 6] {
        let mut out = [[0.0; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                out[i][j] = (0..6).map(|p| self.m[i][p] * other.m[p][j]).sum();
            }
        }
        out
    }

    /// `AB` for commuting factors (e.g. powers of one tensor), symmetrized.
    pub fn compose(&self, other: &Kelvin6) -> Kelvin6 {
        Self::new_symmetrized(self.compose_raw(other))
    }

    /// `(Ab)_ij = A_ijkl b_kl` for symmetric `b`.
    pub fn apply(&self, b: &Mat3) -> Mat3 {
        let v = to_kelvin_vec(b);
        let mut out = [0.0; 6];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..6).map(|j| self.m[i][j] * v[j]).sum();
        }
        from_kelvin_vec(&out)
    }

    /// `(tr₁₃ A)_jl = A_ijil`.
    pub fn tr13(&self) -> Mat3 {
        let mut out = Mat3::zero();
        for j in 0..3 {
            for l in 0..3 {
                out[(j, l)] = (0..3).map(|i| self.component(i, j, i, l)).sum();
            }
        }
        out
    }

    /// `(tr₁₂ A)_kl = A_iikl`.
    pub fn tr12(&self) -> Mat3 {
        let mut out = Mat3::zero();
        for k in 0..3 {
            for l in 0..3 {
                out[(k, l)] = (0..3).map(|i| self.component(i, i, k, l)).sum();
            }
        }
        out
    }

    /// `g ⋆ A`, i.e. `A'_ijkl = g_ia g_jb g_kc g_ld A_abcd`.
    pub fn rotate(&self, g: &Rotation) -> Kelvin6 {
        let q = rotation6(g);
        let mut tmp = [[0.0; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                tmp[i][j] = (0..6).map(|p| q[i][p] * self.m[p][j]).sum();
            }
        }
        let mut out = [[0.0; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                out[i][j] = (0..6).map(|p| tmp[i][p] * q[j][p]).sum();
            }
        }
        Self::new_symmetrized(out)
    }

    /// Frobenius norm, equal to the full-index tensor norm.
    pub fn norm(&self) -> f64 {
        sqrt(self.m.iter().flatten().map(|v| v * v).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .fold(0.0, |a, v| a.max(crate::math::abs(*v)))
    }

    pub fn scale(&self, s: f64) -> Kelvin6 {
        let mut m = self.m;
        m.iter_mut().flatten().for_each(|v| *v *= s);
        Self { m }
    }

    /// Eigenvalues (ascending) and eigenvectors (columns) of the matrix.
    pub fn eigen(&self) -> ([f64; 6], [[f64; 6]; 6]) {
        sym_eigen(&self.m)
    }
}

impl Add for Kelvin6 {
    type Output = Kelvin6;
    fn add(self, o: Kelvin6) -> Kelvin6 {
        let mut m = self.m;
        for (r, s) in m.iter_mut().zip(o.m.iter()) {
            for (a, b) in r.iter_mut().zip(s) {
                *a += b;
            }
        }
        Kelvin6 { m }
    }
}

impl Sub for Kelvin6 {
    type Output = Kelvin6;
    fn sub(self, o: Kelvin6) -> Kelvin6 {
        self + o.scale(-1.0)
    }
}

impl Neg for Kelvin6 {
    type Output = Kelvin6;
    fn neg(self) -> Kelvin6 {
        self.scale(-1.0)
    }
}

impl Mul<f64> for Kelvin6 {
    type Output = Kelvin6;
    fn mul(self, s: f64) -> Kelvin6 {
        self.scale(s)
    }
}

/// `(b11, b22, b33, √2 b23, √2 b13, √2 b12)`.
pub fn to_kelvin_vec(b: &Mat3) -> [f64; 6] {
    let s = b.sym();
    core::array::from_fn(|a| {
        let (i, j) = PAIRS[a];
        WEIGHTS[a] * s[(i, j)]
    })
}

pub fn from_kelvin_vec(v: &[f64; 6]) -> Mat3 {
    let mut m = Mat3::zero();
    for (a, &(i, j)) in PAIRS.iter().enumerate() {
        m[(i, j)] = v[a] / WEIGHTS[a];
        m[(j, i)] = v[a] / WEIGHTS[a];
    }
    m
}

/// Matrix of `b ↦ g b gᵀ` on Kelvin vectors; it is orthogonal.
pub fn rotation6(g: &Rotation) -> [[f64; 6]; 6] {
    let mut q = [[0.0; 6]; 6];
    for (b, &(k, l)) in PAIRS.iter().enumerate() {
        let mut e = Mat3::zero();
        let s = 1.0 / WEIGHTS[b];
        e[(k, l)] += s;
        if k != l {
            e[(l, k)] += s;
        }
        let col = to_kelvin_vec(&g.rotate_mat(&e));
        for a in 0..6 {
            q[a][b] = col[a];
        }
    }
    q
}

/// Kelvin matrix of an order-4 harmonic (or symmetric) tensor.
pub fn kelvin_from_harm4(h: &HarmTensor) -> Result<Kelvin6> {
    kelvin_from_sym4(h.as_sym())
}

pub fn kelvin_from_sym4(t: &SymTensor) -> Result<Kelvin6> {
    if t.order() != 4 {
        return Err(Error::Dimension {
            expected: 4,
            found: t.order(),
        });
    }
    Ok(Kelvin6::from_components(|i, j, k, l| t.component(&[i, j, k, l])))
}

/// Inverse of [`kelvin_from_harm4`]. The matrix must carry a totally
/// symmetric, traceless tensor (within `1e-12` relative).
pub fn harm4_from_kelvin(k: &Kelvin6) -> Result<HarmTensor> {
    let t = SymTensor::from_components(4, &k.to_components())?;
    let scale = k.norm();
    // total symmetry: the symmetrized tensor must reproduce the input
    let back = kelvin_from_sym4(&t)?;
    if (back - *k).norm() > STRUCTURE_TOL * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Domain("Kelvin matrix is not totally symmetric"));
    }
    if k.tr12().norm() > STRUCTURE_TOL * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Domain("Kelvin matrix is not traceless"));
    }
    HarmTensor::new(t)
}
