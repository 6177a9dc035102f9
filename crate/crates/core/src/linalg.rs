//! Small dense kernels: vectors, 3×3 matrices, rotations and a Jacobi
//! eigensolver for symmetric matrices.

use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::math::{abs, cos, sin, sqrt};

/// A vector of ℝ³.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub const fn e1() -> Self {
        Self::new(1.0, 0.0, 0.0)
    }

    pub const fn e2() -> Self {
        Self::new(0.0, 1.0, 0.0)
    }

    pub const fn e3() -> Self {
        Self::new(0.0, 0.0, 1.0)
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, o: Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        sqrt(self.dot(self))
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Symmetric dyad `a ⊗ b + b ⊗ a` halved.
    pub fn sym_outer(self, other: Self) -> Mat3 {
        let a = self.to_array();
        let b = other.to_array();
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m[(i, j)] = 0.5 * (a[i] * b[j] + a[j] * b[i]);
            }
        }
        m
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Dense 3×3 real matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const fn zero() -> Self {
        Mat3([[0.0; 3]; 3])
    }

    pub const fn identity() -> Self {
        Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn diag(d: [f64; 3]) -> Self {
        Mat3([[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]])
    }

    pub fn transpose(&self) -> Self {
        let mut t = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] = self.0[j][i];
            }
        }
        t
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut r = *self;
        for row in r.0.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        r
    }

    /// Frobenius norm `√(mᵢⱼ mᵢⱼ)`.
    pub fn norm(&self) -> f64 {
        sqrt(self.0.iter().flatten().map(|v| v * v).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, v| m.max(abs(*v)))
    }

    /// Deviatoric part `m − (tr m / 3) 1`.
    pub fn deviator(&self) -> Self {
        *self - Mat3::identity().scale(self.trace() / 3.0)
    }

    /// `(m + mᵀ) / 2`.
    pub fn sym(&self) -> Self {
        (*self + self.transpose()).scale(0.5)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        (0..3).all(|i| (0..3).all(|j| abs(self.0[i][j] - self.0[j][i]) <= tol * scale))
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        let a = v.to_array();
        let m = &self.0;
        Vec3::new(
            m[0][0] * a[0] + m[0][1] * a[1] + m[0][2] * a[2],
            m[1][0] * a[0] + m[1][1] * a[1] + m[1][2] * a[2],
            m[2][0] * a[0] + m[2][1] * a[1] + m[2][2] * a[2],
        )
    }

    /// Full contraction `aᵢⱼ bᵢⱼ`.
    pub fn ddot(&self, other: &Mat3) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += self.0[i][j] * other.0[i][j];
            }
        }
        s
    }

    pub fn column(&self, j: usize) -> Vec3 {
        Vec3::new(self.0[0][j], self.0[1][j], self.0[2][j])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|v| v.is_finite())
    }
}

impl Index<(usize, usize)> for Mat3 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.0[i][j]
    }
}

impl Add for Mat3 {
    type Output = Mat3;
    fn add(self, o: Mat3) -> Mat3 {
        let mut r = self;
        for i in 0..3 {
            for j in 0..3 {
                r.0[i][j] += o.0[i][j];
            }
        }
        r
    }
}

impl Sub for Mat3 {
    type Output = Mat3;
    fn sub(self, o: Mat3) -> Mat3 {
        let mut r = self;
        for i in 0..3 {
            for j in 0..3 {
                r.0[i][j] -= o.0[i][j];
            }
        }
        r
    }
}

impl Neg for Mat3 {
    type Output = Mat3;
    fn neg(self) -> Mat3 {
        self.scale(-1.0)
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, o: Mat3) -> Mat3 {
        let mut r = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                r.0[i][j] = (0..3).map(|k| self.0[i][k] * o.0[k][j]).sum();
            }
        }
        r
    }
}

const ORTHO_TOL: f64 = 1e-12;

/// An element of SO(3), acting on tensors by `(g ⋆ p)(x) = p(g⁻¹ x)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation {
    m: Mat3,
}

impl Rotation {
    /// Checks `mᵀm = 1` and `det m = 1` within 1e-12.
    pub fn new(m: Mat3) -> Result<Self> {
        let defect = (m.transpose() * m - Mat3::identity()).max_abs();
        if !m.is_finite() || defect > ORTHO_TOL || abs(m.det() - 1.0) > ORTHO_TOL {
            return Err(Error::Domain("matrix is not a proper rotation"));
        }
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        Self {
            m: Mat3::identity(),
        }
    }

    /// Rotation by `angle` about `axis` (right-hand rule); the axis need not be
    /// normalized but must be non-zero.
    pub fn about_axis(axis: Vec3, angle: f64) -> Self {
        let n = axis.norm();
        assert!(n > 0.0, "rotation axis must be non-zero");
        let k = axis.scale(1.0 / n);
        let (s, c) = (sin(angle), cos(angle));
        let t = 1.0 - c;
        let (x, y, z) = (k.x, k.y, k.z);
        Self {
            m: Mat3([
                [c + x * x * t, x * y * t - z * s, x * z * t + y * s],
                [y * x * t + z * s, c + y * y * t, y * z * t - x * s],
                [z * x * t - y * s, z * y * t + x * s, c + z * z * t],
            ]),
        }
    }

    /// Rotation of a unit quaternion `(w, x, y, z)`; the input is normalized.
    pub fn from_quaternion(q: [f64; 4]) -> Self {
        let n = sqrt(q.iter().map(|v| v * v).sum());
        let [a, b, c, d] = [q[0] / n, q[1] / n, q[2] / n, q[3] / n];
        Self {
            m: Mat3([
                [
                    a * a + b * b - c * c - d * d,
                    2.0 * (b * c - a * d),
                    2.0 * (b * d + a * c),
                ],
                [
                    2.0 * (b * c + a * d),
                    a * a - b * b + c * c - d * d,
                    2.0 * (c * d - a * b),
                ],
                [
                    2.0 * (b * d - a * c),
                    2.0 * (c * d + a * b),
                    a * a - b * b - c * c + d * d,
                ],
            ]),
        }
    }

    /// Haar-uniform rotation (Shoemake's subgroup algorithm).
    pub fn random<R: RngCore + ?Sized>(rng: &mut R) -> Self {
        let u1 = unit_f64(rng);
        let u2 = unit_f64(rng);
        let u3 = unit_f64(rng);
        let tau = 2.0 * core::f64::consts::PI;
        let (r1, r2) = (sqrt(1.0 - u1), sqrt(u1));
        Self::from_quaternion([
            r1 * sin(tau * u2),
            r1 * cos(tau * u2),
            r2 * sin(tau * u3),
            r2 * cos(tau * u3),
        ])
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    pub fn inverse(&self) -> Self {
        Self {
            m: self.m.transpose(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Rotation) -> Self {
        Self {
            m: self.m * other.m,
        }
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &Rotation) -> Self {
        self.compose(other).compose(&self.inverse())
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        self.m.apply(v)
    }

    /// `g m gᵀ`, the action on second-order tensors.
    pub fn rotate_mat(&self, m: &Mat3) -> Mat3 {
        self.m * *m * self.m.transpose()
    }
}

/// Uniform sample in `[0, 1)` with 53 random bits.
pub(crate) fn unit_f64<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Cyclic Jacobi eigen-decomposition of a symmetric `N×N` matrix.
///
/// Returns eigenvalues in ascending order and the matching eigenvectors as
/// columns.
pub fn sym_eigen<const N: usize>(a: &[[f64; N]; N]) -> ([f64; N], [[f64; N]; N]) {
    let mut m = *a;
    let mut v = [[0.0; N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..N)
            .flat_map(|i| (0..N).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum();
        let total: f64 = m.iter().flatten().map(|x| x * x).sum();
        if off <= 1e-30 * total || off == 0.0 {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                if m[p][q] == 0.0 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (abs(theta) + sqrt(theta * theta + 1.0));
                let c = 1.0 / sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..N {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..N {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order = [0usize; N];
    for (i, o) in order.iter_mut().enumerate() {
        *o = i;
    }
    order.sort_by(|&i, &j| m[i][i].partial_cmp(&m[j][j]).unwrap_or(core::cmp::Ordering::Equal));
    let mut vals = [0.0; N];
    let mut vecs = [[0.0; N]; N];
    for (new, &old) in order.iter().enumerate() {
        vals[new] = m[old][old];
        for k in 0..N {
            vecs[k][new] = v[k][old];
        }
    }
    (vals, vecs)
}

/// Rotation whose columns are the eigenvectors of the symmetric matrix `m`
/// (ascending eigenvalues), with the last column flipped if needed so that
/// the determinant is +1.
pub fn eigenframe(m: &Mat3) -> ([f64; 3], Rotation) {
    let (vals, vecs) = sym_eigen(&m.0);
    let mut f = Mat3(vecs);
    if f.det() < 0.0 {
        for row in f.0.iter_mut() {
            row[2] = -row[2];
        }
    }
    (vals, Rotation { m: f })
}
