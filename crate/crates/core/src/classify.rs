//! Residual-based routing of a fourth-order harmonic tensor to a symmetry
//! class.
//!
//! This is a heuristic. Candidate classes are tried from the most to the
//! least symmetric, and the first whose reconstruction reproduces the
//! tensor to within `tol` wins. Cubic tensors have spheric second-order
//! covariants and admit no such reconstruction, so they are detected by
//! invariance under the quarter turns of a frame read off the Kelvin
//! eigenspaces. Anything unmatched is reported as `Lower`, which pools the
//! monoclinic, triclinic and cyclic classes.

use core::fmt;

use crate::covariants::{covariants_kelvin, DEGENERACY};
use crate::kelvin::{from_kelvin_vec, kelvin_from_harm4, Kelvin6};
use crate::linalg::{eigenframe, Rotation};
use crate::normal_form::o1_generators;
use crate::reconstruction::{reconstruct_orthotropic, reconstruct_transverse, tetragonal_split, trigonal_split};
use crate::tensor::HarmTensor;

pub const DEFAULT_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    Isotropic,
    Cubic,
    Transverse,
    Tetragonal,
    Trigonal,
    Orthotropic,
    Lower,
}

impl SymmetryClass {
    pub const ALL: [SymmetryClass; 7] = [
        SymmetryClass::Isotropic,
        SymmetryClass::Cubic,
        SymmetryClass::Transverse,
        SymmetryClass::Tetragonal,
        SymmetryClass::Trigonal,
        SymmetryClass::Orthotropic,
        SymmetryClass::Lower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SymmetryClass::Isotropic => "isotropic",
            SymmetryClass::Cubic => "cubic",
            SymmetryClass::Transverse => "transverse",
            SymmetryClass::Tetragonal => "tetragonal",
            SymmetryClass::Trigonal => "trigonal",
            SymmetryClass::Orthotropic => "orthotropic",
            SymmetryClass::Lower => "lower",
        }
    }
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassLabel {
    pub tag: SymmetryClass,
    /// Relative distance to the matched model; for `Lower`, the smallest
    /// residual among the rejected candidates.
    pub residual: f64,
}

/// `max ‖g ⋆ h − h‖ / ‖h‖` over the generators (0 for the zero tensor).
pub fn symmetry_residual(h: &HarmTensor, generators: &[Rotation]) -> f64 {
    let n = h.norm();
    if n == 0.0 {
        return 0.0;
    }
    generators
        .iter()
        .map(|g| (&h.rotate(g) - h).norm() / n)
        .fold(0.0, f64::max)
}

/// Invariance residual under the octahedral group of the best candidate
/// cube frame.
fn cubic_residual(h: &HarmTensor, k: &Kelvin6) -> f64 {
    let (vals, vecs) = k.eigen();
    // s𝒞₀¹ has spectrum {−8s ×3, 0, 12s ×2}: the double eigenvalue sits at
    // the end with the larger magnitude
    let cols: [usize; 2] = if vals[5].abs() >= vals[0].abs() { [4, 5] } else { [0, 1] };
    let col = |j: usize| -> [f64; 6] { core::array::from_fn(|i| vecs[i][j]) };
    let (a, b) = (col(cols[0]), col(cols[1]));
    let mut best = f64::INFINITY;
    for t in [0.381966, 1.618034, -0.7] {
        let v: [f64; 6] = core::array::from_fn(|i| a[i] + t * b[i]);
        let (_, frame) = eigenframe(&from_kelvin_vec(&v));
        let gens: alloc::vec::Vec<Rotation> = o1_generators().iter().map(|g| frame.conjugate(g)).collect();
        best = best.min(symmetry_residual(h, &gens));
    }
    best
}

pub fn classify(h: &HarmTensor, tol: f64) -> ClassLabel {
    let n = h.norm();
    if h.order() != 4 || n <= tol {
        return ClassLabel {
            tag: if n <= tol { SymmetryClass::Isotropic } else { SymmetryClass::Lower },
            residual: n,
        };
    }
    let k = match kelvin_from_harm4(h) {
        Ok(k) => k,
        Err(_) => {
            return ClassLabel {
                tag: SymmetryClass::Lower,
                residual: f64::INFINITY,
            }
        }
    };
    let mut lowest = f64::INFINITY;
    let mut accept = |tag: SymmetryClass, r: f64| -> Option<ClassLabel> {
        lowest = lowest.min(r);
        (r <= tol).then_some(ClassLabel { tag, residual: r })
    };

    let d2 = covariants_kelvin(&k).deviatoric(2);
    if d2.norm() <= DEGENERACY * n * n {
        if let Some(l) = accept(SymmetryClass::Cubic, cubic_residual(h, &k)) {
            return l;
        }
    }
    let residual = |r: crate::error::Result<HarmTensor>| r.map_or(f64::INFINITY, |x| x.rel_dist(h));
    if let Some(l) = accept(SymmetryClass::Transverse, residual(reconstruct_transverse(h))) {
        return l;
    }
    let tet = residual(tetragonal_split(h, 1).map(|s| s.sum()));
    if let Some(l) = accept(SymmetryClass::Tetragonal, tet) {
        return l;
    }
    let tri = residual(trigonal_split(h, 1).map(|s| s.sum()));
    if let Some(l) = accept(SymmetryClass::Trigonal, tri) {
        return l;
    }
    if let Some(l) = accept(SymmetryClass::Orthotropic, residual(reconstruct_orthotropic(h))) {
        return l;
    }
    ClassLabel {
        tag: SymmetryClass::Lower,
        residual: lowest,
    }
}
