//! Harmonic tensor toolkit.
//!
//! Symmetric tensors on ℝ³ are stored as homogeneous polynomials. On top of
//! that sit the harmonic decomposition, the harmonic product, the Cartan map
//! to binary forms, Maxwell multipoles, polynomial covariants and the
//! reconstruction of fourth-order harmonic tensors from second-order
//! covariants for the transverse, orthotropic, tetragonal and trigonal
//! classes.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod math;

pub mod binary_forms;
pub mod classify;
pub mod covariants;
pub mod elasticity;
pub mod error;
pub mod factorization;
pub mod harmonic;
pub mod kelvin;
pub mod linalg;
pub mod normal_form;
pub mod reconstruction;
mod roots;
pub mod tensor;

pub use error::{Error, Result};
pub use harmonic::{harmonic_decompose, harmonic_product, harmonic_projection, HarmonicParts};
pub use kelvin::{harm4_from_kelvin, kelvin_from_harm4, Kelvin6};
pub use linalg::{Mat3, Rotation, Vec3};
pub use tensor::{HarmTensor, SymTensor};
