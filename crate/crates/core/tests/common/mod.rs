#![allow(dead_code)]

use htk_core::harmonic::harmonic_projection;
use htk_core::kelvin::Kelvin6;
use htk_core::tensor::coeff_len;
use htk_core::{HarmTensor, Mat3, Rotation, SymTensor};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(r: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * ((r.next_u64() >> 11) as f64 / (1u64 << 53) as f64)
}

pub fn random_sym(r: &mut ChaCha8Rng, order: usize) -> SymTensor {
    let c = (0..coeff_len(order)).map(|_| uniform(r, -1.0, 1.0)).collect();
    SymTensor::from_coeffs(order, c).unwrap()
}

pub fn random_harm(r: &mut ChaCha8Rng, order: usize) -> HarmTensor {
    harmonic_projection(&random_sym(r, order))
}

pub fn random_kelvin(r: &mut ChaCha8Rng) -> Kelvin6 {
    let mut m = [[0.0; 6]; 6];
    for i in 0..6 {
        for j in i..6 {
            m[i][j] = uniform(r, -1.0, 1.0);
            m[j][i] = m[i][j];
        }
    }
    Kelvin6::new(m).unwrap()
}

/// Traceless symmetric matrix `g·diag(a, b, −a−b)·gᵀ` with eigenvalue gaps
/// of at least `gap`.
pub fn random_deviator(r: &mut ChaCha8Rng, gap: f64) -> Mat3 {
    loop {
        let a = uniform(r, -2.0, 2.0);
        let b = uniform(r, -2.0, 2.0);
        let c = -a - b;
        if (a - b).abs() >= gap && (b - c).abs() >= gap && (a - c).abs() >= gap {
            return Rotation::random(r).rotate_mat(&Mat3::diag([a, b, c]));
        }
    }
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}
