mod common;

use common::*;
use htk_core::binary_forms::{cartan_inverse, cartan_map};
use htk_core::covariants::invariants;
use htk_core::factorization::maxwell_multipoles;
use htk_core::kelvin::{harm4_from_kelvin, kelvin_from_harm4};
use htk_core::{harmonic_decompose, harmonic_product, Rotation};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_recomposes(seed in any::<u64>(), order in 0usize..7) {
        let t = random_sym(&mut rng(seed), order);
        let parts = harmonic_decompose(&t);
        prop_assert_eq!(parts.parts().len(), order / 2 + 1);
        for p in parts.parts() {
            prop_assert!(p.as_sym().is_harmonic(1e-12));
        }
        let back = parts.recompose();
        prop_assert!((&back - &t).norm() <= 1e-12 * t.norm().max(1.0));
    }

    #[test]
    fn product_commutes_exactly(seed in any::<u64>(), n in 0usize..5, m in 0usize..5) {
        let mut r = rng(seed);
        let (a, b) = (random_harm(&mut r, n), random_harm(&mut r, m));
        let ab = harmonic_product(&a, &b);
        prop_assert_eq!(ab.order(), n + m);
        prop_assert_eq!(ab, harmonic_product(&b, &a));
    }

    #[test]
    fn cartan_round_trip(seed in any::<u64>(), order in 1usize..7) {
        let h = random_harm(&mut rng(seed), order);
        let f = cartan_map(&h);
        prop_assert_eq!(f.degree(), 2 * order);
        prop_assert!(cartan_inverse(&f).unwrap().rel_dist(&h) <= 1e-12);
    }

    #[test]
    fn invariants_ignore_rotation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let h = random_harm(&mut r, 4);
        let g = Rotation::random(&mut r);
        let (a, b) = (invariants(&h).unwrap(), invariants(&h.rotate(&g)).unwrap());
        for k in 2..=10 {
            prop_assert!(rel(a.jk(k), b.jk(k)) <= 1e-9 * h.norm().powi(k as i32).max(1.0));
        }
    }

    #[test]
    fn kelvin_round_trip(seed in any::<u64>()) {
        let h = random_harm(&mut rng(seed), 4);
        let k = kelvin_from_harm4(&h).unwrap();
        prop_assert!(harm4_from_kelvin(&k).unwrap().rel_dist(&h) <= 1e-14);
    }

    #[test]
    fn multipoles_rebuild(seed in any::<u64>(), order in 1usize..6) {
        let mut r = rng(seed);
        let h = random_harm(&mut r, order);
        let m = maxwell_multipoles(&h, &mut r).unwrap();
        prop_assert_eq!(m.vectors.len(), order);
        if !m.ill_conditioned {
            prop_assert!(m.residual <= 1e-8);
        }
    }
}
