use proptest::prelude::*;

use num_complex::Complex64;
use qbases_core::coalgebra::{casimir_spectrum_defect, flip_symmetry_defect};
use qbases_core::linalg::{commutator, kron, identity, max_diff, max_norm};
use qbases_core::repmod::{commutator_defect, q_casimir_operator};
use qbases_core::scalar::SERIES_THRESHOLD;
use qbases_core::{
    build_irrep, change_basis, coproduct_analytical, coproduct_primitive, coproduct_quantum, evaluate, q_number,
    q_ratio, symmetrize, BasisChangeSpec, DeformParam, Generator, HalfInt, NcWord,
};

/// `|z| <= 1`, mixing real, imaginary and complex values.
fn param() -> impl Strategy<Value = DeformParam> {
    prop_oneof![
        (-1.0f64..1.0).prop_map(DeformParam::real),
        (-1.0f64..1.0).prop_map(DeformParam::imag),
        (0.0f64..1.0, 0.0f64..std::f64::consts::TAU)
            .prop_map(|(r, th)| DeformParam::new(r * th.cos(), r * th.sin()).unwrap()),
    ]
}

fn spin_upto(twice_max: i32) -> impl Strategy<Value = HalfInt> {
    (0..=twice_max).prop_map(|t| HalfInt::spin(t).unwrap())
}

fn half_step(max_twice: i32) -> impl Strategy<Value = f64> {
    (-max_twice..=max_twice).prop_map(|t| f64::from(t) / 2.0)
}

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![Just(Generator::Three), Just(Generator::Plus), Just(Generator::Minus)]
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn q_number_parity(n in half_step(6), z in param()) {
        prop_assert_eq!(q_number(-n, z), -q_number(n, z));
        prop_assert!((q_number(n, -z) - q_number(n, z)).norm() <= 1e-15 * q_number(n, z).norm().max(1.0));
    }

    #[test]
    fn series_branch_matches_direct_on_crossover(
        n in 0.5f64..4.0,
        shell in 0.9f64..1.1,
        theta in 0.0f64..std::f64::consts::TAU,
    ) {
        let r = shell * SERIES_THRESHOLD / n;
        let z = Complex64::from_polar(r, theta);
        let direct = (z * n).sinh() / z;
        let got = q_number(n, DeformParam::from_complex(z).unwrap());
        prop_assert!(rel(got, direct) < 1e-13, "{} vs {}", got, direct);
    }

    #[test]
    fn q_ratio_times_denominator(a in half_step(12), b in half_step(12), zp in param()) {
        let den = q_number(b, zp);
        prop_assume!(b != 0.0 && den.norm() > 1e-3);
        let r = q_ratio(a, b, zp).unwrap();
        let want = q_number(a, zp);
        prop_assert!((r * den - want).norm() <= 1e-10 * want.norm().max(1e-300) || want.norm() == 0.0);
    }

    #[test]
    fn deformed_commutation_relations(j in spin_upto(12), zp in param()) {
        let rep = build_irrep(j, zp).unwrap();
        let up = commutator(rep.x3(), rep.xplus()) - rep.xplus();
        let down = commutator(rep.x3(), rep.xminus()) + rep.xminus();
        prop_assert!(max_norm(&up) <= 1e-13 && max_norm(&down) <= 1e-13);
        prop_assert!(commutator_defect(&rep, zp) <= 1e-10);
    }

    #[test]
    fn ladder_entries_are_mirror_images(j in spin_upto(12), zp in param()) {
        let rep = build_irrep(j, zp).unwrap();
        for k in 1..rep.dim() {
            prop_assert!((rep.xplus()[(k - 1, k)] - rep.xminus()[(k, k - 1)]).norm() <= 1e-13);
        }
    }

    #[test]
    fn zprime_sign_invariance(j in spin_upto(12), zp in param()) {
        let a = build_irrep(j, zp).unwrap();
        let b = build_irrep(j, -zp).unwrap();
        prop_assert!(a.triple().max_diff(b.triple()) <= 1e-13);
    }

    #[test]
    fn casimir_is_central(j in spin_upto(8), zp in param()) {
        let rep = build_irrep(j, zp).unwrap();
        let c = q_casimir_operator(&rep, zp);
        for x in [rep.x3(), rep.xplus(), rep.xminus()] {
            prop_assert!(max_norm(&commutator(&c, x)) <= 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn change_basis_composes(j in spin_upto(8), z in param(), a in param(), b in param()) {
        let src = build_irrep(j, z).unwrap();
        let via = change_basis(&src, &BasisChangeSpec::new(j, z, a).unwrap()).unwrap();
        let via = change_basis(&via, &BasisChangeSpec::new(j, a, b).unwrap()).unwrap();
        let direct = change_basis(&src, &BasisChangeSpec::new(j, z, b).unwrap()).unwrap();
        prop_assert!(via.triple().max_diff(direct.triple()) <= 1e-9);
    }

    #[test]
    fn change_basis_lands_in_target_algebra(j in spin_upto(8), z in param(), zt in param()) {
        let out = change_basis(&build_irrep(j, z).unwrap(), &BasisChangeSpec::new(j, z, zt).unwrap()).unwrap();
        prop_assert!(commutator_defect(&out, zt) <= 1e-10);
    }

    #[test]
    fn weight_coproduct_is_primitive(j1 in spin_upto(4), j2 in spin_upto(4), z in param(), zp in param()) {
        let a = build_irrep(j1, z).unwrap();
        let b = build_irrep(j2, z).unwrap();
        let want = kron(a.x3(), &identity(b.dim())) + kron(&identity(a.dim()), b.x3());
        let prim = coproduct_primitive(a.triple(), b.triple());
        let ana = coproduct_analytical(a.triple(), b.triple(), z).unwrap();
        let quant = coproduct_quantum(j1, j2, z, zp).unwrap();
        for t in [&prim, &ana, &quant] {
            prop_assert_eq!(t.d3(), &want);
        }
    }

    #[test]
    fn flip_covariance(j1 in spin_upto(4), j2 in spin_upto(4), z in param()) {
        let a = build_irrep(j1, z).unwrap().into_triple();
        let b = build_irrep(j2, z).unwrap().into_triple();
        prop_assert!(flip_symmetry_defect(&a, &b, z).unwrap() <= 1e-12);
    }

    #[test]
    fn quantum_coproduct_spectrum(j1 in spin_upto(3), j2 in spin_upto(3), z in param(), zp in param()) {
        let t = coproduct_quantum(j1, j2, z, zp).unwrap();
        prop_assert!(casimir_spectrum_defect(&t, j1, j2).unwrap() <= 1e-9);
    }

    #[test]
    fn symmetrizer_coefficients_sum_to_one(word in prop::collection::vec(generator(), 0..=6)) {
        let s = symmetrize(&NcWord::new(word)).unwrap();
        let total: Complex64 = s.terms().map(|(_, v)| *v).sum();
        prop_assert!((total - Complex64::new(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn symmetrizer_idempotent_on_matrices(word in prop::collection::vec(generator(), 1..=5), j in spin_upto(4)) {
        let rep = build_irrep(j, DeformParam::real(0.3)).unwrap();
        let once = symmetrize(&NcWord::new(word)).unwrap();
        let twice = once.symmetrized().unwrap();
        let (a, b) = (evaluate(&once, rep.triple()), evaluate(&twice, rep.triple()));
        prop_assert!(max_diff(&a, &b) <= 1e-13 * max_norm(&a).max(1.0));
    }
}
