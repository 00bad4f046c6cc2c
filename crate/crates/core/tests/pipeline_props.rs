mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use resdg::arith::{CoefficientDomain, Ring, RingElement};
use resdg::complexes::{check_self_duality, koszul_complex, koszul_witness, validate_resolution, FreeComplex};
use resdg::modules::{vector, Matrix};
use resdg::pipeline::{build_dg, build_psi12, build_psi13, build_skeleton, perfect_correction, DGStructure, PairingSet};
use resdg::verify::{self, Algebra, CheckLevel};

use common::{elems, random_element, scrambled_koszul, xyzw};

const SEQUENCES: &[&[&str]] = &[&["x", "y", "z", "w"], &["x^2", "y", "z + x", "w"], &["x + y", "y^2 - z", "z*w + x", "w^3"]];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// The pipeline is insensitive to the basis in which the input is
    /// written: a Koszul complex in a random polynomial basis still yields
    /// a verified structure.
    #[test]
    fn pipeline_survives_a_change_of_basis(seed in any::<u64>(), which in 0..SEQUENCES.len()) {
        let r = xyzw(CoefficientDomain::Integers);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, phi) = scrambled_koszul(&mut rng, &r, SEQUENCES[which], 3);
        let w = check_self_duality(&g, phi).unwrap();
        let vg = validate_resolution(&g).unwrap();
        let out = build_dg(&vg, &w).unwrap();
        let report = verify::verify_all(&g, &out.structure, CheckLevel::Exhaustive);
        prop_assert!(report.passed(), "{}", report);
        prop_assert_eq!(out.bezout.2, 31);
        prop_assert_eq!(out.n_trajectory.len(), 5);
        prop_assert!(verify::replay_trace(&g, &out.trace).passed());
    }
}

fn pipeline_intermediates(r: &Ring, gens: &[&str]) -> (FreeComplex, PairingSet, Vec<(Matrix, BigInt)>) {
    let f = koszul_complex(r, &elems(r, gens)).unwrap();
    let w = check_self_duality(&f, koszul_witness(r)).unwrap();
    let vf = validate_resolution(&f).unwrap();
    let (sk, psi3, psi4) = build_skeleton(&vf).unwrap();
    let (p, sk, _) = perfect_correction(&f, &sk, &psi3, &psi4, &w).unwrap();
    let p13 = build_psi13(&f, &p, &sk).unwrap();
    let (_, steps, zero) = build_psi12(&f, &p).unwrap();
    let mut maps = vec![(p13.result.psi1, p13.result.n), (zero.result.psi1, zero.result.n)];
    maps.extend(steps.into_iter().take(2).map(|s| (s.result.psi1, s.result.n)));
    (f, p, maps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn compatibility_is_linear(a in -6i64..=6, b in -6i64..=6, i in 0usize..4, j in 0usize..4, which in 0..2usize) {
        let r = xyzw(CoefficientDomain::Integers);
        let (f, p, maps) = pipeline_intermediates(&r, SEQUENCES[which]);
        let (psi, n) = &maps[i];
        let (psi_b, m) = &maps[j];
        let combo = &psi.scale_i64(a) + &psi_b.scale_i64(b);
        let k = BigInt::from(a) * n + BigInt::from(b) * m;
        prop_assert!(verify::check_compatibility(&f, &p.psi4, &combo, &k).passed());
        let off = &k + BigInt::from(1);
        prop_assert!(!verify::check_compatibility(&f, &p.psi4, &combo, &off).passed());
    }
}

fn random_vec(rng: &mut ChaCha8Rng, r: &Ring, n: usize) -> Vec<RingElement> {
    (0..n).map(|_| random_element(rng, r, 1)).collect()
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn built_structure(r: &Ring, gens: &[&str]) -> (FreeComplex, DGStructure) {
    let f = koszul_complex(r, &elems(r, gens)).unwrap();
    let w = check_self_duality(&f, koszul_witness(r)).unwrap();
    let out = build_dg(&validate_resolution(&f).unwrap(), &w).unwrap();
    (f, out.structure)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Basis-level verification is enough: the axioms hold on random
    /// non-basis elements with polynomial coefficients.
    #[test]
    fn axioms_hold_on_random_elements(seed in any::<u64>(), which in 0..SEQUENCES.len()) {
        let r = xyzw(CoefficientDomain::Integers);
        let (f, d) = built_structure(&r, SEQUENCES[which]);
        let alg = Algebra::new(&f, &d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..4 {
            let i = rng.gen_range(0..=4usize);
            let j = rng.gen_range(0..=4 - i);
            let x = random_vec(&mut rng, &r, alg.rank(i));
            let y = random_vec(&mut rng, &r, alg.rank(j));
            let xy = alg.mul(i, &x, j, &y);
            // graded commutativity
            let yx = alg.mul(j, &y, i, &x);
            prop_assert_eq!(&xy, &vector::scale(&RingElement::from_i64(&r, sign(i * j)), &yx));
            // Leibniz
            if i + j >= 1 {
                let lhs = alg.d(i + j, &xy);
                let t1 = if i >= 1 { alg.mul(i - 1, &alg.d(i, &x), j, &y) } else { alg.zero(i + j - 1) };
                let t2 = if j >= 1 { alg.mul(i, &x, j - 1, &alg.d(j, &y)) } else { alg.zero(i + j - 1) };
                let rhs = vector::add(&t1, &vector::scale(&RingElement::from_i64(&r, sign(i)), &t2));
                prop_assert_eq!(lhs, rhs);
            }
            // associativity
            if i + j < 4 {
                let k = rng.gen_range(0..=4 - i - j);
                let z = random_vec(&mut rng, &r, alg.rank(k));
                let left = alg.mul(i + j, &xy, k, &z);
                let right = alg.mul(i, &x, j + k, &alg.mul(j, &y, k, &z));
                prop_assert_eq!(left, right);
            }
        }
        // divided powers: d(x^(2)) = d(x)·x, (x + y)^(2) = x^(2) + xy + y^(2), x·x = 2x^(2)
        let x = random_vec(&mut rng, &r, alg.rank(2));
        let y = random_vec(&mut rng, &r, alg.rank(2));
        prop_assert_eq!(alg.d(4, &alg.square2(&x)), alg.mul(1, &alg.d(2, &x), 2, &x));
        let lhs = alg.square2(&vector::add(&x, &y));
        let rhs = vector::add(&vector::add(&alg.square2(&x), &alg.mul(2, &x, 2, &y)), &alg.square2(&y));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(alg.mul(2, &x, 2, &x), vector::scale(&RingElement::from_i64(&r, 2), &alg.square2(&x)));
        // (x₁y₁)^(2) = 0
        let x1 = random_vec(&mut rng, &r, alg.rank(1));
        let y1 = random_vec(&mut rng, &r, alg.rank(1));
        prop_assert!(vector::is_zero(&alg.square2(&alg.mul(1, &x1, 1, &y1))));
    }
}
