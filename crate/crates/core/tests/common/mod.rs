//! Shared generators for the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use resdg::arith::{term, CoefficientDomain, MonomialOrder, PolyRing, Ring, RingElement};
use resdg::complexes::{koszul_complex, koszul_witness, FreeComplex};
use resdg::modules::Matrix;

pub fn ring(domain: CoefficientDomain, vars: &[&str]) -> Ring {
    PolyRing::new(domain, vars, MonomialOrder::GRevLex).unwrap()
}

pub fn xyzw(domain: CoefficientDomain) -> Ring {
    ring(domain, &["x", "y", "z", "w"])
}

pub fn elems(r: &Ring, gens: &[&str]) -> Vec<RingElement> {
    gens.iter().map(|s| RingElement::parse(r, s).unwrap()).collect()
}

/// Sparse random element: zero about a third of the time, otherwise one or
/// two terms of degree at most `max_deg` with coefficients in `[-3, 3]`
/// (divided by a small denominator now and then over ℚ).
pub fn random_element(rng: &mut ChaCha8Rng, r: &Ring, max_deg: u32) -> RingElement {
    if rng.gen_bool(0.35) {
        return RingElement::zero(r);
    }
    let nv = r.nvars();
    let mut acc = RingElement::zero(r);
    for _ in 0..rng.gen_range(1..=2) {
        let mut exps = vec![0u32; nv];
        if nv > 0 {
            for _ in 0..rng.gen_range(0..=max_deg) {
                exps[rng.gen_range(0..nv)] += 1;
            }
        }
        let mut c = rng.gen_range(-3i64..=3);
        if c == 0 {
            c = 1;
        }
        acc = &acc + &term(r, c, &exps);
    }
    if *r.domain() == CoefficientDomain::Rationals && rng.gen_bool(0.3) {
        let den = rng.gen_range(2i64..=5);
        let q = BigRational::new(BigInt::from(1), BigInt::from(den));
        acc = acc.scale(&q);
    }
    acc
}

pub fn random_matrix(rng: &mut ChaCha8Rng, r: &Ring, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(r, rows, cols, |_, _| random_element(rng, r, 2))
}

/// Schoolbook product, independent of the library's matrix code.
pub fn product(r: &Ring, a: &Matrix, b: &Matrix) -> Matrix {
    assert_eq!(a.cols(), b.rows());
    Matrix::from_fn(r, a.rows(), b.cols(), |i, j| {
        (0..a.cols()).fold(RingElement::zero(r), |acc, k| &acc + &(a.get(i, k) * b.get(k, j)))
    })
}

/// A random unimodular matrix and its inverse, built from elementary
/// matrices `1 + c·E_ij` with linear polynomial `c` and sign flips.
pub fn unimodular(rng: &mut ChaCha8Rng, r: &Ring, n: usize, steps: usize) -> (Matrix, Matrix) {
    let mut a = Matrix::identity(r, n);
    let mut inv = Matrix::identity(r, n);
    if n == 0 {
        return (a, inv);
    }
    for _ in 0..steps {
        let mut e = Matrix::identity(r, n);
        let mut e_inv = Matrix::identity(r, n);
        if n >= 2 && rng.gen_bool(0.8) {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let c = random_element(rng, r, 1);
            e.set(i, j, c.clone());
            e_inv.set(i, j, c.scale_i64(-1));
        } else {
            let k = rng.gen_range(0..n);
            e.set(k, k, RingElement::from_i64(r, -1));
            e_inv.set(k, k, RingElement::from_i64(r, -1));
        }
        a = product(r, &a, &e);
        inv = product(r, &e_inv, &inv);
    }
    (a, inv)
}

/// The complex `F` rewritten in the bases given by the columns of `A_1,
/// A_2, A_3` (with `A_0 = A_4 = 1`), together with the transported witness
/// `φ′_i = A_{4-i}ᵀ φ_i A_i`.
pub fn change_basis(f: &FreeComplex, phi: &[Matrix; 5], a: &[(Matrix, Matrix); 3]) -> (FreeComplex, [Matrix; 5]) {
    let r = f.ring();
    let pair = |k: usize| -> (Matrix, Matrix) {
        if k == 0 || k == 4 {
            (Matrix::identity(r, 1), Matrix::identity(r, 1))
        } else {
            a[k - 1].clone()
        }
    };
    let d = |k: usize| product(r, &pair(k - 1).1, &product(r, f.d(k), &pair(k).0));
    let g = FreeComplex::new(r, d(1), d(2), d(3), d(4)).unwrap();
    let phi2 = std::array::from_fn(|i| product(r, &pair(4 - i).0.transpose(), &product(r, &phi[i], &pair(i).0)));
    (g, phi2)
}

/// Koszul complex on `gens` in a random basis, with its transported witness.
pub fn scrambled_koszul(rng: &mut ChaCha8Rng, r: &Ring, gens: &[&str], steps: usize) -> (FreeComplex, [Matrix; 5]) {
    let f = koszul_complex(r, &elems(r, gens)).unwrap();
    let a = [unimodular(rng, r, 4, steps), unimodular(rng, r, 6, steps), unimodular(rng, r, 4, steps)];
    change_basis(&f, &koszul_witness(r), &a)
}
