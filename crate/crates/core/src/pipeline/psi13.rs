//! A 3-compatible alternating product built from the skeleton maps.

use num_bigint::BigInt;

use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::lift::solve_post;
use crate::modules::vector;
use crate::modules::{wedge_projection, Matrix, WedgeSquareBasis};
use crate::pipeline::{chi_lift, ensure, CompatiblePsi1, HomotopySkeleton, PairingSet};
use crate::verify;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Psi13 {
    /// `α: ∧²F₁ → F₂`, `r₂ × |∧²F₁|`.
    pub alpha: Matrix,
    /// `γ: ∧²F₁ → F₃` with `d₃γ = α`.
    pub gamma: Matrix,
    pub result: CompatiblePsi1,
}

/// `Ψ₁,₃ = (3ψ₁† − d₃γ)` on `∧²F₁`, where `α = d₃γ` is determined by
/// `ψ₄(x₂·α(x∧y)) = 2ψ₄(ψ₁†(x∧y)·x₂) + ψ₃(y⊗ψ₂†(x⊗x₂)) − ψ₃(x⊗ψ₂†(y⊗x₂))`.
pub fn build_psi13(f: &FreeComplex, p: &PairingSet, sk: &HomotopySkeleton) -> Result<Psi13> {
    let ring = f.ring();
    let [_, r1, r2, r3, _] = f.ranks();
    let wb = WedgeSquareBasis::new(r1);
    let e1 = |i: usize| vector::unit(ring, r1, i);
    let f2 = |b: usize| vector::unit(ring, r2, b);
    let psi2d = |x1: usize, x2: usize| sk.psi2_dagger.column(x1 * r2 + x2);

    let mut alpha_cols = Vec::with_capacity(wb.len());
    for (k, &(i, j)) in wb.pairs().iter().enumerate() {
        let pd = sk.psi1_dagger.column(k);
        let ell: Vec<_> = (0..r2)
            .map(|b| {
                let t1 = p.pair22(&pd, &f2(b)).scale_i64(2);
                let t2 = p.pair13(&e1(j), &psi2d(i, b));
                let t3 = p.pair13(&e1(i), &psi2d(j, b));
                &(&t1 + &t2) - &t3
            })
            .collect();
        alpha_cols.push(p.represent_in_f2(&ell));
    }
    let alpha = Matrix::from_columns(ring, r2, &alpha_cols);
    if !f.d(2).try_mul(&alpha)?.is_zero() {
        return Err(Error::internal("d2∘alpha = 0", "alpha is not a cycle"));
    }
    let gamma = solve_post(f.d(3), &alpha, "gamma with d3∘gamma = alpha")?;
    debug_assert_eq!(gamma.rows(), r3);
    let on_wedge = &sk.psi1_dagger.scale_i64(3) - &(f.d(3) * &gamma);
    let psi1 = on_wedge * wedge_projection(ring, r1);
    let n = BigInt::from(3);
    ensure(verify::check_compatibility(f, &p.psi4, &psi1, &n), "psi13 is 3-compatible")?;
    let all: Vec<usize> = (0..r1).collect();
    let chi = chi_lift(f, &psi1, &all)?;
    Ok(Psi13 { alpha, gamma, result: CompatiblePsi1 { psi1, n, chi, vanishing: all } })
}
