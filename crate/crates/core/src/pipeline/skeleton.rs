//! The first approximation ψ₁†, ψ₂†, ψ₃, ψ₄ and its correction to perfect
//! pairings.

use crate::complexes::{FreeComplex, SelfDualityWitness, ValidatedComplex};
use crate::error::{Error, Result};
use crate::lift::{solve_post, solve_pre};
use crate::modules::{comultiplication, symmetric_product, wedge_projection, wedge_section, Matrix};
use crate::pipeline::PairingSet;

/// `ψ₁†: ∧²F₁ → F₂` and `ψ₂†: F₁⊗F₂ → F₃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopySkeleton {
    /// `r₂ × |∧²F₁|`.
    pub psi1_dagger: Matrix,
    /// `r₃ × r₁r₂`.
    pub psi2_dagger: Matrix,
}

/// Data produced while making the pairings perfect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correction {
    /// The reference pairing `ρ(x₁⊗x₃) = u·φ₃(x₃)(x₁)`, `1 × r₁r₃`.
    pub rho: Matrix,
    /// `σ: F₁⊗F₂ → F₄` with `σ∘(1⊗d₃) = ψ₃ − ρ`.
    pub sigma: Matrix,
}

fn id(f: &FreeComplex, k: usize) -> Matrix {
    Matrix::identity(f.ring(), f.rank(k))
}

/// The differentials `g₂, g₃, g₄, g₅` of the auxiliary complex
/// `G₂ = ∧²F₁⊕F₂`, `G₃ = (F₁⊗F₂)⊕F₃`, `G₄ = D₂F₂⊕(F₁⊗F₃)⊕F₄`,
/// `G₅ = (F₂⊗F₃)⊕(F₁⊗F₄)`, with `G₁ = F₁` and `g₁ = d₁`.
pub fn auxiliary_complex(f: &FreeComplex) -> Result<[Matrix; 4]> {
    let ring = f.ring();
    let [r0, r1, r2, r3, r4] = f.ranks();
    let (d1, d2, d3, d4) = (f.d(1), f.d(2), f.d(3), f.d(4));
    let z = |rows: usize, cols: usize| Matrix::zeros(ring, rows, cols);
    let wedge_rank = r1 * r1.saturating_sub(1) / 2;
    let d2f2 = r2 * (r2 + 1) / 2;

    // ∧²F₁ → F₁: x∧y ↦ d₁(x)y − d₁(y)x
    let g2_wedge = (&d1.kron(&id(f, 1)) - &id(f, 1).kron(d1)) * wedge_section(ring, r1);
    let g2 = Matrix::hstack(ring, &[g2_wedge, d2.clone()])?;

    // F₁⊗F₂ → ∧²F₁: x⊗y ↦ −x∧d₂(y)
    let to_wedge = -(wedge_projection(ring, r1) * id(f, 1).kron(d2));
    let g3 = Matrix::blocks(ring, &[vec![to_wedge, z(wedge_rank, r3)], vec![d1.kron(&id(f, 2)), d3.clone()]])?;

    // D₂F₂ → F₁⊗F₂: x^(2) ↦ d₂(x)⊗x
    let dp = d2.kron(&id(f, 2)) * comultiplication(ring, r2);
    let g4 = Matrix::blocks(
        ring,
        &[
            vec![dp, -id(f, 1).kron(d3), z(r1 * r2, r4)],
            vec![z(r3, d2f2), d1.kron(&id(f, 3)), d4.clone()],
        ],
    )?;

    // F₂⊗F₃ → D₂F₂: x⊗y ↦ x·d₃(y)
    let mult = symmetric_product(ring, r2) * id(f, 2).kron(d3);
    let g5 = Matrix::blocks(
        ring,
        &[
            vec![mult, z(d2f2, r1 * r4)],
            vec![d2.kron(&id(f, 3)), -id(f, 1).kron(d4)],
            vec![z(r4, r2 * r3), d1.kron(&id(f, 4))],
        ],
    )?;
    debug_assert_eq!(r0, 1);
    Ok([g2, g3, g4, g5])
}

/// Checks the six identities tying ψ₁†, ψ₂†, ψ₃, ψ₄ to the differentials.
pub fn check_skeleton(f: &FreeComplex, sk: &HomotopySkeleton, psi3: &Matrix, psi4: &Matrix) -> Result<()> {
    let ring = f.ring();
    let [_, r1, r2, _, _] = f.ranks();
    let (d1, d2, d3, d4) = (f.d(1), f.d(2), f.d(3), f.d(4));
    let check = |name: &str, lhs: Matrix, rhs: Matrix| -> Result<()> {
        if lhs != rhs {
            return Err(Error::internal(name.to_string(), "identity fails on some basis tuple"));
        }
        Ok(())
    };
    // ψ₃(x₁⊗d₄x₄) = d₁(x₁)x₄
    check("psi3 on d4", psi3 * &id(f, 1).kron(d4), d1.clone())?;
    // ψ₄(x₂·d₃x₃) = −ψ₃(d₂x₂⊗x₃)
    check(
        "psi4 on d3",
        psi4 * &symmetric_product(ring, r2) * id(f, 2).kron(d3),
        -(psi3 * &d2.kron(&id(f, 3))),
    )?;
    // d₂ψ₁†(x∧y) = d₁(x)y − d₁(y)x
    check(
        "d2 psi1_dagger",
        d2 * &sk.psi1_dagger,
        (&d1.kron(&id(f, 1)) - &id(f, 1).kron(d1)) * wedge_section(ring, r1),
    )?;
    // d₃ψ₂†(x₁⊗x₂) = d₁(x₁)x₂ − ψ₁†(x₁∧d₂x₂)
    check(
        "d3 psi2_dagger",
        d3 * &sk.psi2_dagger,
        &d1.kron(&id(f, 2)) - &(&sk.psi1_dagger * &wedge_projection(ring, r1) * id(f, 1).kron(d2)),
    )?;
    // d₄ψ₃(x₁⊗x₃) = d₁(x₁)x₃ − ψ₂†(x₁⊗d₃x₃)
    check("d4 psi3", d4 * psi3, &d1.kron(&id(f, 3)) - &(&sk.psi2_dagger * &id(f, 1).kron(d3)))?;
    // d₄ψ₄(x₂^(2)) = ψ₂†(d₂x₂⊗x₂)
    check("d4 psi4", d4 * psi4, &sk.psi2_dagger * &d2.kron(&id(f, 2)) * comultiplication(ring, r2))?;
    Ok(())
}

/// Lifts the comparison map from the auxiliary complex to `F`, with identity
/// components on `F₂`, `F₃`, `F₄`, and returns `(ψ₁†, ψ₂†)`, `ψ₃`, `ψ₄`.
pub fn build_skeleton(f: &ValidatedComplex) -> Result<(HomotopySkeleton, Matrix, Matrix)> {
    let ring = f.ring();
    let [_, r1, r2, r3, _] = f.ranks();
    let g = auxiliary_complex(f)?;
    for k in 0..3 {
        if !g[k].try_mul(&g[k + 1])?.is_zero() {
            return Err(Error::internal("auxiliary complex", format!("g{}∘g{} ≠ 0", k + 2, k + 3)));
        }
    }
    if !f.d(1).try_mul(&g[0])?.is_zero() {
        return Err(Error::internal("auxiliary complex", "g1∘g2 ≠ 0"));
    }
    let wedge_rank = r1 * r1.saturating_sub(1) / 2;
    let d2f2 = r2 * (r2 + 1) / 2;

    // c₂ = [ψ₁† | 1]: d₂c₂ = g₂
    let psi1_dagger = solve_post(f.d(2), &g[0].block(0, 0, r1, wedge_rank), "comparison map in degree 2")?;
    // c₃ = [ψ₂† | 1]: d₃c₃ = c₂g₃
    let c2 = Matrix::hstack(ring, &[psi1_dagger.clone(), id(f, 2)])?;
    let rhs3 = c2.try_mul(&g[1])?;
    let psi2_dagger = solve_post(f.d(3), &rhs3.block(0, 0, r2, r1 * r2), "comparison map in degree 3")?;
    // c₄ = [ψ₄ | ψ₃ | 1]: d₄c₄ = c₃g₄
    let c3 = Matrix::hstack(ring, &[psi2_dagger.clone(), id(f, 3)])?;
    let rhs4 = c3.try_mul(&g[2])?;
    let c4_part = solve_post(f.d(4), &rhs4.block(0, 0, r3, d2f2 + r1 * r3), "comparison map in degree 4")?;
    let psi4 = c4_part.block(0, 0, 1, d2f2);
    let psi3 = c4_part.block(0, d2f2, 1, r1 * r3);
    let c4 = Matrix::hstack(ring, &[psi4.clone(), psi3.clone(), id(f, 4)])?;
    if !c4.try_mul(&g[3])?.is_zero() {
        return Err(Error::internal("comparison map", "c4∘g5 ≠ 0"));
    }
    let sk = HomotopySkeleton { psi1_dagger, psi2_dagger };
    check_skeleton(f, &sk, &psi3, &psi4)?;
    Ok((sk, psi3, psi4))
}

/// Replaces ψ₃ by the perfect pairing `ψ₃ − σ∘(1⊗d₃)` and adjusts ψ₂†, ψ₄
/// so that all six identities still hold.
pub fn perfect_correction(
    f: &FreeComplex,
    sk: &HomotopySkeleton,
    psi3: &Matrix,
    psi4: &Matrix,
    witness: &SelfDualityWitness,
) -> Result<(PairingSet, HomotopySkeleton, Correction)> {
    let ring = f.ring();
    let [_, r1, r2, r3, _] = f.ranks();
    let phi3 = &witness.phi[3];
    let rho = Matrix::from_fn(ring, 1, r1 * r3, |_, k| &witness.u * phi3.get(k / r3, k % r3));
    let one_d3 = id(f, 1).kron(f.d(3));
    let sigma = solve_pre(&one_d3, &psi3.try_sub(&rho)?, "homotopy sigma correcting psi3")?;

    let psi2_dagger = &sk.psi2_dagger + &(f.d(4) * &sigma);
    let psi3_new = psi3 - &(&sigma * &one_d3);
    let psi4_new = psi4 + &(&sigma * &f.d(2).kron(&id(f, 2)) * comultiplication(ring, r2));
    if psi3_new != rho {
        return Err(Error::internal("perfect correction", "corrected psi3 differs from the reference pairing"));
    }
    let new_sk = HomotopySkeleton { psi1_dagger: sk.psi1_dagger.clone(), psi2_dagger };
    check_skeleton(f, &new_sk, &psi3_new, &psi4_new)?;
    let pairings = PairingSet::new(f, psi3_new, psi4_new)?;
    Ok((pairings, new_sk, Correction { rho, sigma }))
}
