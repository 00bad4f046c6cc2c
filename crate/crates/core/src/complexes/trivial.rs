//! Adding a split exact summand `E → E` in degrees 2,1 and its dual
//! `E^∨ → E^∨` in degrees 3,2:
//!
//! `G₁ = F₁⊕E`, `G₂ = F₂⊕E⊕E^∨`, `G₃ = F₃⊕E^∨`, with
//! `g₁ = [d₁ 0]`, `g₂ = [[d₂ 0 0], [0 1 0]]`, `g₃ = [[d₃ 0], [0 0], [0 1]]`,
//! `g₄ = [d₄; 0]`.

use crate::complexes::{FreeComplex, SelfDualityWitness};
use crate::error::Result;
use crate::modules::Matrix;

pub fn direct_sum_trivial(f: &FreeComplex, e_rank: usize) -> Result<FreeComplex> {
    let ring = f.ring();
    let [_, r1, r2, r3, _] = f.ranks();
    let z = |r: usize, c: usize| Matrix::zeros(ring, r, c);
    let id = Matrix::identity(ring, e_rank);
    let g1 = Matrix::hstack(ring, &[f.d(1).clone(), z(1, e_rank)])?;
    let g2 = Matrix::blocks(
        ring,
        &[
            vec![f.d(2).clone(), z(r1, e_rank), z(r1, e_rank)],
            vec![z(e_rank, r2), id.clone(), z(e_rank, e_rank)],
        ],
    )?;
    let g3 = Matrix::blocks(
        ring,
        &[
            vec![f.d(3).clone(), z(r2, e_rank)],
            vec![z(e_rank, r3), z(e_rank, e_rank)],
            vec![z(e_rank, r3), id],
        ],
    )?;
    let g4 = Matrix::vstack(ring, &[f.d(4).clone(), z(e_rank, 1)])?;
    FreeComplex::new(ring, g1, g2, g3, g4)
}

/// Witness for the sum: `φ₁ ⊕ 1_E`, `φ₂` extended by the evaluation pairing
/// between `E` and `E^∨`, and `φ₃ ⊕ 1_{E^∨}`.
pub fn direct_sum_witness(f: &FreeComplex, w: &SelfDualityWitness, e_rank: usize) -> Result<[Matrix; 5]> {
    let ring = f.ring();
    let [_, r1, r2, r3, _] = f.ranks();
    let z = |r: usize, c: usize| Matrix::zeros(ring, r, c);
    let id = Matrix::identity(ring, e_rank);
    // φ₁: G₁ → G₃^∨ = F₃^∨ ⊕ E
    let phi1 = Matrix::blocks(ring, &[vec![w.phi[1].clone(), z(r3, e_rank)], vec![z(e_rank, r1), id.clone()]])?;
    // φ₂: G₂ → G₂^∨ = F₂^∨ ⊕ E^∨ ⊕ E; pairs E with E^∨
    let phi2 = Matrix::blocks(
        ring,
        &[
            vec![w.phi[2].clone(), z(r2, e_rank), z(r2, e_rank)],
            vec![z(e_rank, r2), z(e_rank, e_rank), id.clone()],
            vec![z(e_rank, r2), id.clone(), z(e_rank, e_rank)],
        ],
    )?;
    // φ₃: G₃ → G₁^∨ = F₁^∨ ⊕ E^∨
    let phi3 = Matrix::blocks(ring, &[vec![w.phi[3].clone(), z(r1, e_rank)], vec![z(e_rank, r3), id]])?;
    let phi0 = Matrix::vstack(ring, &[w.phi[0].clone()])?;
    let phi4 = w.phi[4].clone();
    Ok([phi0, phi1, phi2, phi3, phi4])
}
