//! Extending a DG-algebra structure on `F` to `F ⊕ (E → E) ⊕ (E^∨ → E^∨)`
//! as built by [`crate::complexes::direct_sum_trivial`].
//!
//! Basis order: `G₁ = F₁ ⊕ E`, `G₂ = F₂ ⊕ E ⊕ E^∨`, `G₃ = F₃ ⊕ E^∨`. With
//! `ẽ_k ∈ G₂` mapping to `e_k ∈ G₁` and `η′_k ∈ G₃` mapping to `η_k ∈ G₂`:
//! `x₁·e_k = d₁(x₁)ẽ_k`, `x₁·η_k = d₁(x₁)η′_k`, `e_k·η_l = −δ_kl d₄(1)`,
//! `e_k·η′_l = δ_kl`, `ẽ_k·η_l = −δ_kl`, and every other new product is zero.

use crate::arith::RingElement;
use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::modules::{DividedSquareBasis, Matrix};
use crate::pipeline::DGStructure;

pub fn extend_trivial_dg(f: &FreeComplex, d: &DGStructure, e_rank: usize) -> Result<DGStructure> {
    let ring = f.ring();
    let [_, r1, r2, r3, _] = f.ranks();
    let d2f = DividedSquareBasis::new(r2);
    if d.psi1.shape() != (r2, r1 * r1)
        || d.psi2.shape() != (r3, r1 * r2)
        || d.psi3.shape() != (1, r1 * r3)
        || d.psi4.shape() != (1, d2f.len())
    {
        return Err(Error::shape("multiplication table does not match the complex"));
    }
    let e = e_rank;
    let (g1, g2, g3) = (r1 + e, r2 + 2 * e, r3 + e);
    let d1 = |p: usize| f.d(1).get(0, p).clone();
    let zero = || RingElement::zero(ring);

    let mut psi1 = Matrix::zeros(ring, g2, g1 * g1);
    for p in 0..r1 {
        for q in 0..r1 {
            psi1.set_column(p * g1 + q, &pad(&d.psi1.column(p * r1 + q), g2, ring));
        }
        for k in 0..e {
            psi1.set(r2 + k, p * g1 + r1 + k, d1(p));
            psi1.set(r2 + k, (r1 + k) * g1 + p, -&d1(p));
        }
    }

    let mut psi2 = Matrix::zeros(ring, g3, g1 * g2);
    let d4 = f.d(4).column(0);
    for p in 0..r1 {
        for q in 0..r2 {
            psi2.set_column(p * g2 + q, &pad(&d.psi2.column(p * r2 + q), g3, ring));
        }
        for k in 0..e {
            psi2.set(r3 + k, p * g2 + r2 + e + k, d1(p));
        }
    }
    for k in 0..e {
        let neg: Vec<RingElement> = d4.iter().map(|x| -x).collect();
        psi2.set_column((r1 + k) * g2 + r2 + e + k, &pad(&neg, g3, ring));
    }

    let psi3 = Matrix::from_fn(ring, 1, g1 * g3, |_, c| {
        let (a, b) = (c / g3, c % g3);
        if a < r1 && b < r3 {
            d.psi3.get(0, a * r3 + b).clone()
        } else if a >= r1 && b >= r3 && a - r1 == b - r3 {
            RingElement::one(ring)
        } else {
            zero()
        }
    });

    let d2g = DividedSquareBasis::new(g2);
    let psi4 = Matrix::from_fn(ring, 1, d2g.len(), |_, c| {
        let (a, b) = d2g.pairs()[c];
        if b < r2 {
            d.psi4.get(0, d2f.index(a, b)).clone()
        } else if (r2..r2 + e).contains(&a) && b >= r2 + e && a - r2 == b - r2 - e {
            -&RingElement::one(ring)
        } else {
            zero()
        }
    });
    Ok(DGStructure { psi1, psi2, psi3, psi4 })
}

fn pad(v: &[RingElement], len: usize, ring: &crate::arith::Ring) -> Vec<RingElement> {
    let mut out = v.to_vec();
    out.resize(len, RingElement::zero(ring));
    out
}
