//! Mixing a 3-compatible and a 2ⁿ-compatible product into a 1-compatible
//! one, and reading off the remaining multiplication `F₁⊗F₂ → F₃`.

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{bezout, RingElement};
use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::modules::basis::is_alternating;
use crate::modules::vector::Vector;
use crate::modules::Matrix;
use crate::pipeline::{chi_lift, ensure, CompatiblePsi1, PairingSet};
use crate::verify;

/// `Ψ₁ = a·Ψ₁,₃ + b·Ψ₁,₂` where `3a + 2ⁿb = 1`. Returns the product and
/// `(a, b, n)`.
pub fn combine_bezout(
    f: &FreeComplex,
    p: &PairingSet,
    psi13: &CompatiblePsi1,
    psi12: &CompatiblePsi1,
) -> Result<(CompatiblePsi1, (BigInt, BigInt, u32))> {
    if psi13.n != BigInt::from(3) {
        return Err(Error::InvalidArgument(format!("expected a 3-compatible product, got N = {}", psi13.n)));
    }
    let n = psi12.n.bits().saturating_sub(1);
    if psi12.n != BigInt::one() << n {
        return Err(Error::InvalidArgument(format!("expected a power of two, got N = {}", psi12.n)));
    }
    let n = u32::try_from(n).map_err(|_| Error::InvalidArgument("exponent out of range".into()))?;
    let (g, a, b) = bezout(&psi13.n, &psi12.n)?;
    if !g.is_one() {
        return Err(Error::internal("bezout", format!("gcd(3, 2^{n}) = {g}")));
    }
    let ring = f.ring();
    let ea = RingElement::from_integer(ring, a.clone());
    let eb = RingElement::from_integer(ring, b.clone());
    let psi1 = &psi13.psi1.scale(&ea) + &psi12.psi1.scale(&eb);
    let one = BigInt::one();
    ensure(verify::check_compatibility(f, &p.psi4, &psi1, &one), "combined product is 1-compatible")?;
    if !is_alternating(&psi1, f.rank(1)) {
        return Err(Error::internal("combined product alternating", "combined product is not alternating"));
    }
    let all: Vec<usize> = (0..f.rank(1)).collect();
    let chi = chi_lift(f, &psi1, &all)?;
    Ok((CompatiblePsi1 { psi1, n: one, chi, vanishing: all }, (a, b, n)))
}

/// `Ψ₂: F₁⊗F₂ → F₃` determined by `ψ₃(y₁⊗Ψ₂(x₁⊗x₂)) = ψ₄(Ψ₁(y₁⊗x₁)·x₂)`.
pub fn build_psi2(f: &FreeComplex, p: &PairingSet, psi1: &Matrix) -> Result<Matrix> {
    let [_, r1, r2, r3, _] = f.ranks();
    if psi1.shape() != (r2, r1 * r1) {
        return Err(Error::shape(format!("psi1 must be {r2}x{}", r1 * r1)));
    }
    // pairs[y][j] = ψ₄(Ψ₁(e_y⊗e_i)·f_j) for a fixed i
    let mut cols: Vec<Vector> = Vec::with_capacity(r1 * r2);
    for i in 0..r1 {
        let paired: Vec<Vector> = (0..r1).map(|y| p.phi2.apply(&psi1.column(y * r1 + i))).collect();
        for j in 0..r2 {
            let ell: Vector = (0..r1).map(|y| paired[y][j].clone()).collect();
            cols.push(p.represent_in_f3(&ell));
        }
    }
    Ok(Matrix::from_columns(f.ring(), r3, &cols))
}
