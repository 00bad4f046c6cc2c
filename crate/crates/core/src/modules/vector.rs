//! Coordinate vectors: elements of a free module written in its basis.

use crate::arith::{Ring, RingElement};
use crate::modules::DividedSquareBasis;

pub type Vector = Vec<RingElement>;

pub fn zero(ring: &Ring, n: usize) -> Vector {
    vec![RingElement::zero(ring); n]
}

/// The basis vector `e_i` of a rank-`n` module.
pub fn unit(ring: &Ring, n: usize, i: usize) -> Vector {
    let mut v = zero(ring, n);
    v[i] = RingElement::one(ring);
    v
}

pub fn add(a: &[RingElement], b: &[RingElement]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector lengths differ");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[RingElement], b: &[RingElement]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector lengths differ");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &RingElement, a: &[RingElement]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn dot(ring: &Ring, a: &[RingElement], b: &[RingElement]) -> RingElement {
    assert_eq!(a.len(), b.len(), "vector lengths differ");
    let mut acc = RingElement::zero(ring);
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

pub fn is_zero(a: &[RingElement]) -> bool {
    a.iter().all(RingElement::is_zero)
}

/// `x⊗y` in the basis `e_a⊗e_b ↦ a·|y| + b`.
pub fn tensor(ring: &Ring, x: &[RingElement], y: &[RingElement]) -> Vector {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            out.push(if a.is_zero() || b.is_zero() { RingElement::zero(ring) } else { a * b });
        }
    }
    out
}

/// The product `x·y` in `D₂X`; note `e_a·e_a = 2e_a^(2)`.
pub fn divided_product(x: &[RingElement], y: &[RingElement]) -> Vector {
    assert_eq!(x.len(), y.len(), "vector lengths differ");
    let basis = DividedSquareBasis::new(x.len());
    basis
        .pairs()
        .iter()
        .map(|&(a, b)| {
            if a == b {
                (&x[a] * &y[a]).scale_i64(2)
            } else {
                &(&x[a] * &y[b]) + &(&x[b] * &y[a])
            }
        })
        .collect()
}

/// The divided square `x^(2)` in `D₂X`.
pub fn divided_square(x: &[RingElement]) -> Vector {
    let basis = DividedSquareBasis::new(x.len());
    basis.pairs().iter().map(|&(a, b)| if a == b { &x[a] * &x[a] } else { &x[a] * &x[b] }).collect()
}

pub fn format(v: &[RingElement]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}
