//! Multivariate polynomials in canonical sparse form.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::domain::{CoefficientDomain, Scalar};
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// A polynomial ring `K[x_1, …, x_n]` over one of the supported domains.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    domain: CoefficientDomain,
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type Ring = Arc<PolyRing>;

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new(domain: CoefficientDomain, vars: &[&str], order: MonomialOrder) -> Result<Ring> {
        Self::with_names(domain, vars.iter().map(|s| s.to_string()).collect(), order)
    }

    pub fn with_names(domain: CoefficientDomain, vars: Vec<String>, order: MonomialOrder) -> Result<Ring> {
        for (i, v) in vars.iter().enumerate() {
            if !valid_identifier(v) {
                return Err(Error::InvalidArgument(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("variable `{v}` declared twice")));
            }
        }
        Ok(Arc::new(PolyRing { domain, vars, order }))
    }

    pub fn domain(&self) -> &CoefficientDomain {
        &self.domain
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and order over a different coefficient domain.
    pub fn change_domain(&self, domain: CoefficientDomain) -> Ring {
        Arc::new(PolyRing { domain, vars: self.vars.clone(), order: self.order })
    }

    pub fn is_domain(&self) -> bool {
        // ℤ[X], ℚ[X] and 𝔽_p[X] are all integral domains
        true
    }
}

pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Element of a [`PolyRing`]: terms sorted strictly decreasing in the ring's
/// monomial order, no zero coefficients.
#[derive(Clone)]
pub struct RingElement {
    ring: Ring,
    terms: Vec<(Monomial, Scalar)>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for RingElement {}

impl std::hash::Hash for RingElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl RingElement {
    pub fn zero(ring: &Ring) -> Self {
        RingElement { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::from_i64(ring, 1)
    }

    pub fn from_i64(ring: &Ring, n: i64) -> Self {
        Self::constant(ring, ring.domain.from_i64(n))
    }

    pub fn from_integer(ring: &Ring, n: BigInt) -> Self {
        Self::constant(ring, ring.domain.from_integer(n))
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn variable(ring: &Ring, index: usize) -> Self {
        Self::monomial(ring, Monomial::variable(ring.nvars(), index), Scalar::one())
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        RingElement { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Builds an element from arbitrary terms (any order, duplicates allowed).
    pub fn from_terms(ring: &Ring, terms: Vec<(Monomial, Scalar)>) -> Self {
        let mut e = RingElement { ring: ring.clone(), terms };
        e.canonicalize();
        e
    }

    fn canonicalize(&mut self) {
        let order = self.ring.order;
        let dom = self.ring.domain.clone();
        self.terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.drain(..) {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = dom.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        self.terms = out;
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The value of a constant element.
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    fn check(&self, other: &RingElement) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &RingElement, subtract: bool) -> RingElement {
        let order = self.ring.order;
        let dom = &self.ring.domain;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                order.cmp(&a[i].0, &b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { dom.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract { dom.sub(&a[i].1, &b[j].1) } else { dom.add(&a[i].1, &b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        RingElement { ring: self.ring.clone(), terms: out }
    }

    fn product(&self, other: &RingElement) -> RingElement {
        if self.is_zero() || other.is_zero() {
            return RingElement::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let dom = &self.ring.domain;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m1.mul(m2), dom.mul(c1, c2)));
            }
        }
        RingElement::from_terms(&self.ring, terms)
    }

    /// Multiplies by `c·m`; monomial orders are multiplicative, so the term
    /// order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> RingElement {
        let dom = &self.ring.domain;
        let terms = self
            .terms
            .iter()
            .filter_map(|(m2, c2)| {
                let cc = dom.mul(c, c2);
                (!cc.is_zero()).then(|| (m.mul(m2), cc))
            })
            .collect();
        RingElement { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &Scalar) -> RingElement {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn scale_i64(&self, n: i64) -> RingElement {
        self.scale(&self.ring.domain.from_i64(n))
    }

    pub fn scale_integer(&self, n: &BigInt) -> RingElement {
        self.scale(&self.ring.domain.from_integer(n.clone()))
    }

    pub fn pow(&self, e: u32) -> RingElement {
        let mut acc = RingElement::one(&self.ring);
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when `divisor` does not
    /// divide `self` in the ring.
    pub fn div_exact(&self, divisor: &RingElement) -> Option<RingElement> {
        let (dm, dc) = divisor.leading_term()?;
        let dom = &self.ring.domain;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.leading_term() {
            let qm = dm.divide_into(m)?;
            let qc = dom.div_exact(c, dc)?;
            rem = rem.merge(&divisor.mul_term(&qm, &qc), true);
            quotient.push((qm, qc));
        }
        Some(RingElement { ring: self.ring.clone(), terms: quotient })
    }

    /// Invertible in the ring: a unit constant of the coefficient domain.
    pub fn is_unit(&self) -> bool {
        match self.constant_value() {
            Some(c) => self.ring.domain.is_unit(&c),
            None => false,
        }
    }

    /// Non-zero-divisor; in the supported integral domains, exactly `≠ 0`.
    pub fn is_regular(&self) -> bool {
        !self.is_zero()
    }

    /// Inverse of a unit.
    pub fn inverse(&self) -> Option<RingElement> {
        let c = self.constant_value()?;
        let inv = self.ring.domain.inv(&c)?;
        Some(RingElement::constant(&self.ring, inv))
    }

    /// Image in another ring with the same variables (coefficient change).
    pub fn map_coefficients(&self, target: &Ring) -> Result<RingElement> {
        if target.vars != self.ring.vars {
            return Err(Error::RingMismatch);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), target.domain.from_rational(c.clone())?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingElement::from_terms(target, terms))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::text::write_element(f, self)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:ident) => {
        impl $tr<&RingElement> for &RingElement {
            type Output = RingElement;
            /// Panics if the operands live in different rings; use the
            /// `checked_*` variants for untrusted input.
            fn $method(self, rhs: &RingElement) -> RingElement {
                self.$body(rhs).expect("ring mismatch in arithmetic")
            }
        }
        impl $tr<RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        let dom = &self.ring.domain;
        RingElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), dom.neg(c))).collect(),
        }
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(domain: CoefficientDomain, vars: &[&str]) -> Ring {
        PolyRing::new(domain, vars, MonomialOrder::GRevLex).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(CoefficientDomain::Rationals, &["x", "y"]);
        let x = RingElement::variable(&r, 0);
        let y = RingElement::variable(&r, 1);
        let lhs = &(&x + &y) * &(&x - &y);
        let rhs = &(&x * &x) - &(&y * &y);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "x^2 - y^2");
    }

    #[test]
    fn absorbing_zero() {
        let r = ring(CoefficientDomain::Integers, &["x", "y"]);
        let a = RingElement::variable(&r, 0).scale_i64(5);
        assert!((&a * &RingElement::zero(&r)).is_zero());
    }

    #[test]
    fn integer_combination() {
        let r = ring(CoefficientDomain::Integers, &["x", "y"]);
        let xy = &RingElement::variable(&r, 0) * &RingElement::variable(&r, 1);
        let s = &xy.scale_i64(3) + &xy.scale_i64(32);
        assert_eq!(s, xy.scale_i64(35));
    }

    #[test]
    fn units_and_regular_elements() {
        let zr = ring(CoefficientDomain::Integers, &["x", "y"]);
        assert!(RingElement::from_i64(&zr, -1).is_unit());
        assert!(!RingElement::from_i64(&zr, 2).is_unit());
        let qr = ring(CoefficientDomain::Rationals, &["x"]);
        assert!(RingElement::from_i64(&qr, 2).is_unit());
        assert!(!RingElement::variable(&qr, 0).is_unit());
        assert!(!RingElement::zero(&qr).is_regular());
        let z4 = ring(CoefficientDomain::Integers, &["x", "y", "z", "w"]);
        assert!(RingElement::from_i64(&z4, 6).is_regular());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = ring(CoefficientDomain::Integers, &["x"]);
        let b = ring(CoefficientDomain::Rationals, &["x"]);
        let x = RingElement::variable(&a, 0);
        let y = RingElement::variable(&b, 0);
        assert_eq!(x.checked_add(&y), Err(Error::RingMismatch));
        assert_eq!(x.checked_mul(&y), Err(Error::RingMismatch));
    }

    #[test]
    fn exact_division() {
        let r = ring(CoefficientDomain::Integers, &["x", "y"]);
        let x = RingElement::variable(&r, 0);
        let y = RingElement::variable(&r, 1);
        let a = &(&x + &y).scale_i64(2) * &(&x - &y);
        assert_eq!(a.div_exact(&(&x - &y)), Some((&x + &y).scale_i64(2)));
        assert_eq!(a.div_exact(&(&x + &y).scale_i64(4)), None);
        assert_eq!(x.div_exact(&y), None);
    }

    #[test]
    fn duplicate_variables_rejected() {
        assert!(PolyRing::new(CoefficientDomain::Rationals, &["x", "x"], MonomialOrder::GRevLex).is_err());
        assert!(PolyRing::new(CoefficientDomain::Rationals, &["1x"], MonomialOrder::GRevLex).is_err());
    }
}
