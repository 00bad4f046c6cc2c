//! Exact scalars and multivariate polynomials.

mod bezout;
mod domain;
mod monomial;
mod poly;
mod text;

pub use bezout::bezout;
pub use domain::{CoefficientDomain, Scalar};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{same_ring, PolyRing, Ring, RingElement};
pub use text::term;
