//! Coefficient domains: ℤ, ℚ and prime fields.
//!
//! Every coefficient is stored as a [`BigRational`]. Over ℤ the denominator
//! is always one, over 𝔽_p the value is an integer in `[0, p)`; the domain
//! is responsible for keeping its values in that canonical shape.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientDomain {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for CoefficientDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientDomain::Integers => write!(f, "integers"),
            CoefficientDomain::Rationals => write!(f, "rationals"),
            CoefficientDomain::PrimeField(p) => write!(f, "gf{p}"),
        }
    }
}

fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoefficientDomain {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::InvalidArgument(format!("modulus {p} too large")));
        }
        Ok(CoefficientDomain::PrimeField(p))
    }

    /// Accepts `int`/`integers`/`ZZ`, `rat`/`rationals`/`QQ`, `gfP`/`gf:P`/`GF(P)`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "int" | "integers" | "zz" | "z" => return Ok(CoefficientDomain::Integers),
            "rat" | "rationals" | "qq" | "q" => return Ok(CoefficientDomain::Rationals),
            _ => {}
        }
        let lower = t.to_ascii_lowercase();
        let digits = lower
            .strip_prefix("gf(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| lower.strip_prefix("gf:"))
            .or_else(|| lower.strip_prefix("gf"))
            .or_else(|| lower.strip_prefix("fp"));
        match digits.and_then(|d| d.parse::<u64>().ok()) {
            Some(p) => Self::prime_field(p),
            None => Err(Error::InvalidArgument(format!("unknown coefficient domain `{s}`"))),
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientDomain::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientDomain::PrimeField(p) => *p,
            _ => 0,
        }
    }

    fn modulus(&self) -> Option<BigInt> {
        match self {
            CoefficientDomain::PrimeField(p) => Some(BigInt::from(*p)),
            _ => None,
        }
    }

    /// Image of an integer in the domain.
    pub fn from_integer(&self, n: BigInt) -> Scalar {
        match self.modulus() {
            Some(p) => BigRational::from_integer(n.mod_floor(&p)),
            None => BigRational::from_integer(n),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_integer(BigInt::from(n))
    }

    /// Image of a rational number; fails when it has no image (a proper
    /// fraction over ℤ, or a denominator divisible by p).
    pub fn from_rational(&self, q: BigRational) -> Result<Scalar> {
        match self {
            CoefficientDomain::Rationals => Ok(q),
            CoefficientDomain::Integers => {
                if q.is_integer() {
                    Ok(q)
                } else {
                    Err(Error::InvalidArgument(format!("{q} is not an integer")))
                }
            }
            CoefficientDomain::PrimeField(_) => {
                let num = self.from_integer(q.numer().clone());
                let den = self.from_integer(q.denom().clone());
                let inv = self
                    .inv(&den)
                    .ok_or_else(|| Error::InvalidArgument(format!("{q} has no image in {self}")))?;
                Ok(self.mul(&num, &inv))
            }
        }
    }

    fn reduce(&self, c: Scalar) -> Scalar {
        match self.modulus() {
            Some(p) => BigRational::from_integer(c.to_integer().mod_floor(&p)),
            None => c,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let s = if a.is_integer() && b.is_integer() {
            BigRational::from_integer(a.numer() + b.numer())
        } else {
            a + b
        };
        self.reduce(s)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let s = if a.is_integer() && b.is_integer() {
            BigRational::from_integer(a.numer() - b.numer())
        } else {
            a - b
        };
        self.reduce(s)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a.clone())
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let s = if a.is_integer() && b.is_integer() {
            BigRational::from_integer(a.numer() * b.numer())
        } else {
            a * b
        };
        self.reduce(s)
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        match self {
            CoefficientDomain::Integers => a.numer().abs().is_one(),
            _ => !a.is_zero(),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            CoefficientDomain::Integers => {
                if a.numer().abs().is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            CoefficientDomain::Rationals => Some(a.recip()),
            CoefficientDomain::PrimeField(p) => {
                let p = BigInt::from(*p);
                let egcd = a.to_integer().extended_gcd(&p);
                if !egcd.gcd.is_one() {
                    return None;
                }
                Some(BigRational::from_integer(egcd.x.mod_floor(&p)))
            }
        }
    }

    /// `a / b` when the quotient lies in the domain.
    pub fn div_exact(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        if b.is_zero() {
            return None;
        }
        match self {
            CoefficientDomain::Integers => {
                let (q, r) = a.numer().div_rem(b.numer());
                r.is_zero().then(|| BigRational::from_integer(q))
            }
            _ => Some(self.mul(a, &self.inv(b)?)),
        }
    }

    /// Euclidean quotient `q` of `a` by `b` (ℤ: remainder of least absolute
    /// value; fields: the exact quotient).
    pub fn div_euclid(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            CoefficientDomain::Integers => {
                let (a, b) = (a.numer(), b.numer());
                let (mut q, r) = a.div_rem(b);
                // steer the remainder towards zero: |r| <= |b| / 2
                let twice = r.abs() * 2;
                if twice > b.abs() {
                    if r.is_negative() == b.is_negative() {
                        q += 1;
                    } else {
                        q -= 1;
                    }
                }
                BigRational::from_integer(q)
            }
            _ => self.div_exact(a, b).unwrap_or_else(BigRational::zero),
        }
    }

    /// Unit that makes `a` "normalized": positive over ℤ, one over a field.
    pub fn normalizing_unit(&self, a: &Scalar) -> Scalar {
        match self {
            CoefficientDomain::Integers => {
                if a.is_negative() {
                    -BigRational::one()
                } else {
                    BigRational::one()
                }
            }
            _ => self.inv(a).unwrap_or_else(BigRational::one),
        }
    }

    /// Absolute size used to rank reducers over ℤ.
    pub fn size(&self, a: &Scalar) -> u64 {
        match self {
            CoefficientDomain::Integers => a.numer().abs().to_u64().unwrap_or(u64::MAX),
            _ => u64::from(!a.is_zero()),
        }
    }
}
