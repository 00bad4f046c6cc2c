use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Extended Euclid: `(g, s, t)` with `g = gcd(a, b) = s·a + t·b` and `g ≥ 0`.
pub fn bezout(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidArgument("bezout of (0, 0) is undefined".into()));
    }
    let e = a.extended_gcd(b);
    let (mut g, mut s, mut t) = (e.gcd, e.x, e.y);
    if g.is_negative() {
        g = -g;
        s = -s;
        t = -t;
    }
    debug_assert_eq!(&s * a + &t * b, g);
    Ok((g, s, t))
}
