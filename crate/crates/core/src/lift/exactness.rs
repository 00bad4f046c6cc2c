//! Acyclicity via ranks and grades of determinantal ideals: a complex of
//! free modules `0 → F₄ → … → F₀` is acyclic iff `rank d_k + rank d_{k+1} =
//! rank F_k` and `grade I_{r_k}(d_k) ≥ k` for `k = 1..4`.
//!
//! The supported rings are Cohen–Macaulay, so grade equals height. Over a
//! field the height is read off the leading monomials of a Gröbner basis.
//! Over ℤ a prime of `ℤ[X]` either meets ℤ in zero (height computed over ℚ)
//! or contains a prime `p` (height `1 + height` over `𝔽_p`); only primes
//! dividing a leading coefficient of the strong Gröbner basis can lower the
//! height below the rational one.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{CoefficientDomain, Monomial, Ring, RingElement};
use crate::error::{Error, Result};
use crate::lift::ModuleGroebnerBasis;
use crate::modules::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Grade {
    Finite(usize),
    /// The unit ideal.
    Infinite,
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Finite(g) => write!(f, "{g}"),
            Grade::Infinite => write!(f, "∞"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessCertificate {
    /// `ranks[k-1]` is the rank of `d_k`.
    pub ranks: Vec<usize>,
    /// `grades[k-1]` is the grade of the ideal of `ranks[k-1]`-minors of `d_k`.
    pub grades: Vec<Grade>,
}

/// Krull dimension of `K[X]/in(I)` given the leading monomials: the largest
/// set of variables containing the support of no leading monomial.
fn dimension_from_leads(nvars: usize, leads: &[Monomial]) -> usize {
    let supports: Vec<u64> = leads.iter().map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i))).collect();
    let mut best = 0;
    for set in 0u64..(1u64 << nvars) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    best
}

fn field_height(ring: &Ring, gens: &[RingElement]) -> Grade {
    let cols: Vec<Vec<RingElement>> = gens.iter().filter(|g| !g.is_zero()).map(|g| vec![g.clone()]).collect();
    let gb = ModuleGroebnerBasis::compute(ring, 1, &cols, false);
    let leads: Vec<Monomial> = gb.leading_terms().into_iter().map(|(_, m, _)| m).collect();
    if leads.iter().any(Monomial::is_one) {
        return Grade::Infinite;
    }
    Grade::Finite(ring.nvars() - dimension_from_leads(ring.nvars(), &leads))
}

fn prime_factors(n: &BigInt) -> Option<Vec<u64>> {
    let mut n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    Some(out)
}

/// Height of the ideal generated by `gens`.
pub fn ideal_height(ring: &Ring, gens: &[RingElement]) -> Result<Grade> {
    if gens.iter().any(RingElement::is_unit) {
        return Ok(Grade::Infinite);
    }
    match ring.domain() {
        CoefficientDomain::Integers => {}
        _ => return Ok(field_height(ring, gens)),
    }
    let cols: Vec<Vec<RingElement>> = gens.iter().filter(|g| !g.is_zero()).map(|g| vec![g.clone()]).collect();
    let gb = ModuleGroebnerBasis::compute(ring, 1, &cols, false);
    let leads = gb.leading_terms();
    if leads.iter().any(|(_, m, c)| m.is_one() && c.numer().abs().is_one()) {
        return Ok(Grade::Infinite);
    }
    let rational = ring.change_domain(CoefficientDomain::Rationals);
    let over_q: Vec<RingElement> = gens.iter().map(|g| g.map_coefficients(&rational)).collect::<Result<_>>()?;
    let mut best = field_height(&rational, &over_q);
    let mut lcm = BigInt::one();
    for (_, _, c) in &leads {
        lcm = lcm.lcm(c.numer());
    }
    if lcm.is_zero() || lcm.abs().is_one() {
        return Ok(best);
    }
    let primes = prime_factors(&lcm).ok_or_else(|| {
        Error::hypothesis("grade", format!("cannot factor leading-coefficient data {lcm}; grade undetermined"))
    })?;
    for p in primes {
        let field = CoefficientDomain::prime_field(p)
            .map_err(|_| Error::hypothesis("grade", format!("prime {p} too large; grade undetermined")))?;
        let fp = ring.change_domain(field);
        let over_p: Vec<RingElement> = gens.iter().map(|g| g.map_coefficients(&fp)).collect::<Result<_>>()?;
        let h = match field_height(&fp, &over_p) {
            Grade::Finite(h) => Grade::Finite(h + 1),
            Grade::Infinite => Grade::Infinite,
        };
        best = best.min(h);
    }
    Ok(best)
}

/// Ideal of `k×k` minors, de-duplicated up to sign, without zeros.
fn minor_ideal(d: &Matrix, k: usize) -> Result<Vec<RingElement>> {
    let mut out: Vec<RingElement> = Vec::new();
    for m in d.minors(k)? {
        if m.is_zero() || out.iter().any(|o| *o == m || *o == -&m) {
            continue;
        }
        if m.is_unit() {
            return Ok(vec![m]);
        }
        out.push(m);
    }
    Ok(out)
}

/// Checks the rank and grade conditions for the differentials
/// `d_1, …, d_L` (with `d_{L+1} = 0`), whose composites are already known to
/// vanish. Reports the first failing index.
pub fn exactness_check(ds: &[Matrix]) -> Result<ExactnessCertificate> {
    let mut ranks = Vec::with_capacity(ds.len());
    for d in ds {
        ranks.push(d.rank()?);
    }
    let mut grades = Vec::with_capacity(ds.len());
    for (idx, d) in ds.iter().enumerate() {
        let k = idx + 1;
        let next = ranks.get(idx + 1).copied().unwrap_or(0);
        let rank_fk = d.cols();
        if ranks[idx] + next != rank_fk {
            return Err(Error::hypothesis(
                "exactness",
                format!("rank condition fails at d{k}: rank d{k} + rank d{} = {} + {} ≠ rank F{k} = {rank_fk}", k + 1, ranks[idx], next),
            ));
        }
        let r = ranks[idx];
        let grade = if r == 0 {
            Grade::Infinite
        } else {
            let ideal = minor_ideal(d, r)?;
            ideal_height(d.ring(), &ideal)?
        };
        if grade < Grade::Finite(k) {
            return Err(Error::hypothesis(
                "exactness",
                format!("grade condition fails at d{k}: grade of the ideal of {r}-minors is {grade} < {k}"),
            ));
        }
        grades.push(grade);
    }
    Ok(ExactnessCertificate { ranks, grades })
}
