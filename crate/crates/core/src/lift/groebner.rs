//! Gröbner bases of submodules of `R^m` for `R = K[x_1..x_n]`, with `K` a
//! field (Buchberger) or `ℤ` (strong bases via S- and G-polynomials).
//!
//! Module terms are compared position-over-term: a smaller position index is
//! larger, ties broken by the ring's monomial order.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{bezout, CoefficientDomain, Monomial, MonomialOrder, Ring, RingElement, Scalar};

/// Sparse module element: `(position, monomial, coefficient)` triples sorted
/// strictly decreasing in position-over-term order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct ModVec {
    terms: Vec<(usize, Monomial, Scalar)>,
}

impl ModVec {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(usize, Monomial, Scalar)> {
        self.terms.first()
    }
}

/// Arithmetic context shared by all module elements of one computation.
#[derive(Clone, Debug)]
pub(crate) struct Ctx {
    order: MonomialOrder,
    dom: CoefficientDomain,
    nvars: usize,
}

impl Ctx {
    pub fn new(ring: &Ring) -> Self {
        Ctx { order: ring.order(), dom: ring.domain().clone(), nvars: ring.nvars() }
    }

    fn cmp(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        b.0.cmp(&a.0).then_with(|| self.order.cmp(a.1, b.1))
    }

    pub fn from_column(&self, col: &[RingElement]) -> ModVec {
        let mut terms = Vec::new();
        for (pos, e) in col.iter().enumerate() {
            for (m, c) in e.terms() {
                terms.push((pos, m.clone(), c.clone()));
            }
        }
        // positions are increasing and each polynomial is already sorted
        ModVec { terms }
    }

    pub fn to_column(&self, ring: &Ring, v: &ModVec, len: usize) -> Vec<RingElement> {
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); len];
        for (pos, m, c) in &v.terms {
            buckets[*pos].push((m.clone(), c.clone()));
        }
        buckets.into_iter().map(|t| RingElement::from_terms(ring, t)).collect()
    }

    pub fn unit_vector(&self, pos: usize) -> ModVec {
        ModVec { terms: vec![(pos, Monomial::one(self.nvars), Scalar::one())] }
    }

    /// `ca·ma·f + cb·mb·g`.
    pub fn lin(&self, f: &ModVec, ca: &Scalar, ma: &Monomial, g: &ModVec, cb: &Scalar, mb: &Monomial) -> ModVec {
        let dom = &self.dom;
        let fa: Vec<(usize, Monomial, Scalar)> = if ca.is_zero() {
            Vec::new()
        } else {
            f.terms.iter().map(|(p, m, c)| (*p, m.mul(ma), dom.mul(c, ca))).collect()
        };
        let gb: Vec<(usize, Monomial, Scalar)> = if cb.is_zero() {
            Vec::new()
        } else {
            g.terms.iter().map(|(p, m, c)| (*p, m.mul(mb), dom.mul(c, cb))).collect()
        };
        let mut out = Vec::with_capacity(fa.len() + gb.len());
        let (mut i, mut j) = (0, 0);
        while i < fa.len() || j < gb.len() {
            let ord = if i == fa.len() {
                Ordering::Less
            } else if j == gb.len() {
                Ordering::Greater
            } else {
                self.cmp((fa[i].0, &fa[i].1), (gb[j].0, &gb[j].1))
            };
            match ord {
                Ordering::Greater => {
                    if !fa[i].2.is_zero() {
                        out.push(fa[i].clone());
                    }
                    i += 1;
                }
                Ordering::Less => {
                    if !gb[j].2.is_zero() {
                        out.push(gb[j].clone());
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let c = dom.add(&fa[i].2, &gb[j].2);
                    if !c.is_zero() {
                        out.push((fa[i].0, fa[i].1.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        ModVec { terms: out }
    }

    fn scale(&self, f: &ModVec, c: &Scalar) -> ModVec {
        ModVec { terms: f.terms.iter().map(|(p, m, x)| (*p, m.clone(), self.dom.mul(x, c))).collect() }
    }

    fn one(&self) -> Monomial {
        Monomial::one(self.nvars)
    }
}

#[derive(Clone, Debug)]
struct Elem {
    v: ModVec,
    /// The element as a combination of the original generators.
    repr: Option<ModVec>,
}

/// A Gröbner basis (strong over ℤ) of the submodule of `R^rank` generated by
/// a list of vectors, optionally remembering how each basis element is
/// written in terms of the generators.
#[derive(Clone, Debug)]
pub struct ModuleGroebnerBasis {
    ring: Ring,
    rank: usize,
    ngens: usize,
    ctx: Ctx,
    elems: Vec<Elem>,
}

fn to_int(c: &Scalar) -> BigInt {
    c.to_integer()
}

impl ModuleGroebnerBasis {
    /// Computes a basis of the submodule generated by `gens` (each of length
    /// `rank`). With `track` set, [`Self::lift`] becomes available.
    pub fn compute(ring: &Ring, rank: usize, gens: &[Vec<RingElement>], track: bool) -> Self {
        let ctx = Ctx::new(ring);
        let mut gb = ModuleGroebnerBasis { ring: ring.clone(), rank, ngens: gens.len(), ctx, elems: Vec::new() };
        let input: Vec<Elem> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                assert_eq!(g.len(), rank, "generator length does not match module rank");
                Elem { v: gb.ctx.from_column(g), repr: track.then(|| gb.ctx.unit_vector(i)) }
            })
            .filter(|e| !e.v.is_zero())
            .collect();
        gb.buchberger(input);
        gb.minimalize();
        gb
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Basis elements as dense vectors.
    pub fn elements(&self) -> Vec<Vec<RingElement>> {
        self.elems.iter().map(|e| self.ctx.to_column(&self.ring, &e.v, self.rank)).collect()
    }

    /// Leading `(position, monomial, coefficient)` of every basis element.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial, Scalar)> {
        self.elems.iter().map(|e| e.v.lead().expect("basis elements are non-zero").clone()).collect()
    }

    fn normalize(&self, mut e: Elem) -> Elem {
        let lc = e.v.lead().expect("non-zero").2.clone();
        let u = self.ctx.dom.normalizing_unit(&lc);
        if !u.is_one() {
            e.v = self.ctx.scale(&e.v, &u);
            e.repr = e.repr.map(|r| self.ctx.scale(&r, &u));
        }
        e
    }

    /// Index of a basis element whose leading term strongly divides `(pos, m, c)`.
    fn find_reducer(&self, pos: usize, m: &Monomial, c: &Scalar) -> Option<usize> {
        self.elems.iter().position(|g| {
            let (gp, gm, gc) = g.v.lead().expect("non-zero");
            *gp == pos && gm.divides(m) && self.ctx.dom.div_exact(c, gc).is_some()
        })
    }

    /// Full reduction of `f` (with its representation) against the current
    /// basis; returns the remainder and the accumulated quotient.
    fn reduce_elem(&self, f: Elem, full: bool) -> Elem {
        let mut cur = f;
        let mut rem = ModVec::default();
        let one = self.ctx.one();
        loop {
            let Some((pos, m, c)) = cur.v.lead().cloned() else { break };
            match self.find_reducer(pos, &m, &c) {
                Some(k) => {
                    let g = &self.elems[k];
                    let (_, gm, gc) = g.v.lead().expect("non-zero");
                    let q = self.ctx.dom.div_exact(&c, gc).expect("checked");
                    let qm = gm.divide_into(&m).expect("checked");
                    let nq = self.ctx.dom.neg(&q);
                    cur.v = self.ctx.lin(&cur.v, &Scalar::one(), &one, &g.v, &nq, &qm);
                    if let (Some(r), Some(gr)) = (cur.repr.as_ref(), g.repr.as_ref()) {
                        cur.repr = Some(self.ctx.lin(r, &Scalar::one(), &one, gr, &nq, &qm));
                    }
                }
                None => {
                    if !full {
                        break;
                    }
                    rem.terms.push(cur.v.terms.remove(0));
                }
            }
        }
        if full {
            // terms were moved in decreasing order, so `rem` is sorted
            cur.v = rem;
        }
        cur
    }

    fn buchberger(&mut self, input: Vec<Elem>) {
        let field = self.ctx.dom.is_field();
        let ideal = self.rank == 1;
        // pair queue keyed by (lcm degree, newer index, older index)
        let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
        let add = |gb: &mut ModuleGroebnerBasis, pairs: &mut BTreeSet<(u32, usize, usize)>, e: Elem| {
            let e = gb.normalize(e);
            let j = gb.elems.len();
            let (pj, mj, _) = e.v.lead().expect("non-zero").clone();
            for (i, g) in gb.elems.iter().enumerate() {
                let (pi, mi, _) = g.v.lead().expect("non-zero");
                if *pi == pj {
                    pairs.insert((mi.lcm(&mj).degree(), j, i));
                }
            }
            gb.elems.push(e);
        };
        for e in input {
            let r = self.reduce_elem(e, false);
            if !r.v.is_zero() {
                add(self, &mut pairs, r);
            }
        }
        let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
        while let Some(key) = pairs.pop_first() {
            let (_, j, i) = key;
            done.insert((i, j));
            let (fi, fj) = (&self.elems[i], &self.elems[j]);
            let (_, mi, ci) = fi.v.lead().expect("non-zero").clone();
            let (_, mj, cj) = fj.v.lead().expect("non-zero").clone();
            let lcm = mi.lcm(&mj);
            let ti = mi.divide_into(&lcm).expect("lcm");
            let tj = mj.divide_into(&lcm).expect("lcm");
            if field && ideal && mi.is_coprime(&mj) {
                continue;
            }
            if field && self.chain_criterion(i, j, &lcm, &done) {
                continue;
            }
            let mut candidates = Vec::new();
            if field {
                let a = self.ctx.dom.inv(&ci).expect("field");
                let b = self.ctx.dom.neg(&self.ctx.dom.inv(&cj).expect("field"));
                candidates.push(self.combine(i, &a, &ti, j, &b, &tj));
            } else {
                let (ai, aj) = (to_int(&ci), to_int(&cj));
                let l = ai.lcm(&aj);
                let a = BigRational::from_integer(&l / &ai);
                let b = BigRational::from_integer(-(&l / &aj));
                candidates.push(self.combine(i, &a, &ti, j, &b, &tj));
                let divides = aj.is_multiple_of(&ai) || ai.is_multiple_of(&aj);
                if !divides {
                    let (_, s, t) = bezout(&ai, &aj).expect("non-zero coefficients");
                    candidates.push(self.combine(
                        i,
                        &BigRational::from_integer(s),
                        &ti,
                        j,
                        &BigRational::from_integer(t),
                        &tj,
                    ));
                }
            }
            for c in candidates {
                let r = self.reduce_elem(c, false);
                if !r.v.is_zero() {
                    add(self, &mut pairs, r);
                }
            }
        }
    }

    fn combine(&self, i: usize, a: &Scalar, ta: &Monomial, j: usize, b: &Scalar, tb: &Monomial) -> Elem {
        let (fi, fj) = (&self.elems[i], &self.elems[j]);
        let v = self.ctx.lin(&fi.v, a, ta, &fj.v, b, tb);
        let repr = match (&fi.repr, &fj.repr) {
            (Some(ri), Some(rj)) => Some(self.ctx.lin(ri, a, ta, rj, b, tb)),
            _ => None,
        };
        Elem { v, repr }
    }

    /// Buchberger's chain criterion (fields only): the pair is redundant if a
    /// third element's leading term divides the lcm and both connecting
    /// pairs have been treated.
    fn chain_criterion(&self, i: usize, j: usize, lcm: &Monomial, done: &BTreeSet<(usize, usize)>) -> bool {
        let pos = self.elems[i].v.lead().expect("non-zero").0;
        let treated = |a: usize, b: usize| done.contains(&(a.min(b), a.max(b)));
        self.elems.iter().enumerate().any(|(k, g)| {
            if k == i || k == j {
                return false;
            }
            let (gp, gm, _) = g.v.lead().expect("non-zero");
            *gp == pos && gm.divides(lcm) && treated(i, k) && treated(j, k)
        })
    }

    /// Drops elements whose leading term is strongly divisible by another's.
    fn minimalize(&mut self) {
        let leads: Vec<(usize, Monomial, Scalar)> = self.leading_terms();
        let dom = &self.ctx.dom;
        let keep: Vec<bool> = (0..leads.len())
            .map(|i| {
                let (pi, mi, ci) = &leads[i];
                !(0..leads.len()).any(|k| {
                    if k == i {
                        return false;
                    }
                    let (pk, mk, ck) = &leads[k];
                    let divides = pk == pi && mk.divides(mi) && dom.div_exact(ci, ck).is_some();
                    // mutual divisibility (identical leading terms up to a unit): keep the older one
                    let mutual = divides && mi.divides(mk) && dom.div_exact(ck, ci).is_some();
                    divides && (!mutual || k < i)
                })
            })
            .collect();
        let mut idx = 0;
        self.elems.retain(|_| {
            idx += 1;
            keep[idx - 1]
        });
    }

    /// Remainder of `v` modulo the submodule (zero iff `v` is a member).
    pub fn normal_form(&self, v: &[RingElement]) -> Vec<RingElement> {
        let e = Elem { v: self.ctx.from_column(v), repr: None };
        let r = self.reduce_elem(e, true);
        self.ctx.to_column(&self.ring, &r.v, self.rank)
    }

    pub fn contains(&self, v: &[RingElement]) -> bool {
        let e = Elem { v: self.ctx.from_column(v), repr: None };
        self.reduce_elem(e, false).v.is_zero()
    }

    /// Coefficients `q` with `Σ q_i·gens[i] = v`, or `None` when `v` is not
    /// in the submodule. Requires a basis computed with tracking.
    pub fn lift(&self, v: &[RingElement]) -> Option<Vec<RingElement>> {
        assert!(self.elems.iter().all(|e| e.repr.is_some()), "basis computed without tracking");
        let start = Elem { v: self.ctx.from_column(v), repr: Some(ModVec::default()) };
        let r = self.reduce_elem(start, false);
        if !r.v.is_zero() {
            return None;
        }
        // reduce_elem accumulated -Σ q·repr; flip the sign
        let q = self.ctx.to_column(&self.ring, &r.repr.expect("tracked"), self.ngens);
        Some(q.into_iter().map(|x| -x).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PolyRing;

    fn ring(dom: CoefficientDomain, vars: &[&str]) -> Ring {
        PolyRing::new(dom, vars, MonomialOrder::GRevLex).unwrap()
    }

    fn p(r: &Ring, s: &str) -> RingElement {
        RingElement::parse(r, s).unwrap()
    }

    #[test]
    fn variables_form_a_basis() {
        let r = ring(CoefficientDomain::Rationals, &["x", "y"]);
        let gb = ModuleGroebnerBasis::compute(&r, 1, &[vec![p(&r, "x")], vec![p(&r, "y")]], false);
        assert_eq!(gb.elements(), vec![vec![p(&r, "x")], vec![p(&r, "y")]]);
    }

    #[test]
    fn ideal_membership_over_rationals() {
        let r = ring(CoefficientDomain::Rationals, &["x", "y"]);
        // y·x² − x·(xy + 1) = −x, then (xy + 1) − y·x = 1: the unit ideal
        let gens = [vec![p(&r, "x^2")], vec![p(&r, "x*y + 1")]];
        let gb = ModuleGroebnerBasis::compute(&r, 1, &gens, true);
        assert!(gb.contains(&[p(&r, "1")]));
        let q = gb.lift(&[p(&r, "1")]).unwrap();
        let back = &(&q[0] * &gens[0][0]) + &(&q[1] * &gens[1][0]);
        assert!(back.is_one());

        let gens = [vec![p(&r, "x^2")], vec![p(&r, "y^2")]];
        let gb = ModuleGroebnerBasis::compute(&r, 1, &gens, false);
        assert!(!gb.contains(&[p(&r, "x*y")]));
        assert_eq!(gb.normal_form(&[p(&r, "x^2 + x*y")]), vec![p(&r, "x*y")]);
        assert!(gb.contains(&[p(&r, "x^3 - 2*x*y^2")]));
    }

    #[test]
    fn integer_ideal_two_x() {
        let r = ring(CoefficientDomain::Integers, &["x"]);
        let gb = ModuleGroebnerBasis::compute(&r, 1, &[vec![p(&r, "2")], vec![p(&r, "x")]], true);
        assert_eq!(gb.len(), 2);
        assert!(gb.contains(&[p(&r, "x + 2")]));
        assert!(!gb.contains(&[p(&r, "1")]));
        assert!(!gb.contains(&[p(&r, "x + 1")]));
    }

    #[test]
    fn integer_gcd_appears() {
        // (3, 2) generate the unit ideal over ℤ
        let r = ring(CoefficientDomain::Integers, &["x"]);
        let gens = [vec![p(&r, "3*x")], vec![p(&r, "2*x")]];
        let gb = ModuleGroebnerBasis::compute(&r, 1, &gens, true);
        assert!(gb.contains(&[p(&r, "x")]));
        let q = gb.lift(&[p(&r, "x")]).unwrap();
        assert_eq!(&(&q[0] * &gens[0][0]) + &(&q[1] * &gens[1][0]), p(&r, "x"));
        assert!(!gb.contains(&[p(&r, "1")]));
    }

    #[test]
    fn module_membership() {
        let r = ring(CoefficientDomain::Integers, &["x", "y"]);
        // columns of the Koszul map on (x, y): image of (-y, x)
        let gens = [vec![p(&r, "-y"), p(&r, "x")]];
        let gb = ModuleGroebnerBasis::compute(&r, 2, &gens, true);
        let v = vec![p(&r, "-y^2 - 2*x*y"), p(&r, "x*y + 2*x^2")];
        let q = gb.lift(&v).unwrap();
        assert_eq!(q[0], p(&r, "y + 2*x"));
        assert!(gb.lift(&[p(&r, "x"), p(&r, "y")]).is_none());
    }
}
