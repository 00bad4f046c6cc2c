//! Machine verification of a multiplication table: DG-algebra axioms,
//! divided powers, Poincaré duality and compatibility of a partial product.
//!
//! Every check evaluates both sides of an identity on basis tuples (and on
//! sums of two basis vectors where the identity is not multilinear) and
//! records each tuple where they differ.

use std::fmt;

use num_bigint::BigInt;

use crate::arith::{Ring, RingElement};
use crate::complexes::FreeComplex;
use crate::modules::vector::{self, Vector};
use crate::modules::{DividedSquareBasis, Matrix};
use crate::pipeline::{ConstructionTrace, DGStructure};

/// How many failing tuples a check keeps.
pub const FAILURE_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The identity holds for degree reasons alone.
    Vacuous,
    /// The identity is built into how the table is stored, so no table can
    /// violate it; the tuples are still evaluated.
    Structural,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub tuple: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub tag: String,
    pub status: Status,
    /// Number of tuples evaluated.
    pub tuples: usize,
    /// The first few failures, at most [`FAILURE_CAP`].
    pub failures: Vec<Failure>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            Status::Pass => write!(f, "PASS    {} ({} tuples)", self.tag, self.tuples),
            Status::Vacuous => write!(f, "VACUOUS {}", self.tag),
            Status::Structural => write!(f, "STRUCT  {} ({} tuples)", self.tag, self.tuples),
            Status::Fail => {
                write!(f, "FAIL    {} ({} tuples)", self.tag, self.tuples)?;
                for x in &self.failures {
                    write!(f, "\n        at {}: {} != {}", x.tuple, x.lhs, x.rhs)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, tag: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.tag == tag)
    }

    pub fn first_failure(&self) -> Option<String> {
        let c = self.failed().next()?;
        Some(match c.failures.first() {
            Some(x) => format!("{} fails at {}: {} != {}", c.tag, x.tuple, x.lhs, x.rhs),
            None => format!("{} fails", c.tag),
        })
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CheckLevel {
    /// Triple products of degree-one elements only on strictly increasing
    /// basis triples.
    Fast,
    #[default]
    Exhaustive,
}

struct Check {
    tag: String,
    tuples: usize,
    failures: Vec<Failure>,
    failed: bool,
}

impl Check {
    fn new(tag: impl Into<String>) -> Self {
        Check { tag: tag.into(), tuples: 0, failures: Vec::new(), failed: false }
    }

    fn eq(&mut self, tuple: impl FnOnce() -> String, lhs: &[RingElement], rhs: &[RingElement]) {
        self.tuples += 1;
        if lhs != rhs {
            self.failed = true;
            if self.failures.len() < FAILURE_CAP {
                self.failures.push(Failure { tuple: tuple(), lhs: vector::format(lhs), rhs: vector::format(rhs) });
            }
        }
    }

    fn eq1(&mut self, tuple: impl FnOnce() -> String, lhs: RingElement, rhs: RingElement) {
        self.eq(tuple, &[lhs], &[rhs]);
    }

    fn fail(&mut self, tuple: impl Into<String>, detail: impl Into<String>) {
        self.failed = true;
        if self.failures.len() < FAILURE_CAP {
            self.failures.push(Failure { tuple: tuple.into(), lhs: detail.into(), rhs: "expected".into() });
        }
    }

    fn finish(self) -> CheckResult {
        self.finish_as(Status::Pass)
    }

    /// Like [`Check::finish`], reporting `ok` instead of `Pass`.
    fn finish_as(self, ok: Status) -> CheckResult {
        CheckResult {
            tag: self.tag,
            status: if self.failed { Status::Fail } else { ok },
            tuples: self.tuples,
            failures: self.failures,
        }
    }
}

fn vacuous(tag: impl Into<String>) -> CheckResult {
    CheckResult { tag: tag.into(), status: Status::Vacuous, tuples: 0, failures: Vec::new() }
}

/// Names like `e3`, `f2`, `g1` for basis vectors of `F₁`, `F₂`, `F₃`.
fn name(deg: usize, i: usize) -> String {
    let letter = ["1", "e", "f", "g", "w"][deg];
    if deg == 0 || deg == 4 {
        letter.to_string()
    } else {
        format!("{letter}{}", i + 1)
    }
}

/// The multiplication on `F` given by a [`DGStructure`].
pub struct Algebra<'a> {
    f: &'a FreeComplex,
    d: &'a DGStructure,
    ranks: [usize; 5],
}

impl<'a> Algebra<'a> {
    /// Fails with a message if the table shapes do not match `f`.
    pub fn new(f: &'a FreeComplex, d: &'a DGStructure) -> Result<Self, String> {
        let [_, r1, r2, r3, _] = f.ranks();
        let want = [
            ("psi1", &d.psi1, (r2, r1 * r1)),
            ("psi2", &d.psi2, (r3, r1 * r2)),
            ("psi3", &d.psi3, (1, r1 * r3)),
            ("psi4", &d.psi4, (1, DividedSquareBasis::new(r2).len())),
        ];
        for (n, m, shape) in want {
            if m.shape() != shape {
                return Err(format!("{n} is {}x{}, expected {}x{}", m.rows(), m.cols(), shape.0, shape.1));
            }
        }
        if f.rank(0) != 1 || f.rank(4) != 1 {
            return Err("F0 and F4 must have rank one".into());
        }
        Ok(Algebra { f, d, ranks: f.ranks() })
    }

    pub fn ring(&self) -> &Ring {
        self.f.ring()
    }

    pub fn rank(&self, i: usize) -> usize {
        if i <= 4 {
            self.ranks[i]
        } else {
            0
        }
    }

    pub fn basis(&self, i: usize, k: usize) -> Vector {
        vector::unit(self.ring(), self.rank(i), k)
    }

    pub fn zero(&self, i: usize) -> Vector {
        vector::zero(self.ring(), self.rank(i))
    }

    /// The differential `F_i → F_{i-1}`; zero on `F₀`.
    pub fn d(&self, i: usize, x: &[RingElement]) -> Vector {
        if i == 0 || i > 4 {
            return self.zero(i.saturating_sub(1));
        }
        self.f.d(i).apply(x)
    }

    /// `x·y` for `x ∈ F_i`, `y ∈ F_j`; empty when `i + j > 4`.
    pub fn mul(&self, i: usize, x: &[RingElement], j: usize, y: &[RingElement]) -> Vector {
        let ring = self.ring();
        if i + j > 4 {
            return Vec::new();
        }
        match (i, j) {
            (0, _) => vector::scale(&x[0], y),
            (_, 0) => vector::scale(&y[0], x),
            (1, 1) => self.d.psi1.apply(&vector::tensor(ring, x, y)),
            (1, 2) => self.d.psi2.apply(&vector::tensor(ring, x, y)),
            (2, 1) => self.d.psi2.apply(&vector::tensor(ring, y, x)),
            (1, 3) => self.d.psi3.apply(&vector::tensor(ring, x, y)),
            (3, 1) => vector::scale(&RingElement::from_i64(ring, -1), &self.d.psi3.apply(&vector::tensor(ring, y, x))),
            (2, 2) => self.d.psi4.apply(&vector::divided_product(x, y)),
            _ => unreachable!("degrees {i}+{j} exceed four"),
        }
    }

    /// `x^(2)` for `x ∈ F₂`.
    pub fn square2(&self, x: &[RingElement]) -> Vector {
        self.d.psi4.apply(&vector::divided_square(x))
    }
}

fn signed(a: &Algebra, k: usize, v: &[RingElement]) -> Vector {
    if k.is_multiple_of(2) {
        v.to_vec()
    } else {
        vector::scale(&RingElement::from_i64(a.ring(), -1), v)
    }
}

/// Basis vectors of `F_i` and sums of two distinct basis vectors.
fn polarized(a: &Algebra, i: usize) -> Vec<(String, Vector)> {
    let r = a.rank(i);
    let mut out: Vec<(String, Vector)> = (0..r).map(|k| (name(i, k), a.basis(i, k))).collect();
    for p in 0..r {
        for q in p + 1..r {
            out.push((format!("{}+{}", name(i, p), name(i, q)), vector::add(&a.basis(i, p), &a.basis(i, q))));
        }
    }
    out
}

fn shape_failure(tag: &str, msg: String) -> Report {
    let mut c = Check::new(tag);
    c.fail("shapes", msg);
    Report { checks: vec![c.finish()] }
}

/// Unit, graded commutativity, Leibniz and associativity.
pub fn check_dg_axioms(f: &FreeComplex, d: &DGStructure, level: CheckLevel) -> Report {
    let a = match Algebra::new(f, d) {
        Ok(a) => a,
        Err(m) => return shape_failure("table shapes", m),
    };
    let mut checks = Vec::new();

    let mut c = Check::new("unit");
    let one = a.basis(0, 0);
    for i in 0..=4 {
        for k in 0..a.rank(i) {
            let x = a.basis(i, k);
            c.eq(|| name(i, k), &a.mul(0, &one, i, &x), &x);
            c.eq(|| format!("{}·1", name(i, k)), &a.mul(i, &x, 0, &one), &x);
        }
    }
    checks.push(c.finish_as(Status::Structural));

    let mut c = Check::new("graded-commutativity");
    for i in 1..=3 {
        for j in i..=4 - i {
            for p in 0..a.rank(i) {
                for q in 0..a.rank(j) {
                    let (x, y) = (a.basis(i, p), a.basis(j, q));
                    c.eq(|| format!("{}·{}", name(i, p), name(j, q)), &a.mul(i, &x, j, &y), &signed(&a, i * j, &a.mul(j, &y, i, &x)));
                }
            }
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("alternating-square");
    for p in 0..a.rank(1) {
        let x = a.basis(1, p);
        c.eq(|| format!("{}·{}", name(1, p), name(1, p)), &a.mul(1, &x, 1, &x), &a.zero(2));
    }
    checks.push(c.finish());

    // d(xy) = d(x)y + (-1)^i x d(y)
    for i in 1..=4 {
        for j in i..=4 {
            if i + j > 5 {
                continue;
            }
            let mut c = Check::new(format!("leibniz({i},{j})"));
            for p in 0..a.rank(i) {
                for q in 0..a.rank(j) {
                    let (x, y) = (a.basis(i, p), a.basis(j, q));
                    let lhs = if i + j <= 4 { a.d(i + j, &a.mul(i, &x, j, &y)) } else { a.zero(4) };
                    let rhs = vector::add(&a.mul(i - 1, &a.d(i, &x), j, &y), &signed(&a, i, &a.mul(i, &x, j - 1, &a.d(j, &y))));
                    c.eq(|| format!("{}⊗{}", name(i, p), name(j, q)), &lhs, &rhs);
                }
            }
            checks.push(c.finish());
        }
    }

    for (i, j, k) in [(1, 1, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1)] {
        let mut c = Check::new(format!("associativity({i},{j},{k})"));
        for p in 0..a.rank(i) {
            for q in 0..a.rank(j) {
                for s in 0..a.rank(k) {
                    if level == CheckLevel::Fast && (i, j, k) == (1, 1, 1) && !(p < q && q < s) {
                        continue;
                    }
                    let (x, y, z) = (a.basis(i, p), a.basis(j, q), a.basis(k, s));
                    let lhs = a.mul(i + j, &a.mul(i, &x, j, &y), k, &z);
                    let rhs = a.mul(i, &x, j + k, &a.mul(j, &y, k, &z));
                    c.eq(|| format!("{}·{}·{}", name(i, p), name(j, q), name(k, s)), &lhs, &rhs);
                }
            }
        }
        checks.push(c.finish());
    }
    checks.push(vacuous("associativity(total degree ≥ 5)"));
    Report { checks }
}

/// Divided powers on `F₂`: polarization, `x·x = 2x^(2)`, the differential
/// `d(x^(2)) = d(x)·x`, and `(x₁y₁)^(2) = 0`.
pub fn check_divided_power_axioms(f: &FreeComplex, d: &DGStructure) -> Report {
    let a = match Algebra::new(f, d) {
        Ok(a) => a,
        Err(m) => return shape_failure("table shapes", m),
    };
    let mut checks = Vec::new();
    let r2 = a.rank(2);

    let mut c = Check::new("divided-power.polarization");
    for p in 0..r2 {
        for q in p + 1..r2 {
            let (x, y) = (a.basis(2, p), a.basis(2, q));
            let lhs = a.square2(&vector::add(&x, &y));
            let rhs = vector::add(&vector::add(&a.square2(&x), &a.mul(2, &x, 2, &y)), &a.square2(&y));
            c.eq(|| format!("{}+{}", name(2, p), name(2, q)), &lhs, &rhs);
        }
    }
    checks.push(c.finish_as(Status::Structural));

    let mut c = Check::new("divided-power.doubling");
    let two = RingElement::from_i64(a.ring(), 2);
    for p in 0..r2 {
        let x = a.basis(2, p);
        c.eq(|| name(2, p), &a.mul(2, &x, 2, &x), &vector::scale(&two, &a.square2(&x)));
    }
    checks.push(c.finish_as(Status::Structural));

    let mut c = Check::new("divided-power.differential");
    for (n, x) in polarized(&a, 2) {
        c.eq(|| n.clone(), &a.d(4, &a.square2(&x)), &a.mul(1, &a.d(2, &x), 2, &x));
    }
    checks.push(c.finish());

    let mut c = Check::new("divided-power.odd-product-square");
    for p in 0..a.rank(1) {
        for q in p + 1..a.rank(1) {
            let xy = a.mul(1, &a.basis(1, p), 1, &a.basis(1, q));
            c.eq(|| format!("({}·{})^(2)", name(1, p), name(1, q)), &a.square2(&xy), &a.zero(4));
        }
    }
    checks.push(c.finish());
    Report { checks }
}

/// The matrices of `F_i → F_{4-i}^∨`, `x ↦ (y ↦ x·y)`, for `i = 0..4`.
pub fn duality_matrices(f: &FreeComplex, psi3: &Matrix, psi4: &Matrix) -> Result<[Matrix; 5], String> {
    let ring = f.ring();
    let [_, r1, r2, r3, _] = f.ranks();
    if f.rank(0) != 1 || f.rank(4) != 1 {
        return Err("F0 and F4 must have rank one".into());
    }
    let [phi1, phi2, phi3] = crate::pipeline::duality_maps(f.ranks(), psi3, psi4).map_err(|e| e.to_string())?;
    debug_assert_eq!((phi1.shape(), phi2.shape()), ((r3, r1), (r2, r2)));
    let one = Matrix::identity(ring, 1);
    Ok([one.clone(), phi1, phi2, -phi3, one])
}

/// Each `F_i → F_{4-i}^∨` induced by multiplication is an isomorphism.
pub fn check_poincare(f: &FreeComplex, psi3: &Matrix, psi4: &Matrix) -> Report {
    let ranks = f.ranks();
    if ranks[0] != ranks[4] || ranks[1] != ranks[3] {
        return shape_failure("poincare", format!("ranks {ranks:?} are not symmetric"));
    }
    let ms = match duality_matrices(f, psi3, psi4) {
        Ok(m) => m,
        Err(e) => return shape_failure("poincare", e),
    };
    let mut checks = Vec::new();
    for (i, m) in ms.iter().enumerate() {
        let mut c = Check::new(format!("poincare.degree{i}"));
        c.tuples += 1;
        match m.determinant() {
            Ok(det) if det.is_unit() => match m.inverse() {
                Ok(inv) => {
                    let id = Matrix::identity(f.ring(), m.rows());
                    if m * &inv != id || &inv * m != id {
                        c.fail(format!("F{i}"), "inverse is not two-sided");
                    }
                }
                Err(e) => c.fail(format!("F{i}"), e.to_string()),
            },
            Ok(det) => c.fail(format!("F{i}"), format!("det = {det} is not a unit")),
            Err(e) => c.fail(format!("F{i}"), e.to_string()),
        }
        // the degree 0 and 4 maps are the identity of F₀ = F₄
        checks.push(if i == 0 || i == 4 { c.finish_as(Status::Structural) } else { c.finish() });
    }
    Report { checks }
}

/// `ψ₁` is `N`-compatible:
/// `d₂ψ₁(x⊗y) = N(d₁(x)y − d₁(y)x)` and
/// `ψ₄(ψ₁(x₁⊗d₂x₂)·x₂) = N d₁(x₁)ψ₄(x₂^(2))`.
pub fn check_compatibility(f: &FreeComplex, psi4: &Matrix, psi1: &Matrix, n: &BigInt) -> Report {
    let ring = f.ring();
    let [_, r1, r2, _, _] = f.ranks();
    let d2b = DividedSquareBasis::new(r2);
    if psi1.shape() != (r2, r1 * r1) || psi4.shape() != (1, d2b.len()) {
        return shape_failure("compat", "psi1 or psi4 has the wrong shape".into());
    }
    let n = RingElement::from_integer(ring, n.clone());
    let e1 = |i: usize| vector::unit(ring, r1, i);
    let d1 = |x: &[RingElement]| vector::dot(ring, &f.d(1).row(0), x);
    let psi4_of = |v: &[RingElement]| vector::dot(ring, &psi4.row(0), v);

    let mut c = Check::new("compat.differential");
    for p in 0..r1 {
        for q in 0..r1 {
            let (x, y) = (e1(p), e1(q));
            let lhs = f.d(2).apply(&psi1.column(p * r1 + q));
            let rhs = vector::scale(&n, &vector::sub(&vector::scale(&d1(&x), &y), &vector::scale(&d1(&y), &x)));
            c.eq(|| format!("{}⊗{}", name(1, p), name(1, q)), &lhs, &rhs);
        }
    }
    let mut checks = vec![c.finish()];

    let mut c = Check::new("compat.pairing");
    let mut samples: Vec<(String, Vector)> = (0..r2).map(|k| (name(2, k), vector::unit(ring, r2, k))).collect();
    for p in 0..r2 {
        for q in p + 1..r2 {
            samples.push((format!("{}+{}", name(2, p), name(2, q)), vector::add(&vector::unit(ring, r2, p), &vector::unit(ring, r2, q))));
        }
    }
    for p in 0..r1 {
        for (sn, x2) in &samples {
            let prod = psi1.apply(&vector::tensor(ring, &e1(p), &f.d(2).apply(x2)));
            let lhs = psi4_of(&vector::divided_product(&prod, x2));
            let rhs = &(&n * &d1(&e1(p))) * &psi4_of(&vector::divided_square(x2));
            c.eq1(|| format!("{}⊗{}", name(1, p), sn), lhs, rhs);
        }
    }
    checks.push(c.finish());
    Report { checks }
}

/// Every check: 1-compatibility of `Ψ₁`, the DG axioms, divided powers and
/// Poincaré duality.
pub fn verify_all(f: &FreeComplex, d: &DGStructure, level: CheckLevel) -> Report {
    if let Err(m) = Algebra::new(f, d) {
        return shape_failure("table shapes", m);
    }
    let mut r = check_compatibility(f, &d.psi4, &d.psi1, &BigInt::from(1));
    r.extend(check_dg_axioms(f, d, level));
    r.extend(check_divided_power_axioms(f, d));
    r.extend(check_poincare(f, &d.psi3, &d.psi4));
    r
}

/// Compares two matrices column by column.
pub fn matrix_identity(tag: &str, lhs: &Matrix, rhs: &Matrix) -> CheckResult {
    let mut c = Check::new(tag);
    if lhs.shape() != rhs.shape() {
        c.fail("shapes", format!("{}x{} vs {}x{}", lhs.rows(), lhs.cols(), rhs.rows(), rhs.cols()));
        return c.finish();
    }
    for j in 0..lhs.cols() {
        c.eq(|| format!("column {}", j + 1), &lhs.column(j), &rhs.column(j));
    }
    c.finish()
}

/// Re-checks every map recorded by [`crate::pipeline::build_dg`] against
/// the equation that defines it.
pub fn replay_trace(f: &FreeComplex, t: &ConstructionTrace) -> Report {
    replay::run(f, t)
}

mod replay;
