//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Instant;

mod common;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use resdg::arith::{CoefficientDomain, Ring, RingElement};
use resdg::complexes::{
    check_self_duality, direct_sum_trivial, direct_sum_witness, koszul_complex, koszul_witness, validate_resolution,
    FreeComplex, SelfDualityWitness, ValidatedComplex,
};
use resdg::lift::{solve_post, solve_pre, Grade};
use resdg::modules::basis::is_alternating;
use resdg::modules::{wedge_projection, DividedSquareBasis, Matrix};
use resdg::pipeline::{
    build_dg, build_psi12, build_psi13, build_skeleton, extend_trivial_dg, perfect_correction, BetaR, CompatiblePsi1,
    DGStructure, PairingSet,
};
use resdg::verify::{self, CheckLevel, Report, Status};

use common::{elems, product, random_matrix, ring, xyzw};

type Outcome = Result<String, String>;

macro_rules! require {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

trait Context<T> {
    fn ctx(self, what: &str) -> Result<T, String>;
}

impl<T> Context<T> for resdg::Result<T> {
    fn ctx(self, what: &str) -> Result<T, String> {
        self.map_err(|e| format!("{what}: {e}"))
    }
}

// ---------------------------------------------------------------- logging

static LINES: Mutex<Vec<String>> = Mutex::new(Vec::new());

struct Capture;

impl log::Log for Capture {
    fn enabled(&self, m: &log::Metadata) -> bool {
        m.level() <= log::Level::Info
    }
    fn log(&self, r: &log::Record) {
        if self.enabled(r.metadata()) {
            LINES.lock().unwrap().push(r.args().to_string());
        }
    }
    fn flush(&self) {}
}

static LOGGER: Capture = Capture;

fn take_log() -> Vec<String> {
    std::mem::take(&mut *LINES.lock().unwrap())
}

// ---------------------------------------------------------------- inputs

fn koszul(r: &Ring, gens: &[&str]) -> Result<(ValidatedComplex, SelfDualityWitness), String> {
    let f = koszul_complex(r, &elems(r, gens)).ctx("koszul complex")?;
    let w = check_self_duality(&f, koszul_witness(r)).ctx("koszul witness")?;
    Ok((validate_resolution(&f).ctx("exactness")?, w))
}

/// Runs every verifier family with the strongest settings; returns
/// `(checks, tuples)`.
fn full_suite(f: &FreeComplex, d: &DGStructure) -> Result<(usize, usize), String> {
    let mut report = verify::check_dg_axioms(f, d, CheckLevel::Exhaustive);
    report.extend(verify::check_divided_power_axioms(f, d));
    report.extend(verify::check_poincare(f, &d.psi3, &d.psi4));
    report.extend(verify::check_compatibility(f, &d.psi4, &d.psi1, &BigInt::from(1)));
    if let Some(msg) = report.first_failure() {
        return Err(msg);
    }
    let tuples = report.checks.iter().map(|c| c.tuples).sum();
    require!(tuples > 0, "the verifier evaluated nothing");
    Ok((report.checks.len(), tuples))
}

fn expected_trajectory(r1: usize) -> Vec<BigInt> {
    let mut n = BigInt::from(2);
    let mut out = vec![n.clone()];
    for _ in 0..r1 {
        n = BigInt::from(2) * &n * &n;
        out.push(n.clone());
    }
    out
}

// ---------------------------------------------------------------- criteria

fn end_to_end_rationals() -> Outcome {
    let r = xyzw(CoefficientDomain::Rationals);
    let (f, w) = koszul(&r, &["x", "y", "z", "w"])?;
    let out = build_dg(&f, &w).ctx("build_dg")?;
    let (checks, tuples) = full_suite(f.complex(), &out.structure)?;
    Ok(format!("Koszul(x,y,z,w) over QQ: {checks} checks, {tuples} tuples, N=1 compatible"))
}

fn end_to_end_integers() -> Outcome {
    let r = xyzw(CoefficientDomain::Integers);
    let (f, w) = koszul(&r, &["x", "y", "z", "w"])?;
    take_log();
    let out = build_dg(&f, &w).ctx("build_dg")?;
    let log = take_log();
    let (checks, tuples) = full_suite(f.complex(), &out.structure)?;

    let expected = expected_trajectory(4);
    require!(out.n_trajectory == expected, "N trajectory {:?}, expected {:?}", out.n_trajectory, expected);
    let traj_line = format!(
        "N trajectory: {}",
        expected.iter().map(ToString::to_string).collect::<Vec<_>>().join(" -> ")
    );
    require!(log.contains(&traj_line), "run log lacks `{traj_line}`: {log:?}");
    require!(expected[4] == BigInt::from(2u64.pow(31)), "final N is not 2^31");

    let (a, b, n) = &out.bezout;
    require!(*n == 31, "bezout exponent is {n}, expected 31");
    let lhs = BigInt::from(3) * a + (BigInt::from(1) << 31usize) * b;
    require!(lhs == BigInt::from(1), "3*({a}) + 2^31*({b}) = {lhs}");
    let bezout_line = format!("bezout: 3*({a}) + 2^31*({b}) = 1");
    require!(log.contains(&bezout_line), "run log lacks `{bezout_line}`: {log:?}");
    Ok(format!("Koszul(x,y,z,w) over ZZ: {checks} checks, {tuples} tuples; log shows `{bezout_line}`"))
}

fn non_minimal_input() -> Outcome {
    let r = xyzw(CoefficientDomain::Integers);
    let (f, w) = koszul(&r, &["x", "y", "z", "w"])?;
    let g = direct_sum_trivial(f.complex(), 1).ctx("direct sum")?;
    let phi = direct_sum_witness(f.complex(), &w, 1).ctx("shifted witness")?;
    let wg = check_self_duality(&g, phi).ctx("witness on the sum")?;
    let vg = validate_resolution(&g).ctx("exactness of the sum")?;
    require!(g.ranks() == [1, 5, 8, 5, 1], "unexpected ranks {:?}", g.ranks());
    let out = build_dg(&vg, &wg).ctx("build_dg on the sum")?;
    let sigma = out.trace.get_map("correction.sigma").ok_or("trace has no correction.sigma")?;
    require!(!sigma.is_zero(), "perfect correction applied sigma = 0 with the shifted witness");
    let phis = verify::duality_matrices(&g, &out.structure.psi3, &out.structure.psi4)?;
    let mut dets = Vec::new();
    for (i, m) in phis.iter().enumerate().take(4).skip(1) {
        let det = m.determinant().ctx("determinant")?;
        require!(det.is_unit(), "det Phi{i} = {det} is not a unit");
        dets.push(det.to_string());
    }
    let (checks, _) = full_suite(&g, &out.structure)?;

    let plain = build_dg(&f, &w).ctx("build_dg on Koszul")?;
    let ext = extend_trivial_dg(f.complex(), &plain.structure, 1).ctx("extend_trivial_dg")?;
    let (ext_checks, _) = full_suite(&g, &ext)?;
    Ok(format!(
        "sigma nonzero, det Phi1..3 = {}; pipeline {checks} checks pass; trivial extension {ext_checks} checks pass",
        dets.join(", ")
    ))
}

/// Direct evaluation of the `β`, `r` identities from raw matrices.
struct Oracle<'a> {
    f: &'a FreeComplex,
    p: &'a PairingSet,
    c: &'a CompatiblePsi1,
    br: &'a BetaR,
    db: DividedSquareBasis,
    d2f2: DividedSquareBasis,
    n: RingElement,
}

impl Oracle<'_> {
    fn zero(&self) -> RingElement {
        RingElement::zero(self.f.ring())
    }
    fn r1(&self) -> usize {
        self.f.rank(1)
    }
    fn d1(&self, i: usize) -> RingElement {
        self.f.d(1).get(0, i).clone()
    }
    /// `e_a·e_b` in `D₂F₁` as `(index, coefficient)`.
    fn prod(&self, a: usize, b: usize) -> (usize, i64) {
        (self.db.index(a, b), if a == b { 2 } else { 1 })
    }
    fn sq(&self, a: usize) -> (usize, i64) {
        (self.db.index(a, a), 1)
    }
    /// `ψ₄(ψ₁(e_a⊗e_z)·ψ₁(e_b⊗e_w))`
    fn quad(&self, a: usize, z: usize, b: usize, w: usize) -> RingElement {
        let r1 = self.r1();
        let u = self.c.psi1.column(a * r1 + z);
        let v = self.c.psi1.column(b * r1 + w);
        let mut acc = self.zero();
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                let k = self.d2f2.index(i, j);
                let value = if i == j { self.p.psi4.get(0, k).scale_i64(2) } else { self.p.psi4.get(0, k).clone() };
                acc = &acc + &(&(ui * vj) * &value);
            }
        }
        acc
    }
    /// `Nψ₃(e_w⊗χ(θ))`
    fn npc(&self, w: usize, (theta, c): (usize, i64)) -> RingElement {
        let r3 = self.f.rank(3);
        let mut acc = self.zero();
        for k in 0..r3 {
            acc = &acc + &(self.p.psi3.get(0, w * r3 + k) * self.c.chi.get(k, theta));
        }
        (&self.n * &acc).scale_i64(c)
    }
    fn beta(&self, (theta, c): (usize, i64), z: usize) -> RingElement {
        self.br.beta.get(0, theta * self.r1() + z).scale_i64(c)
    }
    fn r(&self, (theta, c): (usize, i64)) -> RingElement {
        self.br.r.get(0, theta).scale_i64(c)
    }

    /// Evaluates every identity on every basis tuple; returns the number of
    /// tuples.
    fn check(&self) -> Result<usize, String> {
        let r1 = self.r1();
        let mut count = 0;
        let mut eq = |name: &str, at: String, lhs: RingElement, rhs: RingElement| -> Result<(), String> {
            count += 1;
            require!(lhs == rhs, "{name} fails at {at}: {lhs} != {rhs}");
            Ok(())
        };
        for a in 0..r1 {
            let xa = self.sq(a);
            for z in 0..r1 {
                for w in 0..r1 {
                    // β is determined by d₁(w)β(x^(2)⊗z)
                    eq(
                        "beta definition",
                        format!("(e{a}, e{z}, e{w})"),
                        &self.d1(w) * &self.beta(xa, z),
                        &self.quad(a, z, a, w) + &(&self.d1(z) * &self.npc(w, xa)),
                    )?;
                    // d₁(w)d₁(z)r(x^(2)) = ψ₄(ψ₁(x⊗z)ψ₁(x⊗w)) + Nd₁(z)ψ₃(w⊗χ(x^(2))) + Nd₁(w)ψ₃(z⊗χ(x^(2)))
                    eq(
                        "r quadratic identity",
                        format!("(e{a}, e{z}, e{w})"),
                        &(&self.d1(w) * &self.d1(z)) * &self.r(xa),
                        &(&self.quad(a, z, a, w) + &(&self.d1(z) * &self.npc(w, xa))) + &(&self.d1(w) * &self.npc(z, xa)),
                    )?;
                    for b in a + 1..r1 {
                        let xy = self.prod(a, b);
                        eq(
                            "r quadratic identity, polarized",
                            format!("(e{a}e{b}, e{z}, e{w})"),
                            &(&self.d1(w) * &self.d1(z)) * &self.r(xy),
                            &(&(&self.quad(a, z, b, w) + &self.quad(b, z, a, w)) + &(&self.d1(z) * &self.npc(w, xy)))
                                + &(&self.d1(w) * &self.npc(z, xy)),
                        )?;
                    }
                }
            }
            // β(x^(2)⊗x) = Nψ₃(x⊗χ(x^(2)))
            eq("beta cubic identity", format!("e{a}"), self.beta(xa, a), self.npc(a, xa))?;
            // d₁(x)r(x^(2)) = 2Nψ₃(x⊗χ(x^(2)))
            eq("r linear identity", format!("e{a}"), &self.d1(a) * &self.r(xa), self.npc(a, xa).scale_i64(2))?;
            for b in 0..r1 {
                let xy = self.prod(a, b);
                // β(yx⊗x) + β(x^(2)⊗y) = Nψ₃(x⊗χ(xy)) + Nψ₃(y⊗χ(x^(2)))
                let rhs = &self.npc(a, xy) + &self.npc(b, xa);
                eq("beta mixed identity", format!("(e{a}, e{b})"), &self.beta(xy, a) + &self.beta(xa, b), rhs.clone())?;
                // d₁(x)r(xy) + d₁(y)r(x^(2)) = 2Nψ₃(x⊗χ(xy)) + 2Nψ₃(y⊗χ(x^(2)))
                eq(
                    "r mixed identity",
                    format!("(e{a}, e{b})"),
                    &(&self.d1(a) * &self.r(xy)) + &(&self.d1(b) * &self.r(xa)),
                    rhs.scale_i64(2),
                )?;
                for c in b + 1..r1 {
                    if b <= a {
                        continue;
                    }
                    let (ab, ac, bc) = (self.prod(a, b), self.prod(a, c), self.prod(b, c));
                    eq(
                        "beta cubic identity, polarized",
                        format!("(e{a}, e{b}, e{c})"),
                        &(&self.beta(ab, c) + &self.beta(ac, b)) + &self.beta(bc, a),
                        &(&self.npc(a, bc) + &self.npc(b, ac)) + &self.npc(c, ab),
                    )?;
                }
            }
        }
        for theta in 0..self.db.len() {
            for z in 0..r1 {
                // d₁(z)r(θ) = β(θ⊗z) + Nψ₃(z⊗χ(θ))
                eq(
                    "r definition",
                    format!("({}, e{z})", self.db.symbol(theta)),
                    &self.d1(z) * &self.r((theta, 1)),
                    &self.beta((theta, 1), z) + &self.npc(z, (theta, 1)),
                )?;
            }
        }
        Ok(count)
    }
}

fn is_compatible(f: &FreeComplex, p: &PairingSet, psi1: &Matrix, n: &BigInt) -> Result<(), String> {
    let report = verify::check_compatibility(f, &p.psi4, psi1, n);
    match report.first_failure() {
        Some(msg) => Err(format!("not {n}-compatible: {msg}")),
        None => Ok(()),
    }
}

fn stage_invariants_on(r: &Ring, gens: &[&str]) -> Result<usize, String> {
    let (vf, w) = koszul(r, gens)?;
    let f = vf.complex();
    let r1 = f.rank(1);
    let (sk, psi3, psi4) = build_skeleton(&vf).ctx("skeleton")?;
    let (p, sk, _) = perfect_correction(f, &sk, &psi3, &psi4, &w).ctx("perfect correction")?;
    let p13 = build_psi13(f, &p, &sk).ctx("psi13")?;
    is_compatible(f, &p, &p13.result.psi1, &BigInt::from(3))?;
    require!(is_alternating(&p13.result.psi1, r1), "psi13 is not alternating");

    take_log();
    let (_, steps, zero) = build_psi12(f, &p).ctx("psi12")?;
    let log = take_log();
    is_compatible(f, &p, &zero.result.psi1, &BigInt::from(2))?;
    require!(steps.len() == r1, "{} induction steps for rank F1 = {r1}", steps.len());

    let db = DividedSquareBasis::new(r1);
    let mut prev = &zero.result;
    let mut chosen = Vec::new();
    let mut n = BigInt::from(2);
    let mut tuples = 0;
    for (k, step) in steps.iter().enumerate() {
        n = BigInt::from(2) * &n * &n;
        require!(step.result.n == n, "step {}: N = {}, expected {n}", k + 1, step.result.n);
        let line = format!("symmetrized e{}: N = {n}", step.h + 1);
        require!(log.contains(&line), "run log lacks `{line}`");
        is_compatible(f, &p, &step.result.psi1, &n)?;
        chosen.push(step.h);
        for &i in &chosen {
            for &j in &chosen {
                let s = if i == j {
                    step.result.psi1.column(i * r1 + i)
                } else {
                    let (u, v) = (step.result.psi1.column(i * r1 + j), step.result.psi1.column(j * r1 + i));
                    u.iter().zip(&v).map(|(s, t)| s + t).collect()
                };
                require!(s.iter().all(RingElement::is_zero), "step {}: psi1 does not vanish on e{}e{}", k + 1, i + 1, j + 1);
            }
        }
        let oracle = Oracle {
            f,
            p: &p,
            c: prev,
            br: &step.beta_r,
            db: db.clone(),
            d2f2: DividedSquareBasis::new(f.rank(2)),
            n: RingElement::from_integer(r, prev.n.clone()),
        };
        tuples += oracle.check().map_err(|e| format!("step {}: {e}", k + 1))?;
        prev = &step.result;
    }
    Ok(tuples)
}

fn stage_invariants() -> Outcome {
    let r = xyzw(CoefficientDomain::Integers);
    let mut parts = Vec::new();
    for gens in [&["x", "y", "z", "w"][..], &["x^2", "y", "z + x", "w"], &["x + y", "y^2 - z", "z*w + x", "w^3"]] {
        let t = stage_invariants_on(&r, gens).map_err(|e| format!("({}): {e}", gens.join(",")))?;
        parts.push(format!("({}): {t} identity tuples", gens.join(",")));
    }
    Ok(parts.join("; "))
}

// ---------------------------------------------------------------- lifts

const ROUND_TRIPS: usize = 1000;

fn lift_round_trips(r: &Ring, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..ROUND_TRIPS {
        let (m, n, k) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=2));
        let d = random_matrix(&mut rng, r, m, n);
        let x = random_matrix(&mut rng, r, n, k);
        let b = product(r, &d, &x);
        let x2 = solve_post(&d, &b, "round trip").map_err(|e| format!("trial {t}: {e}\nd = {d:?}\nB = {b:?}"))?;
        require!(product(r, &d, &x2) == b, "trial {t}: d∘X' != B");

        let y = random_matrix(&mut rng, r, k, m);
        let b = product(r, &y, &d);
        let y2 = solve_pre(&d, &b, "pre round trip").map_err(|e| format!("trial {t}: {e}"))?;
        require!(product(r, &y2, &d) == b, "trial {t}: Y'∘d != B");
        let via_post = solve_post(&d.transpose(), &b.transpose(), "transposed").map_err(|e| format!("trial {t}: {e}"))?;
        require!(via_post.transpose() == y2, "trial {t}: solve_pre disagrees with the transposed solve_post");
    }
    Ok(())
}

fn lift_oracle() -> Outcome {
    let gf5 = CoefficientDomain::prime_field(5).unwrap();
    let rings = [
        ("QQ", ring(CoefficientDomain::Rationals, &[])),
        ("ZZ", ring(CoefficientDomain::Integers, &[])),
        ("GF(5)", ring(gf5.clone(), &[])),
        ("QQ[x,y]", ring(CoefficientDomain::Rationals, &["x", "y"])),
        ("ZZ[x,y]", ring(CoefficientDomain::Integers, &["x", "y"])),
        ("GF(5)[x,y]", ring(gf5, &["x", "y"])),
    ];
    for (seed, (name, r)) in rings.iter().enumerate() {
        lift_round_trips(r, 1000 + seed as u64).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!(
        "{ROUND_TRIPS} solve_post and {ROUND_TRIPS} solve_pre round trips on each of {}",
        rings.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
    ))
}

// ---------------------------------------------------------------- exactness

fn expect_rejection(f: &FreeComplex, fragment: &str) -> Result<String, String> {
    match validate_resolution(f) {
        Ok(_) => Err(format!("accepted a complex that should fail with `{fragment}`")),
        Err(e) => {
            let msg = e.to_string();
            require!(e.is_mathematical(), "rejection is not a mathematical error: {msg}");
            require!(msg.contains(fragment), "rejected for the wrong reason: {msg}");
            Ok(msg)
        }
    }
}

fn exactness_discrimination() -> Outcome {
    for domain in [CoefficientDomain::Rationals, CoefficientDomain::Integers] {
        let r = xyzw(domain.clone());
        for gens in [&["x", "y", "z", "w"][..], &["x^2", "y^2", "z^2", "w^2"]] {
            let (vf, _) = koszul(&r, gens).map_err(|e| format!("{domain}: {e}"))?;
            let cert = vf.certificate();
            require!(cert.ranks == vec![1, 3, 3, 1], "{domain}: ranks {:?}", cert.ranks);
            for (k, g) in cert.grades.iter().enumerate() {
                require!(*g >= Grade::Finite(k + 1), "{domain}: grade of d{} is {g}", k + 1);
            }
        }
    }

    let r = xyzw(CoefficientDomain::Integers);
    let good = koszul_complex(&r, &elems(&r, &["x", "y", "z", "w"])).unwrap();
    let [d1, d2, d3, d4] = good.differentials().clone();

    let rank_break = FreeComplex::new(&r, d1.clone(), d2.clone(), d3.clone(), Matrix::zeros(&r, 4, 1)).unwrap();
    expect_rejection(&rank_break, "rank condition fails at d3")?;

    let mut bent = d2.clone();
    bent.set(0, 0, bent.get(0, 0) + &RingElement::one(&r));
    let square_break = FreeComplex::new(&r, d1, bent, d3, d4).unwrap();
    expect_rejection(&square_break, "d1∘d2 ≠ 0")?;

    // (x, y, xy, w) = (x, y, w) because xy is a multiple of x, so it has
    // three generators and its height is at most 3 < 4: the grade test at d4
    // must reject it. Every entry of d4 lying in (x, y, w) is checked here.
    let seq = elems(&r, &["x", "y", "x*y", "w"]);
    let grade_break = koszul_complex(&r, &seq).unwrap();
    let small = elems(&r, &["x", "y", "w"]);
    require!(seq[2].div_exact(&small[0]).is_some(), "xy is not a multiple of x");
    for e in grade_break.d(4).entries().filter(|e| !e.is_zero()) {
        require!(small.iter().any(|g| e.div_exact(g).is_some()), "entry {e} of d4 is not in (x, y, w)");
    }
    let msg = expect_rejection(&grade_break, "grade condition fails at d4")?;
    Ok(format!("accepts 4 regular Koszul complexes; rejects rank break, d² break, and (x,y,xy,w) with `{msg}`"))
}

// ---------------------------------------------------------------- negative controls

fn bump(m: &mut Matrix, i: usize, j: usize, by: i64) {
    let r = m.ring().clone();
    m.set(i, j, m.get(i, j) + &RingElement::from_i64(&r, by));
}

struct Control {
    tags: &'static [&'static str],
    what: &'static str,
    build: fn(&Ring, &FreeComplex, &DGStructure) -> DGStructure,
}

const CONTROLS: &[Control] = &[
    Control {
        tags: &["compat.differential"],
        what: "psi1 replaced by zero",
        build: |r, _, d| DGStructure { psi1: Matrix::zeros(r, 6, 16), ..d.clone() },
    },
    Control {
        tags: &["compat.pairing", "associativity(1,1,1)"],
        what: "psi1 + d3∘T∘(T2 → ∧2) with T(e1∧e2) = g1",
        build: |r, f, d| {
            let mut t = Matrix::zeros(r, 4, 6);
            bump(&mut t, 0, 0, 1);
            let shift = &(f.d(3) * &t) * &wedge_projection(r, 4);
            DGStructure { psi1: &d.psi1 + &shift, ..d.clone() }
        },
    },
    Control {
        tags: &["graded-commutativity"],
        what: "psi1(e1⊗e2) += f6 only",
        build: |_, _, d| {
            let mut s = d.clone();
            bump(&mut s.psi1, 5, 1, 1);
            s
        },
    },
    Control {
        tags: &["alternating-square"],
        what: "psi1(e1⊗e1) = f1",
        build: |_, _, d| {
            let mut s = d.clone();
            bump(&mut s.psi1, 0, 0, 1);
            s
        },
    },
    Control {
        tags: &["leibniz(1,1)"],
        what: "psi1(e1⊗e2) += f6, psi1(e2⊗e1) -= f6",
        build: |_, _, d| {
            let mut s = d.clone();
            bump(&mut s.psi1, 5, 1, 1);
            bump(&mut s.psi1, 5, 4, -1);
            s
        },
    },
    Control {
        tags: &["leibniz(1,2)", "associativity(1,1,2)", "associativity(1,2,1)", "associativity(2,1,1)"],
        what: "psi2(e1⊗f1) += g1",
        build: |_, _, d| {
            let mut s = d.clone();
            bump(&mut s.psi2, 0, 0, 1);
            s
        },
    },
    Control {
        tags: &["leibniz(1,3)", "leibniz(1,4)"],
        what: "psi3(e1⊗g1) += 1",
        build: |_, _, d| {
            let mut s = d.clone();
            bump(&mut s.psi3, 0, 0, 1);
            s
        },
    },
    Control {
        tags: &["leibniz(2,2)", "leibniz(2,3)", "poincare.degree2"],
        what: "psi4(f1·f6) += 1",
        build: |_, _, d| {
            let mut s = d.clone();
            bump(&mut s.psi4, 0, DividedSquareBasis::new(6).index(0, 5), 1);
            s
        },
    },
    Control {
        tags: &["divided-power.differential", "divided-power.odd-product-square"],
        what: "psi4(f1^(2)) = 1",
        build: |_, _, d| {
            let mut s = d.clone();
            bump(&mut s.psi4, 0, 0, 1);
            s
        },
    },
    Control {
        tags: &["poincare.degree1", "poincare.degree3"],
        what: "psi3 doubled",
        build: |_, _, d| DGStructure { psi3: d.psi3.scale_i64(2), ..d.clone() },
    },
    Control {
        tags: &["poincare.degree2"],
        what: "psi4 doubled",
        build: |_, _, d| DGStructure { psi4: d.psi4.scale_i64(2), ..d.clone() },
    },
];

fn negative_controls() -> Outcome {
    let r = xyzw(CoefficientDomain::Integers);
    let f = koszul_complex(&r, &elems(&r, &["x", "y", "z", "w"])).unwrap();
    let base = DGStructure::exterior(&r);
    let baseline: Report = verify::verify_all(&f, &base, CheckLevel::Exhaustive);
    if let Some(msg) = baseline.first_failure() {
        return Err(format!("baseline fails: {msg}"));
    }
    let mut covered = std::collections::BTreeSet::new();
    for c in CONTROLS {
        let d = (c.build)(&r, &f, &base);
        let report = verify::verify_all(&f, &d, CheckLevel::Exhaustive);
        for &tag in c.tags {
            let status = report.get(tag).map(|x| x.status);
            require!(status == Some(Status::Fail), "control `{}` leaves {tag} at {status:?}", c.what);
            covered.insert(tag);
        }
    }
    let mut enforced = Vec::new();
    for check in &baseline.checks {
        match check.status {
            Status::Pass => require!(covered.contains(check.tag.as_str()), "no negative control for {}", check.tag),
            Status::Structural | Status::Vacuous => enforced.push(check.tag.clone()),
            Status::Fail => unreachable!(),
        }
    }
    // a 2-compatible product must not pass as 3-compatible
    let (vf, w) = koszul(&r, &["x", "y", "z", "w"])?;
    let (sk, psi3, psi4) = build_skeleton(&vf).ctx("skeleton")?;
    let (p, _, _) = perfect_correction(&f, &sk, &psi3, &psi4, &w).ctx("perfect correction")?;
    let (_, _, zero) = build_psi12(&f, &p).ctx("psi12")?;
    is_compatible(&f, &p, &zero.result.psi1, &BigInt::from(2))?;
    require!(is_compatible(&f, &p, &zero.result.psi1, &BigInt::from(3)).is_err(), "psi1_zero passes as 3-compatible");
    Ok(format!(
        "{} controls break all {} evaluated checks; representation-enforced: {}",
        CONTROLS.len(),
        covered.len(),
        enforced.join(", ")
    ))
}

// ---------------------------------------------------------------- driver

fn main() -> ExitCode {
    log::set_logger(&LOGGER).expect("logger already set");
    log::set_max_level(log::LevelFilter::Info);
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("end-to-end over QQ", end_to_end_rationals),
        ("end-to-end over ZZ with the Bezout step", end_to_end_integers),
        ("non-minimal input with a trivial summand", non_minimal_input),
        ("stage invariants", stage_invariants),
        ("lift oracle round trips", lift_oracle),
        ("exactness checker discrimination", exactness_discrimination),
        ("verifier negative controls", negative_controls),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} [{secs:.2}s] {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL {name} [{secs:.2}s] {why}", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
