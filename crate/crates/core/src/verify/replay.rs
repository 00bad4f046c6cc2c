//! Replaying a construction trace.

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::RingElement;
use crate::complexes::FreeComplex;
use crate::modules::basis::is_alternating;
use crate::modules::{comultiplication, DividedSquareBasis, Matrix};
use crate::pipeline::{ConstructionTrace, TraceValue};
use crate::verify::{check_compatibility, check_poincare, matrix_identity, Check, CheckResult, Report};

struct Replay<'a> {
    f: &'a FreeComplex,
    t: &'a ConstructionTrace,
    report: Report,
}

impl Replay<'_> {
    fn missing(&mut self, tag: &str) {
        let mut c = Check::new("trace.complete");
        c.fail(tag.to_string(), "entry missing or of the wrong kind");
        self.report.checks.push(c.finish());
    }

    fn map(&mut self, tag: &str) -> Option<Matrix> {
        let m = self.t.get_map(tag).cloned();
        if m.is_none() {
            self.missing(tag);
        }
        m
    }

    fn integer(&mut self, tag: &str) -> Option<BigInt> {
        match self.t.get(tag) {
            Some(TraceValue::Integer(n)) => Some(n.clone()),
            _ => {
                self.missing(tag);
                None
            }
        }
    }

    fn indices(&mut self, tag: &str) -> Option<Vec<usize>> {
        match self.t.get(tag) {
            Some(TraceValue::Indices(v)) => Some(v.clone()),
            _ => {
                self.missing(tag);
                None
            }
        }
    }

    fn push(&mut self, c: CheckResult) {
        self.report.checks.push(c);
    }

    fn compat(&mut self, tag: &str, psi4: &Matrix, psi1: &Matrix, n: &BigInt) {
        for mut c in check_compatibility(self.f, psi4, psi1, n).checks {
            c.tag = format!("{tag}.{}", c.tag);
            self.push(c);
        }
    }

    fn chi(&mut self, tag: &str, psi1: &Matrix, chi: &Matrix) {
        let comult = comultiplication(self.f.ring(), self.f.rank(1));
        if psi1.cols() == comult.rows() && chi.rows() == self.f.rank(3) {
            self.push(matrix_identity(tag, &(self.f.d(3) * chi), &(psi1 * &comult)));
        } else {
            self.push(matrix_identity(tag, chi, &Matrix::zeros(self.f.ring(), 0, 0)));
        }
    }
}

fn safe_mul(a: &Matrix, b: &Matrix) -> Matrix {
    a.try_mul(b).unwrap_or_else(|_| Matrix::zeros(a.ring(), 0, 0))
}

pub(super) fn run(f: &FreeComplex, t: &ConstructionTrace) -> Report {
    let ring = f.ring();
    let [_, r1, r2, _, _] = f.ranks();
    let id = |k: usize| Matrix::identity(ring, f.rank(k));
    let mut r = Replay { f, t, report: Report::default() };

    // perfect-pairing correction: σ∘(1⊗d₃) = ψ₃(raw) − ρ, and ψ₃ = ρ afterwards
    if let (Some(sigma), Some(raw), Some(rho), Some(psi3), Some(psi4)) = (
        r.map("correction.sigma"),
        r.map("skeleton.psi3_raw"),
        r.map("correction.rho"),
        r.map("pairing.psi3"),
        r.map("pairing.psi4"),
    ) {
        r.push(matrix_identity("replay.sigma", &safe_mul(&sigma, &id(1).kron(f.d(3))), &(&raw - &rho)));
        r.push(matrix_identity("replay.corrected_psi3", &psi3, &rho));
        for mut c in check_poincare(f, &psi3, &psi4).checks {
            c.tag = format!("replay.{}", c.tag);
            r.push(c);
        }

        if let (Some(alpha), Some(gamma), Some(p13)) = (r.map("psi13.alpha"), r.map("psi13.gamma"), r.map("psi13.psi1")) {
            let zero = Matrix::zeros(ring, r1, alpha.cols());
            r.push(matrix_identity("replay.alpha_cycle", &safe_mul(f.d(2), &alpha), &zero));
            r.push(matrix_identity("replay.gamma", &safe_mul(f.d(3), &gamma), &alpha));
            r.compat("replay.psi13", &psi4, &p13, &BigInt::from(3));
        }

        if let (Some(p1), Some(rho1), Some(rho2), Some(p0), Some(chi0)) = (
            r.map("psi1_zero.psi1_prime"),
            r.map("psi1_zero.rho1"),
            r.map("psi1_zero.rho2"),
            r.map("psi1_zero.psi1"),
            r.map("psi1_zero.chi"),
        ) {
            let b = &f.d(1).kron(&id(1)) - &id(1).kron(f.d(1));
            r.push(matrix_identity("replay.psi1_prime", &safe_mul(f.d(2), &p1), &b));
            r.push(matrix_identity("replay.rho2", &safe_mul(&rho2, &id(1).kron(&f.d(2).kron(f.d(2)))), &rho1));
            r.compat("replay.psi1_zero", &psi4, &p0, &BigInt::from(2));
            r.chi("replay.psi1_zero.chi", &p0, &chi0);

            let mut prev = (p0, BigInt::from(2));
            let mut k = 1;
            while t.get(&format!("step{k}.psi1")).is_some() {
                let s = format!("step{k}");
                let (Some(before), Some(h), Some(y), Some(n), Some(psi1), Some(chi)) = (
                    r.indices(&format!("{s}.vanishing_before")),
                    r.indices(&format!("{s}.h")),
                    r.map(&format!("{s}.y")),
                    r.integer(&format!("{s}.n")),
                    r.map(&format!("{s}.psi1")),
                    r.map(&format!("{s}.chi")),
                ) else {
                    break;
                };
                let two_n = RingElement::from_integer(ring, BigInt::from(2) * &prev.1);
                let expect = &prev.0.scale(&two_n) - &safe_mul(f.d(3), &y);
                r.push(matrix_identity(&format!("replay.{s}.psi1"), &psi1, &expect));
                let mut c = Check::new(format!("replay.{s}.n"));
                c.eq1(|| s.clone(), RingElement::from_integer(ring, n.clone()), RingElement::from_integer(ring, BigInt::from(2) * &prev.1 * &prev.1));
                r.push(c.finish());
                r.compat(&format!("replay.{s}"), &psi4, &psi1, &n);
                r.chi(&format!("replay.{s}.chi"), &psi1, &chi);
                let mut set = before.clone();
                set.extend(h);
                let mut c = Check::new(format!("replay.{s}.vanishing"));
                let db = DividedSquareBasis::new(r1);
                let sym = safe_mul(&psi1, &comultiplication(ring, r1));
                for (col, &(i, j)) in db.pairs().iter().enumerate() {
                    if set.contains(&i) && set.contains(&j) && col < sym.cols() {
                        c.eq(|| db.symbol(col), &sym.column(col), &vec![RingElement::zero(ring); r2]);
                    }
                }
                r.push(c.finish());
                prev = (psi1, n);
                k += 1;
            }

            if let (Some(a), Some(b), Some(n), Some(fin), Some(psi2), Some(p13)) = (
                r.integer("bezout.a"),
                r.integer("bezout.b"),
                r.integer("bezout.n"),
                r.map("final.psi1"),
                r.map("final.psi2"),
                r.map("psi13.psi1"),
            ) {
                let mut c = Check::new("replay.bezout");
                let exp = u32::try_from(&n).unwrap_or(0);
                let lhs = BigInt::from(3) * &a + (BigInt::one() << exp) * &b;
                c.eq1(|| "3a + 2^n b".into(), RingElement::from_integer(ring, lhs), RingElement::one(ring));
                c.eq1(|| "2^n".into(), RingElement::from_integer(ring, BigInt::one() << exp), RingElement::from_integer(ring, prev.1.clone()));
                r.push(c.finish());
                let mix = &p13.scale(&RingElement::from_integer(ring, a)) + &prev.0.scale(&RingElement::from_integer(ring, b));
                r.push(matrix_identity("replay.final.psi1", &fin, &mix));
                r.compat("replay.final", &psi4, &fin, &BigInt::one());
                let mut c = Check::new("replay.final.alternating");
                c.tuples += 1;
                if !is_alternating(&fin, r1) {
                    c.fail("final.psi1", "not alternating");
                }
                r.push(c.finish());
                // ψ₃(y⊗Ψ₂(x₁⊗x₂)) = ψ₄(Ψ₁(y⊗x₁)·x₂)
                let p = crate::pipeline::PairingSet::new(f, psi3.clone(), psi4.clone());
                let mut c = Check::new("replay.final.psi2");
                if let (Ok(p), true) = (p, psi2.cols() == r1 * r2) {
                    for y in 0..r1 {
                        for x1 in 0..r1 {
                            for x2 in 0..r2 {
                                let e = |n: usize, i: usize| crate::modules::vector::unit(ring, n, i);
                                let lhs = p.pair13(&e(r1, y), &psi2.column(x1 * r2 + x2));
                                let rhs = p.pair22(&fin.column(y * r1 + x1), &e(r2, x2));
                                c.eq1(|| format!("e{}, e{}, f{}", y + 1, x1 + 1, x2 + 1), lhs, rhs);
                            }
                        }
                    }
                } else {
                    c.fail("final.psi2", "pairings are not perfect or psi2 has the wrong shape");
                }
                r.push(c.finish());
            }
        }
    }
    r.report
}
