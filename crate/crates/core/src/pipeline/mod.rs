//! Construction of a DG-algebra structure with divided powers and Poincaré
//! duality on a self-dual length-four resolution.
//!
//! The stages run in order:
//! 1. [`build_skeleton`] lifts a comparison map from an auxiliary complex and
//!    reads off ψ₁†, ψ₂†, ψ₃, ψ₄;
//! 2. [`perfect_correction`] adjusts ψ₃ by a homotopy until the pairings are
//!    perfect;
//! 3. [`build_psi13`] produces a 3-compatible alternating product;
//! 4. [`build_psi12`] produces a 2ⁿ-compatible alternating product by
//!    repeatedly symmetrizing one basis index at a time;
//! 5. [`combine_bezout`] mixes the two into a 1-compatible product and
//!    [`build_psi2`] derives the remaining multiplication.
//!
//! Every stage re-checks the identities its output is supposed to satisfy
//! and fails with [`Error::Internal`] if one does not hold.

mod combine;
mod psi12;
mod psi13;
mod skeleton;
mod trace;
mod trivial;

pub use combine::{build_psi2, combine_bezout};
pub use psi12::{beta_and_r, build_psi12, build_psi1_zero, chi_lift, choose_h1, induction_step, BetaR, InductionStep, Psi1Zero};
pub use psi13::{build_psi13, Psi13};
pub use skeleton::{auxiliary_complex, build_skeleton, check_skeleton, perfect_correction, Correction, HomotopySkeleton};
pub use trace::{ConstructionTrace, TraceEntry, TraceValue};
pub use trivial::extend_trivial_dg;

use num_bigint::BigInt;

use crate::arith::{Ring, RingElement};
use crate::complexes::{FreeComplex, SelfDualityWitness, ValidatedComplex};
use crate::error::{Error, Result};
use crate::modules::vector::{self, Vector};
use crate::modules::{DividedSquareBasis, Matrix};
use crate::verify;

/// The perfect pairings `ψ₃: F₁⊗F₃ → F₄` and `ψ₄: D₂F₂ → F₄` with their
/// duality maps `Φ₁: F₁ → F₃^∨`, `Φ₂: F₂ → F₂^∨`, `Φ₃: F₃ → F₁^∨` and
/// verified inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingSet {
    /// `1 × r₁r₃`, column `a·r₃ + b` is `ψ₃(e_a⊗e_b)`.
    pub psi3: Matrix,
    /// `1 × |D₂F₂|`.
    pub psi4: Matrix,
    pub phi1: Matrix,
    pub phi2: Matrix,
    pub phi3: Matrix,
    pub phi1_inv: Matrix,
    pub phi2_inv: Matrix,
    pub phi3_inv: Matrix,
}

/// The matrices of `Φ₁`, `Φ₂`, `Φ₃` induced by `ψ₃` and `ψ₄`.
pub fn duality_maps(ranks: [usize; 5], psi3: &Matrix, psi4: &Matrix) -> Result<[Matrix; 3]> {
    let (r1, r2, r3) = (ranks[1], ranks[2], ranks[3]);
    let d2b = DividedSquareBasis::new(r2);
    if psi3.shape() != (1, r1 * r3) {
        return Err(Error::shape(format!("psi3 must be 1x{}, got {}x{}", r1 * r3, psi3.rows(), psi3.cols())));
    }
    if psi4.shape() != (1, d2b.len()) {
        return Err(Error::shape(format!("psi4 must be 1x{}, got {}x{}", d2b.len(), psi4.rows(), psi4.cols())));
    }
    let ring = psi3.ring();
    let phi1 = Matrix::from_fn(ring, r3, r1, |b, a| psi3.get(0, a * r3 + b).clone());
    let phi3 = phi1.transpose();
    let phi2 = Matrix::from_fn(ring, r2, r2, |b, a| {
        let v = psi4.get(0, d2b.index(a, b));
        if a == b {
            v.scale_i64(2)
        } else {
            v.clone()
        }
    });
    Ok([phi1, phi2, phi3])
}

impl PairingSet {
    /// Builds the duality maps and inverts them; fails if a determinant is
    /// not a unit.
    pub fn new(f: &FreeComplex, psi3: Matrix, psi4: Matrix) -> Result<Self> {
        let [phi1, phi2, phi3] = duality_maps(f.ranks(), &psi3, &psi4)?;
        let invert = |m: &Matrix, name: &str| -> Result<Matrix> {
            let det = m.determinant()?;
            if !det.is_unit() {
                return Err(Error::hypothesis("perfect pairing", format!("det {name} = {det} is not a unit")));
            }
            let inv = m.inverse()?;
            let n = m.rows();
            if m.try_mul(&inv)? != Matrix::identity(m.ring(), n) || inv.try_mul(m)? != Matrix::identity(m.ring(), n) {
                return Err(Error::internal(format!("{name} inverse"), "inverse is not two-sided"));
            }
            Ok(inv)
        };
        let phi1_inv = invert(&phi1, "Phi1")?;
        let phi2_inv = invert(&phi2, "Phi2")?;
        let phi3_inv = invert(&phi3, "Phi3")?;
        Ok(PairingSet { psi3, psi4, phi1, phi2, phi3, phi1_inv, phi2_inv, phi3_inv })
    }

    pub fn ring(&self) -> &Ring {
        self.psi3.ring()
    }

    /// `ψ₃(x₁⊗x₃)`.
    pub fn pair13(&self, x1: &[RingElement], x3: &[RingElement]) -> RingElement {
        vector::dot(self.ring(), &self.psi3.row(0), &vector::tensor(self.ring(), x1, x3))
    }

    /// `ψ₄(x₂·y₂)`.
    pub fn pair22(&self, x2: &[RingElement], y2: &[RingElement]) -> RingElement {
        vector::dot(self.ring(), &self.psi4.row(0), &vector::divided_product(x2, y2))
    }

    /// `ψ₄(x₂^(2))`.
    pub fn square(&self, x2: &[RingElement]) -> RingElement {
        vector::dot(self.ring(), &self.psi4.row(0), &vector::divided_square(x2))
    }

    /// The element `x₃` of `F₃` with `ψ₃(e_a⊗x₃) = ell[a]` for every `a`.
    pub fn represent_in_f3(&self, ell: &[RingElement]) -> Vector {
        self.phi3_inv.apply(ell)
    }

    /// The element `x₂` of `F₂` with `ψ₄(x₂·f_b) = ell[b]` for every `b`.
    pub fn represent_in_f2(&self, ell: &[RingElement]) -> Vector {
        self.phi2_inv.apply(ell)
    }
}

/// A product `ψ₁: T₂F₁ → F₂` that is `N`-compatible with the pairings, with
/// `χ: D₂F₁ → F₃` satisfying `d₃χ(x^(2)) = ψ₁(x⊗x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatiblePsi1 {
    /// `r₂ × r₁²`.
    pub psi1: Matrix,
    pub n: BigInt,
    /// `r₃ × |D₂F₁|`.
    pub chi: Matrix,
    /// Basis indices of `F₁` on whose span `ψ₁` is alternating and `χ`
    /// vanishes.
    pub vanishing: Vec<usize>,
}

/// The multiplication table of a DG-algebra on a length-four complex:
/// `x₁y₁ = Ψ₁(x₁⊗y₁)`, `x₁x₂ = Ψ₂(x₁⊗x₂)`, `x₁x₃ = ψ₃(x₁⊗x₃)`,
/// `x₂y₂ = ψ₄(x₂·y₂)` and `x₂^(2) = ψ₄(x₂^(2))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGStructure {
    /// `r₂ × r₁²`, alternating.
    pub psi1: Matrix,
    /// `r₃ × r₁r₂`.
    pub psi2: Matrix,
    /// `1 × r₁r₃`.
    pub psi3: Matrix,
    /// `1 × |D₂F₂|`.
    pub psi4: Matrix,
}

impl DGStructure {
    /// The exterior algebra structure on a Koszul complex built by
    /// [`crate::complexes::koszul_complex`]: `e_S·e_T = sign(S,T)·e_{S∪T}`.
    pub fn exterior(ring: &Ring) -> DGStructure {
        use crate::complexes::{koszul_subsets, wedge_sign};
        let s: Vec<Vec<Vec<usize>>> = (0..5).map(koszul_subsets).collect();
        let product = |p: usize, q: usize| -> Matrix {
            let (src_a, src_b, tgt) = (&s[p], &s[q], &s[p + q]);
            Matrix::from_fn(ring, tgt.len(), src_a.len() * src_b.len(), |t, k| {
                let (a, b) = (&src_a[k / src_b.len()], &src_b[k % src_b.len()]);
                let mut u: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
                u.sort_unstable();
                if u == tgt[t] {
                    RingElement::from_i64(ring, wedge_sign(a, b))
                } else {
                    RingElement::zero(ring)
                }
            })
        };
        let psi1 = product(1, 1);
        let psi2 = product(1, 2);
        let psi3 = product(1, 3);
        // ψ₄ on D₂F₂: e_S·e_T ↦ e_S∧e_T, and e_S^(2) ↦ 0 (e_S∧e_S = 0)
        let d2b = DividedSquareBasis::new(s[2].len());
        let psi4 = Matrix::from_fn(ring, 1, d2b.len(), |_, k| {
            let (a, b) = d2b.pairs()[k];
            if a == b {
                RingElement::zero(ring)
            } else {
                RingElement::from_i64(ring, wedge_sign(&s[2][a], &s[2][b]))
            }
        });
        DGStructure { psi1, psi2, psi3, psi4 }
    }
}

/// Turns a failed verifier report into an internal error.
pub(crate) fn ensure(report: verify::Report, check: &str) -> Result<()> {
    match report.first_failure() {
        None => Ok(()),
        Some(msg) => Err(Error::internal(check.to_string(), msg)),
    }
}

/// Everything produced by [`build_dg`].
#[derive(Clone, Debug)]
pub struct BuildOutput {
    pub structure: DGStructure,
    pub pairings: PairingSet,
    pub psi13: CompatiblePsi1,
    pub psi12: CompatiblePsi1,
    /// `(a, b, n)` with `3a + 2ⁿb = 1`.
    pub bezout: (BigInt, BigInt, u32),
    /// `N` after the base case and after each symmetrization step.
    pub n_trajectory: Vec<BigInt>,
    pub trace: ConstructionTrace,
}

/// Runs the whole construction on a validated complex with a verified
/// self-duality witness.
pub fn build_dg(f: &ValidatedComplex, witness: &SelfDualityWitness) -> Result<BuildOutput> {
    let mut trace = ConstructionTrace::default();
    let (skeleton, psi3_raw, psi4_raw) = build_skeleton(f).map_err(|e| e.in_stage("skeleton"))?;
    trace.map("skeleton.psi1_dagger", &skeleton.psi1_dagger);
    trace.map("skeleton.psi2_dagger", &skeleton.psi2_dagger);
    trace.map("skeleton.psi3_raw", &psi3_raw);
    trace.map("skeleton.psi4_raw", &psi4_raw);

    let (pairings, skeleton, correction) =
        perfect_correction(f, &skeleton, &psi3_raw, &psi4_raw, witness).map_err(|e| e.in_stage("perfect-correction"))?;
    trace.element("correction.u", &witness.u);
    trace.map("correction.rho", &correction.rho);
    trace.map("correction.sigma", &correction.sigma);
    trace.map("pairing.psi3", &pairings.psi3);
    trace.map("pairing.psi4", &pairings.psi4);
    log::info!("perfect correction: sigma is {}", if correction.sigma.is_zero() { "zero" } else { "nonzero" });

    let p13 = build_psi13(f, &pairings, &skeleton).map_err(|e| e.in_stage("psi13"))?;
    trace.map("psi13.alpha", &p13.alpha);
    trace.map("psi13.gamma", &p13.gamma);
    trace.map("psi13.psi1", &p13.result.psi1);

    let (psi12, steps, zero) = build_psi12(f, &pairings).map_err(|e| e.in_stage("psi12"))?;
    trace.map("psi1_zero.psi1_prime", &zero.psi1_prime);
    trace.map("psi1_zero.rho1", &zero.rho1);
    trace.map("psi1_zero.rho2", &zero.rho2);
    trace.map("psi1_zero.rho3", &zero.rho3);
    trace.map("psi1_zero.psi1", &zero.result.psi1);
    trace.map("psi1_zero.chi", &zero.result.chi);
    let mut n_trajectory = vec![zero.result.n.clone()];
    for (k, step) in steps.iter().enumerate() {
        let p = format!("step{}", k + 1);
        trace.indices(&format!("{p}.vanishing_before"), &step.vanishing_before);
        trace.indices(&format!("{p}.h"), &[step.h]);
        trace.map(&format!("{p}.beta"), &step.beta_r.beta);
        trace.map(&format!("{p}.r"), &step.beta_r.r);
        trace.map(&format!("{p}.y"), &step.y);
        trace.integer(&format!("{p}.n"), &step.result.n);
        trace.map(&format!("{p}.psi1"), &step.result.psi1);
        trace.map(&format!("{p}.chi"), &step.result.chi);
        n_trajectory.push(step.result.n.clone());
    }
    log::info!(
        "N trajectory: {}",
        n_trajectory.iter().map(ToString::to_string).collect::<Vec<_>>().join(" -> ")
    );

    let (combined, (a, b, n)) = combine_bezout(f, &pairings, &p13.result, &psi12).map_err(|e| e.in_stage("bezout"))?;
    log::info!("bezout: 3*({a}) + 2^{n}*({b}) = 1");
    trace.integer("bezout.a", &a);
    trace.integer("bezout.b", &b);
    trace.integer("bezout.n", &BigInt::from(n));
    let psi2 = build_psi2(f, &pairings, &combined.psi1).map_err(|e| e.in_stage("psi2"))?;
    trace.map("final.psi1", &combined.psi1);
    trace.map("final.psi2", &psi2);

    let structure = DGStructure { psi1: combined.psi1, psi2, psi3: pairings.psi3.clone(), psi4: pairings.psi4.clone() };
    let report = verify::verify_all(f, &structure, verify::CheckLevel::Exhaustive);
    ensure(report, "final structure").map_err(|e| e.in_stage("verify"))?;
    Ok(BuildOutput {
        structure,
        pairings,
        psi13: p13.result,
        psi12,
        bezout: (a, b, n),
        n_trajectory,
        trace,
    })
}
