//! Length-four free complexes `0 → F₄ → F₃ → F₂ → F₁ → F₀` with
//! `F₀ = R` and `F₄ ≅ R`, their duals, self-duality witnesses, and the
//! trivial-summand construction.

mod koszul;
mod trivial;

pub use koszul::{koszul_complex, koszul_subsets, koszul_witness, wedge_sign};
pub use trivial::{direct_sum_trivial, direct_sum_witness};

use crate::arith::{Ring, RingElement};
use crate::error::{Error, Result};
use crate::lift::{exactness_check, ExactnessCertificate};
use crate::modules::{FreeModule, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ring: Ring,
    /// `d[k-1]` is `d_k: F_k → F_{k-1}`.
    d: [Matrix; 4],
}

impl FreeComplex {
    /// Checks shapes only: `F₀` and `F₄` of rank one and consecutive maps
    /// composable. Use [`validate_resolution`] for the mathematics.
    pub fn new(ring: &Ring, d1: Matrix, d2: Matrix, d3: Matrix, d4: Matrix) -> Result<Self> {
        if d1.rows() != 1 {
            return Err(Error::shape(format!("F0 must have rank 1, d1 has {} rows", d1.rows())));
        }
        if d4.cols() != 1 {
            return Err(Error::shape(format!("F4 must have rank 1, d4 has {} columns", d4.cols())));
        }
        let d = [d1, d2, d3, d4];
        for k in 1..4 {
            if d[k - 1].cols() != d[k].rows() {
                return Err(Error::shape(format!(
                    "d{} has {} columns but d{} has {} rows",
                    k,
                    d[k - 1].cols(),
                    k + 1,
                    d[k].rows()
                )));
            }
        }
        if d.iter().any(|m| !crate::arith::same_ring(m.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(FreeComplex { ring: ring.clone(), d })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// The differential `d_k`, `k = 1..4`.
    pub fn d(&self, k: usize) -> &Matrix {
        &self.d[k - 1]
    }

    pub fn differentials(&self) -> &[Matrix; 4] {
        &self.d
    }

    /// `[rank F₀, …, rank F₄]`.
    pub fn ranks(&self) -> [usize; 5] {
        [1, self.d[0].cols(), self.d[1].cols(), self.d[2].cols(), 1]
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks()[k]
    }

    pub fn module(&self, k: usize) -> FreeModule {
        FreeModule::new(&self.ring, self.rank(k), format!("F{k}"))
    }

    /// Verifies `d_k ∘ d_{k+1} = 0`.
    pub fn check_composition(&self) -> Result<()> {
        for k in 1..4 {
            let prod = self.d(k).try_mul(self.d(k + 1))?;
            if !prod.is_zero() {
                return Err(Error::hypothesis("complex", format!("d{k}∘d{} ≠ 0", k + 1)));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidatedComplex {
    complex: FreeComplex,
    certificate: ExactnessCertificate,
}

impl ValidatedComplex {
    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    pub fn certificate(&self) -> &ExactnessCertificate {
        &self.certificate
    }
}

impl std::ops::Deref for ValidatedComplex {
    type Target = FreeComplex;
    fn deref(&self) -> &FreeComplex {
        &self.complex
    }
}

/// Checks that `f` is a resolution of a cyclic module: `d² = 0`, the rank
/// conditions, and the grade conditions (which include positive grade of the
/// image of `d₁`).
pub fn validate_resolution(f: &FreeComplex) -> Result<ValidatedComplex> {
    f.check_composition()?;
    let certificate = exactness_check(f.differentials())?;
    Ok(ValidatedComplex { complex: f.clone(), certificate })
}

/// `F^∨ = Hom(F, F₄)`: `(F^∨)_k = F_{4-k}^∨` with differential `d_{5-k}ᵀ`.
pub fn dualize_complex(f: &FreeComplex) -> FreeComplex {
    let d = |k: usize| f.d(k).transpose();
    FreeComplex { ring: f.ring.clone(), d: [d(4), d(3), d(2), d(1)] }
}

/// A verified chain isomorphism `φ: F → F^∨` together with the unit `u`
/// satisfying `u·φ₄ = Φ₄`, where `Φ₄: F₄ → Hom(F₀, F₄)` is evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDualityWitness {
    /// `phi[i]: F_i → F_{4-i}^∨`, a `rank F_{4-i} × rank F_i` matrix.
    pub phi: [Matrix; 5],
    pub u: RingElement,
}

/// Verifies that `phi` is a chain isomorphism `F → F^∨` and extracts `u`.
pub fn check_self_duality(f: &FreeComplex, phi: [Matrix; 5]) -> Result<SelfDualityWitness> {
    let ranks = f.ranks();
    for (i, p) in phi.iter().enumerate() {
        if p.shape() != (ranks[4 - i], ranks[i]) {
            return Err(Error::shape(format!(
                "phi{i} must be {}x{}, got {}x{}",
                ranks[4 - i],
                ranks[i],
                p.rows(),
                p.cols()
            )));
        }
    }
    for i in 1..=4 {
        let lhs = phi[i - 1].try_mul(f.d(i))?;
        let rhs = f.d(5 - i).transpose().try_mul(&phi[i])?;
        if lhs != rhs {
            return Err(Error::hypothesis(
                "self-duality",
                format!("square {i} does not commute: phi{}∘d{i} ≠ d{}ᵀ∘phi{i}", i - 1, 5 - i),
            ));
        }
    }
    for (i, p) in phi.iter().enumerate() {
        let det = p.determinant()?;
        if !det.is_unit() {
            return Err(Error::hypothesis("self-duality", format!("det phi{i} = {det} is not a unit")));
        }
    }
    let u = phi[4].get(0, 0).inverse().expect("unit determinant");
    Ok(SelfDualityWitness { phi, u })
}
