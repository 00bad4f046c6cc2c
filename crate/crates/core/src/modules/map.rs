use std::fmt;

use crate::arith::{same_ring, Ring, RingElement};
use crate::error::{Error, Result};
use crate::modules::basis::{comultiplication, DividedSquareBasis, TensorSquareBasis, WedgeSquareBasis};
use crate::modules::Matrix;

/// Free module `R^rank` with basis `e_1 … e_rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    ring: Ring,
    rank: usize,
    label: String,
}

impl FreeModule {
    pub fn new(ring: &Ring, rank: usize, label: impl Into<String>) -> Self {
        FreeModule { ring: ring.clone(), rank, label: label.into() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn tensor(&self, other: &FreeModule) -> FreeModule {
        FreeModule::new(&self.ring, self.rank * other.rank, format!("{}⊗{}", self.label, other.label))
    }

    pub fn tensor_square(&self) -> FreeModule {
        FreeModule::new(&self.ring, TensorSquareBasis::new(self.rank).len(), format!("T2({})", self.label))
    }

    pub fn wedge_square(&self) -> FreeModule {
        FreeModule::new(&self.ring, WedgeSquareBasis::new(self.rank).len(), format!("∧2({})", self.label))
    }

    pub fn divided_square(&self) -> FreeModule {
        FreeModule::new(&self.ring, DividedSquareBasis::new(self.rank).len(), format!("D2({})", self.label))
    }

    /// `Hom(self, top)` for a rank-one `top`.
    pub fn dual(&self, top: &FreeModule) -> Result<FreeModule> {
        if top.rank != 1 {
            return Err(Error::InvalidArgument(format!("dual into a module of rank {} (need rank 1)", top.rank)));
        }
        Ok(FreeModule::new(&self.ring, self.rank, format!("{}^∨", self.label)))
    }

    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        FreeModule::new(&self.ring, self.rank + other.rank, format!("{}⊕{}", self.label, other.label))
    }
}

impl fmt::Display for FreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {})", self.label, self.rank)
    }
}

/// A homomorphism of free modules together with its matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: FreeModule,
    target: FreeModule,
    matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: &FreeModule, target: &FreeModule, matrix: Matrix) -> Result<Self> {
        if matrix.shape() != (target.rank, source.rank) {
            return Err(Error::shape(format!(
                "matrix {}x{} does not match {} → {}",
                matrix.rows(),
                matrix.cols(),
                source,
                target
            )));
        }
        if !same_ring(matrix.ring(), &source.ring) || !same_ring(&source.ring, &target.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(ModuleMap { source: source.clone(), target: target.clone(), matrix })
    }

    pub fn identity(module: &FreeModule) -> Self {
        ModuleMap { source: module.clone(), target: module.clone(), matrix: Matrix::identity(&module.ring, module.rank) }
    }

    pub fn zero(source: &FreeModule, target: &FreeModule) -> Self {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(&source.ring, target.rank, source.rank),
        }
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleMap) -> Result<ModuleMap> {
        if inner.target.rank != self.source.rank {
            return Err(Error::shape(format!("cannot compose {} → {} after {} → {}", self.source, self.target, inner.source, inner.target)));
        }
        Ok(ModuleMap { source: inner.source.clone(), target: self.target.clone(), matrix: self.matrix.try_mul(&inner.matrix)? })
    }

    pub fn tensor(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if !same_ring(&self.source.ring, &other.source.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(ModuleMap {
            source: self.source.tensor(&other.source),
            target: self.target.tensor(&other.target),
            matrix: self.matrix.kron(&other.matrix),
        })
    }

    /// `f^∨ = Hom(f, top)`; with `top` of rank one this is the transpose.
    pub fn dualize(&self, top: &FreeModule) -> Result<ModuleMap> {
        Ok(ModuleMap { source: self.target.dual(top)?, target: self.source.dual(top)?, matrix: self.matrix.transpose() })
    }

    pub fn determinant(&self) -> Result<RingElement> {
        self.matrix.determinant()
    }

    pub fn apply(&self, v: &[RingElement]) -> Vec<RingElement> {
        self.matrix.apply(v)
    }
}

pub fn compose(f: &ModuleMap, g: &ModuleMap) -> Result<ModuleMap> {
    f.compose(g)
}

pub fn tensor_map(f: &ModuleMap, g: &ModuleMap) -> Result<ModuleMap> {
    f.tensor(g)
}

pub fn dualize_map(f: &ModuleMap, top: &FreeModule) -> Result<ModuleMap> {
    f.dualize(top)
}

/// The comultiplication `D₂X → X⊗X`.
pub fn comultiply(x: &FreeModule) -> ModuleMap {
    ModuleMap {
        source: x.divided_square(),
        target: x.tensor_square(),
        matrix: comultiplication(&x.ring, x.rank),
    }
}

/// True when `phi`, a map out of `X⊗X`, vanishes on the image of `D₂X`.
pub fn is_alternating(phi: &ModuleMap, x: &FreeModule) -> Result<bool> {
    if phi.source.rank != x.rank * x.rank {
        return Err(Error::shape(format!("{} is not the tensor square of {}", phi.source, x)));
    }
    Ok(crate::modules::basis::is_alternating(&phi.matrix, x.rank))
}
