//! Basis bookkeeping for T₂X = X⊗X, ∧²X and D₂X, and the standard maps
//! between them.
//!
//! Enumerations are lexicographic on index pairs:
//! * `T₂`: `e_i⊗e_j` for all `(i, j)`, index `i·r + j`;
//! * `∧²`: `e_i∧e_j` for `i < j`;
//! * `D₂`: `e_i^(2)` for `i = j` and `e_i·e_j` for `i < j`, interleaved in
//!   pair order `(0,0), (0,1), …, (1,1), …`.

use crate::arith::{Ring, RingElement};
use crate::modules::Matrix;

pub fn tensor_index(rank_b: usize, a: usize, b: usize) -> usize {
    a * rank_b + b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorSquareBasis {
    pub rank: usize,
}

impl TensorSquareBasis {
    pub fn new(rank: usize) -> Self {
        TensorSquareBasis { rank }
    }

    pub fn len(&self) -> usize {
        self.rank * self.rank
    }

    pub fn is_empty(&self) -> bool {
        self.rank == 0
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.rank + j
    }

    pub fn pair(&self, k: usize) -> (usize, usize) {
        (k / self.rank, k % self.rank)
    }

    pub fn symbol(&self, k: usize) -> String {
        let (i, j) = self.pair(k);
        format!("e{}⊗e{}", i + 1, j + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeSquareBasis {
    pub rank: usize,
    pairs: Vec<(usize, usize)>,
}

impl WedgeSquareBasis {
    pub fn new(rank: usize) -> Self {
        let pairs = (0..rank).flat_map(|i| (i + 1..rank).map(move |j| (i, j))).collect();
        WedgeSquareBasis { rank, pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Index of `e_i∧e_j`; requires `i < j`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.rank);
        i * (2 * self.rank - i - 1) / 2 + (j - i - 1)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn symbol(&self, k: usize) -> String {
        let (i, j) = self.pairs[k];
        format!("e{}∧e{}", i + 1, j + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividedSquareBasis {
    pub rank: usize,
    pairs: Vec<(usize, usize)>,
}

impl DividedSquareBasis {
    pub fn new(rank: usize) -> Self {
        let pairs = (0..rank).flat_map(|i| (i..rank).map(move |j| (i, j))).collect();
        DividedSquareBasis { rank, pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Index of `e_i^(2)` (`i = j`) or `e_i·e_j`; the pair may be unordered.
    pub fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        debug_assert!(j < self.rank);
        i * (2 * self.rank - i + 1) / 2 + (j - i)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn symbol(&self, k: usize) -> String {
        let (i, j) = self.pairs[k];
        if i == j {
            format!("e{}^(2)", i + 1)
        } else {
            format!("e{}·e{}", i + 1, j + 1)
        }
    }
}

/// `D₂X → X⊗X`: `e_i^(2) ↦ e_i⊗e_i`, `e_i·e_j ↦ e_i⊗e_j + e_j⊗e_i`.
pub fn comultiplication(ring: &Ring, rank: usize) -> Matrix {
    let t2 = TensorSquareBasis::new(rank);
    let d2 = DividedSquareBasis::new(rank);
    let mut m = Matrix::zeros(ring, t2.len(), d2.len());
    for (k, &(i, j)) in d2.pairs().iter().enumerate() {
        m.set(t2.index(i, j), k, RingElement::one(ring));
        m.set(t2.index(j, i), k, RingElement::one(ring));
    }
    m
}

/// `X⊗X → ∧²X`, `e_i⊗e_j ↦ e_i∧e_j`.
pub fn wedge_projection(ring: &Ring, rank: usize) -> Matrix {
    let t2 = TensorSquareBasis::new(rank);
    let w = WedgeSquareBasis::new(rank);
    let mut m = Matrix::zeros(ring, w.len(), t2.len());
    for (k, &(i, j)) in w.pairs().iter().enumerate() {
        m.set(k, t2.index(i, j), RingElement::one(ring));
        m.set(k, t2.index(j, i), RingElement::from_i64(ring, -1));
    }
    m
}

/// `∧²X → X⊗X`, `e_i∧e_j ↦ e_i⊗e_j` (a section of the projection up to the
/// alternating part; composing an alternating map with it recovers the
/// induced map on `∧²X`).
pub fn wedge_section(ring: &Ring, rank: usize) -> Matrix {
    let t2 = TensorSquareBasis::new(rank);
    let w = WedgeSquareBasis::new(rank);
    let mut m = Matrix::zeros(ring, t2.len(), w.len());
    for (k, &(i, j)) in w.pairs().iter().enumerate() {
        m.set(t2.index(i, j), k, RingElement::one(ring));
    }
    m
}

/// `X⊗X → D₂X`, the symmetric product: `e_i⊗e_j ↦ e_i·e_j`, so
/// `e_i⊗e_i ↦ 2e_i^(2)`.
pub fn symmetric_product(ring: &Ring, rank: usize) -> Matrix {
    let t2 = TensorSquareBasis::new(rank);
    let d2 = DividedSquareBasis::new(rank);
    let mut m = Matrix::zeros(ring, d2.len(), t2.len());
    for i in 0..rank {
        for j in 0..rank {
            let c = if i == j { 2 } else { 1 };
            m.set(d2.index(i, j), t2.index(i, j), RingElement::from_i64(ring, c));
        }
    }
    m
}

/// True when a map on `X⊗X` kills `e_i⊗e_i` and `e_i⊗e_j + e_j⊗e_i`.
pub fn is_alternating(map: &Matrix, rank: usize) -> bool {
    assert_eq!(map.cols(), rank * rank, "map is not defined on a tensor square");
    (map * &comultiplication(map.ring(), rank)).is_zero()
}
