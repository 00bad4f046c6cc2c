//! The Koszul complex on four elements, with basis `e_S` of `∧^k R⁴`
//! indexed by `k`-subsets `S` in lexicographic order.

use itertools::Itertools;

use crate::arith::{Ring, RingElement};
use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::modules::Matrix;

/// The `k`-subsets of `{0,1,2,3}` in lexicographic order.
pub fn koszul_subsets(k: usize) -> Vec<Vec<usize>> {
    (0..4).combinations(k).collect()
}

/// Sign of `e_S ∧ e_T` relative to `e_{S∪T}` (zero when `S`, `T` meet).
pub fn wedge_sign(s: &[usize], t: &[usize]) -> i64 {
    if s.iter().any(|i| t.contains(i)) {
        return 0;
    }
    // count inversions of the concatenation
    let inversions = s.iter().map(|a| t.iter().filter(|b| *b < a).count()).sum::<usize>();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `d(e_S) = Σ_p (−1)^p f_{s_p} e_{S∖s_p}`.
pub fn koszul_complex(ring: &Ring, seq: &[RingElement]) -> Result<FreeComplex> {
    if seq.len() != 4 {
        return Err(Error::InvalidArgument(format!("Koszul complex needs 4 elements, got {}", seq.len())));
    }
    let diff = |k: usize| {
        let src = koszul_subsets(k);
        let tgt = koszul_subsets(k - 1);
        let mut m = Matrix::zeros(ring, tgt.len(), src.len());
        for (j, s) in src.iter().enumerate() {
            for (p, &x) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&y| y != x).collect();
                let i = tgt.iter().position(|t| *t == rest).expect("subset");
                let v = if p % 2 == 0 { seq[x].clone() } else { -&seq[x] };
                m.set(i, j, v);
            }
        }
        m
    };
    FreeComplex::new(ring, diff(1), diff(2), diff(3), diff(4))
}

/// Standard self-duality of the Koszul complex: `φ_k(e_S)(e_T) =
/// ε_k·sign(e_S∧e_T)` with `ε = (1, 1, −1, −1, 1)`; it gives `u = 1`.
pub fn koszul_witness(ring: &Ring) -> [Matrix; 5] {
    const EPS: [i64; 5] = [1, 1, -1, -1, 1];
    std::array::from_fn(|k| {
        let src = koszul_subsets(k);
        let tgt = koszul_subsets(4 - k);
        Matrix::from_fn(ring, tgt.len(), src.len(), |i, j| RingElement::from_i64(ring, EPS[k] * wedge_sign(&src[j], &tgt[i])))
    })
}
