//! Solving `d∘X = B` and `X∘A = B` over the ring.
//!
//! The columns of `d` generate a submodule; each column of `B` is lifted
//! through a Gröbner basis with a record of quotients. Matrices built from
//! tensor products are usually block diagonal up to permutation, so the
//! solver splits `d` into connected components of its non-zero pattern and
//! computes one basis per distinct component.

use std::collections::HashMap;
use std::sync::Arc;

use crate::arith::{Ring, RingElement};
use crate::error::{Error, Result};
use crate::lift::ModuleGroebnerBasis;
use crate::modules::Matrix;

#[derive(Debug)]
struct Component {
    rows: Vec<usize>,
    cols: Vec<usize>,
    gb: Arc<ModuleGroebnerBasis>,
}

/// Reusable solver for `d∘X = B` with fixed `d`.
#[derive(Debug)]
pub struct ColumnSolver {
    ring: Ring,
    rows: usize,
    cols: usize,
    components: Vec<Component>,
    /// Rows of `d` that are entirely zero.
    zero_rows: Vec<usize>,
    d: Matrix,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

impl ColumnSolver {
    pub fn new(d: &Matrix) -> Self {
        let (m, n) = d.shape();
        // union-find over rows 0..m and columns m..m+n
        let mut parent: Vec<usize> = (0..m + n).collect();
        for i in 0..m {
            for j in 0..n {
                if !d.get(i, j).is_zero() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, m + j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: HashMap<usize, (Vec<usize>, Vec<usize>)> = HashMap::new();
        let mut order = Vec::new();
        let mut zero_rows = Vec::new();
        for i in 0..m {
            if (0..n).all(|j| d.get(i, j).is_zero()) {
                zero_rows.push(i);
                continue;
            }
            let root = find(&mut parent, i);
            groups.entry(root).or_insert_with(|| {
                order.push(root);
                (Vec::new(), Vec::new())
            });
            groups.get_mut(&root).expect("inserted").0.push(i);
        }
        for j in 0..n {
            let root = find(&mut parent, m + j);
            if let Some(g) = groups.get_mut(&root) {
                g.1.push(j);
            }
        }
        let mut cache: HashMap<Matrix, Arc<ModuleGroebnerBasis>> = HashMap::new();
        let components = order
            .into_iter()
            .map(|root| {
                let (rows, cols) = groups.remove(&root).expect("present");
                let sub = d.submatrix(&rows, &cols);
                let gb = cache
                    .entry(sub.clone())
                    .or_insert_with(|| {
                        let gens: Vec<Vec<RingElement>> = (0..sub.cols()).map(|j| sub.column(j)).collect();
                        Arc::new(ModuleGroebnerBasis::compute(d.ring(), sub.rows(), &gens, true))
                    })
                    .clone();
                Component { rows, cols, gb }
            })
            .collect();
        ColumnSolver { ring: d.ring().clone(), rows: m, cols: n, components, zero_rows, d: d.clone() }
    }

    /// `x` with `d·x = b`, if one exists.
    pub fn solve_column(&self, b: &[RingElement]) -> Option<Vec<RingElement>> {
        assert_eq!(b.len(), self.rows, "right-hand side has the wrong length");
        if self.zero_rows.iter().any(|&i| !b[i].is_zero()) {
            return None;
        }
        let mut x = vec![RingElement::zero(&self.ring); self.cols];
        for c in &self.components {
            let part: Vec<RingElement> = c.rows.iter().map(|&i| b[i].clone()).collect();
            if part.iter().all(RingElement::is_zero) {
                continue;
            }
            let q = c.gb.lift(&part)?;
            for (k, &j) in c.cols.iter().enumerate() {
                x[j] = q[k].clone();
            }
        }
        Some(x)
    }

    /// `X` with `d∘X = b`; the product is re-checked before returning.
    pub fn solve(&self, b: &Matrix, context: &str) -> Result<Matrix> {
        if b.rows() != self.rows {
            return Err(Error::shape(format!(
                "{context}: right-hand side has {} rows, map has {}",
                b.rows(),
                self.rows
            )));
        }
        let mut columns = Vec::with_capacity(b.cols());
        for j in 0..b.cols() {
            let col = b.column(j);
            let x = self
                .solve_column(&col)
                .ok_or_else(|| Error::no_solution(format!("{context} (column {})", j + 1)))?;
            columns.push(x);
        }
        let x = Matrix::from_columns(&self.ring, self.cols, &columns);
        if &self.d.try_mul(&x)? != b {
            return Err(Error::internal(context.to_string(), "lifted solution does not reproduce the right-hand side"));
        }
        Ok(x)
    }
}

/// `X` with `d∘X = b`.
pub fn solve_post(d: &Matrix, b: &Matrix, context: &str) -> Result<Matrix> {
    ColumnSolver::new(d).solve(b, context)
}

/// `X` with `X∘a = b`, computed as the transpose of `aᵀ∘Xᵀ = bᵀ`.
pub fn solve_pre(a: &Matrix, b: &Matrix, context: &str) -> Result<Matrix> {
    if a.cols() != b.cols() {
        return Err(Error::shape(format!("{context}: maps have different sources")));
    }
    Ok(solve_post(&a.transpose(), &b.transpose(), context)?.transpose())
}

/// Given `phi: Y⊗F₁ → F₄` (a `1 × (|Y|·r₁)` matrix) with
/// `phi∘(1⊗d₂) = 0`, returns `φ̃: Y → F₄` with
/// `d₁(x)·φ̃(y) = phi(y⊗x)`.
pub fn r1_factor(phi: &Matrix, d1: &Matrix, d2: &Matrix, context: &str) -> Result<Matrix> {
    let ring = phi.ring();
    let r1 = d1.cols();
    if phi.rows() != 1 || d1.rows() != 1 || r1 == 0 || !phi.cols().is_multiple_of(r1) {
        return Err(Error::shape(format!("{context}: unexpected shapes for factoring through d1")));
    }
    let ny = phi.cols() / r1;
    let r2 = d2.cols();
    // precondition: phi(y ⊗ d2(x2)) = 0
    for y in 0..ny {
        for b in 0..r2 {
            let mut acc = RingElement::zero(ring);
            for i in 0..r1 {
                acc = &acc + &(phi.get(0, y * r1 + i) * d2.get(i, b));
            }
            if !acc.is_zero() {
                return Err(Error::hypothesis(
                    context.to_string(),
                    format!("map does not vanish on y{}⊗d2(f{}): value {acc}", y + 1, b + 1),
                ));
            }
        }
    }
    let pivot = (0..r1)
        .find(|&i| !d1.get(0, i).is_zero())
        .ok_or_else(|| Error::hypothesis(context.to_string(), "d1 is zero"))?;
    let mut out = Matrix::zeros(ring, 1, ny);
    for y in 0..ny {
        let v = phi
            .get(0, y * r1 + pivot)
            .div_exact(d1.get(0, pivot))
            .ok_or_else(|| Error::no_solution(format!("{context}: d1(e{}) does not divide the value at y{}", pivot + 1, y + 1)))?;
        for i in 0..r1 {
            if &(d1.get(0, i) * &v) != phi.get(0, y * r1 + i) {
                return Err(Error::no_solution(format!("{context}: inconsistent quotients at y{}⊗e{}", y + 1, i + 1)));
            }
        }
        out.set(0, y, v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{CoefficientDomain, MonomialOrder, PolyRing};

    fn ring(dom: CoefficientDomain) -> Ring {
        PolyRing::new(dom, &["x", "y", "z"], MonomialOrder::GRevLex).unwrap()
    }

    #[test]
    fn zero_right_hand_side() {
        let r = ring(CoefficientDomain::Integers);
        let d = Matrix::from_strs(&r, &[&["x", "y", "z"]]).unwrap();
        let x = solve_post(&d, &Matrix::zeros(&r, 1, 2), "test").unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn lifts_through_a_map() {
        let r = ring(CoefficientDomain::Integers);
        let d = Matrix::from_strs(&r, &[&["x", "y", "z"]]).unwrap();
        let x = solve_post(&d, &d, "test").unwrap();
        assert_eq!(&d * &x, d);
        let b = Matrix::from_strs(&r, &[&["1"]]).unwrap();
        assert!(matches!(solve_post(&d, &b, "test"), Err(Error::NoSolution { .. })));
    }

    #[test]
    fn block_structure_is_exploited() {
        let r = ring(CoefficientDomain::Rationals);
        let d = Matrix::from_strs(&r, &[&["x", "y"]]).unwrap();
        let big = Matrix::identity(&r, 3).kron(&d);
        let solver = ColumnSolver::new(&big);
        assert_eq!(solver.components.len(), 3);
        assert!(Arc::ptr_eq(&solver.components[0].gb, &solver.components[2].gb));
        let b = Matrix::from_strs(&r, &[&["x*y"], &["0"], &["y^2 + x"]]).unwrap();
        let x = solver.solve(&b, "test").unwrap();
        assert_eq!(&big * &x, b);
    }

    #[test]
    fn pre_composition() {
        let r = ring(CoefficientDomain::Integers);
        let a = Matrix::from_strs(&r, &[&["x"], &["y"]]).unwrap();
        let b = Matrix::from_strs(&r, &[&["x*z + 2*y^2"]]).unwrap();
        let x = solve_pre(&a, &b, "test").unwrap();
        assert_eq!(&x * &a, b);
        assert!(solve_pre(&Matrix::identity(&r, 2), &Matrix::zeros(&r, 1, 2), "t").unwrap().is_zero());
    }

    #[test]
    fn factoring_through_d1() {
        let r = ring(CoefficientDomain::Integers);
        let d1 = Matrix::from_strs(&r, &[&["x", "y"]]).unwrap();
        let d2 = Matrix::from_strs(&r, &[&["-y"], &["x"]]).unwrap();
        // phi(y_k ⊗ e_i) = d1(e_i)·c_k with c = (3, z)
        let phi = Matrix::from_strs(&r, &[&["3*x", "3*y", "x*z", "y*z"]]).unwrap();
        let f = r1_factor(&phi, &d1, &d2, "test").unwrap();
        assert_eq!(f, Matrix::from_strs(&r, &[&["3", "z"]]).unwrap());
        let bad = Matrix::from_strs(&r, &[&["1", "0", "0", "0"]]).unwrap();
        assert!(matches!(r1_factor(&bad, &d1, &d2, "test"), Err(Error::Hypothesis { .. })));
    }
}
