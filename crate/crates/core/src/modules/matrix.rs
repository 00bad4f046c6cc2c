//! Dense matrices over a polynomial ring.
//!
//! A matrix of shape `rows × cols` represents a map from a free module of
//! rank `cols` to one of rank `rows`; column `j` is the image of `e_j`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;

use crate::arith::{same_ring, Ring, RingElement};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<RingElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row = (0..self.cols).map(|j| self.get(i, j).to_string()).join(", ");
            writeln!(f, "[{row}]")?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        Matrix { ring: ring.clone(), rows, cols, data: vec![RingElement::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, RingElement::one(ring));
        }
        m
    }

    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RingElement) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { ring: ring.clone(), rows, cols, data }
    }

    /// Builds a matrix whose column `j` is `columns[j]`.
    pub fn from_columns(ring: &Ring, rows: usize, columns: &[Vec<RingElement>]) -> Self {
        Self::from_fn(ring, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<RingElement>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::shape("rows of unequal length"));
        }
        let data: Vec<RingElement> = rows.into_iter().flatten().collect();
        if data.iter().any(|e| !same_ring(e.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(Matrix { ring: ring.clone(), rows: nrows, cols, data })
    }

    pub fn from_i64(ring: &Ring, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(ring, rows.len(), cols, |i, j| RingElement::from_i64(ring, rows[i][j]))
    }

    /// Parses each entry with the ring's text syntax.
    pub fn from_strs(ring: &Ring, rows: &[&[&str]]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| RingElement::parse(ring, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if parsed.is_empty() {
            return Ok(Self::zeros(ring, 0, 0));
        }
        Self::from_rows(ring, parsed)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<RingElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<RingElement> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn set_column(&mut self, j: usize, col: &[RingElement]) {
        for (i, v) in col.iter().enumerate() {
            self.set(i, j, v.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RingElement::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> impl Iterator<Item = &RingElement> {
        self.data.iter()
    }

    fn check_ring(&self, other: &Matrix) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&RingElement, &RingElement) -> RingElement) -> Result<Matrix> {
        self.check_ring(other)?;
        if self.shape() != other.shape() {
            return Err(Error::shape(format!(
                "cannot combine {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn map(&self, f: impl Fn(&RingElement) -> RingElement) -> Matrix {
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &RingElement) -> Matrix {
        self.map(|a| a * c)
    }

    pub fn scale_i64(&self, n: i64) -> Matrix {
        self.map(|a| a.scale_i64(n))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product; the matrix of `f ⊗ g` in the basis `e_a ⊗ e_b ↦
    /// a·rank(B) + b`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r2, c2) = other.shape();
        Matrix::from_fn(&self.ring, self.rows * r2, self.cols * c2, |i, j| {
            let a = self.get(i / r2, j / c2);
            if a.is_zero() {
                return RingElement::zero(&self.ring);
            }
            a * other.get(i % r2, j % c2)
        })
    }

    /// Assembles a block matrix. Every block row must agree in height and
    /// every block column in width.
    pub fn blocks(ring: &Ring, blocks: &[Vec<Matrix>]) -> Result<Matrix> {
        let heights: Vec<usize> = blocks.iter().map(|r| r.first().map_or(0, Matrix::rows)).collect();
        let widths: Vec<usize> = blocks.first().map_or(Vec::new(), |r| r.iter().map(Matrix::cols).collect());
        for (bi, row) in blocks.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(Error::shape("block rows of unequal length"));
            }
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::shape(format!("block ({bi},{bj}) has inconsistent shape")));
                }
                if !same_ring(&b.ring, ring) {
                    return Err(Error::RingMismatch);
                }
            }
        }
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out.set(r0 + i, c0 + j, b.get(i, j).clone());
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    pub fn hstack(ring: &Ring, parts: &[Matrix]) -> Result<Matrix> {
        Self::blocks(ring, &[parts.to_vec()])
    }

    pub fn vstack(ring: &Ring, parts: &[Matrix]) -> Result<Matrix> {
        Self::blocks(ring, &parts.iter().map(|p| vec![p.clone()]).collect::<Vec<_>>())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(&self.ring, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Contiguous block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(&self.ring, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn apply(&self, v: &[RingElement]) -> Vec<RingElement> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix width");
        (0..self.rows)
            .map(|i| {
                let mut acc = RingElement::zero(&self.ring);
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<RingElement> {
        if !self.is_square() {
            return Err(Error::shape(format!("determinant of a non-square {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(RingElement::one(&self.ring));
        }
        let mut a: Vec<Vec<RingElement>> = (0..n).map(|i| self.row(i)).collect();
        let mut prev = RingElement::one(&self.ring);
        let mut negate = false;
        for k in 0..n {
            let Some(p) = pick_pivot((k..n).map(|i| (i, &a[i][k]))) else {
                return Ok(RingElement::zero(&self.ring));
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            bareiss_eliminate(&mut a, k, k + 1..n, k + 1..n, &prev)?;
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// Rank over the fraction field of the ring.
    pub fn rank(&self) -> Result<usize> {
        let (m, n) = self.shape();
        let mut a: Vec<Vec<RingElement>> = (0..m).map(|i| self.row(i)).collect();
        let mut col_perm: Vec<usize> = (0..n).collect();
        let mut prev = RingElement::one(&self.ring);
        let mut rank = 0;
        while rank < m.min(n) {
            let k = rank;
            let candidates = (k..m).flat_map(|i| (k..n).map(move |j| (i, j)));
            let best = candidates
                .filter(|&(i, j)| !a[i][col_perm[j]].is_zero())
                .min_by_key(|&(i, j)| complexity(&a[i][col_perm[j]]));
            let Some((pi, pj)) = best else { break };
            a.swap(pi, k);
            col_perm.swap(pj, k);
            // eliminate over the permuted column order
            let cols: Vec<usize> = col_perm.clone();
            let pk = cols[k];
            let pivot = a[k][pk].clone();
            for i in k + 1..m {
                let lead = a[i][pk].clone();
                for &c in &cols[k + 1..] {
                    let num = &(&a[i][c] * &pivot) - &(&lead * &a[k][c]);
                    a[i][c] = num.div_exact(&prev).ok_or_else(|| Error::internal("bareiss", "inexact division"))?;
                }
                a[i][pk] = RingElement::zero(&self.ring);
            }
            prev = pivot;
            rank += 1;
        }
        Ok(rank)
    }

    /// All `k × k` minors, rows and columns in lexicographic order of index
    /// subsets.
    pub fn minors(&self, k: usize) -> Result<Vec<RingElement>> {
        let mut out = Vec::new();
        if k > self.rows || k > self.cols {
            return Ok(out);
        }
        let row_sets: Vec<Vec<usize>> = (0..self.rows).combinations(k).collect();
        let col_sets: Vec<Vec<usize>> = (0..self.cols).combinations(k).collect();
        for rs in &row_sets {
            for cs in &col_sets {
                out.push(self.submatrix(rs, cs).determinant()?);
            }
        }
        Ok(out)
    }

    /// Inverse of a square matrix whose determinant is a unit, via the
    /// adjugate.
    pub fn inverse(&self) -> Result<Matrix> {
        let det = self.determinant()?;
        let inv_det = det
            .inverse()
            .ok_or_else(|| Error::hypothesis("invertible matrix", format!("determinant {det} is not a unit")))?;
        let n = self.rows;
        if n == 1 {
            return Ok(Matrix::from_fn(&self.ring, 1, 1, |_, _| inv_det.clone()));
        }
        let mut out = Matrix::zeros(&self.ring, n, n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.submatrix(&rows, &cols).determinant()?;
                let cof = if (i + j) % 2 == 0 { minor } else { -minor };
                out.set(i, j, &cof * &inv_det);
            }
        }
        Ok(out)
    }
}

fn complexity(e: &RingElement) -> (usize, u32) {
    (e.num_terms(), e.degree().unwrap_or(0))
}

fn pick_pivot<'a>(cands: impl Iterator<Item = (usize, &'a RingElement)>) -> Option<usize> {
    cands.filter(|(_, e)| !e.is_zero()).min_by_key(|(i, e)| (complexity(e), *i)).map(|(i, _)| i)
}

fn bareiss_eliminate(
    a: &mut [Vec<RingElement>],
    k: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
    prev: &RingElement,
) -> Result<()> {
    let pivot = a[k][k].clone();
    for i in rows {
        let lead = a[i][k].clone();
        for j in cols.clone() {
            let num = &(&a[i][j] * &pivot) - &(&lead * &a[k][j]);
            a[i][j] = num.div_exact(prev).ok_or_else(|| Error::internal("bareiss", "inexact division"))?;
        }
        a[i][k] = RingElement::zero(pivot.ring());
    }
    Ok(())
}

macro_rules! matop {
    ($tr:ident, $method:ident, $body:ident) => {
        impl $tr<&Matrix> for &Matrix {
            type Output = Matrix;
            /// Panics on shape or ring mismatch; use the `try_*` variants
            /// for untrusted input.
            fn $method(self, rhs: &Matrix) -> Matrix {
                self.$body(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Matrix> for Matrix {
            type Output = Matrix;
            fn $method(self, rhs: Matrix) -> Matrix {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Matrix> for Matrix {
            type Output = Matrix;
            fn $method(self, rhs: &Matrix) -> Matrix {
                (&self).$method(rhs)
            }
        }
        impl $tr<Matrix> for &Matrix {
            type Output = Matrix;
            fn $method(self, rhs: Matrix) -> Matrix {
                self.$method(&rhs)
            }
        }
    };
}

matop!(Mul, mul, try_mul);
matop!(Add, add, try_add);
matop!(Sub, sub, try_sub);

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map(|a| -a)
    }
}

impl Neg for Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        -&self
    }
}
