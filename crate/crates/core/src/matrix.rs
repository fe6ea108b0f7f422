//! Dense matrices over a [`Ring`](crate::ring::Ring).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{usage, Result};
use crate::ring::{Ring, RingElement};

/// A `rows × cols` matrix with at least one row and one column, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<RingElement>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<RingElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return usage("matrices need at least one row and one column");
        }
        if rows.iter().any(|row| row.len() != c) {
            return usage("ragged rows");
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix from small integer literals.
    pub fn from_ints(ring: &Ring, rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(rows.iter().map(|row| row.iter().map(|&k| ring.int(k)).collect()).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RingElement) -> Self {
        assert!(rows > 0 && cols > 0, "matrices need at least one row and one column");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        let z = ring.zero();
        Matrix::from_fn(rows, cols, |_, _| z.clone())
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let (z, o) = (ring.zero(), ring.one());
        Matrix::from_fn(n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn diagonal(entries: &[RingElement]) -> Self {
        let z = entries[0].zero_like();
        Matrix::from_fn(entries.len(), entries.len(), |i, j| if i == j { entries[i].clone() } else { z.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RingElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.data
    }

    fn zero_elem(&self) -> RingElement {
        self.data[0].zero_like()
    }

    pub fn ring(&self) -> Ring {
        self.data[0].ring()
    }

    /// Exact product; errors on non-conforming shapes.
    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return usage(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let zero = self.zero_elem();
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = zero.clone();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        acc += a * b;
                    }
                }
                data.push(acc);
            }
        }
        Ok(Matrix { rows: self.rows, cols: other.cols, data })
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &[RingElement]) -> Vec<RingElement> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.zero_elem();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, k: &RingElement) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    /// The `h × w` block with top-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Matrix {
        Matrix::from_fn(h, w, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// `[[a, b], [c, d]]` from four blocks of matching shapes.
    pub fn from_blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<Matrix> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return usage("block shapes do not fit together");
        }
        let (top, left) = (a.rows, a.cols);
        Ok(Matrix::from_fn(a.rows + c.rows, a.cols + b.cols, |i, j| {
            match (i < top, j < left) {
                (true, true) => a.get(i, j),
                (true, false) => b.get(i, j - left),
                (false, true) => c.get(i - top, j),
                (false, false) => d.get(i - top, j - left),
            }
            .clone()
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RingElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| {
                let x = self.get(i, j);
                if i == j { x.is_one() } else { x.is_zero() }
            }))
    }

    /// Coefficients `[1, c₁, …, cₙ]` of `det(tI − A)`, by Berkowitz's
    /// division-free algorithm; valid over any commutative ring.
    pub fn charpoly(&self) -> Result<Vec<RingElement>> {
        if !self.is_square() {
            return usage("characteristic polynomial of a non-square matrix");
        }
        let n = self.rows;
        let one = self.zero_elem().one_like();
        let mut coeffs = vec![one.clone()];
        for r in 0..n {
            // leading r×r block M, column S above the diagonal, row R left of it
            let s: Vec<RingElement> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let row: Vec<RingElement> = (0..r).map(|j| self.get(r, j).clone()).collect();
            let mut col = Vec::with_capacity(r + 2);
            col.push(one.clone());
            col.push(-self.get(r, r));
            let mut power_s = s;
            for _ in 0..r {
                let dot = row.iter().zip(&power_s).fold(self.zero_elem(), |acc, (a, b)| acc + a * b);
                col.push(-dot);
                power_s = (0..r)
                    .map(|i| (0..r).fold(self.zero_elem(), |acc, k| acc + self.get(i, k) * &power_s[k]))
                    .collect();
            }
            let next: Vec<RingElement> = (0..r + 2)
                .map(|i| {
                    (0..=i.min(r)).fold(self.zero_elem(), |acc, j| acc + &col[i - j] * &coeffs[j])
                })
                .collect();
            coeffs = next;
        }
        Ok(coeffs)
    }

    pub fn det(&self) -> Result<RingElement> {
        let cp = self.charpoly()?;
        let last = cp[self.rows].clone();
        Ok(if self.rows.is_multiple_of(2) { last } else { -last })
    }

    /// The adjugate, from Cayley–Hamilton: `adj A = (−1)^{n+1}(A^{n−1} + c₁A^{n−2} + … + c_{n−1}I)`.
    pub fn adjugate(&self) -> Result<Matrix> {
        let cp = self.charpoly()?;
        let n = self.rows;
        let ring = self.ring();
        let mut acc = Matrix::identity(&ring, n);
        for c in cp.iter().take(n).skip(1) {
            acc = &(&acc * self) + &Matrix::identity(&ring, n).scale(c);
        }
        Ok(if n % 2 == 1 { acc } else { -&acc })
    }

    /// The inverse when the determinant is a unit, `None` otherwise.
    ///
    /// Tries Gauss–Jordan elimination with unit pivots first and falls back
    /// to `det⁻¹ · adj` when no unit pivot is available (non-local rings).
    pub fn try_inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        if let Some(inv) = self.inverse_by_unit_pivots() {
            return Some(inv);
        }
        self.inverse_by_adjugate()
    }

    /// `det⁻¹ · adj A`, or `None` when the determinant is not a unit.
    pub fn inverse_by_adjugate(&self) -> Option<Matrix> {
        let d = self.det().ok()?.try_invert()?;
        Some(self.adjugate().ok()?.scale(&d))
    }

    fn inverse_by_unit_pivots(&self) -> Option<Matrix> {
        let n = self.rows;
        let ring = self.ring();
        let mut a = self.clone();
        let mut inv = Matrix::identity(&ring, n);
        for col in 0..n {
            let (pivot_row, pivot_inv) =
                (col..n).find_map(|r| a.get(r, col).try_invert().map(|inv| (r, inv)))?;
            if pivot_row != col {
                a.swap_rows(pivot_row, col);
                inv.swap_rows(pivot_row, col);
            }
            a.scale_row(col, &pivot_inv);
            inv.scale_row(col, &pivot_inv);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                a.add_row_multiple(r, col, &-&factor);
                inv.add_row_multiple(r, col, &-&factor);
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn scale_row(&mut self, i: usize, k: &RingElement) {
        for c in 0..self.cols {
            let v = self.get(i, c) * k;
            self.set(i, c, v);
        }
    }

    /// row[target] += k · row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, k: &RingElement) {
        for c in 0..self.cols {
            let s = self.get(source, c);
            if s.is_zero() {
                continue;
            }
            let v = self.get(target, c) + k * s;
            self.set(target, c, v);
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    /// Panics on non-conforming shapes; use [`Matrix::try_mul`] to get an error.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch in matrix sum");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch in matrix difference");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
