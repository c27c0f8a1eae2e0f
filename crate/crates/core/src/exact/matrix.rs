use std::fmt;
use std::ops::Mul;

use super::Rational;
use crate::error::{Error, Result};

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|r| r.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::ONE);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} has length {} but row 0 has length {cols}",
                rows[bad].len()
            )));
        }
        let n = rows.len();
        Ok(RatMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn row_mut(&mut self, i: usize) -> &mut [Rational] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has length {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Rational::ZERO;
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn try_mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = &out.data[i * other.cols + j] + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Determinant by Gaussian elimination; requires a square matrix.
    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return Ok(Rational::ZERO);
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let pivot = a.get(c, c).clone();
            for i in c + 1..n {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let factor = a.get(i, c) / &pivot;
                a.sub_scaled_row(i, c, &factor, c);
            }
            det *= pivot;
        }
        Ok(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row[target] -= factor * row[source]`, touching columns `from..`.
    fn sub_scaled_row(&mut self, target: usize, source: usize, factor: &Rational, from: usize) {
        let cols = self.cols;
        for j in from..cols {
            let s = &self.data[source * cols + j];
            if s.is_zero() {
                continue;
            }
            let delta = factor * s;
            self.data[target * cols + j] -= delta;
        }
    }

    fn scale_row(&mut self, i: usize, factor: &Rational) {
        for x in self.row_mut(i) {
            if !x.is_zero() {
                *x *= factor;
            }
        }
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;

    /// Panics on a shape mismatch; use [`RatMatrix::try_mul`] to get an error instead.
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_mul(rhs).expect("matrix shape mismatch")
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Pivot columns in the order they were chosen; row `k` of `reduced` has its pivot at `pivot_columns[k]`.
    pub pivot_columns: Vec<usize>,
    pub reduced: RatMatrix,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivot_columns.len()
    }
}

/// Gauss-Jordan elimination scanning columns in `order`.
///
/// Each pivot is normalized to 1 and cleared from every other row, so the
/// pivot columns of the result form an identity block. `order` must be a
/// permutation of `0..cols`.
pub fn rref_with_column_order(m: &RatMatrix, order: &[usize]) -> Result<Rref> {
    let mut seen = vec![false; m.cols()];
    if order.len() != m.cols() {
        return Err(Error::InvalidArgument(format!(
            "column order has {} entries for {} columns",
            order.len(),
            m.cols()
        )));
    }
    for &c in order {
        if c >= m.cols() || std::mem::replace(&mut seen[c], true) {
            return Err(Error::InvalidArgument(format!("column order is not a permutation (at {c})")));
        }
    }
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = Rational::ONE / a.get(r, c);
        a.scale_row(r, &inv);
        for i in 0..a.rows() {
            if i != r && !a.get(i, c).is_zero() {
                let factor = a.get(i, c).clone();
                a.sub_scaled_row(i, r, &factor, 0);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(Rref { pivot_columns: pivots, reduced: a })
}

/// Reduced row echelon form in the natural column order.
pub fn rref(m: &RatMatrix) -> Rref {
    let order: Vec<usize> = (0..m.cols()).collect();
    rref_with_column_order(m, &order).expect("identity order is a permutation")
}

/// Rank by forward elimination only.
pub fn rank(m: &RatMatrix) -> usize {
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let pivot = a.get(r, c).clone();
        for i in r + 1..a.rows() {
            if !a.get(i, c).is_zero() {
                let factor = a.get(i, c) / &pivot;
                a.sub_scaled_row(i, r, &factor, c);
            }
        }
        r += 1;
    }
    r
}

/// A basis of the right kernel, one vector per free column.
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let e = rref(m);
    let mut is_pivot = vec![false; m.cols()];
    for &c in &e.pivot_columns {
        is_pivot[c] = true;
    }
    (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::ZERO; m.cols()];
            v[f] = Rational::ONE;
            for (k, &c) in e.pivot_columns.iter().enumerate() {
                v[c] = -e.reduced.get(k, f).clone();
            }
            v
        })
        .collect()
}

/// Incrementally grown basis kept in reduced echelon form.
///
/// Every stored row has a 1 at its own pivot and 0 at the pivots of the
/// other rows, so reducing a vector is one pass over the rows.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Reduces `v` against the basis in place. Afterwards `v` is zero iff it
    /// was in the span.
    pub fn reduce(&self, v: &mut [Rational]) {
        debug_assert_eq!(v.len(), self.dim);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
    }

    /// Adds `v` to the basis if it is independent. Returns whether it was added.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for basis of dimension {}",
                v.len(),
                self.dim
            )));
        }
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = Rational::ONE / &v[p];
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        Ok(true)
    }

    /// Largest bit length of any numerator or denominator stored in the basis.
    pub fn max_height_bits(&self) -> usize {
        use dashu_base::BitTest;
        self.rows
            .iter()
            .flatten()
            .map(|x| x.numerator().bit_len().max(x.denominator().bit_len()))
            .max()
            .unwrap_or(0)
    }
}
