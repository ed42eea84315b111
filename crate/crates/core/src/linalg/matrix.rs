use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{integer_row, primitive, row_lcm, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from equal-length rows. An empty slice gives a 0×0 matrix.
    pub fn from_rows<R: AsRef<[Rational]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Matrix whose columns are the given vectors (all of length `dim`).
    pub fn from_columns<R: AsRef<[Rational]>>(dim: usize, columns: &[R]) -> Result<Self> {
        let mut m = Self::zeros(dim, columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            if c.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Submatrix on the given row and column index lists (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RationalMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Exact rank by fraction-free (Bareiss) elimination. Rows are first scaled
    /// to integers; the pivot in each column is the lowest-index remaining row
    /// with a nonzero entry.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|r| integer_row(self.row(r))).collect();
        bareiss_rank(&mut a, self.cols)
    }

    /// Determinant of a square matrix, computed fraction-free.
    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for r in 0..n {
            let row = self.row(r);
            scale *= row_lcm(row);
            a.push(integer_row(row));
        }
        let det = bareiss_det(&mut a);
        Ok(Rational::new(det, scale))
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &f * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Basis of the right kernel, one primitive integer vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, free).clone();
                }
                primitive(&v)
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

fn bareiss_rank(a: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = a.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below {
            let f = row[col].clone();
            for (x, y) in row[col..cols].iter_mut().zip(&pivot_row[col..cols]) {
                *x = (&pivot * &*x - &f * y) / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

fn bareiss_det(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(k, p);
            sign = -sign;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let v = (&a[k][k] * &a[r][c] - &a[r][k] * &a[k][c]) / &prev;
                a[r][c] = v;
            }
            a[r][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank of a list of equal-length vectors.
pub fn rank_of_vectors<R: AsRef<[Rational]>>(vectors: &[R]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = vectors[0].as_ref().len();
    let mut a: Vec<Vec<BigInt>> = vectors.iter().map(|v| integer_row(v.as_ref())).collect();
    bareiss_rank(&mut a, cols)
}

/// Determinant of the square matrix whose columns are `columns`, restricted
/// to the given coordinate rows.
pub fn minor_of_columns<R: AsRef<[Rational]>>(columns: &[R], row_subset: &[usize]) -> Rational {
    debug_assert_eq!(columns.len(), row_subset.len());
    let rows: Vec<Vec<Rational>> = columns
        .iter()
        .map(|c| row_subset.iter().map(|&i| c.as_ref()[i].clone()).collect())
        .collect();
    // det(A^T) = det(A); rows here are the columns.
    RationalMatrix::from_rows(&rows)
        .and_then(|m| m.determinant())
        .unwrap_or_else(|_| Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{int, ratio, vector};

    fn mat(rows: &[&[i64]]) -> RationalMatrix {
        let rs: Vec<Vec<Rational>> = rows.iter().map(|r| vector(r)).collect();
        RationalMatrix::from_rows(&rs).unwrap()
    }

    #[test]
    fn identity_and_zero_rank() {
        assert_eq!(RationalMatrix::identity(3).rank(), 3);
        assert_eq!(RationalMatrix::zeros(2, 4).rank(), 0);
        assert!(RationalMatrix::identity(4).kernel_basis().is_empty());
        assert_eq!(RationalMatrix::zeros(1, 5).kernel_basis().len(), 5);
    }

    #[test]
    fn determinant_with_fractions() {
        let m = RationalMatrix::from_rows(&[vec![ratio(1, 2), int(1)], vec![int(3), ratio(2, 3)]])
            .unwrap();
        assert_eq!(m.determinant().unwrap(), ratio(1, 3) - int(3));
        let m = mat(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(m.determinant().unwrap(), int(-2));
        let m = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.determinant().unwrap(), int(0));
    }

    #[test]
    fn kernel_multiplies_to_zero() {
        let m = mat(&[&[1, 2, 3, 4, 5], &[0, 1, 1, 0, 2], &[2, 0, 1, 7, -1]]);
        assert_eq!(m.rank(), 3);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        assert_eq!(rank_of_vectors(&ker), 2);
    }

    #[test]
    fn rank_is_row_scaling_invariant() {
        let m = RationalMatrix::from_rows(&[vec![ratio(1, 3), ratio(2, 3)], vec![int(1), int(2)]])
            .unwrap();
        assert_eq!(m.rank(), 1);
    }
}
