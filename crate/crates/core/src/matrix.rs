//! Dense rational matrices and exact elimination.

use num_traits::{One, Zero};

use crate::error::{check_len, Error, Result};
use crate::rational::{dot, rat, Rational};

/// Row-major dense matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix with `cols` columns from explicit rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let count = rows.len();
        for row in rows {
            check_len(cols, row.len())?;
            data.extend(row);
        }
        Ok(Self { rows: count, cols, data })
    }

    /// Convenience constructor from integer rows; all rows must share a length.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&x| rat(x))
            })
            .collect();
        Self { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn push_row(&mut self, row: Vec<Rational>) -> Result<()> {
        check_len(self.cols, row.len())?;
        self.data.extend(row);
        self.rows += 1;
        Ok(())
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

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        check_len(self.cols, x.len())?;
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        check_len(self.cols, other.cols)?;
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Self { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend(self.row(i).iter().cloned());
        }
        Self { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.row_vecs();
        let pivots = rref_in_place(&mut rows, self.cols);
        let reduced = Self::from_rows(self.cols, rows).expect("shape preserved");
        (reduced, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut basis = RowBasis::new(self.cols);
        for i in 0..self.rows {
            basis.insert(self.row(i));
            if basis.rank() == self.cols {
                break;
            }
        }
        basis.rank()
    }

    /// A basis of the right kernel, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self * x = rhs`, or `None` when inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Option<Vec<Rational>>> {
        check_len(self.rows, rhs.len())?;
        let mut rows: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(rhs[i].clone());
                r
            })
            .collect();
        let pivots = rref_in_place(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = rows[i][self.cols].clone();
        }
        Ok(Some(x))
    }

    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        Ok(determinant_of(self.row_vecs()))
    }
}

pub(crate) fn determinant_of(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        let (top, bottom) = a.split_at_mut(col + 1);
        for row in bottom.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot;
            for (x, y) in row[col..].iter_mut().zip(&top[col][col..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

fn rref_in_place(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Incrementally maintained echelon basis of a row space.
#[derive(Debug, Clone)]
pub struct RowBasis {
    cols: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl RowBasis {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Remainder of `v` after elimination against the basis.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut r = v.to_vec();
        for (p, row) in &self.rows {
            if r[*p].is_zero() {
                continue;
            }
            let f = r[*p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        if self.rows.len() == self.cols {
            return false;
        }
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        self.rows.push((p, r));
        true
    }

    /// Generator of the orthogonal complement when the rank is `cols - 1`.
    pub fn null_vector(&self) -> Option<Vec<Rational>> {
        if self.rows.len() + 1 != self.cols {
            return None;
        }
        let m = RationalMatrix::from_rows(
            self.cols,
            self.rows.iter().map(|(_, r)| r.clone()).collect(),
        )
        .expect("consistent rows");
        m.kernel_basis().pop()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::identity(2).rank(), 2);
        assert_eq!(RationalMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(RationalMatrix::from_i64(&[vec![1, 2], vec![2, 4], vec![0, 1]]).rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(RationalMatrix::identity(2).kernel_basis().is_empty());
        let k = RationalMatrix::from_i64(&[vec![1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![rat(-1), rat(1)]]);
        // incidence matrix of the directed triangle 0->1->2->0, head +1 / tail -1
        let inc = RationalMatrix::from_i64(&[vec![-1, 0, 1], vec![1, -1, 0], vec![0, 1, -1]]);
        let k = inc.kernel_basis();
        assert_eq!(k, vec![vec![rat(1), rat(1), rat(1)]]);
    }

    #[test]
    fn solve_and_det() {
        let m = RationalMatrix::from_i64(&[vec![2, 1], vec![1, 3]]);
        assert_eq!(m.determinant().unwrap(), rat(5));
        let x = m.solve(&[rat(3), rat(4)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![rat(3), rat(4)]);
        let s = RationalMatrix::from_i64(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(s.solve(&[rat(1), rat(2)]).unwrap(), None);
    }
}
