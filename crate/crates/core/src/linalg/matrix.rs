//! Dense exact matrices with Gauss-Jordan elimination.

use std::fmt;

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    // row-major; `data.len() == rows` and every row has `cols` entries
    data: Vec<Vec<Scalar>>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        let zero = field.zero();
        Matrix {
            field,
            rows,
            cols,
            data: vec![vec![zero; cols]; rows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix from sparse columns `(row index, value)`.
    pub fn from_sparse_columns(field: Field, rows: usize, columns: &[Vec<(usize, Scalar)>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col {
                if *r >= rows {
                    return Err(Error::DimensionMismatch(format!(
                        "row index {r} out of range for {rows} rows"
                    )));
                }
                m.data[*r][c] = &m.data[*r][c] + v;
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r][c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        self.data.iter().map(|r| r[c].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Scalar::is_zero)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.data[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.data[i][j] = &out.data[i][j] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let mut reduced = self.clone();
        let pivots = reduced.eliminate(self.cols);
        Rref {
            rank: pivots.len(),
            reduced,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let Rref { reduced, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -&reduced.data[row][f];
                }
                v
            })
            .collect()
    }

    /// One exact solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        Ok(self.solve_columns(&[b.to_vec()])?.pop().flatten())
    }

    /// Solves against several right-hand sides at once; each answer is
    /// independent of the others.
    pub fn solve_columns(&self, rhs: &[Vec<Scalar>]) -> Result<Vec<Option<Vec<Scalar>>>> {
        if let Some(bad) = rhs.iter().find(|b| b.len() != self.rows) {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} against {} rows",
                bad.len(),
                self.rows
            )));
        }
        let mut aug = self.clone();
        for (i, row) in aug.data.iter_mut().enumerate() {
            row.extend(rhs.iter().map(|b| b[i].clone()));
        }
        aug.cols += rhs.len();
        let pivots = aug.eliminate(self.cols);
        let rank = pivots.len();
        Ok((0..rhs.len())
            .map(|k| {
                let c = self.cols + k;
                if aug.data[rank..].iter().any(|row| !row[c].is_zero()) {
                    return None;
                }
                let mut x = vec![self.field.zero(); self.cols];
                for (row, &p) in pivots.iter().enumerate() {
                    x[p] = aug.data[row][c].clone();
                }
                Some(x)
            })
            .collect())
    }

    /// Gauss-Jordan elimination choosing pivots among the first
    /// `pivot_cols` columns only; returns the pivot columns.
    fn eliminate(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..pivot_cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !self.data[r][col].is_zero()) else {
                continue;
            };
            self.data.swap(rank, p);
            let inv = self.data[rank][col].inv().expect("pivot is nonzero");
            if !inv.is_one() {
                for v in self.data[rank].iter_mut().skip(col) {
                    if !v.is_zero() {
                        *v = &*v * &inv;
                    }
                }
            }
            let support: Vec<usize> = (col..self.cols).filter(|&j| !self.data[rank][j].is_zero()).collect();
            let pivot_row = std::mem::take(&mut self.data[rank]);
            for (r, row) in self.data.iter_mut().enumerate() {
                if r == rank || row.is_empty() || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for &j in &support {
                    row[j] = &row[j] - &(&factor * &pivot_row[j]);
                }
            }
            self.data[rank] = pivot_row;
            pivots.push(col);
            rank += 1;
        }
        pivots
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix {
        let f = Field::Rational;
        Matrix::from_rows(
            f,
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_has_full_rank_and_no_kernel() {
        let id = Matrix::identity(Field::Rational, 2);
        assert_eq!(id.rank(), 2);
        assert!(id.kernel_basis().is_empty());
        let b = vec![Field::Rational.from_i64(3), Field::Rational.from_i64(-4)];
        assert_eq!(id.solve(&b).unwrap(), Some(b));
    }

    #[test]
    fn proportional_rows_have_rank_one() {
        assert_eq!(q(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_of_row_of_ones() {
        let k = q(&[&[1, 1]]).kernel_basis();
        let f = Field::Rational;
        assert_eq!(k, vec![vec![f.from_i64(-1), f.from_i64(1)]]);
    }

    #[test]
    fn zero_matrix_is_inconsistent_with_nonzero_rhs() {
        let z = Matrix::zeros(Field::Rational, 2, 2);
        let b = vec![Field::Rational.from_i64(1), Field::Rational.zero()];
        assert_eq!(z.solve(&b).unwrap(), None);
    }

    #[test]
    fn solve_rejects_wrong_length() {
        let z = Matrix::zeros(Field::Rational, 2, 2);
        assert!(z.solve(&[Field::Rational.one()]).is_err());
    }

    #[test]
    fn solve_columns_are_independent() {
        // columns (1,0) and (0,1) in a matrix with image span{(1,0)}
        let m = q(&[&[1, 2], &[0, 0]]);
        let f = Field::Rational;
        let got = m
            .solve_columns(&[vec![f.from_i64(0), f.from_i64(1)], vec![f.from_i64(3), f.from_i64(0)]])
            .unwrap();
        assert!(got[0].is_none());
        assert_eq!(got[1], Some(vec![f.from_i64(3), f.zero()]));
    }

    fn arb_matrix() -> impl Strategy<Value = (Field, Vec<Vec<i64>>)> {
        (
            1usize..6,
            1usize..7,
            prop_oneof![Just(Field::Rational), Just(Field::Prime(7))],
        )
            .prop_flat_map(|(r, c, f)| (Just(f), prop::collection::vec(prop::collection::vec(-3i64..4, c), r)))
    }

    fn build(f: Field, rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_rows(
            f,
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    proptest! {
        #[test]
        fn rank_nullity((f, rows) in arb_matrix()) {
            let m = build(f, &rows);
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn solve_reproduces_rhs((f, rows) in arb_matrix(), seed in prop::collection::vec(-3i64..4, 6)) {
            let m = build(f, &rows);
            // rhs inside the column space, so a solution must exist
            let x: Vec<Scalar> = (0..m.cols()).map(|i| f.from_i64(seed[i % seed.len()])).collect();
            let b = m.mul_vec(&x).unwrap();
            let sol = m.solve(&b).unwrap().expect("consistent");
            prop_assert_eq!(m.mul_vec(&sol).unwrap(), b);
        }
    }
}
