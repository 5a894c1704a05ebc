//! Exact dense matrices and canonical subspaces of graded slices.

pub mod elim;
mod subspace;

pub use elim::SparseVec;
pub use subspace::Subspace;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A rectangular matrix of scalars sharing one field, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Matrix::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, field: Field) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ambient("ragged matrix rows"));
            }
            for v in r {
                if v.field() != field {
                    return Err(Error::FieldMismatch(field, v.field()));
                }
                data.push(v);
            }
        }
        Ok(Matrix { rows: nrows, cols, field, data })
    }

    pub fn from_i64(rows: &[Vec<i64>], field: Field) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Matrix::from_rows(rows, field).expect("rectangular integer matrix")
    }

    /// Builds a `rows x cols` matrix from sparse rows.
    pub fn from_sparse(rows: &[SparseVec], cols: usize, field: Field) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols, field);
        for (i, r) in rows.iter().enumerate() {
            for (c, v) in r {
                m.set(i, *c, v.clone());
            }
        }
        m
    }

    pub fn to_sparse(&self) -> Vec<SparseVec> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "entry field differs from matrix field");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.cols != other.rows {
            return Err(Error::ambient(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form (same shape, zero rows last) and rank.
    pub fn rref(&self) -> (Matrix, usize) {
        let basis = elim::row_reduce(self.field, self.to_sparse(), true);
        let rank = basis.len();
        let mut m = Matrix::from_sparse(&basis, self.cols, self.field);
        m.rows = self.rows;
        m.data.resize(self.rows * self.cols, self.field.zero());
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        elim::rank(self.field, self.to_sparse())
    }

    /// Canonical (reduced row-echelon) basis of `{v : M v = 0}`, one vector per row.
    pub fn kernel(&self) -> Matrix {
        let basis = elim::null_space(self.field, self.cols, self.to_sparse());
        Matrix::from_sparse(&basis, self.cols, self.field)
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::precondition("determinant of a non-square matrix"));
        }
        Ok(match self.field {
            Field::Rational => rational_det(self),
            Field::Prime(_) => gauss_det(self),
        })
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::precondition("inverse of a non-square matrix"));
        }
        let n = self.rows;
        let rows: Vec<SparseVec> = (0..n)
            .map(|i| {
                let mut r: SparseVec = self
                    .row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect();
                r.push((n + i, self.field.one()));
                r
            })
            .collect();
        let red = elim::row_reduce(self.field, rows, true);
        if red.len() < n || red[n - 1][0].0 != n - 1 {
            return Err(Error::precondition("matrix is singular"));
        }
        let mut inv = Matrix::zeros(n, n, self.field);
        for (i, r) in red.iter().enumerate() {
            for (c, v) in r {
                if *c >= n {
                    inv.set(i, c - n, v.clone());
                }
            }
        }
        Ok(inv)
    }
}

/// Bareiss elimination on the denominator-cleared integer matrix.
fn rational_det(m: &Matrix) -> Scalar {
    let n = m.rows;
    if n == 0 {
        return Field::Rational.one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let row = m.row(i);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |l, v| l.lcm(v.as_rational().expect("rational").denom()));
            scale *= &lcm;
            row.iter()
                .map(|v| {
                    let q = v.as_rational().expect("rational");
                    q.numer() * (&lcm / q.denom())
                })
                .collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Field::Rational.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    Scalar::Rational(BigRational::new(sign * &a[n - 1][n - 1], scale))
}

fn gauss_det(m: &Matrix) -> Scalar {
    let n = m.rows;
    let field = m.field;
    let mut a: Vec<Vec<Scalar>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut det = field.one();
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return field.zero();
        };
        if r != k {
            a.swap(k, r);
            det = -det;
        }
        let inv = a[k][k].inv().expect("nonzero pivot");
        det = &det * &a[k][k];
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] * &inv;
            let (top, rest) = a.split_at_mut(i);
            for (x, p) in rest[0][k..n].iter_mut().zip(&top[k][k..n]) {
                *x = &*x - &(&f * p);
            }
        }
    }
    det
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rational;

    #[test]
    fn identity_rref() {
        let id = Matrix::identity(3, Q);
        let (r, rank) = id.rref();
        assert_eq!(r, id);
        assert_eq!(rank, 3);
    }

    #[test]
    fn rank_one() {
        let m = Matrix::from_i64(&[vec![1, 2], vec![2, 4]], Q);
        assert_eq!(m.rank(), 1);
        let (r, _) = m.rref();
        assert_eq!(r, Matrix::from_i64(&[vec![1, 2], vec![0, 0]], Q));
    }

    #[test]
    fn quadric_coefficient_rank() {
        // {z^2, xz, xy} over the basis x^2, xy, xz, y^2, yz, z^2
        let m = Matrix::from_i64(
            &[vec![0, 0, 0, 0, 0, 1], vec![0, 0, 1, 0, 0, 0], vec![0, 1, 0, 0, 0, 0]],
            Q,
        );
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn kernels() {
        let zero = Matrix::zeros(2, 3, Q);
        assert_eq!(zero.kernel(), Matrix::identity(3, Q));
        let full = Matrix::from_i64(&[vec![2, 1], vec![1, 1]], Q);
        assert_eq!(full.kernel().rows(), 0);
        let m = Matrix::from_i64(&[vec![1, 2, 3]], Q);
        let k = m.kernel();
        assert_eq!(k.rows(), 2);
        assert!(m.checked_mul(&k.transpose()).unwrap().to_sparse().iter().all(Vec::is_empty));
    }

    #[test]
    fn determinants_and_inverse() {
        let m = Matrix::from_i64(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]], Q);
        assert_eq!(m.determinant().unwrap(), Q.from_i64(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.checked_mul(&inv).unwrap(), Matrix::identity(3, Q));
        let f7 = Field::Prime(7);
        let mp = Matrix::from_i64(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]], f7);
        assert_eq!(mp.determinant().unwrap(), f7.from_i64(18));
        assert!(Matrix::from_i64(&[vec![1, 2], vec![2, 4]], Q).inverse().is_err());
    }

    fn small_matrix(field: Field) -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..7).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r)
                .prop_map(move |rows| Matrix::from_i64(&rows, field))
        })
    }

    proptest! {
        #[test]
        fn rank_of_transpose(m in small_matrix(Q)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_nullity(m in small_matrix(Q)) {
            prop_assert_eq!(m.kernel().rows() + m.rank(), m.cols());
        }

        #[test]
        fn rref_idempotent(m in small_matrix(Field::Prime(5))) {
            let (r, rank) = m.rref();
            let (rr, rank2) = r.rref();
            prop_assert_eq!(r, rr);
            prop_assert_eq!(rank, rank2);
        }

        #[test]
        fn rref_canonical_under_row_mixing(m in small_matrix(Q), seed in 0i64..5) {
            // left-multiplying by an invertible lower-triangular matrix keeps the row space
            let n = m.rows();
            let mut l = Matrix::identity(n, Q);
            for i in 0..n {
                for j in 0..i {
                    l.set(i, j, Q.from_i64((i as i64 + 2 * j as i64 + seed) % 5 - 2));
                }
            }
            let mixed = l.checked_mul(&m).unwrap();
            prop_assert_eq!(mixed.rref(), m.rref());
        }

        #[test]
        fn determinant_matches_elimination(m in small_matrix(Q)) {
            let k = m.rows().min(m.cols());
            let sq = Matrix::from_rows((0..k).map(|i| m.row(i)[..k].to_vec()).collect(), Q).unwrap();
            let det = sq.determinant().unwrap();
            prop_assert_eq!(det.is_zero(), sq.rank() < k);
        }
    }
}
