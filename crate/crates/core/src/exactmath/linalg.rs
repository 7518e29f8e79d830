use num_traits::{One, Signed, Zero};

use super::rational::{rat, QVector, Rational};
use crate::error::{Error, Result};

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<QVector>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().copied().map(rat).collect())
                .collect(),
        )
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<QVector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has length {}",
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Symmetric bilinear form `xᵀ M y`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        let my = self.mul_vec(y)?;
        if x.len() != my.len() {
            return Err(Error::DimensionMismatch("bilinear form arguments".into()));
        }
        Ok(x.iter()
            .zip(&my)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b))
    }

    /// Square submatrix on the given row/column indices.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "determinant of non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &pivot;
                for c in col..n {
                    let v = &a[(col, c)] * &f;
                    a[(r, c)] -= v;
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Exact solution of `M x = b` for square nonsingular `M`.
pub fn solve_linear(m: &QMatrix, b: &[Rational]) -> Result<QVector> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "solve_linear needs a square matrix".into(),
        ));
    }
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, right-hand side has length {}",
            m.rows(),
            m.cols(),
            b.len()
        )));
    }
    let (rank, x) = row_reduce_solve(m, b);
    if rank < m.rows() {
        return Err(Error::Singular);
    }
    Ok(x.expect("full-rank square system is consistent"))
}

/// Some solution of a possibly over- or under-determined system, or `None` if
/// it is inconsistent. Free variables are set to zero.
pub fn solve_system(m: &QMatrix, b: &[Rational]) -> Result<Option<QVector>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch("right-hand side length".into()));
    }
    Ok(row_reduce_solve(m, b).1)
}

pub fn rank(m: &QMatrix) -> usize {
    row_reduce_solve(m, &vec![Rational::zero(); m.rows()]).0
}

/// Gauss-Jordan on `[M | b]`. Returns the rank of `M` and a particular
/// solution when the system is consistent.
fn row_reduce_solve(m: &QMatrix, b: &[Rational]) -> (usize, Option<QVector>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = QMatrix::zeros(rows, cols + 1);
    for i in 0..rows {
        for j in 0..cols {
            a[(i, j)] = m[(i, j)].clone();
        }
        a[(i, cols)] = b[i].clone();
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a[(r, c)].recip();
        for j in c..=cols {
            a[(r, j)] *= &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..=cols {
                let v = &a[(r, j)] * &f;
                a[(i, j)] -= v;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let rank = pivots.len();
    if (rank..rows).any(|i| !a[(i, cols)].is_zero()) {
        return (rank, None);
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[(i, cols)].clone();
    }
    (rank, Some(x))
}

/// Leading principal minors `det M[..k, ..k]` for `k = 1..=n`.
pub fn leading_minors(m: &QMatrix) -> Result<Vec<Rational>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "leading minors of non-square matrix".into(),
        ));
    }
    (1..=m.rows())
        .map(|k| {
            m.principal_submatrix(&(0..k).collect::<Vec<_>>())
                .determinant()
        })
        .collect()
}

/// Sylvester's criterion for negative definiteness: `(-1)^k Δ_k > 0` for all `k`.
pub fn is_negative_definite(m: &QMatrix) -> Result<bool> {
    Ok(first_failing_minor(m)?.is_none())
}

/// The first leading minor (1-based order and value) that violates the
/// negative-definite sign pattern.
pub fn first_failing_minor(m: &QMatrix) -> Result<Option<(usize, Rational)>> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    for (k, minor) in leading_minors(m)?.into_iter().enumerate() {
        let order = k + 1;
        let signed = if order % 2 == 1 {
            -minor.clone()
        } else {
            minor.clone()
        };
        if !signed.is_positive() {
            return Ok(Some((order, minor)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::qvec;

    fn mat(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn solve_examples() {
        assert_eq!(
            solve_linear(&QMatrix::identity(2), &qvec(&[3, 4])).unwrap(),
            qvec(&[3, 4])
        );
        assert_eq!(
            solve_linear(&mat(&[&[-3, 1], &[1, -2]]), &qvec(&[5, 0])).unwrap(),
            qvec(&[-2, -1])
        );
        assert_eq!(
            solve_linear(&mat(&[&[-2]]), &qvec(&[0])).unwrap(),
            qvec(&[0])
        );
    }

    #[test]
    fn solve_errors() {
        assert!(matches!(
            solve_linear(&mat(&[&[1, 2], &[2, 4]]), &qvec(&[1, 1])),
            Err(Error::Singular)
        ));
        assert!(matches!(
            solve_linear(&mat(&[&[1, 2]]), &qvec(&[1])),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            solve_linear(&QMatrix::identity(2), &qvec(&[1])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn negative_definite_examples() {
        assert!(is_negative_definite(&mat(&[&[-2]])).unwrap());
        assert!(is_negative_definite(&mat(&[&[-3, 1], &[1, -2]])).unwrap());
        assert!(!is_negative_definite(&mat(&[&[-1, 2], &[2, -1]])).unwrap());
        assert!(matches!(
            is_negative_definite(&mat(&[&[-1, 2], &[0, -1]])),
            Err(Error::NotSymmetric)
        ));
        let fail = first_failing_minor(&mat(&[&[-2, 2], &[2, -2]]))
            .unwrap()
            .unwrap();
        assert_eq!(fail, (2, rat(0)));
    }

    #[test]
    fn overdetermined_systems() {
        // rays of the quadric cone against the linear form 2x1 + x2 + 2x3
        let rays = mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -1]]);
        assert_eq!(
            solve_system(&rays, &qvec(&[2, 1, 2, 1])).unwrap(),
            Some(qvec(&[2, 1, 2]))
        );
        assert_eq!(solve_system(&rays, &qvec(&[1, 1, 1, 0])).unwrap(), None);
        assert_eq!(rank(&rays), 3);
    }

    #[test]
    fn determinant_matches_minor() {
        assert_eq!(mat(&[&[-3, 1], &[1, -2]]).determinant().unwrap(), rat(5));
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).determinant().unwrap(), rat(-1));
    }
}
