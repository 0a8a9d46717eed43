//! Exact rational linear algebra: just enough for chirotopes and duality.
//!
//! Determinant signs are computed over the integers with fraction-free
//! (Bareiss) elimination after clearing denominators columnwise; clearing a
//! column by a positive factor does not change any determinant sign.

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::sign::Sign;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix rows have inconsistent lengths")]
    RaggedRows,
    #[error("matrix is not in reduced form (I | A); normalize first")]
    NotReducedForm,
    #[error("leading {0}x{0} block is singular; cannot reduce to (I | A)")]
    SingularLeadingBlock(usize),
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<RationalMatrix, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(LinalgError::RaggedRows);
        }
        Ok(RationalMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zero(rows: usize, cols: usize) -> RationalMatrix {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = BigRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Column `j` as an owned vector.
    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigRational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut out = RationalMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in multiply");
        let mut out = RationalMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    *out.get_mut(i, j) += add;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// True when the matrix literally is `(I_r | A)`.
    pub fn is_reduced_form(&self) -> bool {
        if self.cols < self.rows {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.rows {
                let want = if i == j { BigRational::one() } else { BigRational::zero() };
                if *self.get(i, j) != want {
                    return false;
                }
            }
        }
        true
    }

    /// Row-reduce to `(I_r | A)`. Fails if the leading r x r block is singular.
    pub fn reduce_to_standard(&self) -> Result<RationalMatrix, LinalgError> {
        let r = self.rows;
        if self.cols < r {
            return Err(LinalgError::SingularLeadingBlock(r));
        }
        let mut m = self.clone();
        for col in 0..r {
            let pivot_row = (col..r).find(|&i| !m.get(i, col).is_zero());
            let pivot_row = pivot_row.ok_or(LinalgError::SingularLeadingBlock(r))?;
            if pivot_row != col {
                for j in 0..m.cols {
                    let a = m.get(pivot_row, j).clone();
                    let b = m.get(col, j).clone();
                    *m.get_mut(pivot_row, j) = b;
                    *m.get_mut(col, j) = a;
                }
            }
            let pivot = m.get(col, col).clone();
            for j in 0..m.cols {
                let v = m.get(col, j).clone() / pivot.clone();
                *m.get_mut(col, j) = v;
            }
            for i in 0..r {
                if i == col || m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in 0..m.cols {
                    let sub = factor.clone() * m.get(col, j).clone();
                    *m.get_mut(i, j) -= sub;
                }
            }
        }
        Ok(m)
    }

    /// Rank via rational Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0usize;
        for col in 0..m.cols {
            let pivot = (rank..m.rows).find(|&i| !m.get(i, col).is_zero());
            let Some(p) = pivot else { continue };
            if p != rank {
                for j in 0..m.cols {
                    let a = m.get(p, j).clone();
                    let b = m.get(rank, j).clone();
                    *m.get_mut(p, j) = b;
                    *m.get_mut(rank, j) = a;
                }
            }
            for i in (rank + 1)..m.rows {
                if m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone() / m.get(rank, col).clone();
                for j in col..m.cols {
                    let sub = factor.clone() * m.get(rank, j).clone();
                    *m.get_mut(i, j) -= sub;
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }
}

/// Scale a rational vector by the positive lcm of its denominators.
///
/// The result spans the same ray, so determinant signs of column
/// configurations are unchanged.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num::integer::lcm(lcm, x.denom().abs());
    }
    v.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Exact determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination with row pivoting.
pub fn int_det(mat: &[Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(mat.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<BigInt>> = mat.to_vec();
    let mut sign_flip = false;
    let mut prev_pivot = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let swap = ((k + 1)..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return BigInt::zero(),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev_pivot;
            }
            m[i][k] = BigInt::zero();
        }
        prev_pivot = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip { -det } else { det }
}

/// Determinant sign of a square rational matrix given as columns.
pub fn det_sign_of_columns(cols: &[&[BigRational]]) -> Sign {
    let n = cols.len();
    debug_assert!(cols.iter().all(|c| c.len() == n));
    let int_cols: Vec<Vec<BigInt>> = cols.iter().map(|c| clear_denominators(c)).collect();
    det_sign_of_int_columns(&int_cols.iter().map(|c| c.as_slice()).collect::<Vec<_>>())
}

/// Determinant sign for pre-cleared integer columns.
pub fn det_sign_of_int_columns(cols: &[&[BigInt]]) -> Sign {
    let n = cols.len();
    // Transpose columns into rows; det(M) = det(M^T).
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    let d = int_det(&rows);
    Sign::from_ordering(d.cmp(&BigInt::zero()))
}

/// Exact rational determinant (used by duality checks; signs elsewhere).
pub fn rational_det(m: &RationalMatrix) -> Result<BigRational, LinalgError> {
    if m.rows() != m.cols() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let rows: Vec<Vec<BigInt>> = (0..n).map(|i| clear_denominators(m.row(i))).collect();
    // Each row was scaled by a positive factor; divide the integer result back out.
    let mut scale = BigRational::one();
    for i in 0..n {
        let mut lcm = BigInt::one();
        for x in m.row(i) {
            lcm = num::integer::lcm(lcm, x.denom().abs());
        }
        scale *= BigRational::from_integer(lcm);
    }
    Ok(BigRational::from_integer(int_det(&rows)) / scale)
}

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rational_int(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent determinant oracle: cofactor (Laplace) expansion along the
    /// first row, over rationals, no elimination at all.
    fn cofactor_det(m: &[Vec<BigRational>]) -> BigRational {
        let n = m.len();
        if n == 0 {
            return BigRational::one();
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = BigRational::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<BigRational>> = (1..n)
                .map(|i| {
                    (0..n)
                        .filter(|&k| k != j)
                        .map(|k| m[i][k].clone())
                        .collect()
                })
                .collect();
            let term = m[0][j].clone() * cofactor_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn det_matches_cofactor_oracle_on_fixed_cases() {
        let m = RationalMatrix::from_rows(vec![
            vec![rational(1, 1), rational(2, 3)],
            vec![rational(-1, 2), rational(5, 1)],
        ])
        .unwrap();
        let rows: Vec<Vec<BigRational>> = (0..2).map(|i| m.row(i).to_vec()).collect();
        assert_eq!(rational_det(&m).unwrap(), cofactor_det(&rows));
    }

    #[test]
    fn reduce_to_standard_form() {
        let m = RationalMatrix::from_rows(vec![
            vec![rational_int(2), rational_int(0), rational_int(4)],
            vec![rational_int(1), rational_int(1), rational_int(3)],
        ])
        .unwrap();
        let red = m.reduce_to_standard().unwrap();
        assert!(red.is_reduced_form());
        assert_eq!(*red.get(0, 2), rational_int(2));
        assert_eq!(*red.get(1, 2), rational_int(1));
    }

    #[test]
    fn singular_leading_block_rejected() {
        let m = RationalMatrix::from_rows(vec![
            vec![rational_int(0), rational_int(1)],
            vec![rational_int(0), rational_int(2)],
        ])
        .unwrap();
        assert!(m.reduce_to_standard().is_err());
    }

    #[test]
    fn rank_of_rank_deficient() {
        let m = RationalMatrix::from_rows(vec![
            vec![rational_int(1), rational_int(2)],
            vec![rational_int(2), rational_int(4)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(entries in proptest::collection::vec((-9i64..10, 1i64..5), 16)) {
            let rows: Vec<Vec<BigRational>> = (0..4)
                .map(|i| (0..4).map(|j| rational(entries[4 * i + j].0, entries[4 * i + j].1)).collect())
                .collect();
            let m = RationalMatrix::from_rows(rows.clone()).unwrap();
            prop_assert_eq!(rational_det(&m).unwrap(), cofactor_det(&rows));
        }

        #[test]
        fn det_sign_matches_rational_det(entries in proptest::collection::vec((-6i64..7, 1i64..4), 9)) {
            let cols: Vec<Vec<BigRational>> = (0..3)
                .map(|j| (0..3).map(|i| rational(entries[3 * j + i].0, entries[3 * j + i].1)).collect())
                .collect();
            let col_refs: Vec<&[BigRational]> = cols.iter().map(|c| c.as_slice()).collect();
            let s = det_sign_of_columns(&col_refs);
            let m = RationalMatrix::from_rows(
                (0..3).map(|i| (0..3).map(|j| cols[j][i].clone()).collect()).collect()
            ).unwrap();
            let d = rational_det(&m).unwrap();
            prop_assert_eq!(s, Sign::from_ordering(d.cmp(&BigRational::zero())));
        }
    }
}
