//! Matrices of rational functions: products, determinants and triangular
//! inversion, all exact.
//!
//! Determinants clear denominators row by row and then run fraction-free
//! Bareiss elimination on the polynomial matrix; cofactor expansion is used
//! up to size 4 to avoid the bookkeeping for small cases.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ratfun::RationalFunction;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix<C: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<RationalFunction<C>>,
}

impl<C: Scalar> SymMatrix<C> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SymMatrix {
            rows,
            cols,
            data: vec![RationalFunction::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = RationalFunction::one();
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> RationalFunction<C>,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        SymMatrix { rows, cols, data }
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

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeError(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = &out[(i, j)] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Exact determinant. Rational-function entries are handled by clearing a
    /// common denominator per row first.
    pub fn determinant(&self) -> Result<RationalFunction<C>> {
        if !self.is_square() {
            return Err(Error::ShapeError(format!(
                "determinant of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(RationalFunction::one());
        }
        // clear denominators: P[i][j] = num_ij * prod_{k != j} den_ik
        let mut cleared: Vec<Vec<Polynomial<C>>> = Vec::with_capacity(n);
        let mut row_dens: Vec<Polynomial<C>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut p = self[(i, j)].num().clone();
                for k in 0..n {
                    if k != j {
                        p = &p * self[(i, k)].den();
                    }
                }
                row.push(p);
            }
            let mut d = Polynomial::one();
            for j in 0..n {
                d = &d * self[(i, j)].den();
            }
            cleared.push(row);
            row_dens.push(d);
        }
        let det_poly = if n <= 4 {
            det_cofactor(&cleared)
        } else {
            det_bareiss(cleared)
        };
        let mut den = Polynomial::one();
        for d in row_dens {
            den = &den * &d;
        }
        RationalFunction::new(det_poly, den)
    }

    /// Inverse of an upper triangular matrix by back substitution.
    pub fn invert_upper_triangular(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeError(format!(
                "inverse of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        for i in 0..n {
            for j in 0..i {
                if !self[(i, j)].is_zero() {
                    return Err(Error::ShapeError(format!(
                        "entry ({},{}) below the diagonal is nonzero",
                        i + 1,
                        j + 1
                    )));
                }
            }
            if self[(i, i)].is_zero() {
                return Err(Error::SingularMatrix(format!(
                    "zero diagonal entry at {}",
                    i + 1
                )));
            }
        }
        let mut inv = Self::zero(n, n);
        for i in (0..n).rev() {
            let d = self[(i, i)].reciprocal()?;
            inv[(i, i)] = d.clone();
            for j in i + 1..n {
                let mut acc = RationalFunction::zero();
                for k in i + 1..=j {
                    acc = &acc + &(&self[(i, k)] * &inv[(k, j)]);
                }
                inv[(i, j)] = -&(&d * &acc);
            }
        }
        Ok(inv)
    }
}

impl<C: Scalar> std::ops::Index<(usize, usize)> for SymMatrix<C> {
    type Output = RationalFunction<C>;
    fn index(&self, (i, j): (usize, usize)) -> &Self::Output {
        &self.data[i * self.cols + j]
    }
}

impl<C: Scalar> std::ops::IndexMut<(usize, usize)> for SymMatrix<C> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Self::Output {
        &mut self.data[i * self.cols + j]
    }
}

fn det_cofactor<C: Scalar>(m: &[Vec<Polynomial<C>>]) -> Polynomial<C> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = Polynomial::zero();
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial<C>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cof = entry * &det_cofactor(&minor);
        if j % 2 == 0 {
            det = &det + &cof;
        } else {
            det = &det - &cof;
        }
    }
    det
}

/// Fraction-free Gaussian elimination; every division is exact in the
/// polynomial ring.
fn det_bareiss<C: Scalar>(mut m: Vec<Vec<Polynomial<C>>>) -> Polynomial<C> {
    let n = m.len();
    let mut sign_flip = false;
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Polynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Polynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -&det
    } else {
        det
    }
}

/// Rank of a dense scalar matrix by exact Gaussian elimination.
pub fn scalar_rank<C: Scalar>(mut m: Vec<Vec<C>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        let inv = C::one() / m[row][col].clone();
        for c in col..cols {
            m[row][c] = m[row][c].clone() * inv.clone();
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let delta = factor.clone() * m[row][c].clone();
                    m[r][c] = m[r][c].clone() - delta;
                }
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::VarId;
    use crate::{Rat, RatFn};

    fn x(i: u32) -> RatFn {
        RationalFunction::var(VarId(i))
    }

    fn int(n: i64) -> RatFn {
        RationalFunction::constant(Rat::from_integer(n.into()))
    }

    #[test]
    fn small_determinants() {
        // [[e13, e14], [e23, e24]] -> e13*e24 - e14*e23
        let m = SymMatrix::from_fn(2, 2, |i, j| x((2 * i + j) as u32));
        let det = m.determinant().unwrap();
        let expect = &(&x(0) * &x(3)) - &(&x(1) * &x(2));
        assert_eq!(det, expect);
        assert_eq!(SymMatrix::<Rat>::identity(3).determinant().unwrap(), int(1));
        // two equal rows
        let m = SymMatrix::from_fn(
            3,
            3,
            |i, j| if i < 2 { x(j as u32) } else { x(6 + j as u32) },
        );
        assert!(m.determinant().unwrap().is_zero());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        // 5x5 with variable entries on a sparse pattern
        let m = SymMatrix::from_fn(5, 5, |i, j| {
            if (i + 2 * j) % 3 == 0 {
                x((i * 5 + j) as u32)
            } else if i == j {
                int(i as i64 + 1)
            } else {
                RatFn::zero()
            }
        });
        let det = m.determinant().unwrap();
        // cofactor expansion on the same cleared matrix
        let rows: Vec<Vec<_>> = (0..5)
            .map(|i| (0..5).map(|j| m[(i, j)].num().clone()).collect())
            .collect();
        let expect = det_cofactor(&rows);
        assert_eq!(det, RatFn::from_poly(expect));
    }

    #[test]
    fn triangular_inverse() {
        // [[1, b], [0, 1]] -> [[1, -b], [0, 1]]
        let mut m = SymMatrix::identity(2);
        m[(0, 1)] = x(5);
        let inv = m.invert_upper_triangular().unwrap();
        assert_eq!(inv[(0, 1)], -&x(5));
        assert_eq!(m.mul(&inv).unwrap(), SymMatrix::identity(2));
        // [[d1, b], [0, d2]]
        let mut m = SymMatrix::zero(2, 2);
        m[(0, 0)] = x(0);
        m[(0, 1)] = x(5);
        m[(1, 1)] = x(1);
        let inv = m.invert_upper_triangular().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), SymMatrix::identity(2));
        assert_eq!(inv[(0, 1)], (-&x(5)).checked_div(&(&x(0) * &x(1))).unwrap());
        // 1x1
        let mut m = SymMatrix::zero(1, 1);
        m[(0, 0)] = x(7);
        let inv = m.invert_upper_triangular().unwrap();
        assert_eq!(inv[(0, 0)], x(7).reciprocal().unwrap());
        // zero diagonal is singular
        let m = SymMatrix::<Rat>::zero(2, 2);
        assert!(matches!(
            m.invert_upper_triangular(),
            Err(Error::SingularMatrix(_))
        ));
    }

    #[test]
    fn rank_of_scalar_matrix() {
        let one = Rat::from_integer(1.into());
        let two = Rat::from_integer(2.into());
        let m = vec![
            vec![one.clone(), two.clone()],
            vec![two.clone(), &two * &two / &one],
        ];
        assert_eq!(scalar_rank(m), 1);
    }
}
