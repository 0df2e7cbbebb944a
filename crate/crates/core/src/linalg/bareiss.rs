//! Fraction-free Gaussian elimination over integral domains with exact division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::IntPoly;
use super::{IntMatrix, LinalgError};

/// The operations Bareiss elimination needs from its coefficient ring.
pub trait ExactRing: Clone {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Division known to be exact.
    fn div_exact(&self, other: &Self) -> Self;
    /// Pivot preference; smaller is better.
    fn weight(&self) -> usize;
}

impl ExactRing for BigInt {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        debug_assert!(Zero::is_zero(&r), "inexact division in Bareiss step");
        q
    }
    fn weight(&self) -> usize {
        self.bits() as usize
    }
}

impl ExactRing for IntPoly {
    fn zero_elem() -> Self {
        IntPoly::default()
    }
    fn one_elem() -> Self {
        IntPoly::constant(BigInt::one())
    }
    fn is_zero_elem(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn div_exact(&self, other: &Self) -> Self {
        IntPoly::div_exact(self, other).expect("inexact division in Bareiss step")
    }
    fn weight(&self) -> usize {
        self.coeffs().len()
    }
}

/// Determinant of a square matrix given as rows.
pub fn determinant<R: ExactRing>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    let mut sign_flip = false;
    let mut prev = R::one_elem();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !m[i][k].is_zero_elem())
            .min_by_key(|&i| m[i][k].weight());
        let Some(p) = pivot else {
            return R::zero_elem();
        };
        if p != k {
            m.swap(p, k);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev);
            }
            m[i][k] = R::zero_elem();
        }
        prev = m[k][k].clone();
    }
    let det = if n == 0 { R::one_elem() } else { m[n - 1][n - 1].clone() };
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

pub fn det_int(m: &IntMatrix) -> Result<BigInt, LinalgError> {
    m.size()?;
    Ok(determinant(m.to_rows()))
}

/// `det(t·A − Aᵀ)` as a polynomial in `t`.
pub fn alexander_det(a: &IntMatrix) -> Result<IntPoly, LinalgError> {
    let n = a.size()?;
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| IntPoly::new(vec![-a[(j, i)].clone(), a[(i, j)].clone()]))
                .collect()
        })
        .collect();
    Ok(determinant(rows))
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    let mut rows = m.to_rows();
    let (r, c) = (m.rows(), m.cols());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..c {
        let Some(p) = (rank..r).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(p, rank);
        for i in rank + 1..r {
            for j in col + 1..c {
                let v = &rows[i][j] * &rows[rank][col] - &rows[i][col] * &rows[rank][j];
                rows[i][j] = v.div_exact(&prev);
            }
            rows[i][col] = BigInt::zero();
        }
        prev = rows[rank][col].clone();
        rank += 1;
        if rank == r {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_determinants() {
        let m = IntMatrix::from_rows(&[vec![0, 2, 1], vec![3, 0, 1], vec![1, 1, 0]]);
        // expansion: 0 - 2*(0-1) + 1*(3-0) = 5
        assert_eq!(det_int(&m).unwrap(), BigInt::from(5));
        assert_eq!(det_int(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::from(1));
        let s = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(det_int(&s).unwrap(), BigInt::from(0));
    }

    #[test]
    fn trefoil_form() {
        let a = IntMatrix::from_rows(&[vec![-1, 1], vec![0, -1]]);
        let p = alexander_det(&a).unwrap();
        assert_eq!(p, IntPoly::from_i64(&[1, -1, 1]));
    }

    #[test]
    fn rank_of_rectangular() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(rank(&m), 2);
    }
}
