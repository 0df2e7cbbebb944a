//! Column-style Hermite reduction: integer kernels and integer solutions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Result of reducing `A` by unimodular column operations: `A · U = H`, with
/// `H` in column echelon form. Pivot `k` sits in row `pivot_rows[k]` of column `k`
/// and is positive; columns at and beyond `rank` of `H` vanish.
#[derive(Clone, Debug)]
pub struct ColumnHermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivot_rows: Vec<usize>,
}

impl ColumnHermite {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// A basis of the integer kernel of `A`. The lattice it spans is saturated.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.u.cols()).map(|j| self.u.column(j)).collect()
    }
}

fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    // column dst -= q * column src
    for i in 0..m.rows() {
        let s = &m[(i, src)];
        if !s.is_zero() {
            let d = &m[(i, src)] * q;
            m[(i, dst)] -= d;
        }
    }
}

fn col_swap(m: &mut IntMatrix, a: usize, b: usize) {
    for i in 0..m.rows() {
        let x = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = x;
    }
}

fn col_neg(m: &mut IntMatrix, a: usize) {
    for i in 0..m.rows() {
        let x = -m[(i, a)].clone();
        m[(i, a)] = x;
    }
}

pub fn column_hermite(a: &IntMatrix) -> ColumnHermite {
    let (rows, cols) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(cols);
    let mut pivot_rows = Vec::new();
    let mut c = 0;
    for i in 0..rows {
        if c == cols {
            break;
        }
        loop {
            // smallest nonzero entry of row i among the active columns
            let best = (c..cols)
                .filter(|&j| !h[(i, j)].is_zero())
                .min_by(|&x, &y| h[(i, x)].abs().cmp(&h[(i, y)].abs()));
            let Some(p) = best else { break };
            if p != c {
                col_swap(&mut h, p, c);
                col_swap(&mut u, p, c);
            }
            let mut done = true;
            for j in c + 1..cols {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = h[(i, j)].div_floor(&h[(i, c)]);
                col_axpy(&mut h, j, c, &q);
                col_axpy(&mut u, j, c, &q);
                if !h[(i, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(i, c)].is_zero() {
            continue;
        }
        if h[(i, c)].is_negative() {
            col_neg(&mut h, c);
            col_neg(&mut u, c);
        }
        // keep entries left of the pivot reduced
        for j in 0..c {
            let q = h[(i, j)].div_floor(&h[(i, c)]);
            if !q.is_zero() {
                col_axpy(&mut h, j, c, &q);
                col_axpy(&mut u, j, c, &q);
            }
        }
        pivot_rows.push(i);
        c += 1;
    }
    ColumnHermite { h, u, pivot_rows }
}

/// Integer kernel of `a` (solutions of `a·x = 0`), as a saturated basis.
pub fn kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    column_hermite(a).kernel()
}

/// An integer solution of `a·x = b`, if one exists.
pub fn solve_linear(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), a.rows());
    let ch = column_hermite(a);
    solve_with(&ch, b)
}

/// Integer solution of `A·x = b` from a precomputed reduction of `A`.
pub fn solve_with(ch: &ColumnHermite, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let h = &ch.h;
    let cols = h.cols();
    let mut y = vec![BigInt::zero(); cols];
    for (k, &r) in ch.pivot_rows.iter().enumerate() {
        let mut acc = b[r].clone();
        for (j, yj) in y.iter().enumerate().take(k) {
            if !yj.is_zero() {
                acc -= &h[(r, j)] * yj;
            }
        }
        let (q, rem) = acc.div_rem(&h[(r, k)]);
        if !rem.is_zero() {
            return None;
        }
        y[k] = q;
    }
    // every row must now be satisfied
    let hy = h.apply(&y);
    if hy.as_slice() != b {
        return None;
    }
    Some(ch.u.apply(&y))
}

pub fn gcd_of(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// True when the entries of `v` have greatest common divisor one.
pub fn is_primitive(v: &[BigInt]) -> bool {
    gcd_of(v).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 6, 1], vec![1, 3, 5, 0]]);
        let ker = kernel(&a);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(a.apply(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn saturated_kernel() {
        // kernel of (2 2) is spanned by (1,-1), not (2,-2)
        let a = IntMatrix::from_rows(&[vec![2, 2]]);
        let ker = kernel(&a);
        assert_eq!(ker.len(), 1);
        assert!(is_primitive(&ker[0]));
    }

    #[test]
    fn integer_solutions() {
        let a = IntMatrix::from_rows(&[vec![3, 5], vec![1, 2]]);
        let x = solve_linear(&a, &big(&[1, 0])).unwrap();
        assert_eq!(a.apply(&x), big(&[1, 0]));
        let b = IntMatrix::from_rows(&[vec![2, 4]]);
        assert!(solve_linear(&b, &big(&[1])).is_none());
        let c = IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(solve_linear(&c, &big(&[1, 2])).is_none());
    }
}
