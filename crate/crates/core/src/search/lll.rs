//! Floating-point LLL on small integer column vectors.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

const DELTA: f64 = 0.99;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Gs {
    norm: Vec<f64>,
    mu: Vec<Vec<f64>>,
}

fn gram_schmidt(b: &[Vec<i64>]) -> Gs {
    let n = b.len();
    let mut star: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut norm = vec![0.0; n];
    let mut mu = vec![vec![0.0; n]; n];
    for i in 0..n {
        let bi: Vec<f64> = b[i].iter().map(|&x| x as f64).collect();
        let mut s = bi.clone();
        for j in 0..i {
            mu[i][j] = if norm[j] > 0.0 { dot(&bi, &star[j]) / norm[j] } else { 0.0 };
            for (x, y) in s.iter_mut().zip(&star[j]) {
                *x -= mu[i][j] * y;
            }
        }
        norm[i] = dot(&s, &s);
        star.push(s);
    }
    Gs { norm, mu }
}

fn reduce_i64(b: &mut [Vec<i64>]) -> Option<()> {
    let n = b.len();
    if n < 2 {
        return Some(());
    }
    let mut gs = gram_schmidt(b);
    let mut k = 1;
    let mut steps = 0usize;
    while k < n {
        steps += 1;
        if steps > 100_000 {
            break;
        }
        for j in (0..k).rev() {
            let q = gs.mu[k][j].round();
            if q != 0.0 {
                let qi = q as i64;
                let (lo, hi) = b.split_at_mut(k);
                for (x, y) in hi[0].iter_mut().zip(&lo[j]) {
                    *x = x.checked_sub(qi.checked_mul(*y)?)?;
                }
                for l in 0..=j {
                    let m = if l == j { 1.0 } else { gs.mu[j][l] };
                    gs.mu[k][l] -= q * m;
                }
            }
        }
        let lhs = gs.norm[k];
        let rhs = (DELTA - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.norm[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            gs = gram_schmidt(b);
            k = (k - 1).max(1);
        }
    }
    Some(())
}

/// LLL-reduce columns in place; falls back to leaving them untouched when
/// entries do not fit in `i64`.
pub(crate) fn lll_reduce(cols: &mut [Vec<BigInt>]) {
    let small: Option<Vec<Vec<i64>>> = cols
        .iter()
        .map(|c| c.iter().map(ToPrimitive::to_i64).collect())
        .collect();
    let Some(mut b) = small else {
        return;
    };
    if reduce_i64(&mut b).is_some() {
        for (c, v) in cols.iter_mut().zip(b) {
            *c = v.into_iter().map(BigInt::from).collect();
        }
    }
}
