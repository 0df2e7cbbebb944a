//! Exact kernels of the pencil `ω·A − Aᵀ` over the cyclotomic field `Q(ω)`,
//! `ω` a primitive `m`-th root of unity.
//!
//! Kernel vectors are computed from images in `F_p` (one per Galois
//! embedding), interpolated, lifted by CRT and rational reconstruction, and
//! only returned after an exact check in `Z[x]/Φ_m`. A rank lower bound comes
//! from the same modular images, so the nullity found is exact.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::IntPoly;
use super::{IntMatrix, LinalgError};

/// Primes tried before giving up.
const MAX_PRIMES: usize = 400;

/// A verified basis of `ker(ω·A − Aᵀ)`; entries are integer polynomials in
/// `ω` of degree below `φ(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicKernel {
    pub order: usize,
    pub basis: Vec<Vec<IntPoly>>,
}

impl CyclotomicKernel {
    pub fn nullity(&self) -> usize {
        self.basis.len()
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Primes `p ≡ 1 (mod m)` below `2^62`, descending.
struct PrimeStream {
    m: u64,
    t: u64,
}

impl PrimeStream {
    fn new(m: u64) -> Self {
        PrimeStream {
            m,
            t: ((1u64 << 62) - 1) / m,
        }
    }
}

impl Iterator for PrimeStream {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while self.t > 0 {
            let p = 1 + self.m * self.t;
            self.t -= 1;
            if is_prime(p) {
                return Some(p);
            }
        }
        None
    }
}

/// A primitive `m`-th root of unity in `F_p`, `m | p − 1`.
fn primitive_root_of_unity(m: u64, p: u64) -> u64 {
    let fs = prime_factors(m);
    (2..p)
        .map(|x| pow_mod(x, (p - 1) / m, p))
        .find(|&r| fs.iter().all(|&l| pow_mod(r, m / l, p) != 1))
        .expect("p ≡ 1 mod m has primitive m-th roots")
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(a: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, k);
        let inv = inv_mod(a[r][c], p);
        for x in a[r][c..].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = (*x + p - mul_mod(f, y, p)) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.try_into().expect("residue fits")
}

/// Inverse of the Vandermonde matrix at `xs`, so that coefficients are
/// `c = V⁻¹ y` with `y_k = Σ c_j xs_k^j`.
fn vandermonde_inverse(xs: &[u64], p: u64) -> Vec<Vec<u64>> {
    let n = xs.len();
    let mut aug: Vec<Vec<u64>> = xs
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            let mut row: Vec<u64> = (0..n).map(|j| pow_mod(x, j as u64, p)).collect();
            row.extend((0..n).map(|j| u64::from(j == k)));
            row
        })
        .collect();
    let piv = rref(&mut aug, p);
    debug_assert_eq!(piv.len(), n);
    aug.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Kernel data of one prime: pivot columns, free columns, and per kernel
/// vector the residues of each coefficient of each pivot entry.
struct ModImage {
    pivots: Vec<usize>,
    /// `coeffs[f][i][j]`: coefficient of `ω^j` in entry for pivot `i` of the
    /// kernel vector attached to free column `f`.
    coeffs: Vec<Vec<Vec<u64>>>,
}

fn mod_image(a: &IntMatrix, m: usize, p: u64) -> Option<ModImage> {
    let n = a.rows();
    let r = primitive_root_of_unity(m as u64, p);
    let units: Vec<usize> = (1..=m).filter(|&k| num_integer::gcd(k, m) == 1).collect();
    let xs: Vec<u64> = units.iter().map(|&k| pow_mod(r, k as u64, p)).collect();
    let ar: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| reduce(&a[(i, j)], p)).collect())
        .collect();
    let mut pattern: Option<Vec<usize>> = None;
    // values[k][f][i]
    let mut values = Vec::with_capacity(xs.len());
    for &x in &xs {
        let mut mx: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (mul_mod(x, ar[i][j], p) + p - ar[j][i]) % p)
                    .collect()
            })
            .collect();
        let piv = rref(&mut mx, p);
        match &pattern {
            None => pattern = Some(piv.clone()),
            Some(q) if *q != piv => return None,
            _ => {}
        }
        let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
        let vals: Vec<Vec<u64>> = free
            .iter()
            .map(|&f| piv.iter().enumerate().map(|(i, _)| (p - mx[i][f]) % p).collect())
            .collect();
        values.push(vals);
    }
    let pivots = pattern.unwrap_or_default();
    let vinv = vandermonde_inverse(&xs, p);
    let nfree = n - pivots.len();
    let phi = xs.len();
    let coeffs = (0..nfree)
        .map(|f| {
            (0..pivots.len())
                .map(|i| {
                    (0..phi)
                        .map(|j| {
                            (0..phi).fold(0u64, |acc, k| {
                                (acc + mul_mod(vinv[j][k], values[k][f][i], p)) % p
                            })
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Some(ModImage { pivots, coeffs })
}

/// `a/b` with `a ≡ b·x (mod modulus)` and `|a|, b ≤ sqrt(modulus/2)`.
fn rational_reconstruction(x: &BigInt, modulus: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (modulus / 2u32).sqrt();
    let (mut r0, mut r1) = (modulus.clone(), x.mod_floor(modulus));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if t1.sign() == Sign::Minus {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// Exact check of `(ω·A − Aᵀ)·v ≡ 0 (mod Φ_m)`.
fn annihilates(a: &IntMatrix, v: &[IntPoly], phi_m: &IntPoly) -> bool {
    let n = a.rows();
    (0..n).all(|i| {
        let mut acc = IntPoly::default();
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            let (s, t) = (&a[(i, j)], &a[(j, i)]);
            if !s.is_zero() {
                acc = &acc + &vj.shift_up(1).scale(s);
            }
            if !t.is_zero() {
                acc = &acc - &vj.scale(t);
            }
        }
        acc.rem_monic(phi_m).is_zero()
    })
}

/// Lift accumulated residues to integer kernel vectors, if possible.
fn lift(
    residues: &[Vec<Vec<BigInt>>],
    modulus: &BigInt,
    pivots: &[usize],
    n: usize,
) -> Option<Vec<Vec<IntPoly>>> {
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::with_capacity(free.len());
    for (fi, &f) in free.iter().enumerate() {
        let mut fracs: Vec<Vec<(BigInt, BigInt)>> = Vec::with_capacity(pivots.len());
        for entry in &residues[fi] {
            let mut fs = Vec::with_capacity(entry.len());
            for x in entry {
                fs.push(rational_reconstruction(x, modulus)?);
            }
            fracs.push(fs);
        }
        let den = fracs
            .iter()
            .flatten()
            .fold(BigInt::one(), |l, (_, d)| l.lcm(d));
        let mut v = vec![IntPoly::default(); n];
        v[f] = IntPoly::constant(den.clone());
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = IntPoly::new(fracs[i].iter().map(|(a, d)| a * (&den / d)).collect());
        }
        out.push(v);
    }
    Some(out)
}

/// Exact kernel of `ω·A − Aᵀ` for `ω` a primitive `order`-th root of unity.
///
/// Returns `None` when the modular lift has not stabilised within the prime
/// budget; the result is never unverified.
pub fn pencil_kernel(a: &IntMatrix, order: usize) -> Result<Option<CyclotomicKernel>, LinalgError> {
    let n = a.size()?;
    assert!(order >= 1);
    if n == 0 {
        return Ok(Some(CyclotomicKernel {
            order,
            basis: Vec::new(),
        }));
    }
    let phi_m = IntPoly::cyclotomic(order);
    let mut best: Option<Vec<usize>> = None;
    let mut residues: Vec<Vec<Vec<BigInt>>> = Vec::new();
    let mut modulus = BigInt::one();
    for p in PrimeStream::new(order as u64).take(MAX_PRIMES) {
        let Some(img) = mod_image(a, order, p) else {
            continue;
        };
        let better = match &best {
            None => true,
            Some(b) => img.pivots.len() > b.len() || (img.pivots.len() == b.len() && img.pivots < *b),
        };
        if better {
            best = Some(img.pivots.clone());
            residues = img
                .coeffs
                .iter()
                .map(|v| v.iter().map(|e| e.iter().map(|&c| BigInt::from(c)).collect()).collect())
                .collect();
            modulus = BigInt::from(p);
        } else if best.as_ref() == Some(&img.pivots) {
            let pb = BigInt::from(p);
            let inv = BigInt::from(inv_mod(reduce(&modulus, p), p));
            for (rv, iv) in residues.iter_mut().zip(&img.coeffs) {
                for (re, ie) in rv.iter_mut().zip(iv) {
                    for (x, &c) in re.iter_mut().zip(ie) {
                        let diff = (BigInt::from(c) - &*x).mod_floor(&pb);
                        let k = (diff * &inv).mod_floor(&pb);
                        *x += &modulus * k;
                    }
                }
            }
            modulus *= &pb;
        } else {
            continue;
        }
        let pivots = best.as_ref().unwrap();
        if let Some(basis) = lift(&residues, &modulus, pivots, n) {
            if basis.iter().all(|v| annihilates(a, v, &phi_m)) {
                return Ok(Some(CyclotomicKernel { order, basis }));
            }
        }
    }
    Ok(None)
}
