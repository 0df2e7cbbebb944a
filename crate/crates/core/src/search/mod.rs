//! Randomized search for Alexander-trivial subgroups of a Seifert form,
//! certificates for them, and their composition.
//!
//! One level of the search picks a primitive isotropic `v`, a `w` with
//! `vᵀAw = 1` and `wᵀAv = 0`, and recurses on the saturated lattice
//! `U = {u : vᵀAu = uᵀAv = uᵀAw = 0}`. The output `(v, v₁, …, w, w₁, …)`
//! restricts `A` to `[[0, I], [N, *]]` with `N` strictly upper triangular.

mod certificate;
mod compose;
mod lll;
mod store;

pub use certificate::{
    genus_upper_bound, transport, Check, DefectCertificate, Origin, VerificationReport,
};
pub use compose::{compose_plumb, compose_plumb_with, compose_product, first_occurrences};
pub use store::{default_store_path, CertStore, StoreError, STORE_ENV};

use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::BraidWord;
use crate::linalg::{column_hermite, gcd_of, IntMatrix, LinalgError};
use crate::seifert::SeifertError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("certificate does not verify: {0}")]
    Unverified(String),
    #[error("certificate is for {found}, expected {expected}")]
    WrongWord { expected: String, found: String },
    #[error("{0} is not a subword of the target word")]
    NotSubword(String),
    #[error("block form precondition fails: {0}")]
    BlockForm(String),
    #[error("first half of the basis is not supported on the first {0} letters")]
    Support(usize),
    #[error("matrix is not Alexander-trivial")]
    NotAlexanderTrivial,
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Attempt caps for the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Isotropic vector draws per level.
    pub vector_draws: u32,
    /// `w` candidates per isotropic `v`.
    pub w_draws: u32,
    /// Isotropic `v` with a solvable `w` considered per level before taking
    /// the best candidate seen.
    pub v_candidates: u32,
    /// Local search steps spent improving each isotropic vector.
    pub climb_steps: u32,
    /// Independent runs; the best result wins.
    pub restarts: u32,
    /// Stop as soon as a run reaches this rank.
    pub target_rank: Option<u32>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            vector_draws: 10_000,
            w_draws: 200,
            v_candidates: 256,
            climb_steps: 2000,
            restarts: 8,
            target_rank: None,
        }
    }
}

/// Matrices with at most this many rows get an exhaustive first pass.
pub const EXHAUSTIVE_DIM: usize = 8;
const EXHAUSTIVE_RANGE: i64 = 2;

/// `i64` copy of a form, for the isotropy test in the draw loop.
struct Form64 {
    d: usize,
    a: Vec<i64>,
}

impl Form64 {
    fn new(m: &IntMatrix) -> Option<Form64> {
        let rows = m.to_i64_rows()?;
        Some(Form64 {
            d: m.rows(),
            a: rows.into_iter().flatten().collect(),
        })
    }

    fn q(&self, v: &[i64]) -> i128 {
        let mut acc = 0i128;
        for i in 0..self.d {
            if v[i] == 0 {
                continue;
            }
            let row = &self.a[i * self.d..(i + 1) * self.d];
            let s: i128 = row.iter().zip(v).map(|(&x, &y)| x as i128 * y as i128).sum();
            acc += v[i] as i128 * s;
        }
        acc
    }
}

fn quadratic(m: &IntMatrix, v: &[BigInt]) -> BigInt {
    m.pair(v, v)
}

/// `min(n₊, n₋)` of the Hermitian form of `m` at each `θ`.
fn balance(m: &IntMatrix, thetas: &[f64]) -> Vec<usize> {
    let d = m.rows();
    if d == 0 {
        return vec![0; thetas.len()];
    }
    let f: Vec<f64> = (0..d * d)
        .map(|k| m[(k / d, k % d)].to_f64().unwrap_or(f64::MAX))
        .collect();
    thetas
        .iter()
        .map(|&t| {
            let x = std::f64::consts::PI * t;
            let w = Complex::new(x.cos(), x.sin());
            let one = Complex::new(1.0, 0.0);
            let h = DMatrix::from_fn(d, d, |i, j| (one - w) * f[i * d + j] + (one - w.conj()) * f[j * d + i]);
            let tol = 1e-13 * h.norm().max(1.0);
            let eig = h.symmetric_eigenvalues();
            let pos = eig.iter().filter(|&&l| l > tol).count();
            let neg = eig.iter().filter(|&&l| l < -tol).count();
            pos.min(neg)
        })
        .collect()
}

/// Capacity of a form: the least `min(n₊, n₋)` of its Hermitian forms over
/// the probe angles. An Alexander-trivial subgroup of rank `2k` splits off
/// a nondegenerate summand of signature `(k, k)` at every `θ`, so this
/// bounds the further levels reachable.
fn capacity(m: &IntMatrix, thetas: &[f64]) -> usize {
    balance(m, thetas).into_iter().min().unwrap_or(m.rows())
}

/// Probe angles for a search on `s`: the points of a fine midpoint grid at
/// which `s` is within one of its tightest balance, plus `θ = 1`.
fn probe_angles(s: &IntMatrix) -> Vec<f64> {
    let n = (2 * s.rows()).max(24);
    let grid: Vec<f64> = (1..=n).map(|k| (2 * k - 1) as f64 / (2 * n) as f64).chain([1.0]).collect();
    let b = balance(s, &grid);
    let least = b.iter().copied().min().unwrap_or(0);
    grid.into_iter()
        .zip(b)
        .filter(|&(t, c)| c <= least + 1 || t == 1.0)
        .map(|(t, _)| t)
        .collect()
}

/// Predicts the capacity of `U` from `v` alone.
///
/// With `v` isotropic, `U` is `v`'s orthogonal complement for every `θ`
/// cut by one more hyperplane, dual to `y = M_θ⁻¹·Av`. Its balance is that
/// of the ambient form minus one on each side, minus one more on the side
/// of the sign of `(Av)* M_θ⁻¹ (Av)`.
struct Predictor {
    /// `A·Z` for the sublattice basis `Z`.
    az: DMatrix<f64>,
    probes: Vec<Probe>,
}

struct Probe {
    inv: DMatrix<Complex<f64>>,
    pos: usize,
    neg: usize,
}

impl Probe {
    fn after(&self, f: f64) -> usize {
        let up = usize::from(f > 0.0);
        self.pos.saturating_sub(1 + up).min(self.neg.saturating_sub(2 - up))
    }
}

impl Predictor {
    fn new(a: &IntMatrix, z: &IntMatrix, thetas: &[f64]) -> Option<Predictor> {
        let d = a.rows();
        let f = DMatrix::from_fn(d, d, |i, j| a[(i, j)].to_f64().unwrap_or(f64::MAX));
        let zf = DMatrix::from_fn(d, z.cols(), |i, j| z[(i, j)].to_f64().unwrap_or(f64::MAX));
        let mut probes = Vec::new();
        for &t in thetas {
            let x = std::f64::consts::PI * t;
            let w = Complex::new(x.cos(), x.sin());
            let one = Complex::new(1.0, 0.0);
            let h = DMatrix::from_fn(d, d, |i, j| (one - w) * f[(i, j)] + (one - w.conj()) * f[(j, i)]);
            let tol = 1e-13 * h.norm().max(1.0);
            let eig = h.clone().symmetric_eigenvalues();
            let pos = eig.iter().filter(|&&l| l > tol).count();
            let neg = eig.iter().filter(|&&l| l < -tol).count();
            if let Some(inv) = h.try_inverse() {
                probes.push(Probe { inv, pos, neg });
            }
        }
        (!probes.is_empty()).then_some(Predictor { az: &f * zf, probes })
    }

    fn values(&self, y: &[i64]) -> Vec<f64> {
        let yf = nalgebra::DVector::from_iterator(y.len(), y.iter().map(|&x| x as f64));
        let z = (&self.az * yf).map(|x| Complex::new(x, 0.0));
        let n2 = z.norm_squared().max(1.0);
        self.probes
            .iter()
            .map(|p| (z.adjoint() * &p.inv * &z)[(0, 0)].re / n2)
            .collect()
    }

    /// Predicted capacity of `U` for `v = Z·y`.
    fn score(&self, y: &[i64]) -> usize {
        self.probes
            .iter()
            .zip(self.values(y))
            .map(|(p, f)| p.after(f))
            .min()
            .unwrap_or(0)
    }

    /// Predicted capacity and the least signed margin over the angles that
    /// would fall below `target` on the wrong side.
    fn margin(&self, y: &[i64], target: usize) -> (usize, f64) {
        let mut guess = usize::MAX;
        let mut margin = f64::INFINITY;
        for (p, f) in self.probes.iter().zip(self.values(y)) {
            guess = guess.min(p.after(f));
            if p.pos != p.neg && p.after(-f) < target.max(1) || p.after(f) < target {
                let sign = if p.pos > p.neg { 1.0 } else { -1.0 };
                margin = margin.min(sign * f);
            }
        }
        (guess, margin)
    }
}

/// Entry bound for vectors produced by [`climb`].
const CLIMB_MAX: i64 = 1 << 8;

/// Local search over isotropic vectors for one the predictor likes.
///
/// The moves `y ↦ q(u)·y − (yᵀGu)·u` with `G = A + Aᵀ` keep `y` isotropic.
fn climb(
    q: &Form64,
    p: &Predictor,
    mut y: Vec<i64>,
    target: usize,
    steps: u32,
    rng: &mut ChaCha8Rng,
) -> Vec<i64> {
    let e = q.d;
    let (mut guess, mut margin) = p.margin(&y, target);
    for _ in 0..steps {
        if guess >= target {
            break;
        }
        let mut u = vec![0i64; e];
        u[rng.gen_range(0..e)] = 1;
        if rng.gen_bool(0.5) {
            let j = rng.gen_range(0..e);
            u[j] += if rng.gen_bool(0.5) { 1 } else { -1 };
        }
        let qu = q.q(&u);
        if qu == 0 {
            continue;
        }
        let b: i128 = (0..e)
            .map(|i| {
                (0..e)
                    .map(|j| (q.a[i * e + j] as i128 + q.a[j * e + i] as i128) * y[i] as i128 * u[j] as i128)
                    .sum::<i128>()
            })
            .sum();
        let next: Vec<i128> = y.iter().zip(&u).map(|(&a, &c)| qu * a as i128 - b * c as i128).collect();
        let g = next.iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
        if g == 0 {
            continue;
        }
        let Some(next) = next.iter().map(|&x| i64::try_from(x / g).ok().filter(|v| v.abs() < CLIMB_MAX)).collect::<Option<Vec<i64>>>() else {
            continue;
        };
        let (ng, nm) = p.margin(&next, target);
        if ng > guess || (ng == guess && nm > margin) || rng.gen_bool(0.02) {
            debug_assert_eq!(q.q(&next), 0);
            y = next;
            guess = ng;
            margin = nm;
        }
    }
    y
}

struct Level {
    v: Vec<BigInt>,
    w: Vec<BigInt>,
    /// Reduced ambient basis of `U`.
    k: IntMatrix,
    form: IntMatrix,
    score: usize,
}

fn row_times(a: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    // vᵀA
    a.transpose().apply(v)
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Cursor over exhaustive then random coefficient vectors.
struct VectorStream {
    exhaustive: Vec<Vec<i64>>,
    negative: Vec<Vec<i64>>,
    next: usize,
    drawn: u32,
    cap: u32,
    e: usize,
}

impl VectorStream {
    fn new(q: Option<&Form64>, e: usize, cap: u32, rng: &mut ChaCha8Rng) -> Self {
        let mut exhaustive = Vec::new();
        if let (Some(q), true) = (q, e <= EXHAUSTIVE_DIM && e > 0) {
            let width = (2 * EXHAUSTIVE_RANGE + 1) as usize;
            let total = width.pow(e as u32);
            for code in 0..total {
                let mut c = code;
                let y: Vec<i64> = (0..e)
                    .map(|_| {
                        let x = (c % width) as i64 - EXHAUSTIVE_RANGE;
                        c /= width;
                        x
                    })
                    .collect();
                // one representative per ± pair, primitive only
                let Some(&first) = y.iter().find(|&&x| x != 0) else {
                    continue;
                };
                if first < 0 || y.iter().fold(0i64, |g, &x| num_integer::gcd(g, x)) != 1 {
                    continue;
                }
                if q.q(&y) == 0 {
                    exhaustive.push(y);
                }
            }
            exhaustive.shuffle(rng);
        }
        let negative = q.map(negative_pool).unwrap_or_default();
        VectorStream {
            exhaustive,
            negative,
            next: 0,
            drawn: 0,
            cap,
            e,
        }
    }

    fn next(&mut self, q: Option<&Form64>, rng: &mut ChaCha8Rng) -> Option<Vec<i64>> {
        if self.next < self.exhaustive.len() {
            self.next += 1;
            return Some(self.exhaustive[self.next - 1].clone());
        }
        if self.drawn >= self.cap || self.e == 0 {
            return None;
        }
        // coefficient range escalates 1 → 2 → 3 over the draw budget
        let c = 1 + (3 * self.drawn / self.cap.max(1)) as i64;
        self.drawn += 1;
        let Some(q) = q else {
            return Some((0..self.e).map(|_| rng.gen_range(-c..=c)).collect());
        };
        let v = if self.negative.is_empty() {
            sparse_isotropic(q, self.e, c, rng)
        } else {
            let n = &self.negative[rng.gen_range(0..self.negative.len())];
            plane_isotropic(q, n, c, rng)
        };
        Some(v.unwrap_or_else(|| vec![0; self.e]))
    }
}

fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Short integer vectors with `q < 0`, from rounded multiples of the
/// eigenvectors of negative eigenvalues of the symmetrized form.
fn negative_pool(q: &Form64) -> Vec<Vec<i64>> {
    let d = q.d;
    let sym = DMatrix::from_fn(d, d, |i, j| (q.a[i * d + j] + q.a[j * d + i]) as f64 / 2.0);
    let eig = sym.symmetric_eigen();
    let mut pool: Vec<Vec<i64>> = Vec::new();
    for (k, &l) in eig.eigenvalues.iter().enumerate() {
        if l >= -1e-9 {
            continue;
        }
        let u = eig.eigenvectors.column(k);
        let top = u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let mut found = 0;
        let scales = (1..=16).chain((5..=20).map(|b| 1 << b));
        for scale in scales {
            if found >= 4 {
                break;
            }
            let f = scale as f64 / (2.0 * top);
            let y: Vec<i64> = u.iter().map(|x| (x * f).round() as i64).collect();
            let g = y.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
            if g == 0 {
                continue;
            }
            let y: Vec<i64> = y.iter().map(|x| x / g).collect();
            if q.q(&y) < 0 && !pool.contains(&y) {
                pool.push(y);
                found += 1;
            }
        }
    }
    pool
}

/// Isotropic vector in the plane of a random `y` and a negative vector `n`:
/// `q(s·y + t·n) = 0` has rational solutions when the discriminant is a
/// square.
fn plane_isotropic(q: &Form64, n: &[i64], c: i64, rng: &mut ChaCha8Rng) -> Option<Vec<i64>> {
    let e = n.len();
    let size = rng.gen_range(1..=e);
    let mut idx: Vec<usize> = (0..e).collect();
    idx.shuffle(rng);
    let mut y = vec![0i64; e];
    for &i in &idx[..size] {
        y[i] = rng.gen_range(-c..=c);
    }
    let d = q.d;
    let qn = q.q(n);
    let qy = q.q(&y);
    let b: i128 = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (q.a[i * d + j] as i128 + q.a[j * d + i] as i128) * y[i] as i128 * n[j] as i128)
                .sum::<i128>()
        })
        .sum();
    let r = isqrt(b.checked_mul(b)?.checked_sub(4 * qn * qy)?)?;
    let t = if rng.gen_bool(0.5) { -b + r } else { -b - r };
    let s = 2 * qn;
    let v: Vec<i128> = y.iter().zip(n).map(|(&a, &m)| s * a as i128 + t * m as i128).collect();
    let g = v.iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
    if g == 0 {
        return None;
    }
    let v: Option<Vec<i64>> = v.iter().map(|&x| i64::try_from(x / g).ok()).collect();
    let v = v?;
    debug_assert_eq!(q.q(&v), 0);
    Some(v)
}

/// Draw coefficients on a random small support and solve `q = 0` for the
/// last support coordinate, if it has an integer root.
fn sparse_isotropic(q: &Form64, e: usize, c: i64, rng: &mut ChaCha8Rng) -> Option<Vec<i64>> {
    let size = rng.gen_range(2..=e.clamp(2, 6)).min(e);
    let mut idx: Vec<usize> = (0..e).collect();
    idx.shuffle(rng);
    idx.truncate(size);
    let pivot = idx[size - 1];
    let mut y = vec![0i64; e];
    for &i in &idx[..size - 1] {
        y[i] = rng.gen_range(-c..=c);
    }
    let d = q.d;
    let a = q.a[pivot * d + pivot] as i128;
    let b: i128 = (0..d)
        .filter(|&j| j != pivot)
        .map(|j| (q.a[pivot * d + j] as i128 + q.a[j * d + pivot] as i128) * y[j] as i128)
        .sum();
    let c0 = q.q(&y);
    let x = if a == 0 {
        if b == 0 || c0 % b != 0 {
            return None;
        }
        -c0 / b
    } else {
        let r = isqrt(b * b - 4 * a * c0)?;
        let mut roots = [-b + r, -b - r];
        if rng.gen_bool(0.5) {
            roots.swap(0, 1);
        }
        let num = roots.into_iter().find(|n| n % (2 * a) == 0)?;
        num / (2 * a)
    };
    y[pivot] = i64::try_from(x).ok()?;
    if y.iter().all(|&t| t == 0) {
        return None;
    }
    debug_assert_eq!(q.q(&y), 0);
    Some(y)
}

fn choose_level(
    thetas: &[f64],
    s: &IntMatrix,
    k: &IntMatrix,
    a: &IntMatrix,
    support: Option<&IntMatrix>,
    budget: &SearchBudget,
    rng: &mut ChaCha8Rng,
) -> Option<Level> {
    let d = a.rows();
    if d < 2 {
        return None;
    }
    // v = z·y with z a basis of the allowed sublattice
    let z = support.cloned().unwrap_or_else(|| IntMatrix::identity(d));
    let e = z.cols();
    if e == 0 {
        return None;
    }
    let zaz = a.congruence(&z).ok()?;
    let q64 = Form64::new(&zaz);
    let target = capacity(a, thetas).saturating_sub(1);
    let predictor = Predictor::new(a, &z, thetas);
    let mut stream = VectorStream::new(q64.as_ref(), e, budget.vector_draws, rng);
    let mut best_guess = 0;
    let mut best: Option<Level> = None;
    let mut best_kernel: Vec<Vec<BigInt>> = Vec::new();
    let mut candidates = 0;
    while let Some(y) = stream.next(q64.as_ref(), rng) {
        if y.iter().all(|&x| x == 0) {
            continue;
        }
        let isotropic = match &q64 {
            Some(q) => q.q(&y) == 0,
            None => quadratic(&zaz, &to_big(&y)).is_zero(),
        };
        if !isotropic {
            continue;
        }
        let y = match (&q64, &predictor) {
            (Some(q), Some(p)) if p.score(&y) < target => climb(q, p, y, target, budget.climb_steps, rng),
            _ => y,
        };
        let mut v = z.apply(&to_big(&y));
        let g = gcd_of(&v);
        if !g.is_one() {
            v.iter_mut().for_each(|x| *x = &*x / &g);
        }
        if let Some(p) = &predictor {
            let guess = p.score(&y);
            if guess < target && (best.is_some() && guess <= best_guess) {
                continue;
            }
            best_guess = best_guess.max(guess);
        }
        let r1 = row_times(a, &v);
        let r2 = a.apply(&v);
        let sys = IntMatrix::from_rows(&[r1.clone(), r2.clone()]);
        let ch = column_hermite(&sys);
        let Some(w0) = crate::linalg::solve_with(&ch, &[BigInt::one(), BigInt::zero()]) else {
            continue;
        };
        candidates += 1;
        // the signature of A on U only depends on v
        let (amb, form) = reduced_complement(s, k, a, &r1, &r2, &w0)?;
        let score = capacity(&form, thetas);
        if best.as_ref().is_none_or(|b| score > b.score) {
            best = Some(Level {
                v: v.clone(),
                w: w0,
                k: amb,
                form,
                score,
            });
            best_kernel = ch.kernel();
        }
        if score >= target || candidates >= budget.v_candidates {
            break;
        }
    }
    // among the solutions w, prefer one giving the smallest form on U
    if let Some(level) = best.as_mut() {
        let r1 = row_times(a, &level.v);
        let r2 = a.apply(&level.v);
        let mut size = max_entry_bits(&level.form);
        for _ in 1..budget.w_draws.max(1) {
            if best_kernel.is_empty() {
                break;
            }
            let mut w = level.w.clone();
            let terms = rng.gen_range(1..=3.min(best_kernel.len()));
            for _ in 0..terms {
                let kv = &best_kernel[rng.gen_range(0..best_kernel.len())];
                let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
                for (x, y) in w.iter_mut().zip(kv) {
                    *x += y * c;
                }
            }
            let Some((amb, form)) = reduced_complement(s, k, a, &r1, &r2, &w) else {
                continue;
            };
            let bits = max_entry_bits(&form);
            if bits < size {
                size = bits;
                level.w = w;
                level.k = amb;
                level.form = form;
            }
        }
    }
    best
}

/// LLL-reduced ambient basis of `U = {vᵀAu = uᵀAv = uᵀAw = 0}` and the
/// form of `s` on it.
fn reduced_complement(
    s: &IntMatrix,
    k: &IntMatrix,
    a: &IntMatrix,
    r1: &[BigInt],
    r2: &[BigInt],
    w: &[BigInt],
) -> Option<(IntMatrix, IntMatrix)> {
    let sys = IntMatrix::from_rows(&[r1.to_vec(), r2.to_vec(), a.apply(w)]);
    let u = IntMatrix::from_columns(a.rows(), &column_hermite(&sys).kernel());
    let mut amb = k.mul(&u).ok()?.columns();
    lll::lll_reduce(&mut amb);
    let amb = IntMatrix::from_columns(s.rows(), &amb);
    let form = s.congruence(&amb).ok()?;
    Some((amb, form))
}

fn max_entry_bits(m: &IntMatrix) -> u64 {
    let n = m.rows();
    (0..n * m.cols()).map(|i| m[(i / m.cols(), i % m.cols())].bits()).max().unwrap_or(0)
}

/// Ambient coordinates of the lattice points whose entries vanish outside
/// `allowed`, as a basis in the coordinates of `k`.
fn support_basis(k: &IntMatrix, allowed: &[bool]) -> IntMatrix {
    let outside: Vec<usize> = (0..k.rows()).filter(|&i| !allowed[i]).collect();
    let d = k.cols();
    if outside.is_empty() {
        return IntMatrix::identity(d);
    }
    let rows: Vec<usize> = outside;
    let all: Vec<usize> = (0..d).collect();
    let restricted = k.select(&rows, &all);
    let basis = column_hermite(&restricted).kernel();
    IntMatrix::from_columns(d, &basis)
}

/// One randomized run: returns basis columns `(v…, w…)` in ambient
/// coordinates.
fn run_once(
    thetas: &[f64],
    s: &IntMatrix,
    allowed: Option<&[bool]>,
    budget: &SearchBudget,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<BigInt>> {
    let n = s.rows();
    let mut k = IntMatrix::identity(n);
    let mut form = s.clone();
    let mut vs = Vec::new();
    let mut ws = Vec::new();
    let mut cap = capacity(s, thetas);
    while cap > 0 {
        let support = allowed.map(|a| support_basis(&k, a));
        let Some(level) = choose_level(thetas, s, &k, &form, support.as_ref(), budget, rng) else {
            break;
        };
        vs.push(k.apply(&level.v));
        ws.push(k.apply(&level.w));
        k = level.k;
        form = level.form;
        cap = level.score;
        // this run can no longer reach the target
        if budget.target_rank.is_some_and(|t| 2 * (vs.len() + cap) < t as usize) {
            break;
        }
    }
    vs.extend(ws);
    vs
}

/// Search for an Alexander-trivial subgroup of the form `s`.
///
/// When `support` is given, the first half of the basis only uses the
/// listed coordinates. Deterministic in `(s, seed, budget, support)`.
pub fn find_alexander_trivial_with(
    s: &IntMatrix,
    seed: u64,
    budget: &SearchBudget,
    support: Option<&[usize]>,
) -> Result<IntMatrix, SearchError> {
    let n = s.size()?;
    let allowed: Option<Vec<bool>> = support.map(|idx| {
        let mut a = vec![false; n];
        for &i in idx {
            a[i] = true;
        }
        a
    });
    let thetas = probe_angles(s);
    let bound = 2 * capacity(s, &thetas);
    let mut best: Vec<Vec<BigInt>> = Vec::new();
    for r in 0..budget.restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let cols = run_once(&thetas, s, allowed.as_deref(), budget, &mut rng);
        if cols.len() > best.len() {
            best = cols;
        }
        let done = budget
            .target_rank
            .map_or(best.len() >= bound, |t| best.len() >= t as usize);
        if done {
            break;
        }
    }
    Ok(IntMatrix::from_columns(n, &best))
}

/// Search for an Alexander-trivial subgroup; empty when none is found.
pub fn find_alexander_trivial(s: &IntMatrix, seed: u64, budget: &SearchBudget) -> Result<IntMatrix, SearchError> {
    find_alexander_trivial_with(s, seed, budget, None)
}

/// Search on the canonical surface of `w` and package a verified certificate.
pub fn search(w: &BraidWord, seed: u64, budget: &SearchBudget) -> Result<DefectCertificate, SearchError> {
    search_with_support(w, seed, budget, None)
}

/// Like [`search`], with the first half of the basis supported on the
/// prefix of `prefix` letters.
pub fn search_with_support(
    w: &BraidWord,
    seed: u64,
    budget: &SearchBudget,
    prefix: Option<usize>,
) -> Result<DefectCertificate, SearchError> {
    let data = crate::seifert::seifert_matrix(w)?;
    let support = prefix.map(|k| data.prefix_bricks(k));
    let basis = find_alexander_trivial_with(&data.matrix, seed, budget, support.as_deref())?;
    let mut cert = DefectCertificate::for_word(w, basis, Origin::Search { seed, budget: *budget })?;
    cert.support_prefix = prefix;
    Ok(cert)
}

/// Re-seeding schedule: seeds `seed, seed + 1, ...` until a certificate of
/// rank at least `target` is found, for at most `1 + retries` attempts.
///
/// Returns the best certificate seen; its `seed` records the attempt used.
pub fn search_retrying(
    w: &BraidWord,
    seed: u64,
    budget: &SearchBudget,
    prefix: Option<usize>,
    target: usize,
    retries: u32,
) -> Result<DefectCertificate, SearchError> {
    let budget = SearchBudget {
        target_rank: Some(target as u32),
        ..*budget
    };
    let mut best: Option<DefectCertificate> = None;
    for k in 0..=retries as u64 {
        let cert = search_with_support(w, seed + k, &budget, prefix)?;
        let reached = cert.rank() >= target;
        if best.as_ref().is_none_or(|b| cert.rank() > b.rank()) {
            best = Some(cert);
        }
        if reached {
            break;
        }
    }
    Ok(best.expect("at least one attempt"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_isotropic_vector() {
        let s = IntMatrix::from_rows(&[vec![1]]);
        let b = find_alexander_trivial(&s, 0, &SearchBudget::default()).unwrap();
        assert_eq!(b.cols(), 0);
    }

    #[test]
    fn capacity_of_hyperbolic_plane() {
        let s = IntMatrix::from_rows(&[vec![0, 1], vec![0, 0]]);
        assert_eq!(capacity(&s, &probe_angles(&s)), 1);
        let b = find_alexander_trivial(&s, 1, &SearchBudget::default()).unwrap();
        assert_eq!(b.cols(), 2);
    }
}
