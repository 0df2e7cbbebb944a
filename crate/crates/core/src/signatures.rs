//! Levine-Tristram signatures and nullities of Seifert forms.
//!
//! `θ ∈ (0, 1]` parameterizes `ω = exp(iπθ)`. Signs of eigenvalues away from
//! zero are read off a floating point Hermitian eigensolver with an error
//! bound; the nullity is computed exactly in `Q(ω)` whenever the solver
//! reports eigenvalues near zero, and the sample is rejected unless the two
//! agree.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Complex, DMatrix};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::BraidWord;
use crate::linalg::{pencil_kernel, IntMatrix, LinalgError};
use crate::seifert::{seifert_matrix, SeifertError};

/// Relative tolerance below which an eigenvalue counts as possibly zero.
pub const EIGEN_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("theta {0} is not in (0, 1]")]
    ThetaOutOfRange(String),
    #[error("cannot parse theta {0:?}")]
    BadTheta(String),
    #[error("profile resolution must be at least 1")]
    BadResolution,
    #[error("could not certify the signature at theta = {0}")]
    Uncertified(Theta),
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A reduced fraction `num/den` in `(0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Theta {
    num: u64,
    den: u64,
}

impl Theta {
    pub fn new(num: u64, den: u64) -> Result<Theta, SignatureError> {
        if den == 0 || num == 0 || num > den {
            return Err(SignatureError::ThetaOutOfRange(format!("{num}/{den}")));
        }
        let g = num_integer::gcd(num, den);
        Ok(Theta {
            num: num / g,
            den: den / g,
        })
    }

    pub fn one() -> Theta {
        Theta { num: 1, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Multiplicative order of `ω = exp(iπθ)`.
    pub fn order(&self) -> u64 {
        2 * self.den / num_integer::gcd(self.num, 2 * self.den)
    }

    /// Whether the order of `ω` is a prime power.
    pub fn prime_power_order(&self) -> bool {
        let mut m = self.order();
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                while m.is_multiple_of(d) {
                    m /= d;
                }
                return m == 1;
            }
            d += 1;
        }
        m > 1
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Theta {
    type Err = SignatureError;
    fn from_str(s: &str) -> Result<Theta, SignatureError> {
        let bad = || SignatureError::BadTheta(s.to_string());
        let (a, b) = match s.trim().split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        Theta::new(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)
    }
}

impl Serialize for Theta {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Theta {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Theta, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Signature and nullity at one `θ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureSample {
    pub theta: Theta,
    pub sigma: i64,
    pub nullity: usize,
}

fn hermitian(s: &IntMatrix, theta: Theta) -> DMatrix<Complex<f64>> {
    let n = s.rows();
    let x = std::f64::consts::PI * theta.to_f64();
    let w = Complex::new(x.cos(), x.sin());
    let one = Complex::new(1.0, 0.0);
    let (a, b) = (one - w, one - w.conj());
    let f = |i: usize, j: usize| s[(i, j)].to_f64().expect("finite entry");
    DMatrix::from_fn(n, n, |i, j| a * f(i, j) + b * f(j, i))
}

/// Signature and nullity of `(1−ω)S + (1−ω̄)Sᵀ`.
pub fn lt_signature(s: &IntMatrix, theta: Theta) -> Result<SignatureSample, SignatureError> {
    let n = s.size()?;
    if n == 0 {
        return Ok(SignatureSample {
            theta,
            sigma: 0,
            nullity: 0,
        });
    }
    let h = hermitian(s, theta);
    let tol = EIGEN_TOL * h.norm().max(1.0);
    let eig = h.symmetric_eigenvalues();
    let pos = eig.iter().filter(|&&l| l > tol).count();
    let neg = eig.iter().filter(|&&l| l < -tol).count();
    let near_zero = n - pos - neg;
    let sigma = pos as i64 - neg as i64;
    if near_zero == 0 {
        return Ok(SignatureSample {
            theta,
            sigma,
            nullity: 0,
        });
    }
    // H is a nonzero multiple of ω·S − Sᵀ.
    let kernel = pencil_kernel(s, theta.order() as usize)?.ok_or(SignatureError::Uncertified(theta))?;
    if kernel.nullity() != near_zero {
        return Err(SignatureError::Uncertified(theta));
    }
    Ok(SignatureSample {
        theta,
        sigma,
        nullity: near_zero,
    })
}

/// Samples at the midpoints `θ = (2k−1)/(2N)`, `k = 1..N`.
pub fn lt_profile(s: &IntMatrix, n: u64) -> Result<Vec<SignatureSample>, SignatureError> {
    if n == 0 {
        return Err(SignatureError::BadResolution);
    }
    let thetas: Vec<Theta> = (1..=n)
        .map(|k| Theta::new(2 * k - 1, 2 * n).expect("midpoint in range"))
        .collect();
    sample_all(s, &thetas)
}

fn sample_all(s: &IntMatrix, thetas: &[Theta]) -> Result<Vec<SignatureSample>, SignatureError> {
    thetas.par_iter().map(|&t| lt_signature(s, t)).collect()
}

/// CSV rendering with columns `theta_num,theta_den,sigma,nullity`.
pub fn profile_csv(samples: &[SignatureSample]) -> String {
    let mut out = String::from("theta_num,theta_den,sigma,nullity\n");
    for s in samples {
        out.push_str(&format!("{},{},{},{}\n", s.theta.num, s.theta.den, s.sigma, s.nullity));
    }
    out
}

/// How a lower bound was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMode {
    Knot,
    /// The link inequality with nullity, used at `θ` where the nullity is
    /// nonzero only if the order of `ω` is a prime power.
    TableReproduction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceBound {
    pub value: u64,
    pub witness: Option<SignatureSample>,
    pub mode: BoundMode,
}

/// `⌈(|σ| − c + 1 + µ)/2⌉`, clamped at zero.
pub fn sample_bound(sample: &SignatureSample, components: usize) -> u64 {
    let v = sample.sigma.unsigned_abs() as i64 + 1 + sample.nullity as i64 - components as i64;
    if v <= 0 {
        0
    } else {
        (v as u64).div_ceil(2)
    }
}

/// Default sampling resolution for a word: `2·strands·length`, a multiple of
/// `2pq` for the standard torus words.
pub fn default_resolution(w: &BraidWord) -> u64 {
    (2 * w.strands() * w.len()).max(1) as u64
}

/// Lower bound on the slice genus from signatures sampled at resolution `n`.
///
/// The samples are the profile midpoints plus every `θ = k/n` at which `ω`
/// has prime power order. Samples with positive nullity at other roots of
/// unity are skipped.
pub fn slice_lower_bound_at(w: &BraidWord, n: u64) -> Result<SliceBound, SignatureError> {
    if n == 0 {
        return Err(SignatureError::BadResolution);
    }
    let data = seifert_matrix(w)?;
    let c = data.stats.components;
    let mut thetas: Vec<Theta> = (1..=n)
        .map(|k| Theta::new(2 * k - 1, 2 * n).expect("midpoint in range"))
        .collect();
    thetas.extend(
        (1..=n)
            .map(|k| Theta::new(k, n).expect("grid point in range"))
            .filter(Theta::prime_power_order),
    );
    let samples = sample_all(&data.matrix, &thetas)?;
    let best = samples
        .iter()
        .filter(|s| s.nullity == 0 || s.theta.prime_power_order())
        .map(|s| (sample_bound(s, c), s))
        .max_by_key(|(v, s)| (*v, std::cmp::Reverse(s.theta)));
    let mode = if c == 1 {
        BoundMode::Knot
    } else {
        BoundMode::TableReproduction
    };
    Ok(match best {
        Some((value, s)) if value > 0 => SliceBound {
            value,
            witness: Some(*s),
            mode,
        },
        _ => SliceBound {
            value: 0,
            witness: None,
            mode,
        },
    })
}

pub fn slice_lower_bound(w: &BraidWord) -> Result<u64, SignatureError> {
    Ok(slice_lower_bound_at(w, default_resolution(w))?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::torus;

    fn sig(p: usize, q: usize, a: u64, b: u64) -> SignatureSample {
        let s = seifert_matrix(&torus(p, q).unwrap()).unwrap().matrix;
        lt_signature(&s, Theta::new(a, b).unwrap()).unwrap()
    }

    #[test]
    fn theta_parsing_and_order() {
        assert_eq!("6/8".parse::<Theta>().unwrap(), Theta::new(3, 4).unwrap());
        assert_eq!("1".parse::<Theta>().unwrap(), Theta::one());
        assert!("0".parse::<Theta>().is_err());
        assert!("5/4".parse::<Theta>().is_err());
        assert_eq!(Theta::one().order(), 2);
        assert_eq!(Theta::new(4, 5).unwrap().order(), 5);
        assert_eq!(Theta::new(1, 3).unwrap().order(), 6);
        assert!(Theta::new(4, 5).unwrap().prime_power_order());
        assert!(!Theta::new(1, 3).unwrap().prime_power_order());
    }

    #[test]
    fn classical_trefoil() {
        let s = sig(2, 3, 1, 1);
        assert_eq!((s.sigma.abs(), s.nullity), (2, 0));
    }

    #[test]
    fn examples_from_torus_knots() {
        assert_eq!(sig(4, 5, 4, 5).sigma.abs(), 10);
        assert_eq!(sig(3, 7, 6, 7).sigma.abs(), 10);
    }

    #[test]
    fn nullity_at_a_root() {
        // The trefoil form degenerates at ω = exp(iπ/3).
        let s = sig(2, 3, 1, 3);
        assert_eq!(s.nullity, 1);
        assert_eq!(s.sigma.abs(), 1);
    }

    #[test]
    fn profile_shape() {
        let s = seifert_matrix(&torus(2, 3).unwrap()).unwrap().matrix;
        let p = lt_profile(&s, 1).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].theta, Theta::new(1, 2).unwrap());
        assert!(profile_csv(&p).starts_with("theta_num,theta_den,sigma,nullity\n1,2,"));
        assert!(lt_profile(&s, 0).is_err());
    }

    #[test]
    fn torus_bounds() {
        assert_eq!(slice_lower_bound(&torus(2, 3).unwrap()).unwrap(), 1);
        assert_eq!(slice_lower_bound(&torus(4, 5).unwrap()).unwrap(), 5);
    }

    #[test]
    fn tilde_x_link() {
        let w = BraidWord::parse("a1 a3 a2^2 a1 a3 a2^3", 4).unwrap();
        let b = slice_lower_bound_at(&w, default_resolution(&w)).unwrap();
        assert_eq!(b.value, 1);
        assert_eq!(b.mode, BoundMode::TableReproduction);
    }
}
