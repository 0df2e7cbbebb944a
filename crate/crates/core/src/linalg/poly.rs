use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{from_dec, to_dec, DecInt};

/// Integer polynomial in one variable, coefficients stored lowest degree first
/// with no trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c · t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `t^k - 1`.
    pub fn t_pow_minus_one(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[k] += BigInt::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Lowest `k` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Divides out `t^k`; the low coefficients must be zero.
    pub fn shift_down(&self, k: usize) -> IntPoly {
        debug_assert!(self.coeffs.iter().take(k).all(Zero::is_zero));
        IntPoly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Coefficients reversed: `t^deg · p(1/t)`.
    pub fn reversed(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    /// Exact division. Returns `None` if `divisor` does not divide `self` in `Z[t]`.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let d = divisor.degree()?;
        if self.is_zero() {
            return Some(IntPoly::default());
        }
        let n = self.degree().unwrap();
        if n < d {
            return None;
        }
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - d + 1];
        for k in (0..=n - d).rev() {
            let c = &rem[k + d];
            if c.is_zero() {
                continue;
            }
            let (q, r) = c.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + i] -= &q * dc;
                }
            }
            quot[k] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(IntPoly::new(quot))
        } else {
            None
        }
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, m: &IntPoly) -> IntPoly {
        let d = m.degree().expect("nonzero modulus");
        debug_assert!(m.leading().is_some_and(One::is_one));
        let mut c = self.coeffs.clone();
        while c.len() > d {
            let k = c.len() - 1 - d;
            let lead = c.pop().unwrap();
            if !lead.is_zero() {
                for (i, mc) in m.coeffs[..d].iter().enumerate() {
                    if !mc.is_zero() {
                        c[k + i] -= &lead * mc;
                    }
                }
            }
        }
        IntPoly::new(c)
    }

    /// Multiplication by `t^k`.
    pub fn shift_up(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::default();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        IntPoly::new(c)
    }

    /// The cyclotomic polynomial `Φ_m`.
    pub fn cyclotomic(m: usize) -> IntPoly {
        assert!(m >= 1);
        let mut p = IntPoly::t_pow_minus_one(m);
        for d in 1..m {
            if m.is_multiple_of(d) {
                p = p.div_exact(&IntPoly::cyclotomic(d)).expect("cyclotomic factor");
            }
        }
        p
    }

    pub fn eval_i64(&self, t: i64) -> BigInt {
        let t = BigInt::from(t);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &t + c)
    }

    /// Normal form up to units `±t^k`: lowest coefficient moved to degree zero
    /// and made positive. Returns the form and the unit removed.
    pub fn normalize(&self) -> (IntPoly, Unit) {
        let Some(v) = self.valuation() else {
            return (IntPoly::default(), Unit { sign: 1, shift: 0 });
        };
        let p = self.shift_down(v);
        let sign = if p.coeffs[0].is_negative() { -1 } else { 1 };
        let p = if sign < 0 { -p } else { p };
        (
            p,
            Unit {
                sign,
                shift: v as i64,
            },
        )
    }

    pub fn is_symmetric(&self) -> bool {
        let (p, _) = self.normalize();
        p == p.reversed()
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - rhs.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        to_dec(&self.coeffs).serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(IntPoly::new(from_dec(Vec::<DecInt>::deserialize(d)?)))
    }
}

/// A unit `sign · t^shift` of `Z[t, 1/t]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unit {
    pub sign: i8,
    pub shift: i64,
}

/// Alexander polynomial of a Seifert form, kept both as computed and in normal form.
///
/// `normalized = sign · raw / t^shift`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderPolynomial {
    pub raw: IntPoly,
    pub normalized: IntPoly,
    pub unit: Unit,
}

impl AlexanderPolynomial {
    pub fn from_raw(raw: IntPoly) -> Self {
        let (normalized, unit) = raw.normalize();
        AlexanderPolynomial {
            raw,
            normalized,
            unit,
        }
    }

    /// True when the polynomial is a unit of `Z[t, 1/t]`.
    pub fn is_trivial(&self) -> bool {
        self.normalized == IntPoly::constant(BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.raw.is_zero()
    }

    /// Equality up to units.
    pub fn equivalent(&self, other: &AlexanderPolynomial) -> bool {
        self.normalized == other.normalized
    }
}

impl fmt::Display for AlexanderPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.normalized)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division_of_cyclotomic_quotient() {
        // (t^6-1)(t-1) / ((t^2-1)(t^3-1)) = t^2 - t + 1
        let num = &IntPoly::t_pow_minus_one(6) * &IntPoly::t_pow_minus_one(1);
        let den = &IntPoly::t_pow_minus_one(2) * &IntPoly::t_pow_minus_one(3);
        assert_eq!(num.div_exact(&den).unwrap(), IntPoly::from_i64(&[1, -1, 1]));
        assert!(IntPoly::from_i64(&[1, 0, 1])
            .div_exact(&IntPoly::from_i64(&[1, 1]))
            .is_none());
    }

    #[test]
    fn normalization_strips_units() {
        let p = IntPoly::from_i64(&[0, 0, -1, 1, -1]);
        let a = AlexanderPolynomial::from_raw(p);
        assert_eq!(a.normalized, IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(a.unit, Unit { sign: -1, shift: 2 });
        assert!(AlexanderPolynomial::from_raw(IntPoly::from_i64(&[0, -1])).is_trivial());
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(IntPoly::cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(IntPoly::cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(IntPoly::cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        let f = IntPoly::from_i64(&[0, 0, 0, 1]);
        assert_eq!(f.rem_monic(&IntPoly::cyclotomic(3)), IntPoly::from_i64(&[1]));
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[1, -1, 0, 2]).to_string(), "2t^3 - t + 1");
        assert_eq!(IntPoly::default().to_string(), "0");
    }
}
