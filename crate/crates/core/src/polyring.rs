//! Dense univariate polynomials over `Z`, the ambient ring `Z[q]`.
//!
//! Coefficients are stored ascending by degree and always normalized: the
//! last stored coefficient is nonzero and the zero polynomial is the empty
//! vector. Every constructor and arithmetic operation re-normalizes.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// The zero polynomial, usable where a `&IntPoly` with static lifetime is needed.
pub static ZERO: IntPoly = IntPoly { coeffs: Vec::new() };

impl IntPoly {
    pub const fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `q^e`.
    pub fn monomial(e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::one();
        IntPoly { coeffs }
    }

    /// `c * q^e`.
    pub fn term<T: Into<BigInt>>(c: T, e: usize) -> Self {
        Self::constant(c).shift(e)
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Value at `q = 1`.
    pub fn coeff_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn add_ref(&self, other: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn sub_ref(&self, other: &IntPoly) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < other.coeffs.len() {
            coeffs.resize(other.coeffs.len(), BigInt::zero());
        }
        for (c, s) in coeffs.iter_mut().zip(&other.coeffs) {
            *c -= s;
        }
        IntPoly::from_coeffs(coeffs)
    }

    /// Schoolbook convolution.
    pub fn mul_ref(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    /// Long division by a monic divisor: returns `(quotient, remainder)`
    /// with `self = quotient * m + remainder` and `deg(remainder) < deg(m)`.
    pub fn divrem_monic(&self, m: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let dm = match m.degree() {
            None => return Err(Error::Modulus("division by the zero polynomial".into())),
            Some(d) => d,
        };
        if !m.is_monic() {
            return Err(Error::Modulus(format!("divisor {m} is not monic")));
        }
        if self.coeffs.len() <= dm {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dm];
        for top in (dm..rem.len()).rev() {
            let c = std::mem::take(&mut rem[top]);
            if c.is_zero() {
                continue;
            }
            let base = top - dm;
            for (i, mc) in m.coeffs[..dm].iter().enumerate() {
                if !mc.is_zero() {
                    rem[base + i] -= &c * mc;
                }
            }
            quot[base] = c;
        }
        rem.truncate(dm);
        Ok((IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem)))
    }

    /// Remainder only; see [`IntPoly::divrem_monic`].
    pub fn rem_monic(&self, m: &IntPoly) -> Result<IntPoly> {
        self.divrem_monic(m).map(|(_, r)| r)
    }

    /// Canonical JSON form: decimal coefficient strings ascending by degree.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn from_decimal_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        items
            .iter()
            .map(|s| {
                BigInt::from_str(s.as_ref())
                    .map_err(|e| Error::Domain(format!("bad coefficient {:?}: {e}", s.as_ref())))
            })
            .collect::<Result<Vec<_>>>()
            .map(IntPoly::from_coeffs)
    }
}

/// Canonical text form, terms ascending: `1 + 2*q + 2*q^2`, `-1 + q`, `0`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(deserializer)?;
        IntPoly::from_decimal_strings(&items).map_err(de::Error::custom)
    }
}

impl From<BigInt> for IntPoly {
    fn from(c: BigInt) -> Self {
        IntPoly::from_coeffs(vec![c])
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                self.$inner(rhs)
            }
        }
        impl $trait<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                self.$inner(&rhs)
            }
        }
        impl $trait<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                self.$inner(rhs)
            }
        }
        impl $trait<IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl AddAssign<&IntPoly> for IntPoly {
    fn add_assign(&mut self, rhs: &IntPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (c, r) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *c += r;
        }
        self.normalize();
    }
}

impl SubAssign<&IntPoly> for IntPoly {
    fn sub_assign(&mut self, rhs: &IntPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (c, r) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= r;
        }
        self.normalize();
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -self.clone()
    }
}

impl std::iter::Sum for IntPoly {
    fn sum<I: Iterator<Item = IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn add_examples() {
        assert!((p(&[1, 1]) + p(&[-1, -1])).is_zero());
        assert_eq!(p(&[1, 2]) + IntPoly::zero(), p(&[1, 2]));
        assert_eq!(p(&[1, 1, 1]) + p(&[0, 0, 1]), p(&[1, 1, 2]));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p(&[1, 1]) * p(&[1, -1]), p(&[1, 0, -1]));
        assert!((p(&[3, 4]) * IntPoly::zero()).is_zero());
        assert_eq!(p(&[1, 1, 1]) * p(&[1, 1]), p(&[1, 2, 2, 1]));
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = p(&[-1, 0, 1]).divrem_monic(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());

        let (q, r) = IntPoly::monomial(3).divrem_monic(&p(&[1, 1])).unwrap();
        assert_eq!(q, p(&[1, -1, 1]));
        assert_eq!(r, p(&[-1]));

        let a = p(&[5, 7]);
        let (q, r) = a.divrem_monic(&p(&[1, 0, 1])).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, a);
    }

    #[test]
    fn divrem_rejects_bad_divisors() {
        let a = p(&[1, 2, 3]);
        assert!(matches!(
            a.divrem_monic(&IntPoly::zero()),
            Err(Error::Modulus(_))
        ));
        assert!(matches!(
            a.divrem_monic(&p(&[1, 2])),
            Err(Error::Modulus(_))
        ));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[1, 2]).eval(&BigInt::one()), BigInt::from(3));
        assert_eq!(IntPoly::zero().eval(&BigInt::from(17)), BigInt::zero());
        assert_eq!(p(&[1, 2, 4, 4, 2]).eval(&BigInt::from(-1)), BigInt::one());
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(IntPoly::zero().degree(), None);
        assert_eq!(IntPoly::one().degree(), Some(0));
        assert_eq!(p(&[0, 0, 3, 0, 0]).degree(), Some(2));
    }

    #[test]
    fn canonical_text() {
        assert_eq!(p(&[1, 2, 2]).to_string(), "1 + 2*q + 2*q^2");
        assert_eq!(p(&[-1, 1]).to_string(), "-1 + q");
        assert_eq!(p(&[1, 0, -1]).to_string(), "1 - q^2");
        assert_eq!(p(&[0, -3]).to_string(), "-3*q");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_uses_decimal_strings() {
        let a = p(&[1, -2, 0, 4]);
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"["1","-2","0","4"]"#);
        let back: IntPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);
        assert_eq!(serde_json::to_string(&IntPoly::zero()).unwrap(), "[]");
        assert!(serde_json::from_str::<IntPoly>(r#"["1","x"]"#).is_err());
    }

    #[test]
    fn deserialize_normalizes_trailing_zeros() {
        let a: IntPoly = serde_json::from_str(r#"["1","0","0"]"#).unwrap();
        assert_eq!(a, IntPoly::one());
    }
}
