//! Scalars that are either exact rationals or tolerance-compared binary64.
//!
//! Arithmetic between two exact values stays exact. As soon as an
//! approximate value takes part the result is approximate, so exact
//! constants (0, 1, 1/2, ...) can be mixed freely into float geometry.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// A coordinate-sized number.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Approx(f64),
}

/// How scalars are compared for one computation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NumericMode {
    /// Zero-tolerance comparisons.
    Exact,
    /// `a == b` iff `|a - b| <= epsilon * max(1, |a|, |b|)`.
    Approx { epsilon: f64 },
}

impl NumericMode {
    pub const DEFAULT_EPSILON: f64 = 1e-9;

    pub fn approx() -> Self {
        NumericMode::Approx { epsilon: Self::DEFAULT_EPSILON }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, NumericMode::Exact)
    }

    pub fn epsilon(&self) -> f64 {
        match self {
            NumericMode::Exact => 0.0,
            NumericMode::Approx { epsilon } => *epsilon,
        }
    }

    pub fn cmp(&self, a: &Scalar, b: &Scalar) -> Ordering {
        if let (Scalar::Exact(x), Scalar::Exact(y)) = (a, b) {
            return x.cmp(y);
        }
        let (x, y) = (a.to_f64(), b.to_f64());
        let scale = 1f64.max(x.abs()).max(y.abs());
        if (x - y).abs() <= self.epsilon() * scale {
            Ordering::Equal
        } else if x < y {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn eq(&self, a: &Scalar, b: &Scalar) -> bool {
        self.cmp(a, b) == Ordering::Equal
    }

    pub fn lt(&self, a: &Scalar, b: &Scalar) -> bool {
        self.cmp(a, b) == Ordering::Less
    }

    pub fn le(&self, a: &Scalar, b: &Scalar) -> bool {
        self.cmp(a, b) != Ordering::Greater
    }

    pub fn sign(&self, a: &Scalar) -> Ordering {
        self.cmp(a, &Scalar::zero())
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        self.sign(a) == Ordering::Equal
    }

    pub fn is_positive(&self, a: &Scalar) -> bool {
        self.sign(a) == Ordering::Greater
    }

    /// Brings an exact value into this mode's representation.
    pub fn lift(&self, value: Scalar) -> Scalar {
        match (self, value) {
            (NumericMode::Approx { .. }, Scalar::Exact(q)) => Scalar::Approx(rational_to_f64(&q)),
            (_, v) => v,
        }
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn int(v: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(v)))
    }

    /// `p / q`; panics when `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::Exact(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_big(p: BigInt, q: BigInt) -> Result<Self, Error> {
        if q.is_zero() {
            return Err(Error::NumberFormat("zero denominator".to_string()));
        }
        Ok(Scalar::Exact(BigRational::new(p, q)))
    }

    pub fn float(v: f64) -> Self {
        Scalar::Approx(v)
    }

    /// The exact dyadic rational equal to a finite float.
    pub fn exact_from_f64(v: f64) -> Result<Self, Error> {
        BigRational::from_float(v)
            .map(Scalar::Exact)
            .ok_or_else(|| Error::NumberFormat(alloc::format!("non-finite number {v}")))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => rational_to_f64(q),
            Scalar::Approx(v) => *v,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q.abs()),
            Scalar::Approx(v) => Scalar::Approx(v.abs()),
        }
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// Exact-only inverse for `Div`; approximate division of zero yields inf.
    pub fn recip(&self) -> Scalar {
        Scalar::one() / self
    }

    pub fn min_of<'a>(mode: &NumericMode, a: &'a Scalar, b: &'a Scalar) -> &'a Scalar {
        if mode.lt(b, a) { b } else { a }
    }

    pub fn max_of<'a>(mode: &NumericMode, a: &'a Scalar, b: &'a Scalar) -> &'a Scalar {
        if mode.lt(a, b) { b } else { a }
    }

    /// Canonical text: `p/q` reduced, `p` when `q == 1`, plain float otherwise.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (a, b) => a.to_f64() == b.to_f64(),
        }
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Exact(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Approx(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p`, `p/q` (exact) or a decimal float (approximate).
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::NumberFormat(s.to_string());
        if let Some((p, q)) = s.split_once('/') {
            let p = BigInt::from_str(p).map_err(|_| bad())?;
            let q = BigInt::from_str(q).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::NumberFormat(alloc::format!("zero denominator in {s:?}")));
            }
            return Ok(Scalar::Exact(BigRational::new(p, q)));
        }
        if let Ok(p) = BigInt::from_str(s) {
            return Ok(Scalar::Exact(BigRational::from_integer(p)));
        }
        let v = f64::from_str(s).map_err(|_| bad())?;
        if !v.is_finite() {
            return Err(bad());
        }
        Ok(Scalar::Approx(v))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (a, b) => Scalar::Approx(a.to_f64() $op b.to_f64()),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (a, b) => Scalar::Approx(a.to_f64() $op b.to_f64()),
                }
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                &self $op rhs
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self $op &rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Approx(v) => Scalar::Approx(-v),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl core::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_is_reduced() {
        let s = Scalar::ratio(6, -4);
        assert_eq!(s.to_string(), "-3/2");
        let q = s.as_rational().unwrap();
        assert!(q.denom().is_positive());
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(Scalar::ratio(4, 2).to_string(), "2");
        assert_eq!("3/7".parse::<Scalar>().unwrap(), Scalar::ratio(3, 7));
        assert_eq!("-12".parse::<Scalar>().unwrap(), Scalar::int(-12));
        assert!(matches!("2/0".parse::<Scalar>(), Err(Error::NumberFormat(_))));
        assert!(matches!("1/x".parse::<Scalar>(), Err(Error::NumberFormat(_))));
        assert!(!"0.25".parse::<Scalar>().unwrap().is_exact());
    }

    #[test]
    fn mixed_arithmetic_degrades_to_approx() {
        let a = Scalar::ratio(1, 2) * Scalar::float(3.0);
        assert_eq!(a, Scalar::float(1.5));
        assert!(!a.is_exact());
    }

    #[test]
    fn approx_comparison_is_relative() {
        let m = NumericMode::approx();
        assert!(m.eq(&Scalar::float(1e6), &Scalar::float(1e6 + 1e-4)));
        assert!(!m.eq(&Scalar::float(1.0), &Scalar::float(1.0 + 1e-6)));
        assert!(m.is_zero(&Scalar::float(5e-10)));
        assert!(!NumericMode::Exact.eq(&Scalar::ratio(1, 3), &Scalar::ratio(333_333_333, 1_000_000_000)));
    }

    #[test]
    fn exact_from_float_is_dyadic() {
        let s = Scalar::exact_from_f64(0.1).unwrap();
        assert_eq!(s.to_f64(), 0.1);
        assert!(s.is_exact());
        assert_ne!(s, Scalar::ratio(1, 10));
    }
}
