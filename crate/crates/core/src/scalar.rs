//! Exact scalars: arbitrary-precision rationals and the quadratic extension
//! ℚ(s) with s² = d a fixed positive non-square rational.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Commutative ring with an identity, as needed by the generic matrix code.
///
/// Values may carry context (the `d` of a [`QuadExt`], the variable count of
/// a [`crate::MultiPoly`]), so constants are produced from an existing value.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64_like(&self, k: i64) -> Self;

    /// A zero that needs no context, when the type has one.
    fn detached_zero() -> Option<Self> {
        None
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
    fn from_rational_like(&self, q: &Rational) -> Self;
}

/// Arbitrary-precision rational number, always kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    /// `n/d`; panics when `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_bigints(n: BigInt, d: BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(n, d)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, other: &Rational) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &other.0))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i32) -> Self {
        if e < 0 {
            return self.recip().expect("negative power of zero").pow(-e);
        }
        let mut acc = Rational::one();
        for _ in 0..e {
            acc *= self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn as_bigrational(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Self {
        Rational(q)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::ParseRational(s.to_string());
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rational(BigRational::new(n, d)))
            }
            None => {
                let n: BigInt = t.parse().map_err(|_| bad())?;
                Ok(Rational::from_bigint(n))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Str(String),
            Int(i64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Int(n) => Ok(Rational::from_integer(n)),
        }
    }
}

macro_rules! rational_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$m(&rhs.0))
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational((&self.0).$m(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);
// Division panics on a zero divisor; use `checked_div` for a recoverable error.
rational_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |a, b| a * b)
    }
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn from_i64_like(&self, k: i64) -> Self {
        Rational::from_integer(k)
    }
    fn detached_zero() -> Option<Self> {
        Some(Rational::zero())
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        self.recip().ok()
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        q.clone()
    }
}

fn sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// `√d` when `d` is the square of a rational, `None` otherwise.
pub fn is_square_rational(d: &Rational) -> Result<Option<Rational>> {
    if d.is_negative() {
        return Err(Error::NegativeSquare(d.to_string()));
    }
    let n = sqrt_exact(d.numer());
    let m = sqrt_exact(d.denom());
    Ok(match (n, m) {
        (Some(n), Some(m)) => Some(Rational(BigRational::new(n, m))),
        _ => None,
    })
}

/// Writes a positive rational `q` as `k²·d` with `d` a squarefree positive
/// integer and `k` a positive rational. Trial division, so meant for the
/// moderate sizes met in characteristic polynomials.
pub fn squarefree_split(q: &Rational) -> Result<(Rational, BigInt)> {
    if !q.is_positive() {
        return Err(Error::InvalidArgument(format!("{q} is not positive")));
    }
    // q = p/r = (p·r)/r²
    let mut m: BigInt = q.numer() * q.denom();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut f = BigInt::from(2u32);
    while &f * &f <= m {
        let mut e = 0u32;
        while (&m % &f).is_zero() {
            m /= &f;
            e += 1;
        }
        for _ in 0..e / 2 {
            square *= &f;
        }
        if e % 2 == 1 {
            free *= &f;
        }
        f += 1u32;
    }
    free *= m;
    let k = Rational(BigRational::new(square, q.denom().clone()));
    Ok((k, free))
}

/// Element `a + b·s` of ℚ(s), `s = +√d`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

fn check_d(d: &Rational) -> Result<()> {
    if !d.is_positive() || is_square_rational(d)?.is_some() {
        return Err(Error::InvalidExtension(d.to_string()));
    }
    Ok(())
}

impl QuadExt {
    /// `d` must be positive and not a rational square; otherwise
    /// `a + b·s` would not be a unique representation.
    pub fn new(a: Rational, b: Rational, d: Rational) -> Result<Self> {
        check_d(&d)?;
        Ok(QuadExt { a, b, d })
    }

    pub fn from_rational(a: Rational, d: &Rational) -> Result<Self> {
        QuadExt::new(a, Rational::zero(), d.clone())
    }

    /// The generator `s` itself.
    pub fn s(d: &Rational) -> Result<Self> {
        QuadExt::new(Rational::zero(), Rational::one(), d.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// N(a + b·s) = a² − b²d.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * &self.d
    }

    fn same_d(&self, other: &QuadExt) -> Result<()> {
        if self.d != other.d {
            return Err(Error::MismatchedExtension(
                self.d.to_string(),
                other.d.to_string(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &QuadExt) -> Result<Self> {
        self.same_d(other)?;
        Ok(QuadExt {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d: self.d.clone(),
        })
    }

    pub fn checked_sub(&self, other: &QuadExt) -> Result<Self> {
        self.same_d(other)?;
        Ok(QuadExt {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            d: self.d.clone(),
        })
    }

    pub fn checked_mul(&self, other: &QuadExt) -> Result<Self> {
        self.same_d(other)?;
        Ok(QuadExt {
            a: &self.a * &other.a + &self.b * &other.b * &self.d,
            b: &self.a * &other.b + &other.a * &self.b,
            d: self.d.clone(),
        })
    }

    pub fn checked_inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QuadExt {
            a: &self.a / &n,
            b: -(&self.b / &n),
            d: self.d.clone(),
        })
    }

    pub fn checked_div(&self, other: &QuadExt) -> Result<Self> {
        self.same_d(other)?;
        self.checked_mul(&other.checked_inv()?)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        QuadExt {
            a: &self.a * q,
            b: &self.b * q,
            d: self.d.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc * self;
        }
        acc
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*s", self.b)
        } else {
            write!(f, "{} + {}*s", self.a, self.b)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) [s^2={}]", self, self.d)
    }
}

// The std operators panic on mismatched `d`; the checked_* methods return
// an error instead.
macro_rules! quad_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                self.$checked(&rhs).expect("QuadExt arithmetic")
            }
        }
        impl<'a> $tr<&'a QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &'a QuadExt) -> QuadExt {
                self.$checked(rhs).expect("QuadExt arithmetic")
            }
        }
        impl<'a, 'b> $tr<&'b QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &'b QuadExt) -> QuadExt {
                self.$checked(rhs).expect("QuadExt arithmetic")
            }
        }
    };
}

quad_binop!(Add, add, checked_add);
quad_binop!(Sub, sub, checked_sub);
quad_binop!(Mul, mul, checked_mul);
quad_binop!(Div, div, checked_div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Ring for QuadExt {
    fn zero_like(&self) -> Self {
        QuadExt {
            a: Rational::zero(),
            b: Rational::zero(),
            d: self.d.clone(),
        }
    }
    fn one_like(&self) -> Self {
        QuadExt {
            a: Rational::one(),
            b: Rational::zero(),
            d: self.d.clone(),
        }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn from_i64_like(&self, k: i64) -> Self {
        QuadExt {
            a: Rational::from_integer(k),
            b: Rational::zero(),
            d: self.d.clone(),
        }
    }
}

impl Field for QuadExt {
    fn inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        QuadExt {
            a: q.clone(),
            b: Rational::zero(),
            d: self.d.clone(),
        }
    }
}

/// A scalar that is either rational or lives in a quadratic extension.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExactScalar {
    Rational(Rational),
    Quad(QuadExt),
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(q) => write!(f, "{q}"),
            ExactScalar::Quad(x) => write!(f, "{x}"),
        }
    }
}

impl ExactScalar {
    /// Collapses a `QuadExt` with zero `b` to a plain rational.
    pub fn normalized(self) -> Self {
        match self {
            ExactScalar::Quad(x) if x.b.is_zero() => ExactScalar::Rational(x.a),
            other => other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn canonical_form() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(2, 4).to_string(), "1/2");
        assert_eq!(q(0, 5).denom(), &BigInt::one());
        assert_eq!(q(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn textbook_arithmetic() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(3, 7).checked_div(&q(3, 7)).unwrap(), Rational::one());
        assert_eq!(q(1, 2).checked_div(&Rational::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("-3/9".parse::<Rational>().unwrap(), q(-1, 3));
        assert_eq!("17".parse::<Rational>().unwrap(), q(17, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        let json = serde_json::to_string(&q(-5, 3)).unwrap();
        assert_eq!(json, "\"-5/3\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q(-5, 3));
        let int: Rational = serde_json::from_str("4").unwrap();
        assert_eq!(int, q(4, 1));
    }

    #[test]
    fn square_detection() {
        assert_eq!(is_square_rational(&q(9, 4)).unwrap(), Some(q(3, 2)));
        assert_eq!(is_square_rational(&q(2, 1)).unwrap(), None);
        assert_eq!(is_square_rational(&Rational::zero()).unwrap(), Some(Rational::zero()));
        assert!(is_square_rational(&q(-1, 1)).is_err());
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_split(&q(8, 1)).unwrap(), (q(2, 1), BigInt::from(2)));
        assert_eq!(squarefree_split(&q(3, 4)).unwrap(), (q(1, 2), BigInt::from(3)));
        assert_eq!(squarefree_split(&q(1, 2)).unwrap(), (q(1, 2), BigInt::from(2)));
        assert_eq!(squarefree_split(&q(9, 1)).unwrap(), (q(3, 1), BigInt::one()));
    }

    #[test]
    fn quadratic_extension() {
        let d2 = q(2, 1);
        let s = QuadExt::s(&d2).unwrap();
        assert_eq!(&s * &s, QuadExt::from_rational(q(2, 1), &d2).unwrap());

        let d3 = q(3, 1);
        let one = QuadExt::from_rational(Rational::one(), &d3).unwrap();
        let s3 = QuadExt::s(&d3).unwrap();
        let prod = (one.clone() + &s3) * (one - &s3);
        assert_eq!(prod, QuadExt::from_rational(q(-2, 1), &d3).unwrap());

        // 1/(1+s) = -1 + s when s^2 = 2
        let x = QuadExt::new(q(1, 1), q(1, 1), d2.clone()).unwrap();
        let inv = x.checked_inv().unwrap();
        assert_eq!(inv, QuadExt::new(q(-1, 1), q(1, 1), d2.clone()).unwrap());
        assert_eq!(&inv * &x, x.one_like());
    }

    #[test]
    fn quadratic_errors() {
        let a = QuadExt::s(&q(2, 1)).unwrap();
        let b = QuadExt::s(&q(3, 1)).unwrap();
        assert!(matches!(a.checked_add(&b), Err(Error::MismatchedExtension(_, _))));
        assert!(matches!(a.checked_div(&a.zero_like()), Err(Error::DivisionByZero)));
        assert!(QuadExt::s(&q(4, 9)).is_err());
        assert!(QuadExt::s(&q(-2, 1)).is_err());
    }

    #[test]
    fn quadext_json() {
        let x = QuadExt::new(q(1, 2), q(-3, 1), q(5, 1)).unwrap();
        let v = serde_json::to_value(&x).unwrap();
        assert_eq!(v, serde_json::json!({"a": "1/2", "b": "-3", "d": "5"}));
        let back: QuadExt = serde_json::from_value(v).unwrap();
        assert_eq!(back, x);
    }
}
