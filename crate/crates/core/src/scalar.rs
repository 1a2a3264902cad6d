//! Gaussian rationals `a + b·i` with arbitrary-precision rational parts.
//!
//! Complex conjugation is the real structure used throughout the crate: a
//! vector or subspace is "real" when it is fixed by entrywise conjugation.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseScalarError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::new(BigRational::new(BigInt::from(num), BigInt::from(den)), BigRational::zero())
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(re)), BigRational::from_integer(BigInt::from(im)))
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn real_part(&self) -> Scalar {
        Scalar::new(self.re.clone(), BigRational::zero())
    }

    pub fn imag_part(&self) -> Scalar {
        Scalar::new(self.im.clone(), BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Scalar {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Scalar::new(&self.re / &n, -(&self.im / &n)))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::new(r, BigRational::zero())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::new(&self.re * &rhs.re, BigRational::zero());
        }
        Scalar::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self.mul(&inv)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical form: `a`, `a/b`, `c/d*i`, `a/b+c/d*i`, `a/b-c/d*i`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let im = fmt_rational(&self.im.abs());
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            return write!(f, "{}{}*i", sign, im);
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*i", fmt_rational(&self.re), sign, im)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Cursor<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> ParseScalarError {
        ParseScalarError { input: self.src.to_string(), position: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn sign(&mut self) -> Option<bool> {
        self.skip_ws();
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(false)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            self.src[start..self.pos].parse().ok()
        }
    }

    /// `digits [ '/' digits ]`, or nothing when the term is a bare `i`.
    fn magnitude(&mut self) -> Result<Option<BigRational>, ParseScalarError> {
        self.skip_ws();
        let num = match self.digits() {
            Some(n) => n,
            None => return Ok(None),
        };
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.digits().ok_or_else(|| self.err("expected denominator digits"))?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(Some(BigRational::new(num, den)))
        } else {
            Ok(Some(BigRational::from_integer(num)))
        }
    }

    /// Parses `['*'] 'i'` if present.
    fn imag_unit(&mut self) -> Result<bool, ParseScalarError> {
        self.skip_ws();
        let save = self.pos;
        if self.peek() == Some(b'*') {
            self.pos += 1;
            self.skip_ws();
            if self.peek() != Some(b'i') {
                return Err(self.err("expected 'i' after '*'"));
            }
        }
        if self.peek() == Some(b'i') {
            self.pos += 1;
            return Ok(true);
        }
        self.pos = save;
        Ok(false)
    }

    fn term(&mut self, first: bool) -> Result<Option<(BigRational, bool)>, ParseScalarError> {
        self.skip_ws();
        if self.pos >= self.bytes.len() {
            return Ok(None);
        }
        let neg = match self.sign() {
            Some(n) => n,
            None if first => false,
            None => return Err(self.err("expected '+' or '-' between terms")),
        };
        let mag = self.magnitude()?;
        let imag = self.imag_unit()?;
        let value = match (mag, imag) {
            (Some(m), _) => m,
            (None, true) => BigRational::one(),
            (None, false) => return Err(self.err("expected a number")),
        };
        Ok(Some((if neg { -value } else { value }, imag)))
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor { src: s, bytes: s.as_bytes(), pos: 0 };
        let mut re: Option<BigRational> = None;
        let mut im: Option<BigRational> = None;
        let mut first = true;
        while let Some((value, imag)) = cur.term(first)? {
            let slot = if imag { &mut im } else { &mut re };
            if slot.is_some() {
                return Err(cur.err(if imag { "duplicate imaginary part" } else { "duplicate real part" }));
            }
            *slot = Some(value);
            first = false;
        }
        if first {
            return Err(cur.err("empty scalar"));
        }
        Ok(Scalar::new(re.unwrap_or_else(BigRational::zero), im.unwrap_or_else(BigRational::zero)))
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(Scalar::from_int(n)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn field_operations_are_exact() {
        let a = s("1/3+2/5*i");
        let b = s("-7/2-i");
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn conjugation_is_involutive() {
        let a = s("3/4-5*i");
        assert_eq!(a.conj().conj(), a);
        assert!(!a.is_real());
        assert!(s("-2/3").is_real());
        assert!((&a * &a.conj()).is_real());
    }

    #[test]
    fn display_round_trips() {
        for text in ["0", "-3", "1/2", "2/3*i", "-i", "1/2+3/4*i", "5-2*i", "-1/7-1/3*i"] {
            let v = s(text);
            assert_eq!(s(&v.to_string()), v, "{text}");
        }
        assert_eq!(s("i").to_string(), "1*i");
        assert_eq!(s("4/8").to_string(), "1/2");
    }

    #[test]
    fn accepts_loose_forms() {
        assert_eq!(s("+1/2 + 1/2 i"), s("1/2+1/2*i"));
        assert_eq!(s("3*i+2"), Scalar::gaussian(2, 3));
        assert_eq!(s(" -i "), Scalar::gaussian(0, -1));
    }

    #[test]
    fn rejects_malformed_input() {
        let e = "1//2".parse::<Scalar>().unwrap_err();
        assert_eq!(e.position, 2);
        assert!("".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("1 2".parse::<Scalar>().is_err());
        assert!("1+2+3".parse::<Scalar>().is_err());
        assert!("2*".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }
}
