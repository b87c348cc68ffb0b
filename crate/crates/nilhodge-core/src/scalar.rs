//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! Everything downstream is a kernel or quotient dimension, so there is no
//! floating point anywhere in this crate. Scalars have a canonical string
//! form (`"3"`, `"-1/2"`, `"1/2+3/4*i"`) that round-trips losslessly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use thiserror::Error;

/// Arbitrary-precision rational, kept in lowest terms with a positive
/// denominator by `num_rational`.
pub type Rational = BigRational;

/// `n/d` as a [`Rational`]. Panics if `d == 0`.
pub fn rational(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Rational`].
pub fn integer(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarParseError {
    #[error("empty scalar literal")]
    Empty,
    #[error("malformed scalar literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in scalar literal {0:?}")]
    ZeroDenominator(String),
}

/// An element of the field Q(i): `re + im*i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::new(Rational::one(), Rational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        GaussianRational::new(r, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::from_rational(integer(n))
    }

    /// `n/d` as a real Gaussian rational. Panics if `d == 0`.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        GaussianRational::from_rational(rational(n, d))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugate; an involution.
    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`, a nonnegative rational, zero iff `self` is zero.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }

    fn add_ref(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub_ref(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul_ref(&self, o: &Self) -> Self {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    fn div_ref(&self, o: &Self) -> Self {
        let inv = o.inv().expect("division by zero Gaussian rational");
        self.mul_ref(&inv)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$imp(&rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                self.$imp(rhs)
            }
        }
        impl $trait<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$imp(&rhs)
            }
        }
        impl $trait<&GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                self.$imp(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        *self = self.sub_ref(rhs);
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = self.mul_ref(rhs);
    }
}

/// Canonical form of a rational: `"n"` for integers, `"n/d"` otherwise.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"n"` or `"n/d"`; the denominator must be unsigned and nonzero.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarParseError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ScalarParseError::Empty);
    }
    let (num_s, den_s) = match t.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (t, None),
    };
    let malformed = || ScalarParseError::Malformed(s.to_string());
    let num: BigInt = num_s.parse().map_err(|_| malformed())?;
    match den_s {
        None => Ok(BigRational::from_integer(num)),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            let den: BigInt = d.parse().map_err(|_| malformed())?;
            if den.is_zero() {
                return Err(ScalarParseError::ZeroDenominator(s.to_string()));
            }
            Ok(BigRational::new(num, den))
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let im_str = |r: &Rational| {
            if r.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", rational_to_string(r))
            }
        };
        if self.im.is_zero() {
            write!(f, "{}", rational_to_string(&self.re))
        } else if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{}", im_str(&-self.im.clone()))
            } else {
                write!(f, "{}", im_str(&self.im))
            }
        } else if self.im.is_negative() {
            write!(
                f,
                "{}-{}",
                rational_to_string(&self.re),
                im_str(&-self.im.clone())
            )
        } else {
            write!(f, "{}+{}", rational_to_string(&self.re), im_str(&self.im))
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for GaussianRational {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() {
            return Err(ScalarParseError::Empty);
        }
        let malformed = || ScalarParseError::Malformed(s.to_string());
        if t == "i" {
            return Ok(GaussianRational::i());
        }
        if t == "-i" {
            return Ok(-GaussianRational::i());
        }
        let Some(body) = t.strip_suffix('i') else {
            return parse_rational(t).map(GaussianRational::from_rational);
        };
        // Forms ending in `i`: "<im>*i", "<re>+i", "<re>-i", "<re>+<u>*i", "<re>-<u>*i".
        if let Some(coeff) = body.strip_suffix('*') {
            match split_re_im(coeff) {
                Some((re_s, sign, im_s)) => {
                    if im_s.starts_with('+') || im_s.starts_with('-') {
                        return Err(malformed());
                    }
                    let re = parse_rational(re_s)?;
                    let im = parse_rational(im_s)?;
                    Ok(GaussianRational::new(re, if sign { im } else { -im }))
                }
                None => {
                    let im = parse_rational(coeff)?;
                    Ok(GaussianRational::new(Rational::zero(), im))
                }
            }
        } else if let Some(re_s) = body.strip_suffix('+') {
            Ok(GaussianRational::new(
                parse_rational(re_s)?,
                Rational::one(),
            ))
        } else if let Some(re_s) = body.strip_suffix('-') {
            if re_s.is_empty() {
                return Err(malformed());
            }
            Ok(GaussianRational::new(
                parse_rational(re_s)?,
                -Rational::one(),
            ))
        } else {
            Err(malformed())
        }
    }
}

/// Split `"<re><sign><im>"` at the first sign character past position 0.
fn split_re_im(s: &str) -> Option<(&str, bool, &str)> {
    for (idx, ch) in s.char_indices().skip(1) {
        if ch == '+' || ch == '-' {
            return Some((&s[..idx], ch == '+', &s[idx + 1..]));
        }
    }
    None
}
