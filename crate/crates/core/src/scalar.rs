//! Exact coefficient fields and the formal `(2π)^-1` unit.
//!
//! Everything in this crate is generic over a [`Coefficient`] field. Two
//! fields ship: the rationals ([`Rational`]) and the Gaussian rationals
//! ([`Gaussian`]), which are needed for unitary algebras whose defining
//! matrices have imaginary entries.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Gaussian = Complex<BigRational>;

/// An exact field of coefficients.
pub trait Coefficient:
    Clone
    + Debug
    + Eq
    + Hash
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Short name used in reports ("rational" / "gaussian").
    const FIELD: &'static str;

    fn from_rational(r: Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The imaginary unit, when the field has one.
    fn imaginary_unit() -> Option<Self>;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;

    /// Exact textual form, e.g. `-1/2` or `1/2+3i`.
    fn render(&self) -> String;

    /// Parses the output of [`Coefficient::render`]. Accepts `−` (U+2212) for minus.
    fn parse_exact(s: &str) -> Option<Self>;
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim().replace('\u{2212}', "-");
    if s.is_empty() {
        return None;
    }
    let s = s.strip_prefix('+').unwrap_or(&s);
    let r = Rational::from_str(s).ok()?;
    Some(r)
}

fn render_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Coefficient for Rational {
    const FIELD: &'static str = "rational";

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn imaginary_unit() -> Option<Self> {
        None
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn render(&self) -> String {
        render_rational(self)
    }

    fn parse_exact(s: &str) -> Option<Self> {
        parse_rational(s)
    }
}

impl Coefficient for Gaussian {
    const FIELD: &'static str = "gaussian";

    fn from_rational(r: Rational) -> Self {
        Complex::new(r, Rational::zero())
    }

    fn imaginary_unit() -> Option<Self> {
        Some(Complex::new(Rational::zero(), Rational::one()))
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn render(&self) -> String {
        let (re, im) = (&self.re, &self.im);
        let im_part = |lead: bool| -> String {
            let mag = im.abs();
            let body = if mag.is_one() {
                "i".to_string()
            } else {
                format!("{}i", render_rational(&mag))
            };
            match (im.is_negative(), lead) {
                (true, _) => format!("-{body}"),
                (false, true) => body,
                (false, false) => format!("+{body}"),
            }
        };
        if im.is_zero() {
            render_rational(re)
        } else if re.is_zero() {
            im_part(true)
        } else {
            format!("{}{}", render_rational(re), im_part(false))
        }
    }

    fn parse_exact(s: &str) -> Option<Self> {
        let s = s.trim().replace('\u{2212}', "-");
        let Some(body) = s.strip_suffix('i') else {
            return parse_rational(&s).map(Self::from_rational);
        };
        // split "re±im" at the last sign that is not leading
        let split = body
            .char_indices()
            .rev()
            .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i);
        let (re, im) = match split {
            Some(i) => (parse_rational(&body[..i])?, &body[i..]),
            None => (Rational::zero(), body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other)?,
        };
        Some(Complex::new(re, im))
    }
}

/// A field element tagged with a formal power of `(2π)^-1`.
///
/// `two_pi_exponent = k` means the value is `value · (2π)^-k`. Addition
/// requires matching exponents; multiplication adds them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar<F> {
    pub value: F,
    pub two_pi_exponent: i32,
}

impl<F: Coefficient> Scalar<F> {
    pub fn new(value: F, two_pi_exponent: i32) -> Self {
        Self { value, two_pi_exponent }
    }

    pub fn plain(value: F) -> Self {
        Self::new(value, 0)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::plain(F::from_ratio(num, den))
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.two_pi_exponent != other.two_pi_exponent {
            return Err(Error::UnitMismatch {
                left: self.two_pi_exponent,
                right: other.two_pi_exponent,
            });
        }
        Ok(Self::new(self.value.add_ref(&other.value), self.two_pi_exponent))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other.clone())
    }
}

impl<F: Coefficient> Mul for Scalar<F> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::new(self.value * rhs.value, self.two_pi_exponent + rhs.two_pi_exponent)
    }
}

impl<F: Coefficient> Neg for Scalar<F> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.value, self.two_pi_exponent)
    }
}

impl<F: Coefficient> Display for Scalar<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value.render())?;
        if self.two_pi_exponent != 0 && !self.value.is_zero() {
            write!(f, "*{}", render_two_pi(self.two_pi_exponent))?;
        }
        Ok(())
    }
}

pub(crate) fn render_two_pi(exponent: i32) -> String {
    format!("(2pi)^{}", -exponent)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        for s in ["0", "-1/2", "7", "3/4"] {
            let r = Rational::parse_exact(s).unwrap();
            assert_eq!(r.render(), s);
        }
        assert_eq!(Rational::parse_exact("\u{2212}1/2"), Some(Rational::from_ratio(-1, 2)));
        assert_eq!(Rational::parse_exact("2/4").unwrap().render(), "1/2");
        assert!(Rational::parse_exact("1/0").is_none());
        assert!(Rational::parse_exact("abc").is_none());
    }

    #[test]
    fn gaussian_round_trip() {
        for s in ["i", "-i", "1/2+3i", "-2-1/3i", "5", "2/3i"] {
            let g = Gaussian::parse_exact(s).unwrap();
            assert_eq!(g.render(), s, "{s}");
        }
        let i = Gaussian::imaginary_unit().unwrap();
        assert_eq!((i.clone() * i).render(), "-1");
    }

    #[test]
    fn scalar_units() {
        let a = Scalar::<Rational>::new(Rational::from_ratio(1, 2), 2);
        let b = Scalar::<Rational>::new(Rational::from_ratio(1, 3), 1);
        assert!(a.checked_add(&b).is_err());
        let c = a.clone() * b;
        assert_eq!(c.two_pi_exponent, 3);
        assert_eq!(c.to_string(), "1/6*(2pi)^-3");
        let zero = Scalar::<Rational>::new(Rational::zero(), 5);
        assert_eq!(a.checked_add(&zero).unwrap(), a);
    }
}
