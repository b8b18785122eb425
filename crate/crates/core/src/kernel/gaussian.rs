//! Exact elements of the Gaussian rationals ℚ(i).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::KernelError;

/// `re + im·i` with both parts in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        // BigRational normalizes on construction, so the lowest-terms
        // invariant is inherited.
        Self { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
        )
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
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

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `a² + b²`, zero only for the zero element.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inverse(&self) -> Result<Self, KernelError> {
        if self.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Sign used when printing a term: the sign of the real part, or of the
    /// imaginary part for purely imaginary values. General complex values
    /// print with their own inner signs and report `false`.
    pub(crate) fn prints_negative(&self) -> bool {
        if self.im.is_zero() {
            self.re.is_negative()
        } else if self.re.is_zero() {
            self.im.is_negative()
        } else {
            false
        }
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_rational(&self.re * &rhs.re);
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

/// Panics on division by zero; use [`GaussianRational::inverse`] for the
/// checked form.
impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.inverse().expect("division by zero in ℚ(i)")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Imaginary part `q·i` with `q > 0`: `i`, `3i`, `(2/3)i`.
fn fmt_imag_abs(q: &BigRational) -> String {
    if q.is_one() {
        "i".to_string()
    } else if q.is_integer() {
        format!("{}i", q.numer())
    } else {
        format!("({})i", fmt_rational(q))
    }
}

impl GaussianRational {
    /// Text of `|self|` in the sense of [`Self::prints_negative`]: the sign
    /// is emitted by the caller. General values are parenthesized.
    pub(crate) fn fmt_unsigned(&self) -> String {
        if self.im.is_zero() {
            fmt_rational(&self.re.abs())
        } else if self.re.is_zero() {
            fmt_imag_abs(&self.im.abs())
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            format!(
                "({}{}{})",
                fmt_rational(&self.re),
                sign,
                fmt_imag_abs(&self.im.abs())
            )
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.prints_negative() {
            f.write_str("-")?;
        }
        let body = self.fmt_unsigned();
        // A lone general value keeps its parentheses off at top level.
        if body.starts_with('(') && !self.re.is_zero() && !self.im.is_zero() {
            f.write_str(&body[1..body.len() - 1])
        } else {
            f.write_str(&body)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_i_is_minus_i() {
        let i = GaussianRational::i();
        assert_eq!(i.inverse().unwrap(), -&i);
    }

    #[test]
    fn inverse_of_one_plus_i() {
        let z = &GaussianRational::one() + &GaussianRational::i();
        let expected = GaussianRational::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-1).into(), 2.into()),
        );
        assert_eq!(z.inverse().unwrap(), expected);
        assert!((&z * &expected).is_one());
    }

    #[test]
    fn inverse_of_zero_errors() {
        assert_eq!(
            GaussianRational::zero().inverse(),
            Err(KernelError::DivisionByZero)
        );
    }

    #[test]
    fn norm_vanishes_only_at_zero() {
        assert!(GaussianRational::zero().norm().is_zero());
        let z = GaussianRational::new(BigRational::zero(), BigRational::from_integer((-3).into()));
        assert_eq!(z.norm(), BigRational::from_integer(9.into()));
    }

    #[test]
    fn display_forms() {
        let half = BigRational::new(1.into(), 2.into());
        let q34 = BigRational::new(3.into(), 4.into());
        assert_eq!(GaussianRational::from_ratio(-3, 2).to_string(), "-3/2");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
        assert_eq!(
            GaussianRational::new(BigRational::zero(), q34.clone()).to_string(),
            "(3/4)i"
        );
        assert_eq!(GaussianRational::new(half, -q34).to_string(), "1/2-(3/4)i");
    }
}
