use std::fmt;

use super::{GaussianRational, KernelError, MonomialOrder, Poly, Vars};

/// Quotient of two polynomials, stored unreduced.
///
/// Equality is decided by cross-multiplication. Construction applies only
/// cheap simplifications: constant denominators are folded into the
/// numerator, common monomial factors are cancelled, and exact polynomial
/// quotients are taken when the denominator divides the numerator.
#[derive(Clone)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, KernelError> {
        if den.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        if *num.vars() != *den.vars() {
            return Err(KernelError::VarTableMismatch);
        }
        Ok(Self::simplified(num, den))
    }

    fn simplified(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            let vars = den.vars().clone();
            return Self {
                num,
                den: Poly::one(&vars),
            };
        }
        if let Some(c) = den.as_constant() {
            let inv = c.inverse().expect("nonzero denominator");
            let vars = den.vars().clone();
            return Self {
                num: num.scale(&inv),
                den: Poly::one(&vars),
            };
        }
        let g = num.monomial_content().gcd(&den.monomial_content());
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_monomial(&g).expect("gcd divides"),
                den.div_monomial(&g).expect("gcd divides"),
            )
        };
        if let Some(q) = num.div_exact(&den) {
            let vars = den.vars().clone();
            return Self {
                num: q,
                den: Poly::one(&vars),
            };
        }
        // Make the denominator monic so printing is stable.
        let ord = MonomialOrder::Lex;
        let lc = den.leading(&ord).map(|(_, c)| c.clone()).expect("nonzero");
        let inv = lc.inverse().expect("nonzero");
        Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let one = Poly::one(p.vars());
        Self { num: p, den: one }
    }

    pub fn zero(vars: &Vars) -> Self {
        Self::from_poly(Poly::zero(vars))
    }

    pub fn one(vars: &Vars) -> Self {
        Self::from_poly(Poly::one(vars))
    }

    pub fn constant(vars: &Vars, c: GaussianRational) -> Self {
        Self::from_poly(Poly::constant(vars, c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value when the denominator is a unit.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.den
            .as_constant()
            .filter(GaussianRational::is_one)
            .map(|_| &self.num)
    }

    pub fn add(&self, other: &RatFunc) -> Result<RatFunc, KernelError> {
        if self.den == other.den {
            return RatFunc::new(self.num.checked_add(&other.num)?, self.den.clone());
        }
        RatFunc::new(
            self.num
                .checked_mul(&other.den)?
                .checked_add(&other.num.checked_mul(&self.den)?)?,
            self.den.checked_mul(&other.den)?,
        )
    }

    pub fn sub(&self, other: &RatFunc) -> Result<RatFunc, KernelError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> Result<RatFunc, KernelError> {
        RatFunc::new(
            self.num.checked_mul(&other.num)?,
            self.den.checked_mul(&other.den)?,
        )
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, KernelError> {
        if other.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        RatFunc::new(
            self.num.checked_mul(&other.den)?,
            self.den.checked_mul(&other.num)?,
        )
    }

    pub fn neg(&self) -> RatFunc {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn inverse(&self) -> Result<RatFunc, KernelError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &GaussianRational) -> RatFunc {
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        Self {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn conj(&self) -> Result<RatFunc, KernelError> {
        Ok(Self {
            num: self.num.conj()?,
            den: self.den.conj()?,
        })
    }

    /// `p/q == r/s` iff `p·s − r·q = 0`.
    pub fn equals(&self, other: &RatFunc) -> Result<bool, KernelError> {
        Ok(self
            .num
            .checked_mul(&other.den)?
            .checked_sub(&other.num.checked_mul(&self.den)?)?
            .is_zero())
    }

    /// `p·s − r·q`, the polynomial whose vanishing is equality.
    pub fn cross_difference(&self, other: &RatFunc) -> Result<Poly, KernelError> {
        self.num
            .checked_mul(&other.den)?
            .checked_sub(&other.num.checked_mul(&self.den)?)
    }

    pub fn embed(&self, target: &Vars) -> Result<RatFunc, KernelError> {
        Ok(Self {
            num: self.num.embed(target)?,
            den: self.den.embed(target)?,
        })
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.as_poly().is_some() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
