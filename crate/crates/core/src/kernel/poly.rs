use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{GaussianRational, KernelError, Monomial, MonomialOrder, VarFlag, Vars};

/// Sparse polynomial over ℚ(i). Terms are keyed by exponent vector; zero
/// coefficients are never stored.
#[derive(Clone)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && *self.vars == *other.vars
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(vars: &Vars) -> Self {
        Self {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: GaussianRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, GaussianRational::one())
    }

    pub fn integer(vars: &Vars, n: i64) -> Self {
        Self::constant(vars, GaussianRational::from_integer(n))
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self, KernelError> {
        let idx = vars.require(name)?;
        Ok(Self::var_at(vars, idx))
    }

    pub fn var_at(vars: &Vars, idx: usize) -> Self {
        Self::monomial(
            vars,
            Monomial::var(vars.len(), idx),
            GaussianRational::one(),
        )
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: GaussianRational) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent vector length mismatch");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from terms, merging repeated monomials.
    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "exponent vector length mismatch");
            p.add_term(m, &c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    /// Terms sorted from largest to smallest under `ord`.
    pub fn terms_sorted(&self, ord: &MonomialOrder) -> Vec<(&Monomial, &GaussianRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.cmp(b.0, a.0));
        v
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading(&self, ord: &MonomialOrder) -> Option<(&Monomial, &GaussianRational)> {
        match ord {
            MonomialOrder::Lex => self.terms.iter().next_back(),
            _ => self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0)),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.is_constant() {
            Some(self.coefficient(&Monomial::one(self.vars.len())))
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, idx: usize) -> bool {
        self.terms.keys().any(|m| m.0[idx] > 0)
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len()).filter(|&i| self.uses_var(i)).collect()
    }

    fn check_same(&self, other: &Poly) -> Result<(), KernelError> {
        if std::sync::Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars {
            Ok(())
        } else {
            Err(KernelError::VarTableMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, KernelError> {
        self.check_same(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c);
        }
        Ok(r)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, KernelError> {
        self.check_same(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), &-c);
        }
        Ok(r)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, KernelError> {
        self.check_same(other)?;
        let mut r = Poly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, d)| (k.mul(m), d * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Conjugates every coefficient; variables are untouched.
    pub fn conj_coefficients(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.conj()))
                .collect(),
        }
    }

    /// Conjugation of a polynomial function: fails if a GENERIC variable
    /// occurs, since its conjugate is not a polynomial in the table.
    pub fn conj(&self) -> Result<Poly, KernelError> {
        for idx in self.support() {
            if self.vars.flag(idx) == VarFlag::Generic {
                return Err(KernelError::ConjugationUndefined(
                    self.vars.name(idx).to_string(),
                ));
            }
        }
        Ok(self.conj_coefficients())
    }

    pub fn derivative(&self, idx: usize) -> Poly {
        let mut r = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[idx] -= 1;
            r.add_term(m2, &(c * &GaussianRational::from_integer(e as i64)));
        }
        r
    }

    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<GaussianRational, KernelError> {
        if point.len() != self.vars.len() {
            return Err(KernelError::ArityMismatch {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= &x.pow(e);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial over another table, matching variables by
    /// name. Fails if a variable that occurs is missing from `target`.
    pub fn embed(&self, target: &Vars) -> Result<Poly, KernelError> {
        if *self.vars == **target {
            return Ok(Poly {
                vars: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut map = vec![None; self.vars.len()];
        for idx in self.support() {
            map[idx] = Some(target.require(self.vars.name(idx))?);
        }
        let mut r = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    e[map[i].expect("support covers nonzero exponents")] = k;
                }
            }
            r.add_term(Monomial(e), c);
        }
        Ok(r)
    }

    /// Divides by the leading coefficient under `ord`.
    pub fn monic(&self, ord: &MonomialOrder) -> Poly {
        match self.leading(ord) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero leading coefficient")),
        }
    }

    /// The largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.vars.len()),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<Poly> {
        let mut r = Poly::zero(&self.vars);
        for (k, c) in &self.terms {
            r.terms.insert(m.quotient_of(k)?, c.clone());
        }
        Some(r)
    }

    /// Exact quotient `self / d` if `d` divides `self`, by multivariate
    /// division under lex.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        let ord = MonomialOrder::Lex;
        let (dm, dc) = d.leading(&ord)?;
        let dc_inv = dc.inverse().ok()?;
        let mut rem = self.clone();
        let mut q = Poly::zero(&self.vars);
        while let Some((m, c)) = rem.leading(&ord) {
            let qm = dm.quotient_of(m)?;
            let qc = c * &dc_inv;
            rem = &rem - &d.mul_term(&qm, &qc);
            q.add_term(qm, &qc);
        }
        Some(q)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    /// Panics on mismatched tables; see [`Poly::checked_add`].
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs)
            .expect("polynomials over different variable tables")
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs)
            .expect("polynomials over different variable tables")
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs)
            .expect("polynomials over different variable tables")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-GaussianRational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn fmt_monomial(vars: &Vars, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars.name(i).to_string()),
            _ => parts.push(format!("{}^{}", vars.name(i), e)),
        }
    }
    parts.join("*")
}

impl Poly {
    /// Canonical text with terms sorted by `ord`, largest first.
    pub fn to_string_ordered(&self, ord: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms_sorted(ord).into_iter().enumerate() {
            let neg = c.prints_negative();
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let body = c.fmt_unsigned();
            if m.is_one() {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&fmt_monomial(&self.vars, m));
            } else {
                out.push_str(&body);
                out.push('*');
                out.push_str(&fmt_monomial(&self.vars, m));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_ordered(&MonomialOrder::Lex))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::VarTable;

    fn xy() -> Vars {
        VarTable::new(&["x", "y", "alpha"]).unwrap()
    }

    fn p(vars: &Vars, s: &str) -> Poly {
        crate::kernel::parse_poly(vars, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let v = xy();
        let prod = p(&v, "x + i*y") * p(&v, "x - i*y");
        assert_eq!(prod, p(&v, "x^2 + y^2"));
    }

    #[test]
    fn product_with_zero_is_zero() {
        let v = xy();
        assert!((p(&v, "x^3 - 2*y") * Poly::zero(&v)).is_zero());
    }

    #[test]
    fn expands_parameter_product() {
        let v = xy();
        let prod = p(&v, "x - 1") * p(&v, "x - alpha");
        assert_eq!(prod, p(&v, "x^2 - x - alpha*x + alpha"));
        assert!(prod.nterms() <= 4);
    }

    #[test]
    fn mismatched_tables_error() {
        let a = VarTable::new(&["x"]).unwrap();
        let b = VarTable::new(&["y"]).unwrap();
        assert_eq!(
            Poly::var(&a, "x")
                .unwrap()
                .checked_mul(&Poly::var(&b, "y").unwrap()),
            Err(KernelError::VarTableMismatch)
        );
    }

    #[test]
    fn exact_division() {
        let v = xy();
        let q = p(&v, "x^3 - alpha*x^2 - x + alpha").div_exact(&p(&v, "x - alpha"));
        assert_eq!(q, Some(p(&v, "x^2 - 1")));
        assert_eq!(p(&v, "x^2 + 1").div_exact(&p(&v, "x - 1")), None);
    }

    #[test]
    fn generic_variables_block_conjugation() {
        let v = VarTable::with_flags([("x", VarFlag::Real), ("alpha", VarFlag::Generic)]).unwrap();
        assert!(p(&v, "i*x").conj().is_ok());
        assert!(matches!(
            p(&v, "x - alpha").conj(),
            Err(KernelError::ConjugationUndefined(_))
        ));
    }

    #[test]
    fn prints_canonically() {
        let v = xy();
        assert_eq!(p(&v, "y^2 + x^2").to_string(), "x^2 + y^2");
        assert_eq!(p(&v, "-(3/4)*i*x*y + 2").to_string(), "-(3/4)i*x*y + 2");
        assert_eq!(p(&v, "(1+2*i)*x - y").to_string(), "(1+2i)*x - y");
    }
}
