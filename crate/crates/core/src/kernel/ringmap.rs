use std::fmt;

use super::{parse_poly, KernelError, Poly, RatFunc, VarFlag, Vars};

/// Substitution homomorphism from polynomials over `source` to rational
/// functions over `target`, optionally conjugating coefficients first.
///
/// Read geometrically, a map with images `(f₁, …, fₙ)` is the pullback of
/// the point map `q ↦ (f₁(q), …, fₙ(q))`; with `conjugates_coefficients`
/// set it is the pullback of the anti-regular map `q ↦ (f̄₁(q̄), …)`.
#[derive(Clone)]
pub struct RingMap {
    source: Vars,
    target: Vars,
    images: Vec<RatFunc>,
    conjugates_coefficients: bool,
}

impl RingMap {
    pub fn new(
        source: &Vars,
        target: &Vars,
        images: Vec<RatFunc>,
        conjugates_coefficients: bool,
    ) -> Result<Self, KernelError> {
        if images.len() != source.len() {
            return Err(KernelError::ArityMismatch {
                expected: source.len(),
                got: images.len(),
            });
        }
        for im in &images {
            if **im.vars() != **target {
                return Err(KernelError::VarTableMismatch);
            }
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            images,
            conjugates_coefficients,
        })
    }

    pub fn identity(vars: &Vars) -> Self {
        let images = (0..vars.len())
            .map(|i| RatFunc::from_poly(Poly::var_at(vars, i)))
            .collect();
        Self {
            source: vars.clone(),
            target: vars.clone(),
            images,
            conjugates_coefficients: false,
        }
    }

    /// Coefficient conjugation with every variable fixed.
    pub fn conjugation(vars: &Vars) -> Self {
        Self {
            conjugates_coefficients: true,
            ..Self::identity(vars)
        }
    }

    /// Images given as text, by source variable name. Variables not listed
    /// map to the target variable of the same name.
    pub fn parse(
        source: &Vars,
        target: &Vars,
        images: &[(&str, &str)],
        conjugates_coefficients: bool,
    ) -> Result<Self, KernelError> {
        let mut out: Vec<Option<RatFunc>> = vec![None; source.len()];
        for (name, text) in images {
            let idx = source.require(name)?;
            out[idx] = Some(parse_ratfunc(target, text)?);
        }
        let images = out
            .into_iter()
            .enumerate()
            .map(|(i, im)| match im {
                Some(im) => Ok(im),
                None => Poly::var(target, source.name(i)).map(RatFunc::from_poly),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(source, target, images, conjugates_coefficients)
    }

    pub fn source(&self) -> &Vars {
        &self.source
    }

    pub fn target(&self) -> &Vars {
        &self.target
    }

    pub fn images(&self) -> &[RatFunc] {
        &self.images
    }

    pub fn image(&self, name: &str) -> Result<&RatFunc, KernelError> {
        Ok(&self.images[self.source.require(name)?])
    }

    pub fn conjugates_coefficients(&self) -> bool {
        self.conjugates_coefficients
    }

    /// Applies the map to a polynomial over `source`.
    pub fn apply(&self, p: &Poly) -> Result<RatFunc, KernelError> {
        if **p.vars() != *self.source {
            return Err(KernelError::VarTableMismatch);
        }
        let p = if self.conjugates_coefficients {
            for idx in p.support() {
                if self.source.flag(idx) == VarFlag::Generic {
                    return Err(KernelError::ConjugationUndefined(
                        self.source.name(idx).to_string(),
                    ));
                }
            }
            p.conj_coefficients()
        } else {
            p.clone()
        };
        let n = self.source.len();
        let max_exp: Vec<u32> = (0..n).map(|i| p.degree_in(i)).collect();
        let mut num_pows: Vec<Vec<Poly>> = Vec::with_capacity(n);
        let mut den_pows: Vec<Vec<Poly>> = Vec::with_capacity(n);
        for (i, im) in self.images.iter().enumerate() {
            num_pows.push(powers(im.num(), max_exp[i]));
            den_pows.push(if im.as_poly().is_some() {
                Vec::new()
            } else {
                powers(im.den(), max_exp[i])
            });
        }
        let mut total = Poly::zero(&self.target);
        for (m, c) in p.terms() {
            let mut t = Poly::constant(&self.target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &num_pows[i][e as usize];
                }
                if !den_pows[i].is_empty() && max_exp[i] > e {
                    t = &t * &den_pows[i][(max_exp[i] - e) as usize];
                }
            }
            total = &total + &t;
        }
        let mut den = Poly::one(&self.target);
        for i in 0..n {
            if !den_pows[i].is_empty() && max_exp[i] > 0 {
                den = &den * &den_pows[i][max_exp[i] as usize];
            }
        }
        RatFunc::new(total, den)
    }

    pub fn apply_ratfunc(&self, f: &RatFunc) -> Result<RatFunc, KernelError> {
        self.apply(f.num())?.div(&self.apply(f.den())?)
    }

    /// `self ∘ first`: substitute with `first`, then with `self`.
    pub fn after(&self, first: &RingMap) -> Result<RingMap, KernelError> {
        if *first.target != *self.source {
            return Err(KernelError::VarTableMismatch);
        }
        let images = first
            .images
            .iter()
            .map(|im| self.apply_ratfunc(im))
            .collect::<Result<Vec<_>, _>>()?;
        RingMap::new(
            &first.source,
            &self.target,
            images,
            first.conjugates_coefficients ^ self.conjugates_coefficients,
        )
    }
}

fn powers(p: &Poly, max: u32) -> Vec<Poly> {
    let mut v = Vec::with_capacity(max as usize + 1);
    v.push(Poly::one(p.vars()));
    for k in 1..=max as usize {
        let next = &v[k - 1] * p;
        v.push(next);
    }
    v
}

/// Parses `num` or `num / den` where both sides are polynomial text; a
/// top-level `/` followed by a parenthesized group is read as division.
pub fn parse_ratfunc(vars: &Vars, s: &str) -> Result<RatFunc, KernelError> {
    match split_top_level_division(s) {
        Some((n, d)) => RatFunc::new(parse_poly(vars, n)?, parse_poly(vars, d)?),
        None => Ok(RatFunc::from_poly(parse_poly(vars, s)?)),
    }
}

fn split_top_level_division(s: &str) -> Option<(&str, &str)> {
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    for (k, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'/' if depth == 0 => {
                let rest = s[k + 1..].trim_start();
                if rest.starts_with('(') {
                    return Some((&s[..k], rest));
                }
            }
            _ => {}
        }
    }
    None
}

impl fmt::Debug for RingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, im)| format!("{} -> {}", self.source.name(i), im))
            .collect();
        write!(
            f,
            "RingMap[{}{}]",
            if self.conjugates_coefficients {
                "conj; "
            } else {
                ""
            },
            parts.join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::VarTable;

    #[test]
    fn plane_coordinates_pull_back_circle_to_product() {
        let v = VarTable::new(&["x", "u"]).unwrap();
        let m = RingMap::parse(&v, &v, &[("x", "x + u"), ("u", "i*x - i*u")], false).unwrap();
        let circle = parse_poly(&v, "x^2 + u^2").unwrap();
        assert_eq!(
            m.apply(&circle).unwrap(),
            RatFunc::from_poly(parse_poly(&v, "4*x*u").unwrap())
        );
    }

    #[test]
    fn identity_is_identity() {
        let v = VarTable::new(&["x", "y"]).unwrap();
        let p = parse_poly(&v, "x^3*y - (2/3)i*y + 7").unwrap();
        assert_eq!(RingMap::identity(&v).apply(&p).unwrap().as_poly(), Some(&p));
    }

    #[test]
    fn conjugating_identity() {
        let v = VarTable::new(&["x", "y"]).unwrap();
        let p = parse_poly(&v, "x + i*y").unwrap();
        let q = parse_poly(&v, "x - i*y").unwrap();
        assert_eq!(
            RingMap::conjugation(&v).apply(&p).unwrap().as_poly(),
            Some(&q)
        );
    }

    #[test]
    fn conjugation_fails_on_generic_parameter() {
        let v = VarTable::with_flags([("x", VarFlag::Real), ("alpha", VarFlag::Generic)]).unwrap();
        let p = parse_poly(&v, "x - alpha").unwrap();
        assert!(matches!(
            RingMap::conjugation(&v).apply(&p),
            Err(KernelError::ConjugationUndefined(_))
        ));
        // no generic variable present: fine
        assert!(RingMap::conjugation(&v)
            .apply(&parse_poly(&v, "i*x").unwrap())
            .is_ok());
    }

    #[test]
    fn rational_images_share_a_denominator() {
        let v = VarTable::new(&["x", "y", "u", "v", "alpha", "beta"]).unwrap();
        let chart = RingMap::parse(
            &v,
            &v,
            &[
                ("y", "x*(x-1)*(x-alpha)/(u)"),
                ("v", "u*(u-1)*(u-beta)/(x)"),
            ],
            false,
        )
        .unwrap();
        let g3 = parse_poly(&v, "y*v - (x-1)*(x-alpha)*(u-1)*(u-beta)").unwrap();
        assert!(chart.apply(&g3).unwrap().is_zero());
    }

    #[test]
    fn composition_xors_conjugation_flags() {
        let v = VarTable::new(&["x"]).unwrap();
        let c = RingMap::conjugation(&v);
        let twice = c.after(&c).unwrap();
        assert!(!twice.conjugates_coefficients());
        let p = parse_poly(&v, "(2+i)*x").unwrap();
        assert_eq!(twice.apply(&p).unwrap().as_poly(), Some(&p));
    }
}
