use std::fmt;
use std::sync::{Arc, OnceLock};

use super::groebner::{buchberger, default_step_budget, GroebnerBasis};
use super::{KernelError, MonomialOrder, Poly, RatFunc, VarFlag, VarTable, Vars};

/// Ideal given by generators. A grevlex basis is computed on first use and
/// kept for membership tests.
#[derive(Clone)]
pub struct Ideal {
    vars: Vars,
    gens: Vec<Poly>,
    grevlex: Arc<OnceLock<Result<GroebnerBasis, KernelError>>>,
}

impl Ideal {
    pub fn new(vars: &Vars, gens: Vec<Poly>) -> Result<Self, KernelError> {
        for g in &gens {
            if **g.vars() != **vars {
                return Err(KernelError::VarTableMismatch);
            }
        }
        Ok(Self {
            vars: vars.clone(),
            gens,
            grevlex: Arc::new(OnceLock::new()),
        })
    }

    /// Parses each generator from text.
    pub fn parse(vars: &Vars, gens: &[&str]) -> Result<Self, KernelError> {
        let gens = gens
            .iter()
            .map(|g| super::parse_poly(vars, g))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(vars, gens)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// Reduced basis under `ord`, computed afresh.
    pub fn groebner(&self, ord: &MonomialOrder) -> Result<GroebnerBasis, KernelError> {
        if *ord == MonomialOrder::Grevlex {
            return self.grevlex_basis().cloned();
        }
        buchberger(&self.vars, &self.gens, ord, default_step_budget())
    }

    pub fn grevlex_basis(&self) -> Result<&GroebnerBasis, KernelError> {
        self.grevlex
            .get_or_init(|| {
                buchberger(
                    &self.vars,
                    &self.gens,
                    &MonomialOrder::Grevlex,
                    default_step_budget(),
                )
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn contains(&self, p: &Poly) -> Result<bool, KernelError> {
        let gb = self.grevlex_basis()?;
        Ok(gb.normal_form(p, &MonomialOrder::Grevlex)?.is_zero())
    }

    /// Membership of a numerator; the denominator is assumed not to be a
    /// zero divisor modulo the ideal.
    pub fn contains_numerator(&self, f: &RatFunc) -> Result<bool, KernelError> {
        self.contains(f.num())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, KernelError> {
        for g in &other.gens {
            if !self.contains(&g.embed(&self.vars)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool, KernelError> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_unit(&self) -> Result<bool, KernelError> {
        Ok(self.grevlex_basis()?.is_unit())
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly, KernelError> {
        self.grevlex_basis()?
            .normal_form(p, &MonomialOrder::Grevlex)
    }

    /// `self + ⟨extra⟩`.
    pub fn with(&self, extra: &[Poly]) -> Result<Ideal, KernelError> {
        let mut gens = self.gens.clone();
        for e in extra {
            gens.push(e.embed(&self.vars)?);
        }
        Ideal::new(&self.vars, gens)
    }

    /// Same generators over a table that contains every used name.
    pub fn embed(&self, target: &Vars) -> Result<Ideal, KernelError> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.embed(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(target, gens)
    }

    /// Elimination ideal `I ∩ k[remaining]`, expressed over the table of the
    /// remaining variables in their original order.
    pub fn eliminate(&self, names: &[&str]) -> Result<Ideal, KernelError> {
        let front = names
            .iter()
            .map(|n| self.vars.require(n))
            .collect::<Result<Vec<_>, _>>()?;
        let ord = MonomialOrder::block(front.iter().copied());
        let gb = buchberger(&self.vars, &self.gens, &ord, default_step_budget())?;
        let keep: Vec<(&str, VarFlag)> = self
            .vars
            .entries()
            .enumerate()
            .filter(|(i, _)| !front.contains(i))
            .map(|(_, e)| e)
            .collect();
        let sub = VarTable::with_flags(keep)?;
        let gens = gb
            .polys()
            .into_iter()
            .filter(|p| front.iter().all(|&i| !p.uses_var(i)))
            .map(|p| p.embed(&sub))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(&sub, gens)
    }

    /// Saturation `I : (∏ denominators)^∞`, the ideal of the localization
    /// pulled back to the polynomial ring. Computed by adjoining
    /// `1 − w·∏D` for a fresh `w` and eliminating it.
    pub fn localize(&self, denominators: &[Poly]) -> Result<Ideal, KernelError> {
        let w = self.vars.fresh_name("w");
        let ext = self.vars.extended(&[(w.as_str(), VarFlag::Real)])?;
        let mut prod = Poly::one(&ext);
        for d in denominators {
            prod = prod.checked_mul(&d.embed(&ext)?)?;
        }
        let mut gens = self
            .gens
            .iter()
            .map(|g| g.embed(&ext))
            .collect::<Result<Vec<_>, _>>()?;
        let wv = Poly::var(&ext, &w)?;
        gens.push(Poly::one(&ext).checked_sub(&wv.checked_mul(&prod)?)?);
        let elim = Ideal::new(&ext, gens)?.eliminate(&[w.as_str()])?;
        // The remaining table equals the original one.
        elim.embed(&self.vars)
    }

    pub fn saturate(&self, f: &Poly) -> Result<Ideal, KernelError> {
        self.localize(std::slice::from_ref(f))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// `p ∈ I`.
pub fn ideal_member(p: &Poly, ideal: &Ideal) -> Result<bool, KernelError> {
    ideal.contains(p)
}

/// `I = J`, both over the same variable names.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool, KernelError> {
    a.equals(b)
}
