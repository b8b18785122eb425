//! Surface presentations, their maps and real structures, and the point
//! configurations of the blown-up models.

mod checks;
mod config;
mod maps;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::kernel::{
    parse_rational, GaussianRational, Ideal, KernelError, Poly, VarFlag, VarTable, Vars,
};
use crate::{Error, Result};

pub use checks::{
    build_sigma, build_sigma_flagged, eta_link, isomorphism_chain_report, p2_link_coefficients,
    remark_coordinate_change, swap_iso, verify_eta_chart, verify_nu_chart, verify_p2_automorphism,
    verify_remark_coordinate_change, verify_remark_coordinate_change_at, verify_swap_iso,
    ChainLink, IsomorphismChain,
};
pub use config::{
    conj_point, eval_form, fmt_scalar, form_from_coeffs, lift_real_structure, linear_coeffs,
    linear_form_name, proportional_forms, real_point_analysis, x_configuration, y_configuration,
    Boundary, Center, FixedPointReport, InducedActionReport, P2Point, PointConfiguration,
};
pub use maps::{
    agree_modulo, are_equivalent_structures, is_cocycle, pulls_back_ideal, AntiRegularMap,
    PresentationIso, PresentationMap, RealStructure,
};

/// A surface parameter: a named symbol or a rational value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Param {
    Symbolic(String),
    Rational(BigRational),
}

impl Param {
    pub fn symbolic(name: &str) -> Self {
        Param::Symbolic(name.to_string())
    }

    pub fn alpha() -> Self {
        Self::symbolic("alpha")
    }

    pub fn beta() -> Self {
        Self::symbolic("beta")
    }

    pub fn rational(q: BigRational) -> Self {
        Param::Rational(q)
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Param::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn integer(n: i64) -> Self {
        Self::ratio(n, 1)
    }

    /// `symbolic` selects the symbol `name`; anything else must be `p`,
    /// `-p` or `p/q`.
    pub fn parse(text: &str, name: &str) -> Result<Self> {
        if text.trim() == "symbolic" {
            return Ok(Self::symbolic(name));
        }
        Ok(Param::Rational(parse_rational(text)?))
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Param::Symbolic(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Param::Rational(q) => Some(q),
            Param::Symbolic(_) => None,
        }
    }

    pub fn symbol(&self) -> Option<&str> {
        match self {
            Param::Symbolic(s) => Some(s),
            Param::Rational(_) => None,
        }
    }

    /// Rejects the values 0 and 1.
    pub fn check_admissible(&self) -> Result<()> {
        if let Param::Rational(q) = self {
            if q.is_zero() || q.is_one() {
                return Err(Error::ForbiddenParameter(format!(
                    "{q} is not allowed; the parameter must avoid 0 and 1"
                )));
            }
        }
        Ok(())
    }

    /// The parameter as a polynomial over `vars`.
    pub fn to_poly(&self, vars: &Vars) -> Result<Poly> {
        Ok(match self {
            Param::Symbolic(s) => Poly::var(vars, s)?,
            Param::Rational(q) => Poly::constant(vars, GaussianRational::from_rational(q.clone())),
        })
    }

    /// `p` and `1 − p` for a symbol, nothing for a value.
    pub fn units(&self, vars: &Vars) -> Result<Vec<Poly>> {
        Ok(match self {
            Param::Symbolic(_) => {
                let p = self.to_poly(vars)?;
                vec![p.clone(), &Poly::one(vars) - &p]
            }
            Param::Rational(_) => Vec::new(),
        })
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Symbolic(s) => write!(f, "{s}"),
            Param::Rational(q) => write!(f, "{q}"),
        }
    }
}

/// Table with the given leading names followed by the symbolic parameters,
/// sorted and deduplicated, all carrying `flag`.
pub fn table_with_params(front: &[&str], params: &[&Param], flag: VarFlag) -> Result<Vars> {
    let mut syms: Vec<&str> = params.iter().filter_map(|p| p.symbol()).collect();
    syms.sort_unstable();
    syms.dedup();
    let entries = front
        .iter()
        .map(|n| (*n, VarFlag::Real))
        .chain(syms.into_iter().map(|s| (s, flag)));
    Ok(VarTable::with_flags(entries)?)
}

/// An affine variety given by an ideal, together with the polynomials
/// assumed invertible (parameter constraints).
#[derive(Clone)]
pub struct SurfacePresentation {
    name: String,
    vars: Vars,
    ideal: Ideal,
    units: Vec<Poly>,
    localized: Arc<OnceLock<std::result::Result<Ideal, KernelError>>>,
}

impl SurfacePresentation {
    pub fn new(
        name: impl Into<String>,
        vars: &Vars,
        gens: Vec<Poly>,
        units: Vec<Poly>,
    ) -> Result<Self> {
        for u in &units {
            if **u.vars() != **vars {
                return Err(KernelError::VarTableMismatch.into());
            }
        }
        Ok(Self {
            name: name.into(),
            vars: vars.clone(),
            ideal: Ideal::new(vars, gens)?,
            units,
            localized: Arc::new(OnceLock::new()),
        })
    }

    /// Affine space on `vars` (zero ideal).
    pub fn affine_space(name: impl Into<String>, vars: &Vars) -> Self {
        Self::new(name, vars, Vec::new(), Vec::new()).expect("empty generator list")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn generators(&self) -> &[Poly] {
        self.ideal.gens()
    }

    pub fn units(&self) -> &[Poly] {
        &self.units
    }

    pub fn coordinate(&self, name: &str) -> Result<Poly> {
        Ok(Poly::var(&self.vars, name)?)
    }

    /// The ideal with the units inverted, pulled back to the polynomial ring.
    pub fn localized_ideal(&self) -> Result<&Ideal> {
        if self.units.is_empty() {
            return Ok(&self.ideal);
        }
        self.localized
            .get_or_init(|| self.ideal.localize(&self.units))
            .as_ref()
            .map_err(|e| Error::Kernel(e.clone()))
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.ideal.contains(p)?)
    }

    /// Membership after inverting the units.
    pub fn contains_localized(&self, p: &Poly) -> Result<bool> {
        Ok(self.localized_ideal()?.contains(p)?)
    }
}

impl fmt::Debug for SurfacePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = V{:?}", self.name, self.ideal)
    }
}

/// Generators of `S_{a,b}` over `vars`.
pub fn s_generators(vars: &Vars, alpha: &Param, beta: &Param) -> Result<[Poly; 3]> {
    let v = |n: &str| Poly::var(vars, n);
    let (x, y, u, w) = (v("x")?, v("y")?, v("u")?, v("v")?);
    let a = alpha.to_poly(vars)?;
    let b = beta.to_poly(vars)?;
    let one = Poly::one(vars);
    let xm1 = &x - &one;
    let xma = &x - &a;
    let um1 = &u - &one;
    let umb = &u - &b;
    let g1 = &(&y * &u) - &(&(&x * &xm1) * &xma);
    let g2 = &(&x * &w) - &(&(&u * &um1) * &umb);
    let g3 = &(&y * &w) - &(&(&(&xm1 * &xma) * &um1) * &umb);
    Ok([g1, g2, g3])
}

/// `S_{α,β}` with symbolic parameters flagged generic.
pub fn make_s(alpha: &Param, beta: &Param) -> Result<SurfacePresentation> {
    make_s_flagged(alpha, beta, VarFlag::Generic)
}

/// `S_{α,β}` with symbolic parameters carrying `flag`.
pub fn make_s_flagged(alpha: &Param, beta: &Param, flag: VarFlag) -> Result<SurfacePresentation> {
    alpha.check_admissible()?;
    beta.check_admissible()?;
    let vars = table_with_params(&["x", "y", "u", "v"], &[alpha, beta], flag)?;
    let gens = s_generators(&vars, alpha, beta)?.to_vec();
    let mut units = alpha.units(&vars)?;
    if beta != alpha {
        units.extend(beta.units(&vars)?);
    }
    SurfacePresentation::new(format!("S[{alpha},{beta}]"), &vars, gens, units)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{parse_poly, RingMap};

    #[test]
    fn generators_verbatim() {
        let s = make_s(&Param::alpha(), &Param::beta()).unwrap();
        let v = s.vars();
        let expected = [
            "y*u - x*(x-1)*(x-alpha)",
            "x*v - u*(u-1)*(u-beta)",
            "y*v - (x-1)*(x-alpha)*(u-1)*(u-beta)",
        ];
        for (g, e) in s.generators().iter().zip(expected) {
            assert_eq!(*g, parse_poly(v, e).unwrap());
        }
    }

    #[test]
    fn origin_residual_of_third_generator() {
        let s = make_s(&Param::alpha(), &Param::beta()).unwrap();
        let m = RingMap::parse(s.vars(), s.vars(), &[("x", "0"), ("u", "0")], false).unwrap();
        let r = m.apply(&s.generators()[2]).unwrap();
        assert_eq!(
            r.as_poly(),
            Some(&parse_poly(s.vars(), "y*v - alpha*beta").unwrap())
        );
    }

    #[test]
    fn forbidden_values() {
        assert!(matches!(
            make_s(&Param::integer(1), &Param::integer(2)),
            Err(Error::ForbiddenParameter(_))
        ));
        assert!(matches!(
            make_s(&Param::integer(3), &Param::integer(0)),
            Err(Error::ForbiddenParameter(_))
        ));
        assert!(make_s(&Param::integer(2), &Param::ratio(1, 2)).is_ok());
    }

    #[test]
    fn parse_param() {
        assert_eq!(Param::parse("symbolic", "beta").unwrap(), Param::beta());
        assert_eq!(Param::parse("-3/6", "a").unwrap(), Param::ratio(-1, 2));
        assert!(Param::parse("0.5", "a").is_err());
    }
}
