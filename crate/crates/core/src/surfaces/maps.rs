use crate::kernel::{RatFunc, RingMap};
use crate::{Error, Result};

use super::SurfacePresentation;

/// Every generator of `codomain` pulls back into the ideal of `domain`.
/// Rational images are accepted when their numerator lies in the ideal,
/// which is the statement on the chart where the denominators are units.
pub fn pulls_back_ideal(
    pullback: &RingMap,
    codomain: &SurfacePresentation,
    domain: &SurfacePresentation,
    localized: bool,
) -> Result<bool> {
    for g in codomain.generators() {
        let img = pullback.apply(g)?;
        let ok = if localized {
            domain.contains_localized(img.num())?
        } else {
            domain.contains(img.num())?
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Two substitutions agree on every coordinate modulo the ideal of `domain`.
pub fn agree_modulo(a: &RingMap, b: &RingMap, domain: &SurfacePresentation) -> Result<bool> {
    if a.conjugates_coefficients() != b.conjugates_coefficients() || **a.source() != **b.source() {
        return Ok(false);
    }
    for (ia, ib) in a.images().iter().zip(b.images()) {
        let diff = ia.cross_difference(ib)?;
        if !diff.is_zero() && !domain.contains(&diff)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A morphism (or anti-morphism) `domain → codomain` given by its pullback
/// `ℂ[codomain] → ℂ[domain]`.
#[derive(Clone, Debug)]
pub struct PresentationMap {
    pub domain: SurfacePresentation,
    pub codomain: SurfacePresentation,
    pub pullback: RingMap,
}

impl PresentationMap {
    pub fn new(
        domain: &SurfacePresentation,
        codomain: &SurfacePresentation,
        pullback: RingMap,
    ) -> Result<Self> {
        if **pullback.source() != **codomain.vars() || **pullback.target() != **domain.vars() {
            return Err(crate::KernelError::VarTableMismatch.into());
        }
        Ok(Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            pullback,
        })
    }

    /// Substitution given as text images; unlisted coordinates keep their name.
    pub fn parse(
        domain: &SurfacePresentation,
        codomain: &SurfacePresentation,
        images: &[(&str, &str)],
        conjugates: bool,
    ) -> Result<Self> {
        let pullback = RingMap::parse(codomain.vars(), domain.vars(), images, conjugates)?;
        Self::new(domain, codomain, pullback)
    }

    pub fn identity(p: &SurfacePresentation) -> Self {
        Self {
            domain: p.clone(),
            codomain: p.clone(),
            pullback: RingMap::identity(p.vars()),
        }
    }

    pub fn is_anti_regular(&self) -> bool {
        self.pullback.conjugates_coefficients()
    }

    pub fn is_well_defined(&self) -> Result<bool> {
        pulls_back_ideal(&self.pullback, &self.codomain, &self.domain, false)
    }

    /// `self ∘ first` as point maps: `first` then `self`.
    pub fn compose_after(&self, first: &PresentationMap) -> Result<PresentationMap> {
        let pullback = first.pullback.after(&self.pullback)?;
        Self::new(&first.domain, &self.codomain, pullback)
    }

    /// Agrees with `other` as maps into the codomain, modulo the domain ideal.
    pub fn agrees_with(&self, other: &PresentationMap) -> Result<bool> {
        agree_modulo(&self.pullback, &other.pullback, &self.domain)
    }

    /// Same map with polynomial images replaced by their normal forms
    /// modulo the domain ideal.
    pub fn reduced(&self) -> Result<PresentationMap> {
        let images = self
            .pullback
            .images()
            .iter()
            .map(|f| match f.as_poly() {
                Some(p) => Ok(RatFunc::from_poly(self.domain.ideal().normal_form(p)?)),
                None => Ok(f.clone()),
            })
            .collect::<Result<Vec<_>>>()?;
        let pullback = RingMap::new(
            self.pullback.source(),
            self.pullback.target(),
            images,
            self.pullback.conjugates_coefficients(),
        )?;
        Self::new(&self.domain, &self.codomain, pullback)
    }

    pub fn is_identity(&self) -> Result<bool> {
        if **self.domain.vars() != **self.codomain.vars() {
            return Ok(false);
        }
        agree_modulo(
            &self.pullback,
            &RingMap::identity(self.domain.vars()),
            &self.domain,
        )
    }
}

/// An isomorphism with an explicit inverse.
#[derive(Clone, Debug)]
pub struct PresentationIso {
    pub forward: PresentationMap,
    pub inverse: PresentationMap,
}

impl PresentationIso {
    /// Checks both ideal inclusions and both compositions.
    pub fn new(forward: PresentationMap, inverse: PresentationMap) -> Result<Self> {
        let iso = Self { forward, inverse };
        if !iso.certify()? {
            return Err(Error::NotIsomorphism(format!(
                "{} -> {}",
                iso.forward.domain.name(),
                iso.forward.codomain.name()
            )));
        }
        Ok(iso)
    }

    fn certify(&self) -> Result<bool> {
        Ok(self.forward.is_well_defined()?
            && self.inverse.is_well_defined()?
            && self.inverse.compose_after(&self.forward)?.is_identity()?
            && self.forward.compose_after(&self.inverse)?.is_identity()?)
    }

    pub fn identity(p: &SurfacePresentation) -> Self {
        Self {
            forward: PresentationMap::identity(p),
            inverse: PresentationMap::identity(p),
        }
    }

    pub fn inverted(&self) -> Self {
        Self {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }

    /// `self ∘ first`.
    pub fn compose_after(&self, first: &PresentationIso) -> Result<PresentationIso> {
        Ok(Self {
            forward: self.forward.compose_after(&first.forward)?.reduced()?,
            inverse: first.inverse.compose_after(&self.inverse)?.reduced()?,
        })
    }
}

/// A map whose pullback conjugates coefficients and preserves the ideals.
#[derive(Clone, Debug)]
pub struct AntiRegularMap(PresentationMap);

impl AntiRegularMap {
    pub fn new(map: PresentationMap) -> Result<Self> {
        if !map.is_anti_regular() {
            return Err(Error::NotAntiInvolution(
                "pullback does not conjugate coefficients".into(),
            ));
        }
        if !map.is_well_defined()? {
            return Err(Error::NotAntiInvolution(
                "pullback does not preserve the ideal".into(),
            ));
        }
        Ok(Self(map))
    }

    pub fn map(&self) -> &PresentationMap {
        &self.0
    }
}

/// An anti-regular involution of one presentation.
#[derive(Clone, Debug)]
pub struct RealStructure(AntiRegularMap);

impl RealStructure {
    pub fn new(map: PresentationMap) -> Result<Self> {
        if **map.domain.vars() != **map.codomain.vars() {
            return Err(Error::NotAntiInvolution(
                "domain and codomain differ".into(),
            ));
        }
        let anti = AntiRegularMap::new(map).map_err(|e| match e {
            Error::Kernel(k) => Error::NotAntiInvolution(k.to_string()),
            other => other,
        })?;
        let sq = anti.map().compose_after(anti.map())?;
        let ok = sq
            .is_identity()
            .map_err(|e| Error::NotAntiInvolution(e.to_string()))?;
        if !ok {
            return Err(Error::NotAntiInvolution(
                "square is not the identity".into(),
            ));
        }
        Ok(Self(anti))
    }

    /// Coordinatewise conjugation of the presentation, if it preserves the ideal.
    pub fn standard(p: &SurfacePresentation) -> Result<Self> {
        Self::new(PresentationMap::new(p, p, RingMap::conjugation(p.vars()))?)
    }

    pub fn map(&self) -> &PresentationMap {
        self.0.map()
    }

    pub fn presentation(&self) -> &SurfacePresentation {
        &self.map().domain
    }
}

/// `τ∘ρ∘τ∘ρ = id` modulo the ideal.
pub fn is_cocycle(tau: &PresentationMap, rho: &RealStructure) -> Result<bool> {
    let p = rho.presentation();
    if **tau.domain.vars() != **p.vars()
        || **tau.codomain.vars() != **p.vars()
        || !tau.is_well_defined()?
    {
        return Err(Error::NotAutomorphism(format!("{:?}", tau.pullback)));
    }
    let tr = tau.compose_after(rho.map())?;
    let four = tr.compose_after(&tr)?;
    four.is_identity()
}

/// `θ∘ρ = ρ′∘θ` modulo the ideal of the source of `θ`.
pub fn are_equivalent_structures(
    rho: &RealStructure,
    rho_prime: &RealStructure,
    theta: &PresentationIso,
) -> Result<bool> {
    let f = &theta.forward;
    if **f.domain.vars() != **rho.presentation().vars()
        || **f.codomain.vars() != **rho_prime.presentation().vars()
    {
        return Err(Error::NotIsomorphism(
            "θ does not connect the two presentations".into(),
        ));
    }
    let lhs = f.compose_after(rho.map())?;
    let rhs = rho_prime.map().compose_after(f)?;
    lhs.agrees_with(&rhs)
}
