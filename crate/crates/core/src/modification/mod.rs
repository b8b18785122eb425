//! Affine modifications: Rees-algebra presentations by elimination, their
//! fibres over the parameter line, and exact Jacobian spot checks.

use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::kernel::linalg;
use crate::kernel::{parse_poly, GaussianRational, Ideal, Poly, RatFunc, RingMap, VarTable, Vars};
use crate::report::CertifiedReport;
use crate::surfaces::{make_s, Param, SurfacePresentation};
use crate::{Error, Result};

/// JSON form of a modification: ring variables (parameters included),
/// generators of the centre, the distinguished element and the
/// polynomials assumed invertible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDocument {
    pub vars: Vec<String>,
    pub generators: Vec<String>,
    pub f: String,
    #[serde(default)]
    pub constraints: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ModificationSpec {
    pub vars: Vars,
    pub generators: Vec<Poly>,
    pub f: Poly,
    pub constraints: Vec<Poly>,
}

impl ModificationSpec {
    pub fn from_document(doc: &SpecDocument) -> Result<Self> {
        let vars = VarTable::new(&doc.vars)?;
        let p = |s: &String| parse_poly(&vars, s).map_err(Error::from);
        let generators = doc.generators.iter().map(p).collect::<Result<Vec<_>>>()?;
        if generators.is_empty() {
            return Err(Error::InvalidSpec("no generators".into()));
        }
        Ok(Self {
            f: p(&doc.f)?,
            constraints: doc.constraints.iter().map(p).collect::<Result<Vec<_>>>()?,
            vars,
            generators,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SpecDocument =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> SpecDocument {
        SpecDocument {
            vars: self.vars.names().to_vec(),
            generators: self.generators.iter().map(ToString::to_string).collect(),
            f: self.f.to_string(),
            constraints: self.constraints.iter().map(ToString::to_string).collect(),
        }
    }

    fn centre(&self) -> Result<Ideal> {
        let i = Ideal::new(&self.vars, self.generators.clone())?;
        if self.constraints.is_empty() {
            Ok(i)
        } else {
            Ok(i.localize(&self.constraints)?)
        }
    }
}

/// The modification of the plane along the three-generator ideal cut out
/// by the circle and the two points on the x-axis.
pub fn plane_spec(alpha: &Param) -> Result<ModificationSpec> {
    alpha.check_admissible()?;
    let (a, vars) = match alpha {
        Param::Symbolic(s) => (s.clone(), vec!["x".to_string(), "y".into(), s.clone()]),
        Param::Rational(q) => (format!("({q})"), vec!["x".to_string(), "y".into()]),
    };
    let constraints = if alpha.is_symbolic() {
        vec![a.clone(), format!("1 - {a}")]
    } else {
        vec![]
    };
    ModificationSpec::from_document(&SpecDocument {
        vars,
        generators: vec![
            "x^2 + y^2".into(),
            format!("x*(x - 1)*(x - {a})"),
            format!("y*(x - 1)*(x - {a})"),
        ],
        f: "x^2 + y^2".into(),
        constraints,
    })
}

/// `R[T₁..T_k] / I` presenting `R[It]/(1 − ft)`.
#[derive(Clone)]
pub struct ReesPresentation {
    pub base: Vars,
    pub ambient: Vars,
    pub t_names: Vec<String>,
    pub ideal: Ideal,
    pub constraints: Vec<Poly>,
}

impl ReesPresentation {
    pub fn t(&self, k: usize) -> Result<Poly> {
        Ok(Poly::var(&self.ambient, &self.t_names[k])?)
    }

    /// `g_k − T_k·f` lies in the presentation for every generator.
    pub fn soundness(&self, spec: &ModificationSpec) -> Result<CertifiedReport> {
        let mut rep = CertifiedReport::new("rees presentation");
        let f = spec.f.embed(&self.ambient)?;
        for (k, g) in spec.generators.iter().enumerate() {
            let rel = &g.embed(&self.ambient)? - &(&self.t(k)? * &f);
            let ok = self.ideal.contains(&rel)?;
            rep.check(
                format!("g{}-recovered", k + 1),
                format!("{g} = T{}·f", k + 1),
                ok,
                rel.to_string(),
            );
        }
        let t_free = self.ambient.index_of("t").is_none();
        rep.check(
            "t-free",
            "the presentation does not involve t",
            t_free,
            format!("{:?}", self.ambient.names()),
        );
        Ok(rep)
    }
}

impl fmt::Display for ReesPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.ideal)
    }
}

/// Eliminates `t` from `⟨T_k − g_k t, 1 − f t⟩`, inverting the constraints.
pub fn rees_presentation(spec: &ModificationSpec) -> Result<ReesPresentation> {
    if !spec.centre()?.contains(&spec.f)? {
        return Err(Error::FNotInIdeal(spec.f.to_string()));
    }
    let t_names: Vec<String> = (1..=spec.generators.len())
        .map(|k| format!("T{k}"))
        .collect();
    let mut names: Vec<String> = spec.vars.names().to_vec();
    names.extend(t_names.iter().cloned());
    let ambient = VarTable::new(&names)?;
    let mut front = vec!["t".to_string()];
    front.extend(names.iter().cloned());
    let big = VarTable::new(&front)?;
    let t = Poly::var(&big, "t")?;
    let one = Poly::one(&big);
    let mut gens = Vec::new();
    for (k, g) in spec.generators.iter().enumerate() {
        gens.push(&Poly::var(&big, &t_names[k])? - &(&g.embed(&big)? * &t));
    }
    gens.push(&one - &(&spec.f.embed(&big)? * &t));
    let mut ideal = Ideal::new(&big, gens)?;
    let constraints = spec
        .constraints
        .iter()
        .map(|c| c.embed(&ambient))
        .collect::<Result<Vec<_>, _>>()?;
    if !constraints.is_empty() {
        let cs = spec
            .constraints
            .iter()
            .map(|c| c.embed(&big))
            .collect::<Result<Vec<_>, _>>()?;
        ideal = ideal.localize(&cs)?;
    }
    let ideal = ideal.eliminate(&["t"])?.embed(&ambient)?;
    Ok(ReesPresentation {
        base: spec.vars.clone(),
        ambient,
        t_names,
        ideal,
        constraints,
    })
}

fn symbolic_presentation() -> Result<&'static ReesPresentation> {
    static CELL: OnceLock<std::result::Result<ReesPresentation, Error>> = OnceLock::new();
    CELL.get_or_init(|| rees_presentation(&plane_spec(&Param::alpha())?))
        .as_ref()
        .map_err(Clone::clone)
}

/// The symbolic presentation, or its specialization at a rational value.
pub fn fiber_presentation(alpha: &Param) -> Result<Ideal> {
    alpha.check_admissible()?;
    let rees = symbolic_presentation()?;
    let q = match alpha {
        Param::Symbolic(s) if s == "alpha" => return Ok(rees.ideal.clone()),
        Param::Symbolic(s) => return Err(Error::InvalidSpec(format!("symbol {s}: use alpha"))),
        Param::Rational(q) => q,
    };
    let keep: Vec<&str> = rees
        .ambient
        .names()
        .iter()
        .map(String::as_str)
        .filter(|n| *n != "alpha")
        .collect();
    let target = VarTable::new(&keep)?;
    let images = rees
        .ambient
        .names()
        .iter()
        .map(|n| {
            Ok(if n == "alpha" {
                RatFunc::constant(&target, GaussianRational::from_rational(q.clone()))
            } else {
                RatFunc::from_poly(Poly::var(&target, n)?)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let m = RingMap::new(&rees.ambient, &target, images, false)?;
    let gens = rees
        .ideal
        .gens()
        .iter()
        .map(|g| Ok(m.apply(g)?.num().clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(&target, gens)?)
}

/// Chart formulas linking the fibre and `S_α`, produced by an offline
/// elimination. `y`, `v` are polynomials on the fibre; `t2x`, `t3x` are
/// `x·T₂`, `x·T₃` written on `S_α`.
#[derive(Clone, Copy, Debug)]
pub struct FiberFixture {
    pub alpha: (i64, i64),
    pub y: &'static str,
    pub v: &'static str,
    pub t2x: &'static str,
    pub t3x: &'static str,
}

pub const FIBER_FIXTURES: [FiberFixture; 4] = [
    FiberFixture {
        alpha: (2, 1),
        y: "-2*i*T3*x - 2*T3*y + x^2/4 + i*x*y - 3*x/2 + y^2/4 - 3*i*y/2 + 2",
        v: "2*i*T3*x - 2*T3*y + x^2/4 - i*x*y - 3*x/2 + y^2/4 + 3*i*y/2 + 2",
        t2x: "u^2/4 + 3*u*x/4 - 3*u/4 + 3*x^2/4 - 3*x/2 + y/4 + 1/2",
        t3x: "-i*u^2/4 - i*u*x/4 + 3*i*u/4 + i*x^2/4 + i*y/4 - i/2",
    },
    FiberFixture {
        alpha: (3, 1),
        y: "-2*i*T3*x - 2*T3*y + x^2/4 + i*x*y - 2*x + y^2/4 - 2*i*y + 3",
        v: "2*i*T3*x - 2*T3*y + x^2/4 - i*x*y - 2*x + y^2/4 + 2*i*y + 3",
        t2x: "u^2/4 + 3*u*x/4 - u + 3*x^2/4 - 2*x + y/4 + 3/4",
        t3x: "-i*u^2/4 - i*u*x/4 + i*u + i*x^2/4 + i*y/4 - 3*i/4",
    },
    FiberFixture {
        alpha: (-1, 1),
        y: "-2*i*T3*x - 2*T3*y + x^2/4 + i*x*y + y^2/4 - 1",
        v: "2*i*T3*x - 2*T3*y + x^2/4 - i*x*y + y^2/4 - 1",
        t2x: "u^2/4 + 3*u*x/4 + 3*x^2/4 + y/4 - 1/4",
        t3x: "-i*u^2/4 - i*u*x/4 + i*x^2/4 + i*y/4 + i/4",
    },
    FiberFixture {
        alpha: (1, 2),
        y: "-2*i*T3*x - 2*T3*y + x^2/4 + i*x*y - 3*x/4 + y^2/4 - 3*i*y/4 + 1/2",
        v: "2*i*T3*x - 2*T3*y + x^2/4 - i*x*y - 3*x/4 + y^2/4 + 3*i*y/4 + 1/2",
        t2x: "u^2/4 + 3*u*x/4 - 3*u/8 + 3*x^2/4 - 3*x/4 + y/4 + 1/8",
        t3x: "-i*u^2/4 - i*u*x/4 + 3*i*u/8 + i*x^2/4 + i*y/4 - i/8",
    },
];

pub fn fiber_fixture(alpha: &Param) -> Option<&'static FiberFixture> {
    let q = alpha.as_rational()?;
    FIBER_FIXTURES
        .iter()
        .find(|f| &BigRational::new(f.alpha.0.into(), f.alpha.1.into()) == q)
}

/// The two ring maps between the fibre and `S_{α,α}`.
pub struct FiberCorrespondence {
    pub fiber: Ideal,
    pub surface: SurfacePresentation,
    /// `ℂ[S] → ℂ[fibre]`.
    pub to_fiber: RingMap,
    /// `ℂ[fibre] → ℂ[S][1/(xu)]`.
    pub to_surface: RingMap,
}

pub fn fiber_correspondence(alpha: &Param) -> Result<FiberCorrespondence> {
    alpha.check_admissible()?;
    let fx = fiber_fixture(alpha)
        .ok_or_else(|| Error::InvalidSpec(format!("no chart fixture for alpha = {alpha}")))?;
    let fiber = fiber_presentation(alpha)?;
    let surface = make_s(alpha, alpha)?;
    let fv = fiber.vars().clone();
    let sv = surface.vars().clone();
    let to_fiber = RingMap::parse(
        &sv,
        &fv,
        &[
            ("x", "(x - i*y)/2"),
            ("u", "(x + i*y)/2"),
            ("y", fx.y),
            ("v", fx.v),
        ],
        false,
    )?;
    let x = RatFunc::from_poly(Poly::var(&sv, "x")?);
    let over_x =
        |s: &str| -> Result<RatFunc> { Ok(RatFunc::from_poly(parse_poly(&sv, s)?).div(&x)?) };
    let images = vec![
        RatFunc::from_poly(parse_poly(&sv, "x + u")?),
        RatFunc::from_poly(parse_poly(&sv, "i*x - i*u")?),
        RatFunc::one(&sv),
        over_x(fx.t2x)?,
        over_x(fx.t3x)?,
    ];
    let to_surface = RingMap::new(&fv, &sv, images, false)?;
    Ok(FiberCorrespondence {
        fiber,
        surface,
        to_fiber,
        to_surface,
    })
}

/// Certifies that the fibre at `α₀` and `S_{α₀,α₀}` correspond: the forward
/// map is a global ring map, the backward map is defined where `xu ≠ 0`
/// (the image of the circle), and the two are mutually inverse there.
pub fn match_fiber_to_s(alpha: &Param) -> Result<CertifiedReport> {
    let c = fiber_correspondence(alpha)?;
    let mut rep = CertifiedReport::new(format!("fibre at {alpha} against {}", c.surface.name()));
    let sv = c.surface.vars().clone();
    let fv = c.fiber.vars().clone();
    let xu = parse_poly(&sv, "x*u")?;
    let circle = parse_poly(&fv, "x^2 + y^2")?;
    let s_loc = c.surface.ideal().localize(std::slice::from_ref(&xu))?;
    let f_loc = c.fiber.localize(std::slice::from_ref(&circle))?;

    for (k, g) in c.surface.generators().iter().enumerate() {
        let img = c.to_fiber.apply(g)?;
        let ok = img.as_poly().is_some() && c.fiber.contains(img.num())?;
        rep.check(
            format!("s-g{}-in-fiber", k + 1),
            "image of an S generator lies in the fibre ideal",
            ok,
            img.num().to_string(),
        );
    }
    for (k, g) in c.fiber.gens().iter().enumerate() {
        let img = c.to_surface.apply(g)?;
        let ok = s_loc.contains(img.num())?;
        rep.check(
            format!("fiber-g{}-in-s", k + 1),
            "image of a fibre generator lies in I(S)[1/xu]",
            ok,
            img.num().to_string(),
        );
    }
    let ok = c
        .to_surface
        .apply(&circle)?
        .equals(&RatFunc::from_poly(parse_poly(&sv, "4*x*u")?))?;
    rep.check("circle-to-4xu", "x^2 + y^2 pulls back to 4xu", ok, "4*x*u");

    let mut round = true;
    for k in 0..sv.len() {
        let back = c
            .to_surface
            .apply_ratfunc(&c.to_fiber.apply(&Poly::var_at(&sv, k))?)?;
        round &=
            s_loc.contains(&back.cross_difference(&RatFunc::from_poly(Poly::var_at(&sv, k)))?)?;
    }
    rep.check(
        "s-round-trip",
        "S → fibre → S is the identity where xu ≠ 0",
        round,
        "",
    );
    let mut round = true;
    for k in 0..fv.len() {
        let back = c
            .to_fiber
            .apply_ratfunc(&c.to_surface.apply(&Poly::var_at(&fv, k))?)?;
        round &=
            f_loc.contains(&back.cross_difference(&RatFunc::from_poly(Poly::var_at(&fv, k)))?)?;
    }
    rep.check(
        "fiber-round-trip",
        "fibre → S → fibre is the identity",
        round,
        "",
    );

    let gs = c.surface.generators();
    let prod = c.to_fiber.apply(&(&gs[0] * &gs[1]))?;
    let split = c.to_fiber.apply(&gs[0])?.mul(&c.to_fiber.apply(&gs[1])?)?;
    let zero = c.to_fiber.apply(&Poly::zero(&sv))?.is_zero();
    rep.check(
        "ring-map",
        "products and zero are respected",
        prod.equals(&split)? && zero,
        "",
    );

    let origin = c
        .fiber
        .with(&[Poly::var(&fv, "x")?, Poly::var(&fv, "y")?])?;
    rep.check(
        "origin-empty",
        "the fibre has no point over the origin",
        origin.is_unit()?,
        "1 ∈ I + <x, y>",
    );
    Ok(rep)
}

/// Rank of the Jacobian matrix of the generators at an exact point.
pub fn jacobian_rank_at(ideal: &Ideal, point: &[GaussianRational]) -> Result<usize> {
    let vars = ideal.vars();
    if point.len() != vars.len() {
        return Err(Error::InvalidSpec(format!(
            "expected {} coordinates",
            vars.len()
        )));
    }
    for g in ideal.gens() {
        if !g.evaluate(point)?.is_zero() {
            return Err(Error::PointNotOnVariety(format!("{g} does not vanish")));
        }
    }
    let rows: Vec<Vec<GaussianRational>> = ideal
        .gens()
        .iter()
        .map(|g| {
            (0..vars.len())
                .map(|k| g.derivative(k).evaluate(point))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(linalg::rank(&rows)?)
}

/// Points `(x, y, u, v)` of `S_{α,α}` from the chart `x, u ≠ 0`.
pub fn chart_sample_points(alpha: &BigRational, n: usize) -> Vec<[GaussianRational; 4]> {
    let one = BigRational::from_integer(1.into());
    (1..=n as i64)
        .map(|k| {
            let x = BigRational::new((k + 1).into(), 3.into());
            let u = BigRational::new((-2 * k - 1).into(), 2.into());
            let y = &x * (&x - &one) * (&x - alpha) / &u;
            let v = &u * (&u - &one) * (&u - alpha) / &x;
            [x, y, u, v].map(GaussianRational::from_rational)
        })
        .collect()
}

/// Jacobian ranks of `S_{α,α}` at `n` chart points; all should be 2.
pub fn smoothness_spot_check(alpha: &BigRational, n: usize) -> Result<CertifiedReport> {
    let s = make_s(
        &Param::Rational(alpha.clone()),
        &Param::Rational(alpha.clone()),
    )?;
    let mut rep = CertifiedReport::new(format!("jacobian spot check on {}", s.name()));
    for (k, p) in chart_sample_points(alpha, n).iter().enumerate() {
        let r = jacobian_rank_at(s.ideal(), p)?;
        let at: Vec<String> = p.iter().map(ToString::to_string).collect();
        rep.check(
            format!("rank-at-{k}"),
            "Jacobian rank 2 (spot-checked)",
            r == 2,
            format!("rank {r} at ({})", at.join(", ")),
        );
    }
    Ok(rep)
}

#[cfg(test)]
mod tests;
