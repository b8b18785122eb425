use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::kernel::{
    GaussianRational, Ideal, MonomialOrder, Poly, RatFunc, RingMap, VarFlag, Vars,
};
use crate::report::CertifiedReport;
use crate::{Error, Result};

use super::config::P2Point;
use super::maps::{are_equivalent_structures, PresentationIso, PresentationMap, RealStructure};
use super::{make_s, make_s_flagged, table_with_params, Param, SurfacePresentation};

/// Substitution on `vars` replacing the named coordinates.
fn substitution(vars: &Vars, subs: &[(&str, RatFunc)]) -> Result<RingMap> {
    let mut images: Vec<RatFunc> = (0..vars.len())
        .map(|i| RatFunc::from_poly(Poly::var_at(vars, i)))
        .collect();
    for (name, img) in subs {
        images[vars.require(name)?] = img.clone();
    }
    Ok(RingMap::new(vars, vars, images, false)?)
}

fn constant_subs(vars: &Vars, subs: &[(&str, &Poly)]) -> Result<RingMap> {
    let owned: Vec<(&str, RatFunc)> = subs
        .iter()
        .map(|(n, p)| (*n, RatFunc::from_poly((*p).clone())))
        .collect();
    substitution(vars, &owned)
}

/// Ideal generated by the generators of `s` after substituting a point of
/// the chart, with the parameter units inverted.
fn residual_ideal(s: &SurfacePresentation, subs: &[(&str, &Poly)]) -> Result<Ideal> {
    let m = constant_subs(s.vars(), subs)?;
    let gens = s
        .generators()
        .iter()
        .map(|g| Ok(m.apply(g)?.num().clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(s.vars(), gens)?.localize(s.units())?)
}

fn ideal_text(i: &Ideal) -> String {
    format!("{i:?}")
}

fn swap_images() -> [(&'static str, &'static str); 4] {
    [("x", "u"), ("y", "v"), ("u", "x"), ("v", "y")]
}

/// The swap `(x,y,u,v) ↦ (u,v,x,y)` as an isomorphism `S_{α,β} → S_{β,α}`.
pub fn swap_iso(alpha: &Param, beta: &Param) -> Result<PresentationIso> {
    let s = make_s(alpha, beta)?;
    let t = make_s(beta, alpha)?;
    let fwd = PresentationMap::parse(&s, &t, &swap_images(), false)?;
    let inv = PresentationMap::parse(&t, &s, &swap_images(), false)?;
    PresentationIso::new(fwd, inv)
}

pub fn verify_swap_iso(alpha: &Param, beta: &Param) -> Result<CertifiedReport> {
    let s = make_s(alpha, beta)?;
    let t = make_s(beta, alpha)?;
    let mut rep = CertifiedReport::new(format!("swap {} -> {}", s.name(), t.name()));
    let fwd = PresentationMap::parse(&s, &t, &swap_images(), false)?;

    // g1 ↔ g2 exchange exactly, g3 is fixed.
    let expected = [1usize, 0, 2];
    for (k, g) in t.generators().iter().enumerate() {
        let img = fwd.pullback.apply(g)?;
        let ok = img.as_poly() == Some(&s.generators()[expected[k]]);
        rep.check(
            format!("g{}-image", k + 1),
            format!(
                "g{} of {} pulls back to g{} of {}",
                k + 1,
                t.name(),
                expected[k] + 1,
                s.name()
            ),
            ok,
            img.to_string(),
        );
    }
    rep.check(
        "well-defined",
        "every generator pulls back into the ideal",
        fwd.is_well_defined()?,
        "",
    );
    let sq = fwd.pullback.after(&fwd.pullback)?;
    let exact = sq
        .images()
        .iter()
        .zip(RingMap::identity(s.vars()).images())
        .all(|(a, b)| a == b);
    rep.check(
        "involution",
        "swap composed with itself is the identity substitution",
        exact,
        format!("{sq:?}"),
    );
    Ok(rep)
}

/// `σ_α(x,y,u,v) = (ū, v̄, x̄, ȳ)` on `S_α` with `α` real.
pub fn build_sigma(alpha: &Param) -> Result<RealStructure> {
    build_sigma_flagged(alpha, VarFlag::Real)
}

/// As [`build_sigma`], with the flag of a symbolic `α` chosen by the caller.
pub fn build_sigma_flagged(alpha: &Param, flag: VarFlag) -> Result<RealStructure> {
    let s = make_s_flagged(alpha, alpha, flag)?;
    let m = PresentationMap::parse(&s, &s, &swap_images(), true)?;
    RealStructure::new(m)
}

/// Coordinate change of `S_α` to real form, certified as an isomorphism.
pub fn remark_coordinate_change(alpha: &Param) -> Result<(PresentationIso, SurfacePresentation)> {
    let s = make_s_flagged(alpha, alpha, VarFlag::Real)?;
    let vars = s.vars();
    let a = match alpha.symbol() {
        Some(sym) => sym.to_string(),
        None => format!("({alpha})"),
    };
    // Displayed order of the new names is (x, u, y, v).
    let eqs = [
        "2*(x*y + u*v) - (u^2*(2 + 2*A - 3*x) + x*(x-2)*(x-2*A))",
        "2*(y*u - x*v) - u*(u^2 + 4*A*(x-1) - x*(3*x-4))",
        "4*(y^2 + v^2) - (u^2 + (x-2)^2)*(u^2 + (x-2*A)^2)",
    ]
    .iter()
    .map(|t| crate::kernel::parse_poly(vars, &t.replace('A', &a)))
    .collect::<std::result::Result<Vec<_>, _>>()?;
    let r = SurfacePresentation::new(format!("R[{alpha}]"), vars, eqs, s.units().to_vec())?;
    let fwd = PresentationMap::parse(
        &s,
        &r,
        &[
            ("x", "x + u"),
            ("u", "i*x - i*u"),
            ("y", "y + v"),
            ("v", "i*y - i*v"),
        ],
        false,
    )?;
    let inv = PresentationMap::parse(
        &r,
        &s,
        &[
            ("x", "(x - i*u)/2"),
            ("u", "(x + i*u)/2"),
            ("y", "(y - i*v)/2"),
            ("v", "(y + i*v)/2"),
        ],
        false,
    )?;
    Ok((PresentationIso::new(fwd, inv)?, r))
}

/// Both parts of the real-coordinate check with symbolic real `α`.
pub fn verify_remark_coordinate_change() -> Result<CertifiedReport> {
    verify_remark_coordinate_change_at(&Param::alpha())
}

pub fn verify_remark_coordinate_change_at(alpha: &Param) -> Result<CertifiedReport> {
    let mut rep = CertifiedReport::new(format!("real coordinates on S[{alpha},{alpha}]"));
    rep.check(
        "naming",
        "new coordinates (x,u,y,v) = (x+u, ix-iu, y+v, iy-iv), equations read with these names",
        true,
        "positional reading",
    );
    let (theta, r) = match remark_coordinate_change(alpha) {
        Ok(v) => v,
        Err(Error::NotIsomorphism(w)) => {
            rep.check(
                "b-ideal-equality",
                "transformed ideal equals the real equations",
                false,
                w,
            );
            return Ok(rep);
        }
        Err(e) => return Err(e),
    };
    let s = &theta.forward.domain;

    // (b): images of the old generators generate the displayed ideal.
    let transformed = s
        .generators()
        .iter()
        .map(|g| Ok(theta.inverse.pullback.apply(g)?.num().clone()))
        .collect::<Result<Vec<_>>>()?;
    let ti = Ideal::new(r.vars(), transformed)?;
    let eq = ti.equals(r.ideal())?;
    rep.check(
        "b-ideal-equality",
        "transformed ideal equals the ideal of the three real equations",
        eq,
        ideal_text(r.ideal()),
    );

    // (a): σ becomes coordinatewise conjugation.
    let sigma = build_sigma(alpha)?;
    let standard = match RealStructure::standard(&r) {
        Ok(st) => st,
        Err(e) => {
            rep.check(
                "a-standard-conjugation",
                "σ becomes the standard conjugation",
                false,
                e.to_string(),
            );
            return Ok(rep);
        }
    };
    let x1 = theta.forward.pullback.image("x")?.clone();
    let x1_sigma = sigma.map().pullback.apply_ratfunc(&x1)?;
    rep.check(
        "a-first-coordinate",
        "x+u composed with σ equals its conjugate",
        x1_sigma.equals(&x1.conj()?)?,
        x1_sigma.to_string(),
    );
    let equiv = are_equivalent_structures(&sigma, &standard, &theta)?;
    rep.check(
        "a-standard-conjugation",
        "θ∘σ = conj∘θ modulo the ideal",
        equiv,
        "",
    );
    Ok(rep)
}

/// `ν(x,y,u,v) = (x+u, ix−iu)` and its chart over `xu ≠ 0`.
pub fn verify_nu_chart(alpha: &Param, beta: &Param) -> Result<CertifiedReport> {
    let s = make_s(alpha, beta)?;
    let vars = s.vars();
    let mut rep = CertifiedReport::new(format!("chart of nu on {}", s.name()));
    let p = |t: &str| -> Result<Poly> { Ok(crate::kernel::parse_poly(vars, t)?) };
    let a = alpha.to_poly(vars)?;
    let b = beta.to_poly(vars)?;
    let (x, u) = (p("x")?, p("u")?);
    let one = Poly::one(vars);
    let zero = Poly::zero(vars);

    let y_img = RatFunc::new(&(&x * &(&x - &one)) * &(&x - &a), u.clone())?;
    let v_img = RatFunc::new(&(&u * &(&u - &one)) * &(&u - &b), x.clone())?;
    let chart = substitution(vars, &[("y", y_img), ("v", v_img)])?;
    let g3 = chart.apply(&s.generators()[2])?;
    rep.check(
        "g3-vanishes",
        "g3 vanishes identically on the chart",
        g3.is_zero(),
        g3.to_string(),
    );
    let others = s.generators()[..2]
        .iter()
        .map(|g| chart.apply(g))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    rep.check(
        "g1-g2-vanish",
        "g1 and g2 vanish identically on the chart",
        others.iter().all(RatFunc::is_zero),
        "",
    );

    let plane = table_with_params(&["x", "y"], &[alpha, beta], VarFlag::Generic)?;
    let nu = RingMap::parse(&plane, vars, &[("x", "x + u"), ("y", "i*x - i*u")], false)?;
    let conic = crate::kernel::parse_poly(&plane, "x^2 + y^2")?;
    let pulled = nu.apply(&conic)?;
    let four_xu = p("4*x*u")?;
    rep.check(
        "conic-pullback",
        "nu pulls x^2+y^2 back to 4xu",
        pulled.as_poly() == Some(&four_xu),
        pulled.to_string(),
    );

    // Boundary points of the chart and the centers they lie over.
    let i = Poly::constant(vars, GaussianRational::i());
    let cases: [(&str, &Poly, &Poly, &str, Poly, Poly); 5] = [
        (
            "origin",
            &zero,
            &zero,
            "y*v - A*B",
            zero.clone(),
            zero.clone(),
        ),
        ("x1-u0", &one, &zero, "v", one.clone(), i.clone()),
        ("xa-u0", &a, &zero, "v", a.clone(), &a * &i),
        ("x0-u1", &zero, &one, "y", one.clone(), -&i),
        ("x0-ub", &zero, &b, "y", b.clone(), -&(&b * &i)),
    ];
    for (id, xv, uv, expect, cx, cy) in cases {
        let res = residual_ideal(&s, &[("x", xv), ("u", uv)])?;
        let text = expect
            .replace('A', &format!("({})", fmt_param(alpha)))
            .replace('B', &format!("({})", fmt_param(beta)));
        let want = Ideal::new(vars, vec![p(&text)?])?;
        rep.check(
            format!("residual-{id}"),
            format!(
                "at (x,u)=({},{}) the residual relation is {}",
                super::fmt_scalar(xv),
                super::fmt_scalar(uv),
                want.gens()[0]
            ),
            res.equals(&want)?,
            ideal_text(&res),
        );
        let at = constant_subs(vars, &[("x", xv), ("u", uv)])?;
        let img: Vec<RatFunc> = nu
            .images()
            .iter()
            .map(|f| at.apply_ratfunc(f))
            .collect::<std::result::Result<_, _>>()?;
        let hit = img[0].as_poly() == Some(&cx) && img[1].as_poly() == Some(&cy);
        rep.check(
            format!("center-{id}"),
            format!(
                "nu sends ({},{}) to ({},{})",
                super::fmt_scalar(xv),
                super::fmt_scalar(uv),
                super::fmt_scalar(&cx),
                super::fmt_scalar(&cy)
            ),
            hit,
            format!("({}, {})", img[0], img[1]),
        );
    }
    Ok(rep)
}

fn fmt_param(p: &Param) -> String {
    p.to_string()
}

/// `η(x,y,u,v) = (x,y)` and its chart over `y ≠ 0`.
pub fn verify_eta_chart(alpha: &Param, beta: &Param) -> Result<CertifiedReport> {
    let s = make_s(alpha, beta)?;
    let vars = s.vars();
    let mut rep = CertifiedReport::new(format!("chart of eta on {}", s.name()));
    let a = alpha.to_poly(vars)?;
    let b = beta.to_poly(vars)?;
    let x = Poly::var(vars, "x")?;
    let y = Poly::var(vars, "y")?;
    let one = Poly::one(vars);
    let zero = Poly::zero(vars);
    let cubic = &(&x * &(&x - &one)) * &(&x - &a);

    let u_img = RatFunc::new(cubic.clone(), y.clone())?;
    let xs = RatFunc::from_poly(&(&x - &one) * &(&x - &a));
    let u1 = u_img.sub(&RatFunc::one(vars))?;
    let ub = u_img.sub(&RatFunc::from_poly(b.clone()))?;
    let v_img = xs.mul(&u1)?.mul(&ub)?.div(&RatFunc::from_poly(y.clone()))?;
    let chart = substitution(vars, &[("u", u_img), ("v", v_img)])?;
    let imgs = s
        .generators()
        .iter()
        .map(|g| chart.apply(g))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    rep.check(
        "g2-vanishes",
        "g2 vanishes identically on the chart",
        imgs[1].is_zero(),
        imgs[1].to_string(),
    );
    rep.check(
        "g1-g3-vanish",
        "g1 and g3 vanish identically on the chart",
        imgs[0].is_zero() && imgs[2].is_zero(),
        "",
    );

    let at_y0 = constant_subs(vars, &[("y", &zero)])?.apply(&s.generators()[0])?;
    rep.check(
        "y0-roots",
        "y = 0 in g1 leaves x(x-1)(x-α), with roots 0, 1, α",
        at_y0.as_poly() == Some(&-&cubic),
        at_y0.to_string(),
    );

    let res = residual_ideal(&s, &[("x", &one), ("y", &zero)])?;
    let u = Poly::var(vars, "u")?;
    let v = Poly::var(vars, "v")?;
    let want = &v - &(&(&u * &(&u - &one)) * &(&u - &b));
    let want_i = Ideal::new(vars, vec![want.clone()])?;
    rep.check(
        "residual-x1-y0",
        format!("at (x,y)=(1,0) the residual relation is {want}"),
        res.equals(&want_i)?,
        ideal_text(&res),
    );
    Ok(rep)
}

/// The projective map `[x:y:z] ↦ [(1−α)x + (α−β)y : (1−β)y : (1−α)z]`.
fn p2_matrix(vars: &Vars, alpha: &Param, beta: &Param) -> Result<[[Poly; 3]; 3]> {
    let a = alpha.to_poly(vars)?;
    let b = beta.to_poly(vars)?;
    let one = Poly::one(vars);
    let zero = Poly::zero(vars);
    Ok([
        [&one - &a, &a - &b, zero.clone()],
        [zero.clone(), &one - &b, zero.clone()],
        [zero.clone(), zero, &one - &a],
    ])
}

fn apply_matrix(m: &[[Poly; 3]; 3], p: &[Poly; 3]) -> [Poly; 3] {
    let row = |r: &[Poly; 3]| &(&(&r[0] * &p[0]) + &(&r[1] * &p[1])) + &(&r[2] * &p[2]);
    [row(&m[0]), row(&m[1]), row(&m[2])]
}

pub fn verify_p2_automorphism(alpha: &Param, beta: &Param) -> Result<CertifiedReport> {
    alpha.check_admissible()?;
    beta.check_admissible()?;
    let vars = table_with_params(&["x", "y", "z"], &[alpha, beta], VarFlag::Generic)?;
    let m = p2_matrix(&vars, alpha, beta)?;
    let a = alpha.to_poly(&vars)?;
    let b = beta.to_poly(&vars)?;
    let one = Poly::one(&vars);
    let zero = Poly::zero(&vars);
    let mut rep = CertifiedReport::new(format!("plane automorphism for ({alpha},{beta})"));

    let fixed = [
        P2Point::new([one.clone(), zero.clone(), zero.clone()]),
        P2Point::affine(one.clone(), zero.clone()),
        P2Point::affine(a.clone(), zero.clone()),
        P2Point::affine(zero.clone(), zero.clone()),
    ];
    for pt in &fixed {
        let img = P2Point::new(apply_matrix(&m, &pt.coords));
        rep.check(
            format!("fixes-{}", pt.label()),
            format!("fixes {}", pt.label()),
            img.same_as(pt),
            img.label(),
        );
    }

    // Linear part at the origin, with the z-scaling divided out.
    let lin = |d: [&Poly; 2]| -> [Poly; 2] {
        [
            &(&m[0][0] * d[0]) + &(&m[0][1] * d[1]),
            &(&m[1][0] * d[0]) + &(&m[1][1] * d[1]),
        ]
    };
    let parallel = |p: &[Poly; 2], q: [&Poly; 2]| (&(&p[0] * q[1]) - &(&p[1] * q[0])).is_zero();
    let d11 = lin([&one, &one]);
    rep.check(
        "direction-1-1",
        "(1,1) goes to a multiple of (1,1)",
        parallel(&d11, [&one, &one]),
        format!("({}, {})", d11[0], d11[1]),
    );
    let db = lin([&b, &one]);
    let ok = parallel(&db, [&a, &one]) && db[1] == &one - &b;
    rep.check(
        "direction-beta-1",
        "(β,1) goes to ((1-β)/(1-α))·(α,1)",
        ok,
        format!("({}, {}) / ({})", db[0], db[1], m[2][2]),
    );
    let ident = m[0][1].is_zero() && m[0][0] == m[1][1] && m[1][1] == m[2][2];
    rep.check(
        "identity-iff-equal",
        "the map is the identity exactly when β = α",
        ident == (alpha == beta),
        "",
    );
    // Determinant is a unit under the constraints.
    let det = &(&m[0][0] * &m[1][1]) * &m[2][2];
    rep.check(
        "invertible",
        "determinant (1-α)^2(1-β) is nonzero",
        !det.is_zero(),
        det.to_string(),
    );
    Ok(rep)
}

/// `(p, q)` of the link `S_{α,β} → S_{α,γ}` given by `x' = x + p·y`,
/// `y' = q·y`.
pub fn p2_link_coefficients(
    alpha: &BigRational,
    beta: &BigRational,
    gamma: &BigRational,
) -> (BigRational, BigRational) {
    let one = BigRational::one();
    let p = (gamma - beta) / (alpha * (&one - gamma));
    let q = (&one - beta) / (&one - gamma);
    (p, q)
}

fn require_rational(p: &Param) -> Result<BigRational> {
    p.as_rational().cloned().ok_or_else(|| {
        Error::InvalidSpec(format!("{p} must be a rational value for an explicit link"))
    })
}

fn rat_poly(vars: &Vars, q: &BigRational) -> Poly {
    Poly::constant(vars, GaussianRational::from_rational(q.clone()))
}

/// Pullback `ℂ[S_{α,γ}] → ℂ[S_{α,β}]` of the link, with polynomial images.
fn eta_link_pullback(
    s: &SurfacePresentation,
    t: &SurfacePresentation,
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
) -> Result<RingMap> {
    let vars = s.vars();
    let (p, q) = p2_link_coefficients(a, b, c);
    let x = Poly::var(vars, "x")?;
    let y = Poly::var(vars, "y")?;
    let u = Poly::var(vars, "u")?;
    let one = Poly::one(vars);
    let av = rat_poly(vars, a);
    let cv = rat_poly(vars, c);
    let qinv = rat_poly(vars, &(BigRational::one() / &q));

    let xp = &x + &(&rat_poly(vars, &p) * &y);
    let yp = &rat_poly(vars, &q) * &y;
    let cubic = |t: &Poly| &(t * &(t - &one)) * &(t - &av);
    let nu = cubic(&xp);
    let r = (&nu - &cubic(&x))
        .div_exact(&y)
        .ok_or_else(|| Error::NotIsomorphism("x' cubic not congruent mod y".into()))?;
    let up = &(&u + &r) * &qinv;

    // v' = N_v / y' on the surface; find a polynomial representative.
    let nv = &(&(&(&xp - &one) * &(&xp - &av)) * &(&up - &one)) * &(&up - &cv);
    let wn = vars.fresh_name("w");
    let zn = vars.fresh_name("Z");
    let ext = vars.prepended(&[(wn.as_str(), VarFlag::Real), (zn.as_str(), VarFlag::Real)])?;
    let e = |p: &Poly| p.embed(&ext);
    let w = Poly::var(&ext, &wn)?;
    let z = Poly::var(&ext, &zn)?;
    let mut gens = s
        .generators()
        .iter()
        .map(e)
        .collect::<std::result::Result<Vec<_>, _>>()?;
    gens.push(&(&e(&yp)? * &z) - &e(&nv)?);
    gens.push(&Poly::one(&ext) - &(&w * &e(&y)?));
    let ord = MonomialOrder::block([0usize, 1]);
    let gb = Ideal::new(&ext, gens)?.groebner(&ord)?;
    let zm = z.leading(&ord).map(|(m, _)| m.clone()).expect("variable");
    let elem = gb
        .polys()
        .into_iter()
        .find(|g| g.leading(&ord).is_some_and(|(m, _)| *m == zm))
        .ok_or_else(|| {
            Error::NotIsomorphism(format!("no polynomial v' for {} -> {}", s.name(), t.name()))
        })?;
    let lc = elem.leading(&ord).map(|(_, c)| c.clone()).expect("nonzero");
    let elem = elem.scale(&lc.inverse()?);
    let vp = (&z - &elem).embed(vars)?;
    if !s.contains(&(&(&vp * &yp) - &nv))? {
        return Err(Error::NotIsomorphism(
            "v' representative fails membership".into(),
        ));
    }
    let images = [xp, yp, up, vp]
        .into_iter()
        .map(RatFunc::from_poly)
        .collect();
    Ok(RingMap::new(t.vars(), vars, images, false)?)
}

/// Isomorphism `S_{α,β} → S_{α,γ}` covering a plane automorphism through
/// `η`. Rational parameters only.
pub fn eta_link(alpha: &Param, beta: &Param, gamma: &Param) -> Result<PresentationIso> {
    let s = make_s(alpha, beta)?;
    let t = make_s(alpha, gamma)?;
    if beta == gamma {
        return PresentationIso::new(PresentationMap::identity(&s), PresentationMap::identity(&s));
    }
    let (a, b, c) = (
        require_rational(alpha)?,
        require_rational(beta)?,
        require_rational(gamma)?,
    );
    let fwd = PresentationMap::new(&s, &t, eta_link_pullback(&s, &t, &a, &b, &c)?)?;
    let inv = PresentationMap::new(&t, &s, eta_link_pullback(&t, &s, &a, &c, &b)?)?;
    PresentationIso::new(fwd, inv)
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainLink {
    pub from: String,
    pub to: String,
    pub kind: String,
    pub passed: bool,
    pub witness: String,
}

#[derive(Clone, Debug)]
pub struct IsomorphismChain {
    pub params: [Param; 4],
    /// Values used for the explicit maps when some parameter is symbolic.
    pub specialized: Option<[Param; 4]>,
    pub links: Vec<ChainLink>,
    /// `S_{α₁,α₂} → S_{β₁,β₂}`.
    pub composite: Option<PresentationIso>,
    pub report: CertifiedReport,
}

impl IsomorphismChain {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Rational stand-ins for symbolic parameters: equal symbols get equal
/// values, taken in order from `2, 3, 4, 5`.
fn specialize(params: &[Param; 4]) -> [Param; 4] {
    let samples = [2i64, 3, 4, 5];
    let mut seen: HashMap<&str, Param> = HashMap::new();
    let mut out = params.clone();
    for (k, p) in params.iter().enumerate() {
        if let Some(sym) = p.symbol() {
            let v = seen
                .entry(sym)
                .or_insert_with(|| Param::integer(samples[k]))
                .clone();
            out[k] = v;
        }
    }
    out
}

fn needs_explicit_maps(p: &[Param; 4]) -> bool {
    let [a1, a2, b1, b2] = p;
    a2 != a1 || b1 != a1 || b2 != b1
}

/// Certified chain `W_{α₁,α₂} → S_{α₁,α₂} → S_{α₁,α₁} → S_{α₁,β₁} →
/// S_{β₁,α₁} → S_{β₁,β₂} → W_{β₁,β₂}`.
pub fn isomorphism_chain_report(
    a1: &Param,
    a2: &Param,
    b1: &Param,
    b2: &Param,
) -> Result<IsomorphismChain> {
    for p in [a1, a2, b1, b2] {
        p.check_admissible()?;
    }
    let params = [a1.clone(), a2.clone(), b1.clone(), b2.clone()];
    let mut rep = CertifiedReport::new(format!("W[{a1},{a2}] ~ W[{b1},{b2}]"));
    let symbolic = params.iter().any(Param::is_symbolic);
    let specialized = (symbolic && needs_explicit_maps(&params)).then(|| specialize(&params));
    let [c1, c2, d1, d2] = specialized.clone().unwrap_or_else(|| params.clone());
    if let Some(sp) = &specialized {
        rep.check(
            "specialization",
            "explicit surface maps computed at rational values of the parameters",
            true,
            format!("({}, {}, {}, {})", sp[0], sp[1], sp[2], sp[3]),
        );
    }

    let mut links = Vec::new();
    let mut push = |rep: &mut CertifiedReport,
                    id: &str,
                    from: String,
                    to: String,
                    kind: &str,
                    r: Result<CertifiedReport>|
     -> bool {
        let (ok, witness) = match r {
            Ok(sub) => {
                let ok = sub.passed();
                let w = sub
                    .failures()
                    .map(|c| c.id.clone())
                    .collect::<Vec<_>>()
                    .join(", ");
                rep.absorb(id, sub);
                (ok, w)
            }
            Err(e) => {
                rep.check(id, format!("{kind}: {from} -> {to}"), false, e.to_string());
                (false, e.to_string())
            }
        };
        links.push(ChainLink {
            from,
            to,
            kind: kind.into(),
            passed: ok,
            witness,
        });
        ok
    };

    let nu1 = verify_nu_chart(a1, a2);
    push(
        &mut rep,
        "link1",
        format!("W[{a1},{a2}]"),
        format!("S[{a1},{a2}]"),
        "nu",
        nu1,
    );

    let mut isos: Vec<PresentationIso> = Vec::new();
    let steps: [(&str, &Param, &Param, &Param, &str); 3] = [
        ("link2", &c1, &c2, &c1, "eta"),
        ("link3", &c1, &c1, &d1, "eta"),
        ("link5", &d1, &c1, &d2, "eta"),
    ];
    for (k, (id, al, be, ga, kind)) in steps.iter().enumerate() {
        if k == 2 {
            let r = if d1 == c1 {
                let s = make_s(&c1, &c1)?;
                Ok(PresentationIso::identity(&s))
            } else {
                swap_iso(&c1, &d1)
            };
            let rr = match &r {
                Ok(_) => verify_swap_iso(&c1, &d1),
                Err(e) => Err(e.clone()),
            };
            push(
                &mut rep,
                "link4",
                format!("S[{c1},{d1}]"),
                format!("S[{d1},{c1}]"),
                "swap",
                rr,
            );
            if let Ok(i) = r {
                isos.push(i);
            }
        }
        let mut sub = CertifiedReport::new(format!("S[{al},{be}] -> S[{al},{ga}]"));
        for other in [be, ga] {
            if other != al && be != ga {
                sub.absorb(
                    &format!("plane-{other}"),
                    verify_p2_automorphism(al, other)?,
                );
            }
        }
        let r = eta_link(al, be, ga);
        let res = match r {
            Ok(iso) => {
                sub.check(
                    "iso",
                    "explicit isomorphism with verified inverse",
                    true,
                    format!("{:?}", iso.forward.pullback),
                );
                isos.push(iso);
                Ok(sub)
            }
            Err(e) => Err(e),
        };
        push(
            &mut rep,
            id,
            format!("S[{al},{be}]"),
            format!("S[{al},{ga}]"),
            kind,
            res,
        );
    }

    let nu2 = verify_nu_chart(b1, b2);
    push(
        &mut rep,
        "link6",
        format!("S[{b1},{b2}]"),
        format!("W[{b1},{b2}]"),
        "nu",
        nu2,
    );

    let composite = if isos.len() == 4 {
        let mut acc = isos[0].clone();
        for next in &isos[1..] {
            acc = next.compose_after(&acc)?;
        }
        Some(acc)
    } else {
        None
    };
    Ok(IsomorphismChain {
        params,
        specialized,
        links,
        composite,
        report: rep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn swap_symbolic() {
        let r = verify_swap_iso(&Param::alpha(), &Param::beta()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn sigma_checks() {
        let s = build_sigma(&Param::alpha()).unwrap();
        let g = s.presentation().generators();
        let img = s.map().pullback.apply(&g[0]).unwrap();
        assert_eq!(img.as_poly(), Some(&g[1]));
        let img = s.map().pullback.apply(&g[2]).unwrap();
        assert_eq!(img.as_poly(), Some(&g[2]));
        assert!(matches!(
            build_sigma_flagged(&Param::alpha(), VarFlag::Generic),
            Err(Error::NotAntiInvolution(_))
        ));
        assert!(build_sigma(&Param::integer(2)).is_ok());
    }

    #[test]
    fn coordinate_change_symbolic_and_specialized() {
        let r = verify_remark_coordinate_change().unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_remark_coordinate_change_at(&Param::integer(2)).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn charts_symbolic() {
        let r = verify_nu_chart(&Param::alpha(), &Param::beta()).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_eta_chart(&Param::alpha(), &Param::beta()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn charts_rational() {
        for (a, b) in [(2, 3), (-1, 2), (3, 3), (5, -2), (7, 4)] {
            let (a, b) = (Param::integer(a), Param::integer(b));
            assert!(verify_nu_chart(&a, &b).unwrap().passed());
            assert!(verify_eta_chart(&a, &b).unwrap().passed());
        }
    }

    #[test]
    fn plane_automorphism() {
        let r = verify_p2_automorphism(&Param::alpha(), &Param::beta()).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_p2_automorphism(&Param::alpha(), &Param::alpha()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn link_coefficients() {
        let q = |n: i64| BigRational::from_integer(n.into());
        let (p, s) = p2_link_coefficients(&q(2), &q(3), &q(2));
        assert_eq!(p, BigRational::new(1.into(), 2.into()));
        assert_eq!(s, q(2));
        let (p, s) = p2_link_coefficients(&q(2), &q(3), &q(3));
        assert!(p.is_zero() && s.is_one());
    }

    #[test]
    fn explicit_link() {
        let iso = eta_link(&Param::integer(2), &Param::integer(3), &Param::integer(2)).unwrap();
        assert!(iso.forward.is_well_defined().unwrap());
    }

    #[test]
    fn chain_identities() {
        let a = Param::alpha();
        let c = isomorphism_chain_report(&a, &a, &a, &a).unwrap();
        assert!(c.passed(), "{}", c.report);
        assert!(c.specialized.is_none());
        assert!(c.composite.unwrap().forward.is_identity().unwrap());
    }

    #[test]
    fn chain_rational() {
        let p = |n| Param::integer(n);
        let c = isomorphism_chain_report(&p(2), &p(3), &p(4), &p(5)).unwrap();
        assert!(c.passed(), "{}", c.report);
        assert_eq!(c.links.len(), 6);
        let comp = c.composite.unwrap();
        assert_eq!(comp.forward.codomain.name(), "S[4,5]");
    }

    #[test]
    fn chain_forbidden() {
        let r = isomorphism_chain_report(
            &Param::integer(2),
            &Param::integer(1),
            &Param::integer(3),
            &Param::integer(4),
        );
        assert!(matches!(r, Err(Error::ForbiddenParameter(_))));
    }
}
