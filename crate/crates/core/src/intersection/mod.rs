//! Divisor classes on blow-ups of the plane and the negative curves of the
//! boundary configuration.

use std::cmp::Ordering;

use serde::Serialize;

use crate::kernel::linalg::nullspace;
use crate::kernel::{MonomialOrder, Poly, RatFunc};
use crate::report::CertifiedReport;
use crate::surfaces::{eval_form, form_from_coeffs, linear_form_name, P2Point, PointConfiguration};
use crate::{Error, Result};

/// `Pic` of the plane blown up in `n` points: basis `L, E₁..E_n` with form
/// `diag(1, −1, …, −1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionLattice {
    pub n: usize,
}

impl IntersectionLattice {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn signature(&self) -> (usize, usize) {
        (1, self.n)
    }

    pub fn exceptional(&self, i: usize) -> DivisorClass {
        DivisorClass::exceptional(self.n, i)
    }
}

/// `dL − Σ mᵢEᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DivisorClass {
    pub d: i64,
    pub m: Vec<i64>,
}

impl DivisorClass {
    pub fn new(d: i64, m: Vec<i64>) -> Self {
        Self { d, m }
    }

    /// `Eᵢ`: `d = 0`, `m = −eᵢ`.
    pub fn exceptional(n: usize, i: usize) -> Self {
        let mut m = vec![0; n];
        m[i] = -1;
        Self { d: 0, m }
    }

    pub fn lattice(&self) -> IntersectionLattice {
        IntersectionLattice::new(self.m.len())
    }

    pub fn self_intersection(&self) -> i64 {
        intersection_number(self, self).expect("same lattice")
    }

    pub fn add(&self, o: &DivisorClass) -> Result<DivisorClass> {
        if self.m.len() != o.m.len() {
            return Err(Error::LatticeMismatch);
        }
        Ok(Self {
            d: self.d + o.d,
            m: self.m.iter().zip(&o.m).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scaled(&self, k: i64) -> DivisorClass {
        Self {
            d: k * self.d,
            m: self.m.iter().map(|a| k * a).collect(),
        }
    }
}

pub fn intersection_number(a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
    if a.m.len() != b.m.len() {
        return Err(Error::LatticeMismatch);
    }
    Ok(a.d * b.d - a.m.iter().zip(&b.m).map(|(x, y)| x * y).sum::<i64>())
}

/// `2g = (d−1)(d−2) − Σ mᵢ(mᵢ−1)`.
pub fn arithmetic_genus_doubled(c: &DivisorClass) -> Result<i64> {
    if c.d <= 0 {
        return Err(Error::NotACurveClass(format!("degree {}", c.d)));
    }
    Ok((c.d - 1) * (c.d - 2) - c.m.iter().map(|m| m * (m - 1)).sum::<i64>())
}

/// Greatest common divisor of polynomials in (at most) one variable.
fn univariate_gcd(a: &Poly, b: &Poly) -> Poly {
    let ord = MonomialOrder::Lex;
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let (lb, cb) = b
            .leading(&ord)
            .map(|(m, c)| (m.clone(), c.clone()))
            .expect("nonzero");
        let mut r = a;
        while let Some((lr, cr)) = r.leading(&ord).map(|(m, c)| (m.clone(), c.clone())) {
            let Some(q) = lb.quotient_of(&lr) else { break };
            let coeff = &cr * &cb.inverse().expect("nonzero");
            r = &r - &b.mul_term(&q, &coeff);
        }
        a = b;
        b = r;
    }
    a.monic(&ord)
}

fn common_factor(entries: &[Poly]) -> Poly {
    let vars = entries[0].vars();
    let mut support: Vec<usize> = entries.iter().flat_map(Poly::support).collect();
    support.sort_unstable();
    support.dedup();
    let nonzero: Vec<&Poly> = entries.iter().filter(|p| !p.is_zero()).collect();
    if support.len() <= 1 {
        nonzero
            .iter()
            .fold(Poly::zero(vars), |g, p| univariate_gcd(&g, p))
    } else {
        let m = nonzero
            .iter()
            .map(|p| p.monomial_content())
            .reduce(|a, b| a.gcd(&b))
            .expect("nonzero entry");
        Poly::monomial(vars, m, crate::kernel::GaussianRational::one())
    }
}

/// The line through two points, scaled so that its first nonzero
/// coefficient (in `x, y, z` order) is monic.
pub fn line_through(p: &P2Point, q: &P2Point) -> Result<Poly> {
    let c = [
        &(&p.coords[1] * &q.coords[2]) - &(&p.coords[2] * &q.coords[1]),
        &(&p.coords[2] * &q.coords[0]) - &(&p.coords[0] * &q.coords[2]),
        &(&p.coords[0] * &q.coords[1]) - &(&p.coords[1] * &q.coords[0]),
    ];
    if c.iter().all(Poly::is_zero) {
        return Err(Error::IdenticalPoints);
    }
    let g = common_factor(&c);
    let c = c.map(|e| e.div_exact(&g).expect("common factor divides"));
    let first = c.iter().find(|e| !e.is_zero()).expect("nonzero");
    let lc = first
        .leading(&MonomialOrder::Lex)
        .map(|(_, k)| k.clone())
        .expect("nonzero");
    let inv = lc.inverse()?;
    Ok(form_from_coeffs(&c.map(|e| e.scale(&inv))))
}

/// A curve's realization: an exceptional curve over a center, or a line.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Realization {
    Exceptional { center: String },
    Line { form: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct NegativeCurveRecord {
    pub name: String,
    pub class: DivisorClass,
    pub realization: Realization,
    #[serde(skip)]
    pub form: Option<Poly>,
}

impl NegativeCurveRecord {
    pub fn self_intersection(&self) -> i64 {
        self.class.self_intersection()
    }
}

fn proper_points(config: &PointConfiguration) -> Result<Vec<&P2Point>> {
    if config.centers.iter().any(|c| c.tangent.is_some()) {
        return Err(Error::InvalidSpec(
            "infinitely near centers are not supported here".into(),
        ));
    }
    Ok(config.centers.iter().map(|c| &c.point).collect())
}

/// Class of the strict transform of a line.
pub fn line_class(config: &PointConfiguration, form: &Poly) -> Result<DivisorClass> {
    let pts = proper_points(config)?;
    let m = pts
        .iter()
        .map(|p| Ok(i64::from(eval_form(form, p)?.is_zero())))
        .collect::<Result<Vec<_>>>()?;
    Ok(DivisorClass::new(1, m))
}

fn line_record(config: &PointConfiguration, form: Poly) -> Result<NegativeCurveRecord> {
    let class = line_class(config, &form)?;
    let name = linear_form_name(&form);
    let text = name
        .trim_start_matches("L_")
        .trim_start_matches('{')
        .trim_end_matches('}')
        .to_string();
    Ok(NegativeCurveRecord {
        name,
        class,
        realization: Realization::Line { form: text },
        form: Some(form),
    })
}

/// `L_z` with its class, for the boundary and the intersection matrix.
pub fn line_at_infinity(config: &PointConfiguration) -> Result<NegativeCurveRecord> {
    line_record(config, config.poly("z")?)
}

fn det3(a: &P2Point, b: &P2Point, c: &P2Point) -> Poly {
    let m = [&a.coords, &b.coords, &c.coords];
    let minor = |i: usize, j: usize| &(&m[1][i] * &m[2][j]) - &(&m[1][j] * &m[2][i]);
    &(&(&m[0][0] * &minor(1, 2)) - &(&m[0][1] * &minor(0, 2))) + &(&m[0][2] * &minor(0, 1))
}

/// Maximal sets of at least three collinear centers.
pub fn collinear_sets(config: &PointConfiguration) -> Result<Vec<Vec<usize>>> {
    let pts = proper_points(config)?;
    let n = pts.len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if out.iter().any(|s| s.contains(&i) && s.contains(&j)) {
                continue;
            }
            let on: Vec<usize> = (0..n)
                .filter(|&k| k == i || k == j || det3(pts[i], pts[j], pts[k]).is_zero())
                .collect();
            if on.len() >= 3 {
                out.push(on);
            }
        }
    }
    Ok(out)
}

/// Four-point subsets with no three collinear.
pub fn conic_quadruples(
    config: &PointConfiguration,
    lines: &[Vec<usize>],
) -> Result<Vec<Vec<usize>>> {
    let n = proper_points(config)?.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() != 4 {
            continue;
        }
        let set: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
        if lines
            .iter()
            .all(|l| l.iter().filter(|k| set.contains(k)).count() < 3)
        {
            out.push(set);
        }
    }
    Ok(out)
}

/// Homogeneous conics `ax² + bxy + cy² + dxz + eyz + fz²` through all centers.
pub fn conics_through_centers(config: &PointConfiguration) -> Result<Vec<Poly>> {
    let pts = proper_points(config)?;
    let vars = &config.vars;
    let monos = ["x^2", "x*y", "y^2", "x*z", "y*z", "z^2"];
    let rows = pts
        .iter()
        .map(|p| {
            let [x, y, z] = &p.coords;
            [x * x, x * y, y * y, x * z, y * z, z * z]
                .into_iter()
                .map(RatFunc::from_poly)
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>();
    let basis = nullspace(&rows, 6, &RatFunc::one(vars))?;
    basis
        .into_iter()
        .map(|v| {
            // Clear denominators of the kernel vector.
            let den = v.iter().fold(Poly::one(vars), |acc, f| &acc * f.den());
            let mut out = Poly::zero(vars);
            for (k, f) in v.iter().enumerate() {
                let scaled = f.mul(&RatFunc::from_poly(den.clone()))?;
                let coeff = scaled
                    .as_poly()
                    .cloned()
                    .ok_or(crate::KernelError::DivisionByZero)?;
                out = &out + &(&coeff * &config.poly(monos[k])?);
            }
            Ok(out)
        })
        .collect()
}

fn colex(a: &[i64], b: &[i64]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

#[derive(Clone, Debug, Serialize)]
pub struct NegativeCurveEnumeration {
    pub records: Vec<NegativeCurveRecord>,
    /// Survivors per degree `1..=d_max`.
    pub survivors_per_degree: Vec<(i64, usize)>,
    pub collinear: Vec<Vec<usize>>,
    pub conic_sets: Vec<Vec<usize>>,
    pub assumptions: Vec<String>,
    pub report: CertifiedReport,
}

impl NegativeCurveEnumeration {
    pub fn names(&self) -> Vec<&str> {
        self.records.iter().map(|r| r.name.as_str()).collect()
    }

    /// Multiplicities at all centers but the first, for the searched lines.
    pub fn patterns(&self) -> Vec<Vec<i64>> {
        self.records
            .iter()
            .filter(|r| r.class.d >= 1 && r.name_is_searched())
            .map(|r| r.class.m[1..].to_vec())
            .collect()
    }
}

impl NegativeCurveRecord {
    fn name_is_searched(&self) -> bool {
        matches!(self.realization, Realization::Line { .. }) && self.class.self_intersection() == -1
    }
}

fn multisets(n: usize, cap: i64) -> impl Iterator<Item = Vec<i64>> {
    let total = (cap + 1).pow(n as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0; n];
        for e in v.iter_mut() {
            *e = k % (cap + 1);
            k /= cap + 1;
        }
        v
    })
}

/// Exhaustive search of classes `(d; m)` with `1 ≤ d ≤ d_max` that can
/// carry an irreducible curve of negative self-intersection other than the
/// lines through three or more centers, followed by the exceptional curves
/// and those lines.
pub fn enumerate_negative_classes(
    config: &PointConfiguration,
    d_max: i64,
) -> Result<NegativeCurveEnumeration> {
    let pts = proper_points(config)?;
    let n = pts.len();
    let lines = collinear_sets(config)?;
    let quads = conic_quadruples(config, &lines)?;
    let mut rep = CertifiedReport::new(format!("negative curves on {}", config.name));
    let sum_on = |m: &[i64], set: &[usize]| set.iter().map(|&k| m[k]).sum::<i64>();

    let mut survivors: Vec<DivisorClass> = Vec::new();
    let mut per_degree = Vec::new();
    let (mut sum_bound, mut m1_lower) = (true, true);
    for d in 1..=d_max.max(0) {
        let mut count = 0;
        for m in multisets(n, d) {
            let c = DivisorClass::new(d, m);
            if c.self_intersection() > -1 || arithmetic_genus_doubled(&c)? < 0 {
                continue;
            }
            sum_bound &= c.m.iter().sum::<i64>() - 3 * d + 1 >= 0;
            if quads.iter().any(|q| 2 * d - sum_on(&c.m, q) < 0) {
                continue;
            }
            m1_lower &= c.m[0] >= d - 1;
            if lines.iter().any(|l| d - sum_on(&c.m, l) < 0) {
                continue;
            }
            count += 1;
            survivors.push(c);
        }
        per_degree.push((d, count));
    }
    rep.check(
        "sum-bound",
        "negativity with 2g >= 0 gives sum(m) - 3d + 1 >= 0",
        sum_bound,
        "checked on every searched class",
    );
    rep.check(
        "m1-lower",
        "the conic bound then forces m1 >= d - 1",
        m1_lower,
        "checked on every searched class",
    );
    rep.check(
        "m1-exact",
        "every survivor has m1 = d - 1",
        survivors.iter().all(|c| c.m[0] == c.d - 1),
        format!("{} survivors", survivors.len()),
    );
    if lines.len() == 2 {
        let pair_ok = survivors.iter().all(|c| {
            lines
                .iter()
                .all(|l| l.iter().filter(|&&k| k != 0).map(|&k| c.m[k]).sum::<i64>() <= 1)
        });
        rep.check(
            "pair-bounds",
            "the boundary lines force m2+m3 <= 1 and m4+m5 <= 1",
            pair_ok,
            format!("{lines:?}"),
        );
    }
    let high: usize = per_degree
        .iter()
        .filter(|(d, _)| *d >= 2)
        .map(|(_, k)| k)
        .sum();
    rep.check(
        "degree-one",
        "no class of degree >= 2 survives",
        high == 0,
        format!("survivors per degree {per_degree:?}"),
    );

    let mut records: Vec<NegativeCurveRecord> = config
        .centers
        .iter()
        .enumerate()
        .map(|(i, c)| NegativeCurveRecord {
            name: c.label.clone(),
            class: DivisorClass::exceptional(n, i),
            realization: Realization::Exceptional {
                center: c.point.label(),
            },
            form: None,
        })
        .collect();

    // Lines through three or more centers, in the order the boundary lists them.
    let mut boundary: Vec<NegativeCurveRecord> = Vec::new();
    for set in &lines {
        let form = line_through(pts[set[0]], pts[set[1]])?;
        boundary.push(line_record(config, form)?);
    }
    let pos = |r: &NegativeCurveRecord| {
        config
            .removed
            .iter()
            .position(|b| b.label == r.name)
            .unwrap_or(usize::MAX)
    };
    boundary.sort_by_key(pos);
    records.extend(boundary);

    survivors.sort_by(|a, b| a.d.cmp(&b.d).then_with(|| colex(&a.m, &b.m)));
    let mut realized = true;
    for c in &survivors {
        if c.d != 1 {
            continue;
        }
        let on: Vec<usize> = (0..n).filter(|&k| c.m[k] == 1).collect();
        let form = line_through(pts[on[0]], pts[on[1]])?;
        let rec = line_record(config, form)?;
        realized &= rec.class == *c;
        records.push(rec);
    }
    rep.check(
        "lines-realized",
        "each surviving line class is realized by a line through exactly its centers",
        realized,
        "",
    );
    rep.check(
        "negative",
        "every record has self-intersection <= -1",
        records.iter().all(|r| r.self_intersection() <= -1),
        "",
    );

    let conics = conics_through_centers(config)?;
    let circle = config.poly("x^2 + y^2")?;
    let conic_ok = conics.len() == 1 && proportional(&conics[0], &circle);
    rep.check(
        "conic-degenerate",
        "every conic through all five centers is a multiple of x^2+y^2, so a conic through the other four misses the origin",
        conic_ok,
        conics.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
    );

    Ok(NegativeCurveEnumeration {
        records,
        survivors_per_degree: per_degree,
        collinear: lines,
        conic_sets: quads,
        assumptions: vec!["multiplicities capped at the degree during the search".into()],
        report: rep,
    })
}

/// `a` and `b` agree up to a nonzero factor in the parameters.
fn proportional(a: &Poly, b: &Poly) -> bool {
    // Cross-multiply by the coefficients of x², which are polynomials in the parameters.
    let x2 = |p: &Poly| -> Poly {
        Poly::from_terms(
            p.vars(),
            p.terms()
                .filter(|(m, _)| m.exponents()[0] == 2)
                .map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e[0] = 0;
                    (crate::kernel::Monomial::from_exponents(e), c.clone())
                }),
        )
    };
    let (fa, fb) = (x2(a), x2(b));
    !fa.is_zero() && (&(a * &fb) - &(b * &fa)).is_zero()
}

/// Symmetric matrix of intersection numbers.
pub fn intersection_matrix(records: &[NegativeCurveRecord]) -> Result<Vec<Vec<i64>>> {
    records
        .iter()
        .map(|a| {
            records
                .iter()
                .map(|b| intersection_number(&a.class, &b.class))
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ZigzagReport {
    pub chain: Vec<String>,
    pub self_intersections: Vec<i64>,
    pub consecutive: Vec<i64>,
    pub report: CertifiedReport,
}

/// Orders the removed lines into a chain whose consecutive members meet
/// once and whose other members are disjoint.
pub fn boundary_zigzag(config: &PointConfiguration) -> Result<ZigzagReport> {
    let recs = config
        .removed
        .iter()
        .filter_map(|b| b.form.clone())
        .map(|f| line_record(config, f))
        .collect::<Result<Vec<_>>>()?;
    let k = recs.len();
    let mut rep = CertifiedReport::new(format!("boundary of {}", config.name));
    let mut best: Option<Vec<usize>> = None;
    permute(&mut (0..k).collect(), 0, &mut |perm: &[usize]| {
        if best.is_some() {
            return;
        }
        let ok = (0..k).all(|i| {
            (i + 1..k).all(|j| {
                let w =
                    intersection_number(&recs[perm[i]].class, &recs[perm[j]].class).unwrap_or(-99);
                if j == i + 1 {
                    w == 1
                } else {
                    w == 0
                }
            })
        });
        if ok {
            best = Some(perm.to_vec());
        }
    });
    let Some(order) = best else {
        rep.check("chain", "the boundary lines form a chain", false, "");
        return Ok(ZigzagReport {
            chain: Vec::new(),
            self_intersections: Vec::new(),
            consecutive: Vec::new(),
            report: rep,
        });
    };
    let chain: Vec<String> = order.iter().map(|&i| recs[i].name.clone()).collect();
    let selfs: Vec<i64> = order.iter().map(|&i| recs[i].self_intersection()).collect();
    let cons: Vec<i64> = order
        .windows(2)
        .map(|w| intersection_number(&recs[w[0]].class, &recs[w[1]].class))
        .collect::<Result<_>>()?;
    rep.check(
        "chain",
        "the boundary lines form a chain",
        true,
        chain.join(" > "),
    );
    rep.check(
        "self-intersections",
        "self-intersections along the chain",
        true,
        format!("{selfs:?}"),
    );
    Ok(ZigzagReport {
        chain,
        self_intersections: selfs,
        consecutive: cons,
        report: rep,
    })
}

/// Heap-free lexicographic permutation walk.
fn permute(v: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
    if start == v.len() {
        f(v);
        return;
    }
    for i in start..v.len() {
        let x = v.remove(i);
        v.insert(start, x);
        permute(v, start + 1, f);
        let x = v.remove(start);
        v.insert(i, x);
    }
}

#[cfg(test)]
mod tests;
