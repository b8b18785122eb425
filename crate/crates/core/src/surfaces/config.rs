//! Points and lines of the projective plane with coordinates polynomial in
//! the parameters, and the blow-up configurations built from them.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::kernel::{GaussianRational, KernelError, Monomial, MonomialOrder, Poly, VarFlag, Vars};
use crate::report::CertifiedReport;
use crate::{Error, Result};

use super::{table_with_params, Param};

/// A point `[x:y:z]` whose coordinates are polynomials in the parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct P2Point {
    pub coords: [Poly; 3],
}

impl P2Point {
    pub fn new(coords: [Poly; 3]) -> Self {
        Self { coords }
    }

    /// The affine point `(x, y)` as `[x:y:1]`.
    pub fn affine(x: Poly, y: Poly) -> Self {
        let one = Poly::one(x.vars());
        Self {
            coords: [x, y, one],
        }
    }

    pub fn vars(&self) -> &Vars {
        self.coords[0].vars()
    }

    /// Same projective point: every 2×2 minor vanishes identically.
    pub fn same_as(&self, other: &P2Point) -> bool {
        cross(&self.coords, &other.coords).iter().all(Poly::is_zero)
    }

    pub fn conj(&self) -> Result<P2Point> {
        Ok(P2Point {
            coords: [
                self.coords[0].conj()?,
                self.coords[1].conj()?,
                self.coords[2].conj()?,
            ],
        })
    }

    /// `(a,b)` for affine points, `[a:b:c]` otherwise.
    pub fn label(&self) -> String {
        let [x, y, z] = &self.coords;
        if z.as_constant().is_some_and(|c| c.is_one()) {
            format!("({},{})", fmt_scalar(x), fmt_scalar(y))
        } else {
            format!("[{}:{}:{}]", fmt_scalar(x), fmt_scalar(y), fmt_scalar(z))
        }
    }
}

pub fn conj_point(p: &P2Point) -> Result<P2Point> {
    p.conj()
}

/// Cross product of coordinate triples.
pub(crate) fn cross(a: &[Poly; 3], b: &[Poly; 3]) -> [Poly; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

/// Coefficients of `x`, `y`, `z` in a linear form over a table whose first
/// three variables are `x, y, z`.
pub fn linear_coeffs(form: &Poly) -> Result<[Poly; 3]> {
    let vars = form.vars();
    let mut out = [Poly::zero(vars), Poly::zero(vars), Poly::zero(vars)];
    for (m, c) in form.terms() {
        let e = m.exponents();
        let deg: u32 = e[..3].iter().sum();
        if deg != 1 {
            return Err(KernelError::Parse(format!("not a linear form in x, y, z: {form}")).into());
        }
        let k = (0..3).find(|&k| e[k] == 1).expect("degree one");
        let mut rest = e.to_vec();
        rest[k] = 0;
        out[k].add_term(Monomial::from_exponents(rest), c);
    }
    Ok(out)
}

/// `c₀x + c₁y + c₂z`.
pub fn form_from_coeffs(coeffs: &[Poly; 3]) -> Poly {
    let vars = coeffs[0].vars();
    let mut out = Poly::zero(vars);
    for (k, c) in coeffs.iter().enumerate() {
        out = &out + &(c * &Poly::var_at(vars, k));
    }
    out
}

/// Value of a linear form at a point.
pub fn eval_form(form: &Poly, p: &P2Point) -> Result<Poly> {
    let c = linear_coeffs(form)?;
    Ok(&(&(&c[0] * &p.coords[0]) + &(&c[1] * &p.coords[1])) + &(&c[2] * &p.coords[2]))
}

/// Linear forms equal up to a nonzero scalar factor.
pub fn proportional_forms(a: &Poly, b: &Poly) -> Result<bool> {
    let (ca, cb) = (linear_coeffs(a)?, linear_coeffs(b)?);
    Ok(cross(&ca, &cb).iter().all(Poly::is_zero))
}

/// Blown-up center, possibly infinitely near to an earlier one along the
/// tangent direction where `tangent` vanishes.
#[derive(Clone, Debug)]
pub struct Center {
    pub label: String,
    pub point: P2Point,
    pub tangent: Option<Poly>,
}

#[derive(Clone, Debug)]
pub struct Boundary {
    pub label: String,
    pub form: Option<Poly>,
}

/// Centers to blow up and curves removed afterwards. The table starts with
/// `x, y, z`, followed by the symbolic parameters.
#[derive(Clone, Debug)]
pub struct PointConfiguration {
    pub name: String,
    pub vars: Vars,
    pub units: Vec<Poly>,
    pub centers: Vec<Center>,
    pub removed: Vec<Boundary>,
}

impl PointConfiguration {
    pub fn new(name: impl Into<String>, vars: &Vars) -> Self {
        Self {
            name: name.into(),
            vars: vars.clone(),
            units: Vec::new(),
            centers: Vec::new(),
            removed: Vec::new(),
        }
    }

    pub fn add_point(&mut self, p: P2Point) {
        let label = format!("E{}", p.label());
        self.centers.push(Center {
            label,
            point: p,
            tangent: None,
        });
    }

    pub fn add_line(&mut self, form: Poly) {
        let label = linear_form_name(&form);
        self.removed.push(Boundary {
            label,
            form: Some(form),
        });
    }

    pub fn poly(&self, text: &str) -> Result<Poly> {
        Ok(crate::kernel::parse_poly(&self.vars, text)?)
    }

    pub fn center_index(&self, label: &str) -> Option<usize> {
        self.centers.iter().position(|c| c.label == label)
    }

    /// Centers that are distinct points of the plane (no infinitely near ones).
    pub fn proper_centers(&self) -> impl Iterator<Item = &Center> {
        self.centers.iter().filter(|c| c.tangent.is_none())
    }

    /// No two proper centers coincide once the units are inverted.
    pub fn centers_distinct(&self) -> Result<bool> {
        let proper: Vec<&Center> = self.proper_centers().collect();
        for i in 0..proper.len() {
            for j in i + 1..proper.len() {
                let minors = cross(&proper[i].point.coords, &proper[j].point.coords);
                let ideal = crate::kernel::Ideal::new(&self.vars, minors.to_vec())?;
                if !ideal.localize(&self.units)?.is_unit()? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Configuration of `Y_{α,β}`: the plane blown up in `(0,0)`, `(1,i)`,
/// `(α,αi)`, `(1,−i)`, `(β,−βi)` with `L_z`, `L_{x+iy}`, `L_{x−iy}` removed.
pub fn y_configuration(alpha: &Param, beta: &Param, flag: VarFlag) -> Result<PointConfiguration> {
    alpha.check_admissible()?;
    beta.check_admissible()?;
    let vars = table_with_params(&["x", "y", "z"], &[alpha, beta], flag)?;
    let a = alpha.to_poly(&vars)?;
    let b = beta.to_poly(&vars)?;
    let i = Poly::constant(&vars, GaussianRational::i());
    let zero = Poly::zero(&vars);
    let one = Poly::one(&vars);
    let mut c = PointConfiguration::new(format!("Y[{alpha},{beta}]"), &vars);
    c.units = alpha.units(&vars)?;
    if beta != alpha {
        c.units.extend(beta.units(&vars)?);
    }
    c.add_point(P2Point::affine(zero.clone(), zero));
    c.add_point(P2Point::affine(one.clone(), i.clone()));
    c.add_point(P2Point::affine(a.clone(), &a * &i));
    c.add_point(P2Point::affine(one, -&i));
    c.add_point(P2Point::affine(b.clone(), -&(&b * &i)));
    c.add_line(c.poly("z")?);
    c.add_line(c.poly("x + i*y")?);
    c.add_line(c.poly("x - i*y")?);
    Ok(c)
}

/// Configuration of `X_{α,β}`: `(1,0)`, `(α,0)`, `(0,0)`, then two points
/// on `E(0,0)` in the directions `x − y` and `x − βy`; `L_y` and `E(0,0)`
/// removed.
pub fn x_configuration(alpha: &Param, beta: &Param) -> Result<PointConfiguration> {
    alpha.check_admissible()?;
    beta.check_admissible()?;
    let vars = table_with_params(&["x", "y", "z"], &[alpha, beta], VarFlag::Generic)?;
    let a = alpha.to_poly(&vars)?;
    let b = beta.to_poly(&vars)?;
    let zero = Poly::zero(&vars);
    let one = Poly::one(&vars);
    let mut c = PointConfiguration::new(format!("X[{alpha},{beta}]"), &vars);
    c.units = alpha.units(&vars)?;
    c.add_point(P2Point::affine(one.clone(), zero.clone()));
    c.add_point(P2Point::affine(a, zero.clone()));
    c.add_point(P2Point::affine(zero.clone(), zero.clone()));
    let origin = P2Point::affine(zero.clone(), zero);
    let t1 = c.poly("x - y")?;
    let tb = &Poly::var(&vars, "x")? - &(&b * &Poly::var(&vars, "y")?);
    c.centers.push(Center {
        label: "A_1".into(),
        point: origin.clone(),
        tangent: Some(t1),
    });
    c.centers.push(Center {
        label: "A_beta".into(),
        point: origin,
        tangent: Some(tb),
    });
    c.add_line(c.poly("y")?);
    c.removed.push(Boundary {
        label: "E(0,0)".into(),
        form: None,
    });
    Ok(c)
}

/// Permutation induced by coordinatewise conjugation.
#[derive(Clone, Debug, Serialize)]
pub struct InducedActionReport {
    pub labels: Vec<String>,
    pub permutation: Vec<usize>,
    pub fixed: Vec<String>,
    pub swapped: Vec<(String, String)>,
    pub boundary_labels: Vec<String>,
    pub boundary_permutation: Vec<usize>,
    pub involutive: bool,
}

fn conj_form(form: &Poly) -> Result<Poly> {
    Ok(form.conj()?)
}

/// Checks that conjugation permutes the centers (and tangent data) and the
/// removed lines; returns the induced permutation of exceptional curves.
pub fn lift_real_structure(config: &PointConfiguration) -> Result<InducedActionReport> {
    let n = config.centers.len();
    let mut perm = Vec::with_capacity(n);
    for c in &config.centers {
        let pc = c.point.conj()?;
        let tc = c.tangent.as_ref().map(conj_form).transpose()?;
        let found = config.centers.iter().position(|d| {
            d.point.same_as(&pc)
                && match (&tc, &d.tangent) {
                    (None, None) => true,
                    (Some(t), Some(s)) => proportional_forms(t, s).unwrap_or(false),
                    _ => false,
                }
        });
        match found {
            Some(j) => perm.push(j),
            None => return Err(Error::NotConjugationStable(c.label.clone())),
        }
    }
    let mut bperm = Vec::with_capacity(config.removed.len());
    for (k, b) in config.removed.iter().enumerate() {
        let j = match &b.form {
            None => Some(k),
            Some(f) => {
                let fc = conj_form(f)?;
                config.removed.iter().position(|o| {
                    o.form
                        .as_ref()
                        .is_some_and(|g| proportional_forms(&fc, g).unwrap_or(false))
                })
            }
        };
        match j {
            Some(j) => bperm.push(j),
            None => return Err(Error::NotConjugationStable(b.label.clone())),
        }
    }
    let labels: Vec<String> = config.centers.iter().map(|c| c.label.clone()).collect();
    let fixed = (0..n)
        .filter(|&k| perm[k] == k)
        .map(|k| labels[k].clone())
        .collect();
    let swapped = (0..n)
        .filter(|&k| perm[k] > k)
        .map(|k| (labels[k].clone(), labels[perm[k]].clone()))
        .collect();
    let involutive =
        (0..n).all(|k| perm[perm[k]] == k) && (0..bperm.len()).all(|k| bperm[bperm[k]] == k);
    Ok(InducedActionReport {
        labels,
        permutation: perm,
        fixed,
        swapped,
        boundary_labels: config.removed.iter().map(|b| b.label.clone()).collect(),
        boundary_permutation: bperm,
        involutive,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedPointReport {
    pub alpha: String,
    pub fixed_centers: Vec<String>,
    pub swapped_centers: Vec<(String, String)>,
    pub fixed_boundary: Vec<String>,
    pub swapped_boundary: Vec<(String, String)>,
    pub conclusion: String,
    pub report: CertifiedReport,
}

/// Conjugation-fixed data of `(W_α, ρ_α)`.
pub fn real_point_analysis(alpha: &Param) -> Result<FixedPointReport> {
    let config = y_configuration(alpha, alpha, VarFlag::Real)?;
    let action = lift_real_structure(&config)?;
    let mut rep = CertifiedReport::new(format!("real points of W[{alpha}]"));

    let blabels = &action.boundary_labels;
    let bp = &action.boundary_permutation;
    let fixed_boundary: Vec<String> = (0..bp.len())
        .filter(|&k| bp[k] == k)
        .map(|k| blabels[k].clone())
        .collect();
    let swapped_boundary: Vec<(String, String)> = (0..bp.len())
        .filter(|&k| bp[k] > k)
        .map(|k| (blabels[k].clone(), blabels[bp[k]].clone()))
        .collect();

    rep.check(
        "fixed-centers",
        "the only center fixed by conjugation is the origin",
        action.fixed == ["E(0,0)"],
        format!("fixed: {:?}", action.fixed),
    );
    rep.check(
        "involution",
        "conjugation acts on centers and boundary as an involution",
        action.involutive,
        format!("{:?}", action.permutation),
    );

    // Real points of a non-real line lie on its intersection with the conjugate line.
    let vars = &config.vars;
    let lp = config.poly("x + i*y")?;
    let lm = config.poly("x - i*y")?;
    let meet = P2Point::new(cross(&linear_coeffs(&lp)?, &linear_coeffs(&lm)?));
    let origin = P2Point::affine(Poly::zero(vars), Poly::zero(vars));
    rep.check(
        "real-points-on-boundary",
        "the only real point of L_{x+iy} and L_{x-iy} is the origin",
        meet.same_as(&origin),
        format!("L_{{x+iy}} meets its conjugate in {}", meet.label()),
    );

    let mut on_boundary = true;
    for (k, c) in config.centers.iter().enumerate() {
        if action.permutation[k] != k {
            let a = eval_form(&lp, &c.point)?.is_zero();
            let b = eval_form(&lm, &c.point)?.is_zero();
            on_boundary &= a ^ b;
        }
    }
    rep.check(
        "swapped-centers-on-boundary",
        "every non-real center lies on exactly one of L_{x+iy}, L_{x-iy}",
        on_boundary,
        format!("swapped pairs: {:?}", action.swapped),
    );

    let conclusion = if rep.passed() {
        "real locus = blow-up of R^2 at the origin".to_string()
    } else {
        "inconclusive".to_string()
    };
    Ok(FixedPointReport {
        alpha: alpha.to_string(),
        fixed_centers: action.fixed,
        swapped_centers: action.swapped,
        fixed_boundary,
        swapped_boundary,
        conclusion,
        report: rep,
    })
}

fn greek(name: &str) -> &str {
    match name {
        "alpha" => "α",
        "beta" => "β",
        other => other,
    }
}

fn fmt_rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn fmt_mono(vars: &Vars, m: &Monomial) -> String {
    let mut s = String::new();
    for (k, &e) in m.exponents().iter().enumerate() {
        if e > 0 {
            s.push_str(greek(vars.name(k)));
            if e > 1 {
                s.push_str(&format!("^{e}"));
            }
        }
    }
    s
}

/// Real-coefficient polynomial as compact text; `None` if some coefficient
/// is not real.
fn fmt_real(p: &Poly) -> Option<(bool, String, bool)> {
    if p.terms().any(|(_, c)| !c.is_real()) {
        return None;
    }
    let terms = p.terms_sorted(&MonomialOrder::Lex);
    let lead_neg = terms.first().is_some_and(|(_, c)| c.re().is_negative());
    let mut s = String::new();
    for (k, (m, c)) in terms.iter().enumerate() {
        let mut q = c.re().clone();
        if lead_neg {
            q = -q;
        }
        if q.is_negative() {
            s.push('-');
        } else if k > 0 {
            s.push('+');
        }
        let a = q.abs();
        let mono = fmt_mono(p.vars(), m);
        if mono.is_empty() {
            s.push_str(&fmt_rat(&a));
        } else if a.is_one() {
            s.push_str(&mono);
        } else if a.is_integer() {
            s.push_str(&format!("{}{mono}", fmt_rat(&a)));
        } else {
            s.push_str(&format!("({}){mono}", fmt_rat(&a)));
        }
    }
    Some((lead_neg, s, terms.len() > 1))
}

fn imaginary_part_over_i(p: &Poly) -> Option<Poly> {
    if p.terms().any(|(_, c)| !c.re().is_zero()) {
        return None;
    }
    Some(Poly::from_terms(
        p.vars(),
        p.terms()
            .map(|(m, c)| (m.clone(), GaussianRational::from_rational(c.im().clone()))),
    ))
}

/// Sign and body of `p` as a coefficient, with `i` written as a suffix.
fn coeff_parts(p: &Poly) -> (bool, String) {
    if let Some((neg, body, multi)) = fmt_real(p) {
        return (
            neg,
            if multi || body.contains('/') {
                format!("({body})")
            } else {
                body
            },
        );
    }
    if let Some(r) = imaginary_part_over_i(p) {
        if let Some((neg, body, multi)) = fmt_real(&r) {
            let body = if multi || body.contains('/') {
                format!("({body})i")
            } else if body == "1" {
                "i".to_string()
            } else {
                format!("{body}i")
            };
            return (neg, body);
        }
    }
    (false, format!("({})", p))
}

/// Compact text for a parameter expression: `0`, `1`, `i`, `αi`, `-αi`, `α+1`.
pub fn fmt_scalar(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let (neg, body) = coeff_parts(p);
    let body = body
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .filter(|b| !b.contains(')'))
        .map_or(body.clone(), str::to_string);
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Name of a line: `L_z`, `L_{x+iy}`, `L_{(α+1)x+(α-1)iy-2αz}`.
pub fn linear_form_name(form: &Poly) -> String {
    let body = match linear_coeffs(form) {
        Ok(c) => {
            let names = ["x", "y", "z"];
            let mut s = String::new();
            for k in 0..3 {
                if c[k].is_zero() {
                    continue;
                }
                let (neg, mut coeff) = coeff_parts(&c[k]);
                if coeff == "1" {
                    coeff.clear();
                }
                if neg {
                    s.push('-');
                } else if !s.is_empty() {
                    s.push('+');
                }
                s.push_str(&coeff);
                s.push_str(names[k]);
            }
            s
        }
        Err(_) => form.to_string(),
    };
    if body.chars().count() == 1 {
        format!("L_{body}")
    } else {
        format!("L_{{{body}}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_of_the_y_configuration() {
        let c = y_configuration(&Param::alpha(), &Param::alpha(), VarFlag::Real).unwrap();
        let labels: Vec<&str> = c.centers.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(
            labels,
            ["E(0,0)", "E(1,i)", "E(α,αi)", "E(1,-i)", "E(α,-αi)"]
        );
        let lines: Vec<&str> = c.removed.iter().map(|b| b.label.as_str()).collect();
        assert_eq!(lines, ["L_z", "L_{x+iy}", "L_{x-iy}"]);
        assert!(c.centers_distinct().unwrap());
    }

    #[test]
    fn line_names() {
        let c = y_configuration(&Param::alpha(), &Param::alpha(), VarFlag::Real).unwrap();
        for (text, name) in [
            (
                "(alpha+1)*x + (alpha-1)*i*y - 2*alpha*z",
                "L_{(α+1)x+(α-1)iy-2αz}",
            ),
            (
                "(alpha+1)*x - (alpha-1)*i*y - 2*alpha*z",
                "L_{(α+1)x-(α-1)iy-2αz}",
            ),
            ("x - alpha*z", "L_{x-αz}"),
            ("x - z", "L_{x-z}"),
        ] {
            assert_eq!(linear_form_name(&c.poly(text).unwrap()), name);
        }
    }

    #[test]
    fn conjugation_action_on_y() {
        let c = y_configuration(&Param::alpha(), &Param::alpha(), VarFlag::Real).unwrap();
        let a = lift_real_structure(&c).unwrap();
        assert_eq!(a.permutation, vec![0, 3, 4, 1, 2]);
        assert_eq!(a.boundary_permutation, vec![0, 2, 1]);
        assert!(a.involutive);
    }

    #[test]
    fn unstable_configuration() {
        let vars = table_with_params(&["x", "y", "z"], &[], VarFlag::Real).unwrap();
        let mut c = PointConfiguration::new("bad", &vars);
        c.add_point(P2Point::affine(
            Poly::constant(&vars, GaussianRational::i()),
            Poly::zero(&vars),
        ));
        assert!(matches!(
            lift_real_structure(&c),
            Err(Error::NotConjugationStable(_))
        ));
        let mut ok = PointConfiguration::new("origin", &vars);
        ok.add_point(P2Point::affine(Poly::zero(&vars), Poly::zero(&vars)));
        assert_eq!(lift_real_structure(&ok).unwrap().fixed, ["E(0,0)"]);
    }

    #[test]
    fn real_points_shape_is_independent_of_alpha() {
        let a = real_point_analysis(&Param::integer(2)).unwrap();
        let b = real_point_analysis(&Param::ratio(1, 2)).unwrap();
        assert!(a.report.passed() && b.report.passed());
        assert_eq!(a.fixed_centers, ["E(0,0)"]);
        assert_eq!(a.swapped_centers.len(), b.swapped_centers.len());
        assert_eq!(
            a.swapped_boundary,
            vec![("L_{x+iy}".to_string(), "L_{x-iy}".to_string())]
        );
        let s = real_point_analysis(&Param::alpha()).unwrap();
        assert_eq!(
            s.swapped_centers,
            vec![
                ("E(1,i)".to_string(), "E(1,-i)".to_string()),
                ("E(α,αi)".to_string(), "E(α,-αi)".to_string())
            ]
        );
    }
}
