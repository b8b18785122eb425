//! Matchings of the negative-curve configurations and the linear witnesses
//! deciding isomorphism of the real forms.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::intersection::{enumerate_negative_classes, intersection_matrix, line_at_infinity};
use crate::kernel::linalg::solve;
use crate::kernel::{GaussianRational, VarFlag};
use crate::surfaces::{lift_real_structure, proportional_forms, y_configuration, Param};
use crate::{Error, Result};

/// Negative curves plus `L_z`, weighted by intersection numbers, with the
/// involution induced by conjugation.
#[derive(Clone, Debug)]
pub struct CurveIncidenceGraph {
    pub alpha: Param,
    pub labels: Vec<String>,
    pub weights: Vec<Vec<i64>>,
    pub real_action: Vec<usize>,
    /// Affine coordinates of the centers, which come first among the vertices.
    pub centers: Vec<(GaussianRational, GaussianRational)>,
}

impl CurveIncidenceGraph {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn weight(&self, a: &str, b: &str) -> Option<i64> {
        Some(self.weights[self.index(a)?][self.index(b)?])
    }
}

fn check_real(alpha: &Param) -> Result<()> {
    alpha.check_admissible()
}

pub fn incidence_graph(alpha: &Param) -> Result<CurveIncidenceGraph> {
    check_real(alpha)?;
    let config = y_configuration(alpha, alpha, VarFlag::Real)?;
    let mut records = enumerate_negative_classes(&config, 1)?.records;
    records.push(line_at_infinity(&config)?);
    let weights = intersection_matrix(&records)?;
    let action = lift_real_structure(&config)?;

    let n = config.centers.len();
    let mut real_action: Vec<usize> = action.permutation.clone();
    for r in &records[n..] {
        let form = r.form.as_ref().expect("lines carry forms").conj()?;
        let j = records
            .iter()
            .position(|o| {
                o.form
                    .as_ref()
                    .is_some_and(|g| proportional_forms(&form, g).unwrap_or(false))
            })
            .ok_or_else(|| Error::NotConjugationStable(r.name.clone()))?;
        real_action.push(j);
    }
    // Empty for a symbolic parameter.
    let centers = config
        .centers
        .iter()
        .map(|c| {
            let [x, y, _] = &c.point.coords;
            Some((x.as_constant()?, y.as_constant()?))
        })
        .collect::<Option<Vec<_>>>()
        .unwrap_or_default();
    Ok(CurveIncidenceGraph {
        alpha: alpha.clone(),
        labels: records.iter().map(|r| r.name.clone()).collect(),
        weights,
        real_action,
        centers,
    })
}

/// Weight-preserving bijections fixing `L_z` and `E(0,0)` and commuting
/// with the real actions, found by backtracking.
pub fn admissible_matchings(ga: &CurveIncidenceGraph, gb: &CurveIncidenceGraph) -> Vec<Vec<usize>> {
    let n = ga.len();
    if gb.len() != n {
        return Vec::new();
    }
    let mut fixed = vec![None; n];
    for label in ["L_z", "E(0,0)"] {
        if let (Some(i), Some(j)) = (ga.index(label), gb.index(label)) {
            fixed[i] = Some(j);
        }
    }
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(ga, gb, &fixed, 0, &mut perm, &mut used, &mut out);
    out
}

fn extend(
    ga: &CurveIncidenceGraph,
    gb: &CurveIncidenceGraph,
    fixed: &[Option<usize>],
    i: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    let n = ga.len();
    if i == n {
        let commutes = (0..n).all(|k| perm[ga.real_action[k]] == gb.real_action[perm[k]]);
        if commutes {
            out.push(perm.clone());
        }
        return;
    }
    let candidates: Vec<usize> = match fixed[i] {
        Some(j) => vec![j],
        None => (0..n).filter(|&j| !fixed.contains(&Some(j))).collect(),
    };
    for j in candidates {
        if used[j] || ga.weights[i][i] != gb.weights[j][j] {
            continue;
        }
        if (0..i).any(|k| ga.weights[i][k] != gb.weights[j][perm[k]]) {
            continue;
        }
        // Real action: if the partner of i is already placed, j's partner must match.
        let ri = ga.real_action[i];
        if ri < i && gb.real_action[j] != perm[ri] {
            continue;
        }
        perm[i] = j;
        used[j] = true;
        extend(ga, gb, fixed, i + 1, perm, used, out);
        used[j] = false;
        perm[i] = usize::MAX;
    }
}

/// Real 2×2 matrix `(a b; c d)` acting by `(x,y) ↦ (ax+by, cx+dy)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub entries: [[GaussianRational; 2]; 2],
}

impl IsoWitness {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        let g = GaussianRational::from_rational;
        Self {
            entries: [[g(a), g(b)], [g(c), g(d)]],
        }
    }

    pub fn diag(a: BigRational, d: BigRational) -> Self {
        Self::new(a, BigRational::zero(), BigRational::zero(), d)
    }

    pub fn flat(&self) -> [&GaussianRational; 4] {
        [
            &self.entries[0][0],
            &self.entries[0][1],
            &self.entries[1][0],
            &self.entries[1][1],
        ]
    }

    pub fn apply(
        &self,
        p: &(GaussianRational, GaussianRational),
    ) -> (GaussianRational, GaussianRational) {
        let [a, b, c, d] = self.flat();
        (&(a * &p.0) + &(b * &p.1), &(c * &p.0) + &(d * &p.1))
    }

    pub fn determinant(&self) -> GaussianRational {
        let [a, b, c, d] = self.flat();
        &(a * d) - &(b * c)
    }
}

impl fmt::Display for IsoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.flat();
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

impl Serialize for IsoWitness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

/// Absolute value first, then positive before negative.
fn canonical_cmp(a: &BigRational, b: &BigRational) -> Ordering {
    a.abs()
        .cmp(&b.abs())
        .then_with(|| b.is_positive().cmp(&a.is_positive()))
}

fn witness_cmp(a: &IsoWitness, b: &IsoWitness) -> Ordering {
    a.flat()
        .iter()
        .zip(b.flat())
        .map(|(x, y)| canonical_cmp(x.re(), y.re()))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessSolution {
    pub witness: Option<IsoWitness>,
    pub trace: String,
}

fn rational_value(p: &Param) -> Result<BigRational> {
    p.as_rational()
        .cloned()
        .ok_or_else(|| Error::InvalidSpec(format!("{p} must be a rational value")))
}

/// Solves for a real matrix sending each nonzero center of `ga` to its
/// partner under `matching`.
pub fn solve_linear_witness(
    ga: &CurveIncidenceGraph,
    gb: &CurveIncidenceGraph,
    matching: &[usize],
) -> WitnessSolution {
    let zero = BigRational::zero();
    let one = BigRational::from_integer(1.into());
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (k, p) in ga.centers.iter().enumerate() {
        let Some(q) = gb.centers.get(matching[k]) else {
            return WitnessSolution {
                witness: None,
                trace: format!("center {k} matched to a non-center"),
            };
        };
        // a·x + b·y = X and c·x + d·y = Y, split into real and imaginary parts.
        for (part, target) in [(0usize, &q.0), (1, &q.1)] {
            for im in [false, true] {
                let pick = |g: &GaussianRational| if im { g.im().clone() } else { g.re().clone() };
                let mut row = vec![zero.clone(); 4];
                row[2 * part] = pick(&p.0);
                row[2 * part + 1] = pick(&p.1);
                rows.push(row);
                rhs.push(pick(target));
            }
        }
    }
    match solve(&rows, &rhs, &one) {
        Ok(Some(x)) => {
            let w = IsoWitness::new(x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone());
            if w.determinant().is_zero() {
                WitnessSolution {
                    witness: None,
                    trace: "consistent but singular".into(),
                }
            } else {
                WitnessSolution {
                    witness: Some(w.clone()),
                    trace: format!("{} equations, solution {w}", rows.len()),
                }
            }
        }
        Ok(None) => WitnessSolution {
            witness: None,
            trace: format!("{} equations, inconsistent", rows.len()),
        },
        Err(e) => WitnessSolution {
            witness: None,
            trace: e.to_string(),
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationResult {
    pub alpha: String,
    pub beta: String,
    pub verdict: Verdict,
    pub witness: Option<IsoWitness>,
    pub matchings_examined: usize,
    #[serde(skip)]
    pub traces: Vec<String>,
}

/// Searches matchings and linear witnesses; the verdict is whatever the
/// search finds.
pub fn classify(alpha: &Param, beta: &Param) -> Result<ClassificationResult> {
    alpha.check_admissible()?;
    beta.check_admissible()?;
    rational_value(alpha)?;
    rational_value(beta)?;
    let ga = incidence_graph(alpha)?;
    let gb = incidence_graph(beta)?;
    let matchings = admissible_matchings(&ga, &gb);
    let mut witnesses = Vec::new();
    let mut traces = Vec::new();
    for m in &matchings {
        let s = solve_linear_witness(&ga, &gb, m);
        traces.push(s.trace);
        if let Some(w) = s.witness {
            if verify_witness(&w, alpha, beta)? {
                witnesses.push(w);
            }
        }
    }
    witnesses.sort_by(witness_cmp);
    let witness = witnesses.into_iter().next();
    Ok(ClassificationResult {
        alpha: alpha.to_string(),
        beta: beta.to_string(),
        verdict: if witness.is_some() {
            Verdict::Isomorphic
        } else {
            Verdict::NotIsomorphic
        },
        witness,
        matchings_examined: matchings.len(),
        traces,
    })
}

fn centers_of(p: &Param) -> Result<Vec<(GaussianRational, GaussianRational)>> {
    let q = GaussianRational::from_rational(rational_value(p)?);
    let i = GaussianRational::i();
    let z = GaussianRational::zero();
    let one = GaussianRational::one();
    Ok(vec![
        (z.clone(), z),
        (one.clone(), i.clone()),
        (q.clone(), &q * &i),
        (one, -&i),
        (q.clone(), -&(&q * &i)),
    ])
}

/// Real entries, `x²+y²` pulled back to a nonzero multiple of itself, and
/// the five centers mapped bijectively with conjugate pairs kept together.
pub fn verify_witness(w: &IsoWitness, alpha: &Param, beta: &Param) -> Result<bool> {
    if !w.flat().iter().all(|e| e.is_real()) {
        return Ok(false);
    }
    let [a, b, c, d] = w.flat();
    let cross = &(a * b) + &(c * d);
    let xx = &(a * a) + &(c * c);
    let yy = &(b * b) + &(d * d);
    if !cross.is_zero() || xx != yy || xx.is_zero() {
        return Ok(false);
    }
    let src = centers_of(alpha)?;
    let dst = centers_of(beta)?;
    let mut image = Vec::with_capacity(src.len());
    for p in &src {
        match dst.iter().position(|q| *q == w.apply(p)) {
            Some(j) => image.push(j),
            None => return Ok(false),
        }
    }
    let mut sorted = image.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != src.len() {
        return Ok(false);
    }
    let conj = |v: &(GaussianRational, GaussianRational)| (v.0.conj(), v.1.conj());
    for (k, p) in src.iter().enumerate() {
        let pk = src
            .iter()
            .position(|q| *q == conj(p))
            .expect("conjugation-stable set");
        if dst[image[pk]] != conj(&dst[image[k]]) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
