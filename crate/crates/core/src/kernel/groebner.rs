//! Buchberger's algorithm with the Gebauer–Möller pair criteria.

use std::cmp::Ordering;
use std::sync::OnceLock;

use super::{GaussianRational, KernelError, Monomial, MonomialOrder, Poly, Vars};

/// Environment variable overriding the default step budget.
pub const STEP_BUDGET_ENV: &str = "REALFORMS_STEP_BUDGET";

const DEFAULT_STEP_BUDGET: usize = 200_000;

/// Maximum number of S-pair reductions one basis computation may perform.
pub fn default_step_budget() -> usize {
    static BUDGET: OnceLock<usize> = OnceLock::new();
    *BUDGET.get_or_init(|| {
        std::env::var(STEP_BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_STEP_BUDGET)
    })
}

/// Polynomial as a term list sorted from largest to smallest monomial.
#[derive(Clone, Debug)]
pub(crate) struct Sorted {
    pub(crate) terms: Vec<(Monomial, GaussianRational)>,
}

impl Sorted {
    pub(crate) fn from_poly(p: &Poly, ord: &MonomialOrder) -> Self {
        let mut terms: Vec<_> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Sorted { terms }
    }

    pub(crate) fn to_poly(&self, vars: &Vars) -> Poly {
        Poly::from_terms(vars, self.terms.iter().cloned())
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.first() {
            if !lc.is_one() {
                let inv = lc.inverse().expect("nonzero leading coefficient");
                for (_, c) in &mut self.terms {
                    *c *= &inv;
                }
            }
        }
    }

    /// `self − c·m·g`, merging two sorted lists.
    fn sub_scaled(
        &self,
        c: &GaussianRational,
        m: &Monomial,
        g: &Sorted,
        ord: &MonomialOrder,
    ) -> Sorted {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g
            .terms
            .iter()
            .map(|(gm, gc)| (gm.mul(m), gc * c))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().expect("peeked").clone()),
                (None, Some(_)) => {
                    let (bm, bc) = b.next().expect("peeked");
                    out.push((bm, -bc));
                }
                (Some(x), Some(y)) => match ord.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().expect("peeked").clone()),
                    Ordering::Less => {
                        let (bm, bc) = b.next().expect("peeked");
                        out.push((bm, -bc));
                    }
                    Ordering::Equal => {
                        let (am, ac) = a.next().expect("peeked");
                        let (_, bc) = b.next().expect("peeked");
                        let d = ac - &bc;
                        if !d.is_zero() {
                            out.push((am.clone(), d));
                        }
                    }
                },
            }
        }
        Sorted { terms: out }
    }
}

/// Full reduction of `p` modulo `basis` (each element monic).
pub(crate) fn reduce(p: &Sorted, basis: &[&Sorted], ord: &MonomialOrder) -> Sorted {
    let mut work = p.clone();
    let mut rem: Vec<(Monomial, GaussianRational)> = Vec::new();
    while let Some((m, c)) = work.terms.first().cloned() {
        match basis.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                let q = g.lm().quotient_of(&m).expect("divides");
                work = work.sub_scaled(&c, &q, g, ord);
            }
            None => {
                rem.push((m, c));
                work.terms.remove(0);
            }
        }
    }
    Sorted { terms: rem }
}

fn s_polynomial(f: &Sorted, g: &Sorted, ord: &MonomialOrder) -> Sorted {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&l).expect("lcm");
    let mg = g.lm().quotient_of(&l).expect("lcm");
    // both monic: S = mf·f − mg·g
    let scaled_f = Sorted { terms: Vec::new() }.sub_scaled(&-GaussianRational::one(), &mf, f, ord);
    scaled_f.sub_scaled(&GaussianRational::one(), &mg, g, ord)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// A reduced Gröbner basis under a fixed order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    vars: Vars,
    order: MonomialOrder,
    elems: Vec<Sorted>,
}

impl GroebnerBasis {
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Basis elements, monic, sorted by increasing leading monomial.
    pub fn polys(&self) -> Vec<Poly> {
        self.elems.iter().map(|s| s.to_poly(&self.vars)).collect()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elems.len() == 1 && self.elems[0].terms.len() == 1 && self.elems[0].lm().is_one()
    }

    pub fn normal_form(&self, p: &Poly, ord: &MonomialOrder) -> Result<Poly, KernelError> {
        if *ord != self.order {
            return Err(KernelError::OrderMismatch);
        }
        if **p.vars() != *self.vars {
            return Err(KernelError::VarTableMismatch);
        }
        let refs: Vec<&Sorted> = self.elems.iter().collect();
        Ok(reduce(&Sorted::from_poly(p, ord), &refs, ord).to_poly(&self.vars))
    }

    /// Every S-polynomial of the basis reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let refs: Vec<&Sorted> = self.elems.iter().collect();
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                let s = s_polynomial(&self.elems[i], &self.elems[j], &self.order);
                if !reduce(&s, &refs, &self.order).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// No term of any element is divisible by another element's leading monomial.
    pub fn is_reduced(&self) -> bool {
        for (i, f) in self.elems.iter().enumerate() {
            if !f.terms[0].1.is_one() {
                return false;
            }
            for (j, g) in self.elems.iter().enumerate() {
                if i != j && f.terms.iter().any(|(m, _)| g.lm().divides(m)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(
    vars: &Vars,
    gens: &[Poly],
    ord: &MonomialOrder,
    budget: usize,
) -> Result<GroebnerBasis, KernelError> {
    let mut store: Vec<Sorted> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    // Inter-reduce the input first so the pair set starts small.
    let mut inputs: Vec<Sorted> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut s = Sorted::from_poly(g, ord);
            s.make_monic();
            s
        })
        .collect();
    inputs.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    for g in inputs {
        let basis: Vec<&Sorted> = store
            .iter()
            .zip(&active)
            .filter(|(_, &a)| a)
            .map(|(s, _)| s)
            .collect();
        let mut h = reduce(&g, &basis, ord);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        insert(&mut store, &mut active, &mut pairs, h, ord);
    }

    let mut steps = 0usize;
    while !pairs.is_empty() {
        steps += 1;
        if steps > budget {
            return Err(KernelError::BudgetExceeded(budget));
        }
        // Normal selection strategy: smallest lcm first.
        let k = (0..pairs.len())
            .min_by(|&a, &b| ord.cmp(&pairs[a].lcm, &pairs[b].lcm))
            .expect("nonempty");
        let pair = pairs.swap_remove(k);
        let s = s_polynomial(&store[pair.i], &store[pair.j], ord);
        let basis: Vec<&Sorted> = store
            .iter()
            .zip(&active)
            .filter(|(_, &a)| a)
            .map(|(s, _)| s)
            .collect();
        let mut h = reduce(&s, &basis, ord);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if h.lm().is_one() {
            let mut one = Sorted {
                terms: vec![(Monomial::one(vars.len()), GaussianRational::one())],
            };
            one.make_monic();
            return Ok(GroebnerBasis {
                vars: vars.clone(),
                order: ord.clone(),
                elems: vec![one],
            });
        }
        insert(&mut store, &mut active, &mut pairs, h, ord);
    }

    let mut kept: Vec<Sorted> = store
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(s, _)| s)
        .collect();
    // Minimal basis: drop elements whose leading monomial is divisible by another's.
    kept.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<Sorted> = Vec::new();
    for g in kept {
        if !minimal.iter().any(|h| h.lm().divides(g.lm())) {
            minimal.push(g);
        }
    }
    // Reduce every tail.
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Sorted> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, s)| s)
            .collect();
        let head = Sorted {
            terms: vec![minimal[k].terms[0].clone()],
        };
        let tail = Sorted {
            terms: minimal[k].terms[1..].to_vec(),
        };
        let mut r = reduce(&tail, &others, ord);
        let mut terms = head.terms;
        terms.append(&mut r.terms);
        let mut s = Sorted { terms };
        s.make_monic();
        reduced.push(s);
    }
    if reduced.is_empty() {
        // zero ideal
        return Ok(GroebnerBasis {
            vars: vars.clone(),
            order: ord.clone(),
            elems: Vec::new(),
        });
    }
    Ok(GroebnerBasis {
        vars: vars.clone(),
        order: ord.clone(),
        elems: reduced,
    })
}

/// Adds `h` to the basis and updates the pair set (Gebauer–Möller).
fn insert(
    store: &mut Vec<Sorted>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: Sorted,
    ord: &MonomialOrder,
) {
    let hi = store.len();
    let hlm = h.lm().clone();

    // Candidate new pairs (h, g) for active g.
    let cands: Vec<(usize, Monomial, bool)> = (0..hi)
        .filter(|&g| active[g])
        .map(|g| {
            let glm = store[g].lm();
            (g, hlm.lcm(glm), hlm.is_coprime(glm))
        })
        .collect();

    // Chain criterion among the new pairs: drop (h,g1) if some other new pair
    // has an lcm properly dividing it; keep one representative per equal lcm,
    // preferring a coprime one so the product criterion can discard the class.
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    for (k, c) in cands.iter().enumerate() {
        let dominated = cands
            .iter()
            .enumerate()
            .any(|(k2, c2)| k2 != k && c2.1.divides(&c.1) && c2.1 != c.1);
        if dominated {
            continue;
        }
        match kept.iter_mut().find(|e| e.1 == c.1) {
            Some(e) => {
                if c.2 && !e.2 {
                    *e = c.clone();
                }
            }
            None => kept.push(c.clone()),
        }
    }

    // Old pairs whose lcm is divisible by LM(h) with both sub-lcms different
    // are redundant.
    pairs.retain(|p| {
        let li = hlm.lcm(store[p.i].lm());
        let lj = hlm.lcm(store[p.j].lm());
        !(hlm.divides(&p.lcm) && li != p.lcm && lj != p.lcm)
    });

    // Product criterion.
    for (g, lcm, coprime) in kept {
        if !coprime {
            pairs.push(Pair { i: g, j: hi, lcm });
        }
    }

    for g in 0..hi {
        if active[g] && hlm.divides(store[g].lm()) {
            active[g] = false;
        }
    }
    store.push(h);
    active.push(true);
    let _ = ord;
}
