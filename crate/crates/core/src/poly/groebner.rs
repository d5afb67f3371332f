//! Buchberger's algorithm over the rationals.
//!
//! Internally every polynomial is kept as an integer-primitive vector of
//! terms sorted by the active order, and reductions are fraction free. Pairs
//! are pruned with the Gebauer-Moller criteria and selected by the normal
//! strategy: smallest lcm in the term order first. Pairs whose lcms share
//! the smallest grade (see [`MonomialOrder::grade`]) form one batch; for
//! grevlex that is the usual batch of equal lcm degree. Selecting by total
//! degree alone is not enough for block orders, which are not degree
//! compatible: on elimination problems it lets coefficients explode.
//!
//! Every S-polynomial is fully reduced, which keeps tails and coefficients
//! small on elimination problems. Reductions inside a batch may run on a
//! worker pool; their results are merged one by one in a fixed order, so the
//! run is reproducible for any thread count.

use std::cmp::Ordering;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{Monomial, MonomialOrder, Polynomial};
use crate::error::{Error, Result};

type Term = (Monomial, BigInt);

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IPoly {
    terms: Vec<Term>,
}

impl IPoly {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Integer representative `q` and rational `k` with `p = k * q`.
    fn from_poly(p: &Polynomial, order: &MonomialOrder) -> (IPoly, BigRational) {
        let prim = p.primitive(order);
        let scale = match (p.leading_term(order), prim.leading_term(order)) {
            (Some((_, a)), Some((_, b))) => a / b,
            _ => BigRational::one(),
        };
        let terms = prim
            .sorted_terms(order)
            .into_iter()
            .map(|(m, c)| (m.clone(), c.to_integer()))
            .collect();
        (IPoly { terms }, scale)
    }

    fn to_poly(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()))),
        )
    }

    /// Divides out the content and makes the leading coefficient positive.
    /// Returns the divisor.
    fn make_primitive(&mut self) -> BigInt {
        if self.is_zero() {
            return BigInt::one();
        }
        let mut g = content(&self.terms);
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.1 = &t.1 / &g;
            }
        }
        g
    }
}

fn content(terms: &[Term]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in terms {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// `a * x^p * f - b * x^q * g` for sorted term lists.
fn combine(
    order: &MonomialOrder,
    a: &BigInt,
    p: &Monomial,
    f: &[Term],
    b: &BigInt,
    q: &Monomial,
    g: &[Term],
) -> Vec<Term> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let fm = |k: usize| f[k].0.mul(p);
    let gm = |k: usize| g[k].0.mul(q);
    let mut fcur = (!f.is_empty()).then(|| fm(0));
    let mut gcur = (!g.is_empty()).then(|| gm(0));
    loop {
        match (fcur.take(), gcur.take()) {
            (None, None) => break,
            (Some(x), None) => {
                out.push((x, a * &f[i].1));
                i += 1;
                fcur = (i < f.len()).then(|| fm(i));
            }
            (None, Some(y)) => {
                out.push((y, -(b * &g[j].1)));
                j += 1;
                gcur = (j < g.len()).then(|| gm(j));
            }
            (Some(x), Some(y)) => match order.cmp(&x, &y) {
                Ordering::Greater => {
                    out.push((x, a * &f[i].1));
                    i += 1;
                    fcur = (i < f.len()).then(|| fm(i));
                    gcur = Some(y);
                }
                Ordering::Less => {
                    out.push((y, -(b * &g[j].1)));
                    j += 1;
                    gcur = (j < g.len()).then(|| gm(j));
                    fcur = Some(x);
                }
                Ordering::Equal => {
                    let c = a * &f[i].1 - b * &g[j].1;
                    if !c.is_zero() {
                        out.push((x, c));
                    }
                    i += 1;
                    j += 1;
                    fcur = (i < f.len()).then(|| fm(i));
                    gcur = (j < g.len()).then(|| gm(j));
                }
            },
        }
    }
    out
}

struct Reducers<'a> {
    polys: Vec<&'a IPoly>,
    masks: Vec<u64>,
}

impl<'a> Reducers<'a> {
    fn new(polys: Vec<&'a IPoly>) -> Self {
        let masks = polys.iter().map(|p| p.lm().mask()).collect();
        Reducers { polys, masks }
    }

    fn find(&self, m: &Monomial) -> Option<&'a IPoly> {
        let mask = m.mask();
        self.polys
            .iter()
            .zip(&self.masks)
            .find(|(p, &pm)| pm & !mask == 0 && p.lm().divides(m))
            .map(|(p, _)| *p)
    }
}

/// Full reduction of `f`. Returns `(r, k)` with `k * f - r` in the ideal of
/// the reducers and `r` integer primitive.
fn reduce(f: IPoly, reducers: &Reducers, order: &MonomialOrder) -> (IPoly, BigRational) {
    let mut rest = f.terms;
    let mut done: Vec<Term> = Vec::new();
    let mut mult = BigRational::one();
    let mut steps = 0usize;
    let one = Monomial::one(rest.first().map_or(0, |t| t.0.nvars()));
    while !rest.is_empty() {
        match reducers.find(&rest[0].0) {
            Some(g) => {
                let q = rest[0].0.div(g.lm()).expect("divisible");
                let d = rest[0].1.gcd(g.lc());
                let fa = g.lc() / &d;
                let gb = &rest[0].1 / &d;
                rest = combine(order, &fa, &one, &rest[1..], &gb, &q, &g.terms[1..]);
                if !fa.is_one() {
                    for t in &mut done {
                        t.1 *= &fa;
                    }
                    mult *= BigRational::from_integer(fa);
                }
                steps += 1;
                if steps.is_multiple_of(8) {
                    let c = content(&done).gcd(&content(&rest));
                    if !c.is_zero() && !c.is_one() {
                        for t in done.iter_mut().chain(rest.iter_mut()) {
                            t.1 = &t.1 / &c;
                        }
                        mult /= BigRational::from_integer(c);
                    }
                }
            }
            None => {
                // Move the irreducible head into the result. Reversing would
                // avoid the shift, but `combine` rebuilds `rest` anyway.
                done.push(rest.remove(0));
            }
        }
    }
    let mut r = IPoly { terms: done };
    let c = r.make_primitive();
    mult /= BigRational::from_integer(c);
    (r, mult)
}

fn spoly(f: &IPoly, g: &IPoly, order: &MonomialOrder) -> IPoly {
    let l = f.lm().lcm(g.lm());
    let p = l.div(f.lm()).unwrap();
    let q = l.div(g.lm()).unwrap();
    let d = f.lc().gcd(g.lc());
    let a = g.lc() / &d;
    let b = f.lc() / &d;
    IPoly {
        terms: combine(order, &a, &p, &f.terms[1..], &b, &q, &g.terms[1..]),
    }
}

/// Remainder of `f` on division by `divisors`. No monomial of the result is
/// divisible by a leading monomial of a divisor and `f - result` lies in the
/// ideal they generate.
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let divs: Vec<IPoly> = divisors
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| IPoly::from_poly(g, order).0)
        .collect();
    if f.is_zero() {
        return f.clone();
    }
    let (fi, fscale) = IPoly::from_poly(f, order);
    let reducers = Reducers::new(divs.iter().collect());
    let (r, mult) = reduce(fi, &reducers, order);
    // mult * fi ~ r, and f = fscale * fi
    r.to_poly(f.nvars()).scale(&(fscale / mult))
}

/// Limits for a Buchberger run. Exhaustion yields [`Error::Budget`] carrying
/// a [`Checkpoint`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: Option<usize>,
    pub max_degree: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuchbergerOptions {
    pub threads: usize,
    pub budget: Budget,
    /// Print one line per degree batch to stderr.
    pub progress: bool,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions {
            threads: 1,
            budget: Budget::default(),
            progress: false,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerStats {
    /// S-pairs reduced.
    pub pairs: usize,
    /// S-pairs that reduced to zero.
    pub zero_reductions: usize,
    /// Largest lcm degree of a processed pair.
    pub max_degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Partial state of an interrupted run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    nvars: usize,
    order: MonomialOrder,
    basis: Vec<IPoly>,
    active: Vec<bool>,
    pairs: Vec<(usize, usize)>,
    stats: GroebnerStats,
}

impl Checkpoint {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn pending_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn stats(&self) -> GroebnerStats {
        self.stats
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nvars": self.nvars,
            "order": self.order,
            "basis": self.basis.iter().map(|p| p.to_poly(self.nvars).to_json(&self.order)).collect::<Vec<_>>(),
            "active": self.active,
            "pairs": self.pairs,
            "stats": self.stats,
        })
    }

    pub fn from_json(v: &Value) -> Result<Checkpoint> {
        let bad = |what: &str| Error::Parse(format!("checkpoint: {what}"));
        let nvars = v["nvars"].as_u64().ok_or_else(|| bad("nvars"))? as usize;
        let order: MonomialOrder = serde_json::from_value(v["order"].clone())?;
        let basis = v["basis"]
            .as_array()
            .ok_or_else(|| bad("basis"))?
            .iter()
            .map(|p| Ok(IPoly::from_poly(&Polynomial::from_json(p, nvars)?, &order).0))
            .collect::<Result<Vec<_>>>()?;
        let active: Vec<bool> = serde_json::from_value(v["active"].clone())?;
        let pairs: Vec<(usize, usize)> = serde_json::from_value(v["pairs"].clone())?;
        let stats: GroebnerStats = serde_json::from_value(v["stats"].clone())?;
        if active.len() != basis.len() || pairs.iter().any(|&(i, j)| i >= basis.len() || j >= basis.len()) {
            return Err(bad("inconsistent indices"));
        }
        Ok(Checkpoint {
            nvars,
            order,
            basis,
            active,
            pairs,
            stats,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string(&self.to_json())?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Checkpoint> {
        let text = std::fs::read_to_string(path)?;
        Checkpoint::from_json(&serde_json::from_str(&text)?)
    }
}

struct State {
    nvars: usize,
    order: MonomialOrder,
    basis: Vec<IPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    stats: GroebnerStats,
}

impl State {
    fn reducers(&self) -> Reducers<'_> {
        Reducers::new(
            self.basis
                .iter()
                .zip(&self.active)
                .filter(|(_, &a)| a)
                .map(|(p, _)| p)
                .collect(),
        )
    }

    /// Adds a nonzero polynomial that is fully reduced modulo the active
    /// elements, applying the Gebauer-Moller pair criteria.
    fn update(&mut self, h: IPoly) {
        let hidx = self.basis.len();
        let hlm = h.lm().clone();

        let cand: Vec<Pair> = (0..hidx)
            .filter(|&g| self.active[g])
            .map(|g| Pair {
                i: g,
                j: hidx,
                lcm: self.basis[g].lm().lcm(&hlm),
            })
            .collect();

        // Chain criterion on the new pairs, keeping coprime pairs as
        // witnesses for now.
        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in cand.iter().enumerate() {
            let coprime = self.basis[p.i].lm().is_coprime(&hlm);
            let dominated = cand[k + 1..].iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p.clone());
            }
        }
        kept.retain(|p| !self.basis[p.i].lm().is_coprime(&hlm));

        // Old pairs made redundant by h.
        let basis = &self.basis;
        self.pairs.retain(|p| {
            !(hlm.divides(&p.lcm)
                && basis[p.i].lm().lcm(&hlm) != p.lcm
                && basis[p.j].lm().lcm(&hlm) != p.lcm)
        });
        self.pairs.extend(kept);

        for g in 0..hidx {
            if self.active[g] && hlm.divides(self.basis[g].lm()) {
                self.active[g] = false;
            }
        }
        self.basis.push(h);
        self.active.push(true);
    }

    fn checkpoint(&self) -> Checkpoint {
        Checkpoint {
            nvars: self.nvars,
            order: self.order,
            basis: self.basis.clone(),
            active: self.active.clone(),
            pairs: self.pairs.iter().map(|p| (p.i, p.j)).collect(),
            stats: self.stats,
        }
    }

    fn run(&mut self, opts: &BuchbergerOptions) -> Result<()> {
        let pool = if opts.threads > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(opts.threads)
                    .build()
                    .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?,
            )
        } else {
            None
        };
        let order = self.order;
        while !self.pairs.is_empty() {
            let first = self
                .pairs
                .iter()
                .min_by(|a, b| order.cmp(&a.lcm, &b.lcm))
                .expect("pairs are nonempty");
            let grade = order.grade(&first.lcm);
            let deg = first.lcm.degree();
            let over_degree = opts.budget.max_degree.is_some_and(|d| deg > d);
            let over_pairs = opts.budget.max_pairs.is_some_and(|n| self.stats.pairs >= n);
            if over_degree || over_pairs {
                return Err(Error::Budget {
                    pairs: self.stats.pairs,
                    degree: deg,
                    checkpoint: Box::new(self.checkpoint()),
                });
            }
            let (mut batch, rest): (Vec<Pair>, Vec<Pair>) =
                std::mem::take(&mut self.pairs).into_iter().partition(|p| order.grade(&p.lcm) == grade);
            self.pairs = rest;
            batch.sort_by(|a, b| order.cmp(&a.lcm, &b.lcm).then((a.i, a.j).cmp(&(b.i, b.j))));

            let reduced: Vec<IPoly> = {
                let reducers = self.reducers();
                let basis = &self.basis;
                let work = |p: &Pair| reduce(spoly(&basis[p.i], &basis[p.j], &order), &reducers, &order).0;
                match &pool {
                    Some(pool) => pool.install(|| batch.par_iter().map(work).collect()),
                    None => batch.iter().map(work).collect(),
                }
            };

            self.stats.pairs += batch.len();
            self.stats.max_degree = self.stats.max_degree.max(batch.iter().map(|p| p.lcm.degree()).max().unwrap_or(0));
            let before = self.basis.len();
            for r in reduced {
                if r.is_zero() {
                    self.stats.zero_reductions += 1;
                    continue;
                }
                let (r, _) = reduce(r, &self.reducers(), &order);
                if r.is_zero() {
                    self.stats.zero_reductions += 1;
                    continue;
                }
                self.update(r);
            }
            if opts.progress {
                let active = self.active.iter().filter(|&&a| a).count();
                let live = || self.basis.iter().zip(&self.active).filter(|(_, &a)| a).map(|(p, _)| p);
                let terms: usize = live().map(|p| p.terms.len()).sum();
                let bits = live().flat_map(|p| p.terms.iter().map(|t| t.1.bits())).max().unwrap_or(0);
                eprintln!(
                    "grade {grade:?}: {} pairs, {} new, basis {active} ({terms} terms, {bits}-bit coefficients), {} pending, {} total",
                    batch.len(),
                    self.basis.len() - before,
                    self.pairs.len(),
                    self.stats.pairs
                );
            }
        }
        Ok(())
    }

    fn finish(self) -> GroebnerBasis {
        let order = self.order;
        let mut elems: Vec<IPoly> = self
            .basis
            .into_iter()
            .zip(self.active)
            .filter(|(_, a)| *a)
            .map(|(p, _)| p)
            .collect();
        for k in 0..elems.len() {
            let others: Vec<&IPoly> = elems.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, p)| p).collect();
            let (r, _) = reduce(elems[k].clone(), &Reducers::new(others), &order);
            elems[k] = r;
        }
        elems.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
        GroebnerBasis {
            order,
            nvars: self.nvars,
            elements: elems.iter().map(|p| p.to_poly(self.nvars)).collect(),
            stats: self.stats,
        }
    }
}

/// A reduced Groebner basis with integer-primitive elements, each with a
/// positive leading coefficient, sorted by decreasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    nvars: usize,
    elements: Vec<Polynomial>,
    stats: GroebnerStats,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn stats(&self) -> GroebnerStats {
        self.stats
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|p| p.leading_monomial(&self.order).unwrap().clone())
            .collect()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].leading_monomial(&self.order).unwrap().is_one()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.elements, &self.order)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn to_json(&self, names: &[String]) -> Value {
        json!({
            "coordinates": names,
            "order": self.order,
            "basis": self.elements.iter().map(|p| p.to_json(&self.order)).collect::<Vec<_>>(),
            "stats": self.stats,
        })
    }

    pub fn from_json(v: &Value) -> Result<GroebnerBasis> {
        let bad = |what: &str| Error::Parse(format!("basis json: {what}"));
        let nvars = v["coordinates"].as_array().ok_or_else(|| bad("coordinates"))?.len();
        let order: MonomialOrder = serde_json::from_value(v["order"].clone())?;
        let elements = v["basis"]
            .as_array()
            .ok_or_else(|| bad("basis"))?
            .iter()
            .map(|p| Polynomial::from_json(p, nvars))
            .collect::<Result<Vec<_>>>()?;
        let stats = serde_json::from_value(v["stats"].clone()).unwrap_or_default();
        Ok(GroebnerBasis {
            order,
            nvars,
            elements,
            stats,
        })
    }
}

/// Computes the reduced Groebner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Polynomial], nvars: usize, order: MonomialOrder, opts: &BuchbergerOptions) -> Result<GroebnerBasis> {
    if let Some(g) = gens.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::RingMismatch {
            left: g.nvars(),
            right: nvars,
        });
    }
    let mut input: Vec<IPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| IPoly::from_poly(g, &order).0)
        .collect();
    // Deterministic insertion order, independent of how the caller listed them.
    input.sort_by(|a, b| cmp_ipoly(a, b, &order));
    input.dedup();

    let mut state = State {
        nvars,
        order,
        basis: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        stats: GroebnerStats::default(),
    };
    for g in input {
        let (r, _) = reduce(g, &state.reducers(), &order);
        if !r.is_zero() {
            state.update(r);
        }
    }
    state.run(opts)?;
    Ok(state.finish())
}

/// Continues an interrupted run.
pub fn resume(cp: Checkpoint, opts: &BuchbergerOptions) -> Result<GroebnerBasis> {
    let order = cp.order;
    let pairs = cp
        .pairs
        .iter()
        .map(|&(i, j)| Pair {
            i,
            j,
            lcm: cp.basis[i].lm().lcm(cp.basis[j].lm()),
        })
        .collect();
    let mut state = State {
        nvars: cp.nvars,
        order,
        basis: cp.basis,
        active: cp.active,
        pairs,
        stats: cp.stats,
    };
    state.run(opts)?;
    Ok(state.finish())
}

fn cmp_ipoly(a: &IPoly, b: &IPoly, order: &MonomialOrder) -> Ordering {
    for (x, y) in a.terms.iter().zip(&b.terms) {
        let c = order.cmp(&x.0, &y.0).then_with(|| x.1.cmp(&y.1));
        if c != Ordering::Equal {
            return c;
        }
    }
    a.terms.len().cmp(&b.terms.len())
}
