//! Module finiteness of `Q[x_1..x_k, s] / I` over `Q[s]`.
//!
//! Under a block order in which the `x`-block dominates `s`, the quotient is
//! a finitely generated `Q[s]`-module exactly when, for every `x_i`, the
//! reduced Groebner basis has an element whose leading monomial is a pure
//! power `x_i^d`. If `x_i` is integral over `Q[s]` its monic equation has
//! leading monomial `x_i^d` under any such order, so some basis element
//! divides it; conversely pure powers bound the `x`-part of every standard
//! monomial. The standard monomials free of `s` then generate the quotient
//! as a `Q[s]`-module.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::poly::{buchberger, BuchbergerOptions, GroebnerBasis, GroebnerStats, Monomial, MonomialOrder, Polynomial, SubOrder};
use crate::presentation::{GroupPresentation, Word};
use crate::trace::ReductionEngine;
use crate::variety::{augment_with_slope, variety_ideal_with, VarietyIdeal};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitenessVerdict {
    pub finitely_generated: bool,
    /// Names of the non-slope variables, in ring order.
    pub variables: Vec<String>,
    /// For each non-slope variable, the smallest `d` such that `x_i^d` is a
    /// leading monomial of the basis.
    pub pure_power_degrees: Vec<Option<u16>>,
    /// `x`-monomials (exponent vectors over the non-slope variables) that
    /// generate the quotient over `Q[s]`; present iff finitely generated.
    pub generating_monomials: Option<Vec<Monomial>>,
    pub stats: GroebnerStats,
}

impl FinitenessVerdict {
    /// Variables with no pure-power leading monomial.
    pub fn missing(&self) -> Vec<&str> {
        self.variables
            .iter()
            .zip(&self.pure_power_degrees)
            .filter(|(_, d)| d.is_none())
            .map(|(v, _)| v.as_str())
            .collect()
    }

    pub fn generator_strings(&self) -> Option<Vec<String>> {
        self.generating_monomials
            .as_ref()
            .map(|ms| ms.iter().map(|m| m.display_with(&self.variables).to_string()).collect())
    }

    pub fn to_json(&self) -> Value {
        let degrees: Map<String, Value> = self
            .variables
            .iter()
            .zip(&self.pure_power_degrees)
            .filter_map(|(v, d)| d.map(|d| (v.clone(), Value::from(d))))
            .collect();
        json!({
            "finitely_generated": self.finitely_generated,
            "pure_power_degrees": degrees,
            "missing_pure_powers": self.missing(),
            "generators": self.generator_strings(),
        })
    }
}

/// Number of generating monomials. This bounds the free rank from above
/// but need not equal it.
pub fn generating_set_cardinality(v: &FinitenessVerdict) -> Result<usize> {
    v.generating_monomials.as_ref().map(Vec::len).ok_or(Error::NotFinite)
}

/// Reads the verdict off a reduced basis whose ring has the slope variable last
/// and whose order is a block order with the `x`-block first.
pub fn verdict_from_basis(gb: &GroebnerBasis, names: &[String]) -> FinitenessVerdict {
    let k = gb.nvars() - 1;
    let lms = gb.leading_monomials();
    let mut degrees: Vec<Option<u16>> = vec![None; k];
    for m in &lms {
        let e = m.exps();
        if e[k] != 0 {
            continue;
        }
        let support: Vec<usize> = (0..k).filter(|&i| e[i] > 0).collect();
        let targets: Vec<usize> = match support.as_slice() {
            [] => (0..k).collect(),
            [i] => vec![*i],
            _ => continue,
        };
        for i in targets {
            let d = e[i];
            degrees[i] = Some(degrees[i].map_or(d, |old| old.min(d)));
        }
    }
    let finitely_generated = degrees.iter().all(Option::is_some);
    let generating_monomials = finitely_generated.then(|| {
        let bounds: Vec<u16> = degrees.iter().map(|d| d.unwrap()).collect();
        let walls: Vec<Monomial> = lms
            .iter()
            .filter(|m| m.exps()[k] == 0)
            .map(|m| Monomial::from_exps(&m.exps()[..k]))
            .collect();
        staircase(&bounds, &walls)
    });
    FinitenessVerdict {
        finitely_generated,
        variables: names[..k].to_vec(),
        pure_power_degrees: degrees,
        generating_monomials,
        stats: gb.stats(),
    }
}

/// Monomials with exponents below `bounds` and divisible by no element of
/// `walls`, sorted by total degree and then with larger exponents in earlier
/// variables first.
fn staircase(bounds: &[u16], walls: &[Monomial]) -> Vec<Monomial> {
    fn walk(i: usize, cur: &mut Vec<u16>, bounds: &[u16], walls: &[Monomial], out: &mut Vec<Monomial>) {
        if i == bounds.len() {
            out.push(Monomial::from_exps(cur));
            return;
        }
        for e in 0..bounds[i] {
            cur[i] = e;
            // Walls only grow when exponents grow, so stop at the first hit.
            let m = Monomial::from_exps(cur);
            if walls.iter().any(|w| w.divides(&m)) {
                break;
            }
            walk(i + 1, cur, bounds, walls, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if bounds.iter().all(|&b| b > 0) {
        walk(0, &mut vec![0; bounds.len()], bounds, walls, &mut out);
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.exps().cmp(a.exps())));
    out
}

/// Groebner basis of `gens` (slope variable last) under the elimination
/// block order, followed by the verdict.
pub fn finiteness_of(gens: &[Polynomial], names: &[String], opts: &BuchbergerOptions) -> Result<(GroebnerBasis, FinitenessVerdict)> {
    if names.len() < 2 {
        return Err(Error::MissingSlope);
    }
    let order = MonomialOrder::elimination(names.len() - 1);
    let gb = buchberger(gens, names.len(), order, opts)?;
    let verdict = verdict_from_basis(&gb, names);
    Ok((gb, verdict))
}

/// Decides finite generation of the coordinate ring over `Q[s]`.
pub fn module_finiteness(ideal: &VarietyIdeal, opts: &BuchbergerOptions) -> Result<FinitenessVerdict> {
    Ok(module_finiteness_with_basis(ideal, opts)?.1)
}

pub fn module_finiteness_with_basis(ideal: &VarietyIdeal, opts: &BuchbergerOptions) -> Result<(GroebnerBasis, FinitenessVerdict)> {
    if !ideal.has_slope() {
        return Err(Error::MissingSlope);
    }
    finiteness_of(ideal.generators(), ideal.coordinates(), opts)
}

fn permute(p: &Polynomial, perm: &[usize]) -> Polynomial {
    Polynomial::from_terms(
        p.nvars(),
        p.terms().map(|(m, c)| {
            let mut e = vec![0u16; perm.len()];
            for (old, &new) in perm.iter().enumerate() {
                e[new] = m.exps()[old];
            }
            (Monomial::from_exps(&e), c.clone())
        }),
    )
}

/// A polynomial in `I ∩ Q[s][x_var]` that is monic in `x_var`, found by
/// eliminating the other `x`-variables. `None` when `x_var` is not integral
/// over `Q[s]` modulo `I`. The slope variable is the last one.
pub fn integral_relation(gens: &[Polynomial], nvars: usize, var: usize, opts: &BuchbergerOptions) -> Result<Option<Polynomial>> {
    let s = nvars - 1;
    assert!(var < s, "variable must not be the slope");
    // New positions: other x's first, then var, then s.
    let mut perm = vec![0usize; nvars];
    let mut next = 0;
    for (i, slot) in perm.iter_mut().enumerate().take(s) {
        if i != var {
            *slot = next;
            next += 1;
        }
    }
    perm[var] = nvars - 2;
    perm[s] = nvars - 1;
    let inverse: Vec<usize> = (0..nvars).map(|new| perm.iter().position(|&p| p == new).unwrap()).collect();

    let order = MonomialOrder::Block {
        split: nvars - 2,
        head: SubOrder::Grevlex,
        tail: SubOrder::Lex,
    };
    let moved: Vec<Polynomial> = gens.iter().map(|g| permute(g, &perm)).collect();
    let gb = buchberger(&moved, nvars, order, opts)?;
    let found = gb.elements().iter().find(|g| {
        let lm = g.leading_monomial(&order).unwrap();
        let e = lm.exps();
        e[..nvars - 2].iter().all(|&x| x == 0) && e[nvars - 1] == 0
    });
    Ok(found.map(|g| permute(&g.monic(&order), &inverse)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conclusion {
    NoClosedSurfaceDetected,
    Inconclusive,
}

impl Conclusion {
    pub fn as_str(&self) -> &'static str {
        match self {
            Conclusion::NoClosedSurfaceDetected => "NO_CLOSED_SURFACE_DETECTED",
            Conclusion::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SlopeResult {
    pub slope: String,
    pub verdict: FinitenessVerdict,
    pub wall_time: Duration,
}

#[derive(Clone, Debug)]
pub struct DetectionReport {
    pub slopes: Vec<SlopeResult>,
    pub conclusion: Conclusion,
    pub narrative: Vec<String>,
}

impl DetectionReport {
    /// Builds the conclusion and narrative from per-slope results.
    pub fn assemble(slopes: Vec<SlopeResult>) -> Self {
        let mut narrative = Vec::new();
        let witness = slopes.iter().find(|r| r.verdict.finitely_generated);
        for r in &slopes {
            if r.verdict.finitely_generated {
                narrative.push(format!(
                    "slope {}: the trace ring over Q is generated by {} monomials as a module over Q[I_{}]",
                    r.slope,
                    r.verdict.generating_monomials.as_ref().map_or(0, Vec::len),
                    r.slope
                ));
            } else {
                narrative.push(format!(
                    "slope {}: not finitely generated over Q[I_{}]; no pure-power leading monomial for {}",
                    r.slope,
                    r.slope,
                    r.verdict.missing().join(", ")
                ));
            }
        }
        let conclusion = match witness {
            Some(w) => {
                narrative.push(
                    "the variety is defined over Q, so finite generation of the rational trace ring over \
                     Q[I_g] is equivalent to finite generation of C[X] over C[I_g]"
                        .into(),
                );
                narrative.push(format!(
                    "by Chesebro's module criterion, extended to unions of irreducible components, a character \
                     variety whose coordinate ring is finitely generated over C[I_{}] detects no closed \
                     essential surface at any ideal point",
                    w.slope
                ));
                narrative.push(format!(
                    "the same criterion shows {} is not a boundary slope detected by any component; whether it \
                     is a boundary slope of the manifold is not decided by this computation",
                    w.slope
                ));
                Conclusion::NoClosedSurfaceDetected
            }
            None => {
                if !slopes.is_empty() {
                    narrative.push(
                        "for each tested slope some component either detects a closed essential surface or \
                         detects that slope as a boundary slope (Chesebro); without a decomposition into \
                         components the two cases are not separated here"
                            .into(),
                    );
                }
                narrative.push("no conclusion about closed essential surfaces is drawn".into());
                Conclusion::Inconclusive
            }
        };
        DetectionReport {
            slopes,
            conclusion,
            narrative,
        }
    }

    pub fn to_json(&self, with_timing: bool) -> Value {
        let slopes: Vec<Value> = self
            .slopes
            .iter()
            .map(|r| {
                let mut v = r.verdict.to_json();
                let stats = &r.verdict.stats;
                let mut g = json!({ "pairs": stats.pairs, "max_degree": stats.max_degree });
                if with_timing {
                    g["wall_time"] = json!(r.wall_time.as_secs_f64());
                }
                v["groebner_stats"] = g;
                v["slope"] = json!(r.slope);
                v
            })
            .collect();
        json!({
            "slopes": slopes,
            "conclusion": self.conclusion.as_str(),
            "narrative": self.narrative,
        })
    }
}

/// Full pipeline: equations, one augmentation per slope, finiteness test.
pub fn detect(p: &GroupPresentation, slopes: &[Word], opts: &BuchbergerOptions) -> Result<DetectionReport> {
    if p.rank() > 3 {
        return Err(Error::UnsupportedRank(p.rank()));
    }
    let mut engine = ReductionEngine::new(p.rank());
    let base = variety_ideal_with(p, &mut engine)?;
    let ideals = slopes
        .iter()
        .map(|w| Ok((p.format_word(w), augment_with_slope(&base, w, &mut engine)?)))
        .collect::<Result<Vec<_>>>()?;
    let results = ideals
        .par_iter()
        .map(|(name, ideal)| {
            let start = Instant::now();
            let verdict = module_finiteness(ideal, opts)?;
            Ok(SlopeResult {
                slope: name.clone(),
                verdict,
                wall_time: start.elapsed(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DetectionReport::assemble(results))
}

/// Pure-power degree map keyed by variable name.
pub fn degree_map(v: &FinitenessVerdict) -> BTreeMap<String, u16> {
    v.variables
        .iter()
        .zip(&v.pure_power_degrees)
        .filter_map(|(n, d)| d.map(|d| (n.clone(), d)))
        .collect()
}
