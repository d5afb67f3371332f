//! Checks shared by the acceptance runner and the ordinary test targets.
//! Each returns a one-line summary on success and a description of the
//! first discrepancy on failure.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Duration;

use charvar::finiteness::{
    finiteness_of, generating_set_cardinality, integral_relation, SlopeResult,
};
use charvar::poly::{rat, Budget, BuchbergerOptions, GroebnerStats};
use charvar::trace::{coordinate_count, coordinate_values, numeric_trace};
use charvar::{
    augment_with_slope, basis_coordinates, Error, buchberger, detect, free_group_relations, normal_form,
    variety_ideal, variety_ideal_with, Conclusion, DetectionReport, FinitenessVerdict, GroebnerBasis,
    GroupPresentation, Monomial, MonomialOrder, Polynomial, ReductionEngine, Word,
};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

pub type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn opts(threads: usize) -> BuchbergerOptions {
    BuchbergerOptions {
        threads,
        ..Default::default()
    }
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn load_presentation(name: &str) -> GroupPresentation {
    let text = std::fs::read_to_string(data_path(name)).expect("presentation file");
    GroupPresentation::parse(&text).expect("presentation parses")
}

// ---------------------------------------------------------------------------
// Trace reduction

/// Random words of length at most 12 in ranks 1..=3, compared against exact
/// products of random rational SL(2) matrices.
pub fn trace_oracle(cases: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut engines: Vec<ReductionEngine> = (1..=3).map(ReductionEngine::new).collect();
    for case in 0..cases {
        let rank = 1 + case % 3;
        let w = super::random_word(&mut rng, rank, 12);
        let mats = super::random_tuple(&mut rng, rank);
        let p = engines[rank - 1].reduce(&w);
        let point = coordinate_values(&mats).map_err(|e| e.to_string())?;
        let expected = numeric_trace(&w, &mats).map_err(|e| e.to_string())?;
        ensure(p.eval(&point) == expected, || format!("case {case}: trace of {w} disagrees"))?;
        ensure(p.is_integral(), || format!("case {case}: I_{w} has a non-integer coefficient"))?;
    }
    Ok(format!("{cases} random words agree exactly with matrix traces"))
}

pub fn coordinate_counts() -> Check {
    for (n, expected) in [(1, 1), (2, 3), (3, 7)] {
        let got = basis_coordinates(n).len();
        ensure(got == expected && coordinate_count(n) == expected, || {
            format!("rank {n}: {got} coordinates, expected {expected}")
        })?;
    }
    Ok("ranks 1, 2, 3 have 1, 3, 7 coordinates".into())
}

/// The rank-3 free-group relation vanishes at random triples and is monic
/// quadratic in `v`.
pub fn p0_vanishing(triples: usize, seed: u64) -> Check {
    let mut engine = ReductionEngine::new(3);
    let rels = free_group_relations(3, &mut engine).map_err(|e| e.to_string())?;
    ensure(rels.len() == 1, || format!("{} relations, expected 1", rels.len()))?;
    let p0 = &rels[0];
    let v = 6;
    ensure(p0.degree_in(v) == Some(2), || "p0 is not quadratic in v".into())?;
    let v2 = Monomial::var(7, v, 2);
    ensure(p0.coeff(&v2) == rat(1), || "coefficient of v^2 is not 1".into())?;
    ensure(
        p0.terms().all(|(m, _)| m.exps()[v] < 2 || *m == v2),
        || "v^2 appears with a non-constant coefficient".into(),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..triples {
        let mats = super::random_tuple(&mut rng, 3);
        let point = coordinate_values(&mats).map_err(|e| e.to_string())?;
        ensure(p0.eval(&point).is_zero(), || format!("p0 does not vanish at triple {i}"))?;
    }
    Ok(format!("p0 is monic quadratic in v and vanishes at {triples} random triples"))
}

pub fn tenfiftythree_counts() -> Check {
    let p = load_presentation("tenfiftythree.grp");
    let mut engine = ReductionEngine::new(3);
    let ideal = variety_ideal_with(&p, &mut engine).map_err(|e| e.to_string())?;
    ensure(ideal.nvars() == 7 && ideal.generators().len() == 9, || {
        format!("{} polynomials in {} coordinates, expected 9 in 7", ideal.generators().len(), ideal.nvars())
    })?;
    let alpha = p.slope_word("meridian^-1 * longitude").map_err(|e| e.to_string())?;
    let aug = augment_with_slope(&ideal, &alpha, &mut engine).map_err(|e| e.to_string())?;
    ensure(aug.nvars() == 8 && aug.generators().len() == 10, || {
        format!("augmented: {} polynomials in {} coordinates, expected 10 in 8", aug.generators().len(), aug.nvars())
    })?;
    Ok("9 polynomials in C^7, 10 after adjoining s".into())
}

// ---------------------------------------------------------------------------
// Groebner bases

pub struct HandCase {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub order: MonomialOrder,
    pub gens: &'static [&'static str],
    /// Reduced basis in integer-primitive form with positive leading coefficient.
    pub expected: &'static [&'static str],
}

fn block(split: usize) -> MonomialOrder {
    MonomialOrder::elimination(split)
}

/// Ideals whose reduced bases were worked out by hand.
pub fn hand_cases() -> Vec<HandCase> {
    vec![
        HandCase {
            name: "circle meets diagonal",
            vars: &["x", "y"],
            order: MonomialOrder::Lex,
            gens: &["x^2 + y^2 - 1", "x - y"],
            expected: &["x - y", "2*y^2 - 1"],
        },
        HandCase {
            name: "hyperbola over the slope",
            vars: &["x", "s"],
            order: block(1),
            gens: &["s*x - 1"],
            expected: &["s*x - 1"],
        },
        HandCase {
            name: "parametrized pair",
            vars: &["x", "y", "s"],
            order: block(2),
            gens: &["x - s^2", "x^2 - y"],
            expected: &["x - s^2", "y - s^4"],
        },
        HandCase {
            name: "square root of s",
            vars: &["x", "s"],
            order: block(1),
            gens: &["x^2 - s"],
            expected: &["x^2 - s"],
        },
        HandCase {
            name: "eliminable y",
            vars: &["x", "y", "s"],
            order: block(2),
            gens: &["y - s^3", "x^2 - s"],
            expected: &["x^2 - s", "y - s^3"],
        },
        HandCase {
            name: "cube roots of unity",
            vars: &["x", "y"],
            order: MonomialOrder::Lex,
            gens: &["x*y - 1", "y^2 - x"],
            expected: &["x - y^2", "y^3 - 1"],
        },
        HandCase {
            name: "textbook grevlex example",
            vars: &["x", "y"],
            order: MonomialOrder::Grevlex,
            gens: &["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"],
            expected: &["x^2", "x*y", "2*y^2 - x"],
        },
        HandCase {
            name: "twisted cubic",
            vars: &["x", "y", "z"],
            order: MonomialOrder::Lex,
            gens: &["y - x^2", "z - x^3"],
            expected: &["x^2 - y", "x*y - z", "x*z - y^2", "y^3 - z^2"],
        },
        HandCase {
            name: "unit ideal",
            vars: &["x", "y"],
            order: MonomialOrder::Grevlex,
            gens: &["x", "x - 1"],
            expected: &["1"],
        },
        HandCase {
            name: "diagonal over the slope",
            vars: &["x", "y", "s"],
            order: block(2),
            gens: &["x*y - s", "x - y"],
            expected: &["x - y", "y^2 - s"],
        },
        HandCase {
            name: "content removal",
            vars: &["x"],
            order: MonomialOrder::Lex,
            gens: &["2*x + 4"],
            expected: &["x + 2"],
        },
        HandCase {
            name: "monomial ideal",
            vars: &["x", "y"],
            order: MonomialOrder::Grevlex,
            gens: &["y^2", "x^2", "x^2*y"],
            expected: &["x^2", "y^2"],
        },
        HandCase {
            name: "single point",
            vars: &["x", "y", "z"],
            order: MonomialOrder::Grevlex,
            gens: &["x*y - 1", "x*z - 1", "y - z^2"],
            expected: &["x - 1", "y - 1", "z - 1"],
        },
        HandCase {
            name: "empty ideal",
            vars: &["x", "y"],
            order: MonomialOrder::Grevlex,
            gens: &[],
            expected: &[],
        },
    ]
}

pub fn parse_all(texts: &[&str], vars: &[&str]) -> Vec<Polynomial> {
    texts.iter().map(|t| Polynomial::parse(t, vars).expect("polynomial parses")).collect()
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let (mf, cf) = f.leading_term(order).unwrap();
    let (mg, cg) = g.leading_term(order).unwrap();
    let l = mf.lcm(mg);
    let a = f.mul_monomial(&l.div(mf).unwrap()).scale(&cf.recip());
    let b = g.mul_monomial(&l.div(mg).unwrap()).scale(&cg.recip());
    &a - &b
}

/// Reduced, primitive, containing the generators, closed under S-pairs.
pub fn basis_invariants(gens: &[Polynomial], gb: &GroebnerBasis) -> Result<(), String> {
    let order = *gb.order();
    let els = gb.elements();
    for g in gens {
        ensure(gb.contains(g), || "an input generator does not reduce to zero".into())?;
    }
    for (i, f) in els.iter().enumerate() {
        let (_, lc) = f.leading_term(&order).ok_or("zero basis element")?;
        ensure(*lc > BigRational::zero(), || format!("element {i} has a negative leading coefficient"))?;
        ensure(f.is_integral() && f.primitive(&order) == *f, || format!("element {i} is not integer-primitive"))?;
        for (j, g) in els.iter().enumerate() {
            if i == j {
                continue;
            }
            let lmg = g.leading_monomial(&order).unwrap();
            ensure(f.terms().all(|(m, _)| !lmg.divides(m)), || {
                format!("element {i} has a term divisible by the leading monomial of element {j}")
            })?;
        }
    }
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            let s = s_polynomial(&els[i], &els[j], &order);
            ensure(normal_form(&s, els, &order).is_zero(), || {
                format!("S-polynomial of elements {i} and {j} does not reduce to zero")
            })?;
        }
    }
    Ok(())
}

fn sorted_by_lm(mut ps: Vec<Polynomial>, order: &MonomialOrder) -> Vec<Polynomial> {
    ps.sort_by(|a, b| order.cmp(b.leading_monomial(order).unwrap(), a.leading_monomial(order).unwrap()));
    ps
}

pub fn hand_case(case: &HandCase) -> Result<(), String> {
    let gens = parse_all(case.gens, case.vars);
    let expected = sorted_by_lm(parse_all(case.expected, case.vars), &case.order);
    let mut first: Option<GroebnerBasis> = None;
    for threads in [1, 2, 8] {
        let gb = buchberger(&gens, case.vars.len(), case.order, &opts(threads)).map_err(|e| e.to_string())?;
        ensure(gb.elements() == expected, || {
            let names: Vec<String> = case.vars.iter().map(|s| s.to_string()).collect();
            let got: Vec<String> = gb.elements().iter().map(|p| p.to_string_with(&names, &case.order)).collect();
            format!("{}: got {got:?}, expected {:?}", case.name, case.expected)
        })?;
        basis_invariants(&gens, &gb).map_err(|e| format!("{}: {e}", case.name))?;
        match &first {
            None => first = Some(gb),
            Some(f) => ensure(f.elements() == gb.elements(), || format!("{}: {threads} threads differ", case.name))?,
        }
        let mut reversed = gens.clone();
        reversed.reverse();
        let again = buchberger(&reversed, case.vars.len(), case.order, &opts(threads)).map_err(|e| e.to_string())?;
        ensure(again.elements() == expected, || format!("{}: generator order changes the basis", case.name))?;
    }
    Ok(())
}

/// Augmented knot ideals used for the larger determinism checks.
pub fn knot_ideal(file: &str, slope: &str) -> (Vec<Polynomial>, Vec<String>) {
    let p = load_presentation(file);
    let mut engine = ReductionEngine::new(p.rank());
    let base = variety_ideal_with(&p, &mut engine).unwrap();
    let alpha = p.slope_word(slope).unwrap();
    let aug = augment_with_slope(&base, &alpha, &mut engine).unwrap();
    (aug.generators().to_vec(), aug.coordinates().to_vec())
}

pub fn groebner_engine() -> Check {
    let cases = hand_cases();
    for case in &cases {
        hand_case(case)?;
    }
    let mut larger = 0;
    for (file, slope) in [("figure_eight.grp", "meridian"), ("trefoil.grp", "meridian")] {
        let (gens, names) = knot_ideal(file, slope);
        for order in [block(names.len() - 1), MonomialOrder::Grevlex, MonomialOrder::Lex] {
            let runs: Vec<GroebnerBasis> = [1, 2, 8]
                .iter()
                .map(|&t| buchberger(&gens, names.len(), order, &opts(t)).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            basis_invariants(&gens, &runs[0]).map_err(|e| format!("{file} {order}: {e}"))?;
            ensure(runs.iter().all(|r| r.elements() == runs[0].elements()), || {
                format!("{file} {order}: thread counts disagree")
            })?;
            larger += 1;
        }
    }
    Ok(format!(
        "{} hand-derived bases match; invariants and 1/2/8-thread identity hold on them and {larger} knot ideals",
        cases.len()
    ))
}

// ---------------------------------------------------------------------------
// Module finiteness

pub struct FinitenessCase {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub gens: &'static [&'static str],
    /// `None` when the quotient is not finitely generated over `Q[s]`.
    pub generators: Option<&'static [&'static str]>,
}

pub fn finiteness_cases() -> Vec<FinitenessCase> {
    vec![
        FinitenessCase {
            name: "(x^2 - s)",
            vars: &["x", "s"],
            gens: &["x^2 - s"],
            generators: Some(&["1", "x"]),
        },
        FinitenessCase {
            name: "(s*x - 1)",
            vars: &["x", "s"],
            gens: &["s*x - 1"],
            generators: None,
        },
        FinitenessCase {
            name: "(x^2 - s, y - s^3)",
            vars: &["x", "y", "s"],
            gens: &["x^2 - s", "y - s^3"],
            generators: Some(&["1", "x"]),
        },
        FinitenessCase {
            name: "no relations",
            vars: &["x", "y", "s"],
            gens: &[],
            generators: None,
        },
        FinitenessCase {
            name: "(x^2 - s*y, y^2 - s)",
            vars: &["x", "y", "s"],
            gens: &["x^2 - s*y", "y^2 - s"],
            generators: Some(&["1", "x", "y", "x*y"]),
        },
        FinitenessCase {
            name: "(x*y - s, x - y)",
            vars: &["x", "y", "s"],
            gens: &["x*y - s", "x - y"],
            generators: Some(&["1", "y"]),
        },
        FinitenessCase {
            name: "(x*y - 1)",
            vars: &["x", "y", "s"],
            gens: &["x*y - 1"],
            generators: None,
        },
        FinitenessCase {
            name: "unit ideal",
            vars: &["x", "s"],
            gens: &["s*x - 1", "x"],
            generators: Some(&[]),
        },
    ]
}

fn names_of(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}

/// Every monomial in `nvars` variables of total degree at most `d`.
pub fn monomials_up_to(nvars: usize, d: u16) -> Vec<Monomial> {
    fn go(i: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial::from_exps(cur));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(0, d, &mut vec![0; nvars], &mut out);
    out
}

/// Row-echelon span of polynomials viewed as coefficient vectors.
#[derive(Default)]
pub struct Span {
    rows: BTreeMap<Monomial, Polynomial>,
}

impl Span {
    const ORDER: MonomialOrder = MonomialOrder::Grevlex;

    fn reduce(&self, mut v: Polynomial) -> Polynomial {
        while let Some((m, c)) = v.leading_term(&Self::ORDER).map(|(m, c)| (m.clone(), c.clone())) {
            match self.rows.get(&m) {
                Some(row) => v = &v - &row.scale(&c),
                None => break,
            }
        }
        v
    }

    pub fn insert(&mut self, v: Polynomial) {
        let r = self.reduce(v);
        if let Some((m, c)) = r.leading_term(&Self::ORDER).map(|(m, c)| (m.clone(), c.clone())) {
            self.rows.insert(m, r.scale(&c.recip()));
        }
    }

    /// Pivots are distinct, so a nonzero remainder has a leading monomial
    /// no element of the span can cancel.
    pub fn contains(&self, v: &Polynomial) -> bool {
        self.reduce(v.clone()).is_zero()
    }
}

/// Checks, by linear algebra over Q and independently of any Groebner
/// basis, that every monomial of total degree at most `target` lies in the
/// span of `s^j * g` (for the claimed generators `g`) plus the degree-`work`
/// part of the ideal.
pub fn spanning_check(gens: &[Polynomial], nvars: usize, generators: &[Monomial], target: u16, work: u16) -> Result<(), String> {
    let s = nvars - 1;
    let mut span = Span::default();
    for g in generators {
        let g = g.extend(1);
        for j in 0..=work.saturating_sub(g.degree() as u16) {
            span.insert(Polynomial::term(g.mul(&Monomial::var(nvars, s, j)), rat(1)));
        }
    }
    for f in gens {
        let d = f.total_degree().unwrap_or(0) as u16;
        if d > work {
            continue;
        }
        for m in monomials_up_to(nvars, work - d) {
            span.insert(f.mul_monomial(&m));
        }
    }
    for m in monomials_up_to(nvars, target) {
        ensure(span.contains(&Polynomial::term(m.clone(), rat(1))), || {
            format!("monomial {:?} is not spanned", m.exps())
        })?;
    }
    Ok(())
}

/// Every variable satisfies a monic relation over `Q[s]` lying in the ideal.
pub fn soundness(gens: &[Polynomial], gb: &GroebnerBasis, nvars: usize) -> Result<(), String> {
    let s = nvars - 1;
    for var in 0..s {
        let r = integral_relation(gens, nvars, var, &BuchbergerOptions::default())
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("variable {var} has no integral relation"))?;
        ensure(gb.contains(&r), || format!("relation for variable {var} is not in the ideal"))?;
        ensure(
            r.terms().all(|(m, _)| m.exps().iter().enumerate().all(|(i, &e)| e == 0 || i == var || i == s)),
            || format!("relation for variable {var} involves other variables"),
        )?;
        let d = r.degree_in(var).unwrap();
        let top: Vec<_> = r.terms().filter(|(m, _)| m.exps()[var] == d).collect();
        ensure(top.len() == 1 && top[0].0.degree() == d as u32 && top[0].1.is_one(), || {
            format!("relation for variable {var} is not monic")
        })?;
    }
    Ok(())
}

pub fn finiteness_case(case: &FinitenessCase) -> Result<FinitenessVerdict, String> {
    let names = names_of(case.vars);
    let gens = parse_all(case.gens, case.vars);
    let (gb, verdict) = finiteness_of(&gens, &names, &BuchbergerOptions::default()).map_err(|e| e.to_string())?;
    ensure(verdict.finitely_generated == case.generators.is_some(), || {
        format!("{}: finitely_generated = {}", case.name, verdict.finitely_generated)
    })?;
    ensure(
        verdict.finitely_generated == verdict.pure_power_degrees.iter().all(Option::is_some),
        || format!("{}: verdict disagrees with its pure-power degrees", case.name),
    )?;
    match case.generators {
        None => {
            ensure(verdict.generating_monomials.is_none(), || format!("{}: generators on a negative verdict", case.name))?;
            ensure(generating_set_cardinality(&verdict).is_err(), || format!("{}: cardinality of negative verdict", case.name))?;
        }
        Some(expected) => {
            let got = verdict.generator_strings().unwrap();
            ensure(got == expected, || format!("{}: generators {got:?}, expected {expected:?}", case.name))?;
            ensure(generating_set_cardinality(&verdict).ok() == Some(expected.len()), || format!("{}: cardinality", case.name))?;
            let ms = verdict.generating_monomials.as_ref().unwrap();
            for m in ms {
                for (i, d) in verdict.pure_power_degrees.iter().enumerate() {
                    ensure(m.exps()[i] < d.unwrap(), || format!("{}: generator above a pure-power bound", case.name))?;
                }
            }
            spanning_check(&gens, names.len(), ms, 3, 10).map_err(|e| format!("{}: {e}", case.name))?;
            soundness(&gens, &gb, names.len()).map_err(|e| format!("{}: {e}", case.name))?;
        }
    }
    Ok(verdict)
}

pub fn finiteness_table() -> Check {
    let cases = finiteness_cases();
    for case in &cases {
        finiteness_case(case)?;
    }
    Ok(format!(
        "{} synthetic ideals match; spanning by linear algebra and monic relations confirmed",
        cases.len()
    ))
}

// ---------------------------------------------------------------------------
// Small knots against the frozen computer-algebra fixtures

fn fixture(name: &str) -> Value {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture file");
    serde_json::from_str(&text).expect("fixture json")
}

fn fixture_basis(v: &Value, nvars: usize) -> Vec<Polynomial> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|p| Polynomial::from_json(p, nvars).unwrap())
        .collect()
}

pub fn small_knot(file: &str, stem: &str) -> Result<Vec<String>, String> {
    let p = load_presentation(file);
    let alpha = p.slope_word("meridian").map_err(|e| e.to_string())?;
    let frozen_ideal = fixture(&format!("{stem}_meridian.ideal.json"));
    let mut engine = ReductionEngine::new(p.rank());
    let base = variety_ideal(&p).map_err(|e| e.to_string())?;
    let aug = augment_with_slope(&base, &alpha, &mut engine).map_err(|e| e.to_string())?;
    ensure(aug.to_json() == frozen_ideal, || format!("{file}: ideal differs from the exported fixture"))?;

    let oracle = fixture(&format!("{stem}_meridian.sympy.json"));
    let n = aug.nvars();
    for (key, order) in [("block", block(n - 1)), ("lex", MonomialOrder::Lex)] {
        let gb = buchberger(aug.generators(), n, order, &BuchbergerOptions::default()).map_err(|e| e.to_string())?;
        let mine: Vec<Polynomial> = gb.elements().iter().map(|g| g.monic(&order)).collect();
        let theirs = sorted_by_lm(fixture_basis(&oracle[key], n), &order);
        ensure(mine == theirs, || format!("{file}: {key} basis differs from the computer-algebra fixture"))?;
    }

    let report = detect(&p, &[alpha], &BuchbergerOptions::default()).map_err(|e| e.to_string())?;
    let verdict = &report.slopes[0].verdict;
    ensure(verdict.finitely_generated, || format!("{file}: not finitely generated"))?;
    ensure(report.conclusion == Conclusion::NoClosedSurfaceDetected, || format!("{file}: wrong conclusion"))?;
    let got = verdict.generator_strings().unwrap();
    let expected: Vec<String> = serde_json::from_value(oracle["generators"].clone()).unwrap();
    ensure(got == expected, || format!("{file}: generators {got:?}, fixture {expected:?}"))?;
    Ok(got)
}

pub fn small_knots() -> Check {
    let fig8 = small_knot("figure_eight.grp", "figure_eight")?;
    let trefoil = small_knot("trefoil.grp", "trefoil")?;
    Ok(format!(
        "figure-eight generated by {{{}}}, trefoil by {{{}}}; both match the frozen fixtures",
        fig8.join(", "),
        trefoil.join(", ")
    ))
}

// ---------------------------------------------------------------------------
// Report coherence

fn synthetic_verdict(fg: bool) -> FinitenessVerdict {
    FinitenessVerdict {
        finitely_generated: fg,
        variables: vec!["x".into()],
        pure_power_degrees: vec![fg.then_some(2)],
        generating_monomials: fg.then(|| vec![Monomial::one(1), Monomial::var(1, 0, 1)]),
        stats: GroebnerStats::default(),
    }
}

pub fn report_coherence() -> Check {
    let mut checked = 0;
    for n in 0..=4usize {
        for mask in 0..(1u32 << n) {
            let slopes: Vec<SlopeResult> = (0..n)
                .map(|i| SlopeResult {
                    slope: format!("slope{i}"),
                    verdict: synthetic_verdict(mask & (1 << i) != 0),
                    wall_time: Duration::ZERO,
                })
                .collect();
            let any = mask != 0;
            let report = DetectionReport::assemble(slopes);
            let expected = if any { Conclusion::NoClosedSurfaceDetected } else { Conclusion::Inconclusive };
            ensure(report.conclusion == expected, || format!("{n} slopes, mask {mask:b}: wrong conclusion"))?;
            ensure(!report.narrative.is_empty(), || "empty narrative".into())?;
            for i in 0..n {
                ensure(report.narrative.iter().any(|l| l.contains(&format!("slope{i}"))), || {
                    format!("narrative never mentions slope{i}")
                })?;
            }
            let json = report.to_json(false);
            ensure(json["conclusion"] == expected.as_str(), || "json conclusion".into())?;
            checked += 1;
        }
    }
    // F2 with slope a: Q[x, y, w] is not module-finite over Q[x].
    let f2 = GroupPresentation::free(2);
    let a = Word::parse("a", 2).unwrap();
    let report = detect(&f2, &[a], &BuchbergerOptions::default()).map_err(|e| e.to_string())?;
    ensure(report.conclusion == Conclusion::Inconclusive, || "F2 with slope a is not inconclusive".into())?;
    checked += 1;
    Ok(format!("{checked} reports: conclusion follows the any-slope-finite rule"))
}

// ---------------------------------------------------------------------------
// Long run

/// The 10_153 run with slope `meridian^-1 * longitude`. With `max_pairs`
/// set, running out of the pair budget is reported as a failure rather than
/// an error. S-pair batches are reported on stderr.
pub fn tenfiftythree_stretch(threads: usize, max_pairs: Option<usize>) -> Result<(bool, String), String> {
    let p = load_presentation("tenfiftythree.grp");
    let alpha = p.slope_word("meridian^-1 * longitude").map_err(|e| e.to_string())?;
    let options = BuchbergerOptions {
        threads,
        budget: Budget {
            max_pairs,
            max_degree: None,
        },
        progress: true,
    };
    let report = match detect(&p, &[alpha], &options) {
        Ok(report) => report,
        Err(Error::Budget { pairs, degree, .. }) => {
            return Ok((false, format!("pair budget exhausted after {pairs} S-pairs, next lcm degree {degree}")));
        }
        Err(e) => return Err(e.to_string()),
    };
    let r = &report.slopes[0];
    let v = &r.verdict;
    let gens = v.generator_strings();
    let count = gens.as_ref().map_or(0, Vec::len);
    let detail = format!(
        "finitely generated: {}, {} generating monomials, {} pairs, max degree {}, {:.0?}; generators: {}",
        v.finitely_generated,
        count,
        v.stats.pairs,
        v.stats.max_degree,
        r.wall_time,
        gens.map_or_else(|| format!("missing pure powers for {:?}", v.missing()), |g| g.join(", "))
    );
    Ok((v.finitely_generated && count == 48, detail))
}
