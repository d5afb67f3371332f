//! Defining ideals of SL(2,C) character varieties.
//!
//! For a presentation with generators `g_1..g_n` and relators `r_1..r_m`
//! the variety sits inside the character variety of the free group, cut
//! out by `I_r - 2` and `I_{g_i r} - I_{g_i}` for every relator and
//! generator. For rank 3 the free group contributes one relation, quadratic
//! and monic in `v = I_abc`; ranks 1 and 2 contribute none.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{MonomialOrder, Polynomial};
use crate::presentation::{GroupPresentation, Word};
use crate::trace::{coordinate_count, coordinate_names, ReductionEngine};

/// Name of the slope coordinate.
pub const SLOPE: &str = "s";

/// Order used to normalize generators for output.
pub const DEFAULT_ORDER: MonomialOrder = MonomialOrder::Grevlex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyIdeal {
    rank: usize,
    coordinates: Vec<String>,
    generators: Vec<Polynomial>,
    slope_word: Option<Word>,
    warnings: Vec<String>,
}

impl VarietyIdeal {
    pub fn new(rank: usize, generators: Vec<Polynomial>) -> Result<Self> {
        let n = coordinate_count(rank);
        if let Some(g) = generators.iter().find(|g| g.nvars() != n) {
            return Err(Error::RingMismatch {
                left: g.nvars(),
                right: n,
            });
        }
        Ok(VarietyIdeal {
            rank,
            coordinates: coordinate_names(rank),
            generators,
            slope_word: None,
            warnings: Vec::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coordinates(&self) -> &[String] {
        &self.coordinates
    }

    pub fn nvars(&self) -> usize {
        self.coordinates.len()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn slope_word(&self) -> Option<&Word> {
        self.slope_word.as_ref()
    }

    pub fn has_slope(&self) -> bool {
        self.slope_word.is_some()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Index of `s`, always the last coordinate when present.
    pub fn slope_index(&self) -> Option<usize> {
        self.slope_word.as_ref().map(|_| self.coordinates.len() - 1)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "coordinates": self.coordinates,
            "slope_word": self.slope_word.as_ref().map(|w| w.to_string()),
            "generators": self.generators.iter().map(|g| g.to_json(&DEFAULT_ORDER)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("ideal json: {what}"));
        let coordinates: Vec<String> = serde_json::from_value(v["coordinates"].clone())?;
        let slope = match &v["slope_word"] {
            Value::Null => None,
            Value::String(s) => Some(s.clone()),
            _ => return Err(bad("slope_word must be a string or null")),
        };
        let base = coordinates.len() - usize::from(slope.is_some());
        let rank = (1..=base)
            .find(|&n| coordinate_count(n) == base)
            .ok_or_else(|| bad("coordinate count is not n(n^2+5)/6"))?;
        let mut expected = coordinate_names(rank);
        if slope.is_some() {
            expected.push(SLOPE.to_string());
        }
        if expected != coordinates {
            return Err(bad("unexpected coordinate names"));
        }
        let generators = v["generators"]
            .as_array()
            .ok_or_else(|| bad("generators"))?
            .iter()
            .map(|g| Polynomial::from_json(g, coordinates.len()))
            .collect::<Result<Vec<_>>>()?;
        let slope_word = slope.map(|s| Word::parse(&s, rank)).transpose()?;
        Ok(VarietyIdeal {
            rank,
            coordinates,
            generators,
            slope_word,
            warnings: Vec::new(),
        })
    }
}

fn normalized(p: Polynomial) -> Option<Polynomial> {
    (!p.is_zero()).then(|| p.primitive(&DEFAULT_ORDER))
}

/// Relations among the coordinates that hold for every triple of SL(2)
/// matrices. Empty below rank 3.
///
/// For rank 3, with `v = tr abc` and `v' = tr acb`, both `v + v'` and
/// `v v' = tr(abc acb) + tr(abc (acb)^-1)` reduce to polynomials `P`, `Q` in
/// the coordinates, giving `v^2 - P v + Q = 0`.
pub fn free_group_relations(n: usize, engine: &mut ReductionEngine) -> Result<Vec<Polynomial>> {
    match n {
        1 | 2 => Ok(Vec::new()),
        3 => {
            if engine.rank() != 3 {
                return Err(Error::RankMismatch {
                    left: engine.rank(),
                    right: 3,
                });
            }
            let w = |s: &str| Word::parse(s, 3).expect("fixed word");
            let abc = w("abc");
            let acb = w("acb");
            let p = &engine.reduce(&abc) + &engine.reduce(&acb);
            let q = &engine.reduce(&abc.concat(&acb)?) + &engine.reduce(&abc.concat(&acb.invert())?);
            let v = Polynomial::var(engine.ncoords(), engine.ncoords() - 1);
            let p0 = &(&(&v * &v) - &(&p * &v)) + &q;
            Ok(normalized(p0).into_iter().collect())
        }
        _ => Err(Error::UnsupportedRank(n)),
    }
}

/// `I_r - 2` and `I_{g_i r} - I_{g_i}` for every relator `r` and generator
/// `g_i`, in that order, dropping the ones that are identically zero.
pub fn relator_equations(p: &GroupPresentation, engine: &mut ReductionEngine) -> Result<Vec<Polynomial>> {
    if engine.rank() != p.rank() {
        return Err(Error::RankMismatch {
            left: engine.rank(),
            right: p.rank(),
        });
    }
    let n = p.rank();
    let two = Polynomial::from_int(engine.ncoords(), 2);
    let mut out = Vec::new();
    for r in p.relators() {
        out.extend(normalized(&engine.reduce(r) - &two));
        for i in 0..n {
            let g = Word::generator(n, i);
            let gr = g.concat(r)?;
            out.extend(normalized(&engine.reduce(&gr) - &engine.reduce(&g)));
        }
    }
    Ok(out)
}

/// The defining ideal of the character variety of `p`, using a fresh engine.
pub fn variety_ideal(p: &GroupPresentation) -> Result<VarietyIdeal> {
    if p.rank() > 3 {
        return Err(Error::UnsupportedRank(p.rank()));
    }
    variety_ideal_with(p, &mut ReductionEngine::new(p.rank()))
}

pub fn variety_ideal_with(p: &GroupPresentation, engine: &mut ReductionEngine) -> Result<VarietyIdeal> {
    let mut gens = free_group_relations(p.rank(), engine)?;
    gens.extend(relator_equations(p, engine)?);
    VarietyIdeal::new(p.rank(), gens)
}

/// Adjoins the coordinate `s` together with the generator `s - I_alpha`.
pub fn augment_with_slope(v: &VarietyIdeal, alpha: &Word, engine: &mut ReductionEngine) -> Result<VarietyIdeal> {
    if v.has_slope() {
        return Err(Error::AlreadyAugmented);
    }
    if alpha.rank() != v.rank || engine.rank() != v.rank {
        return Err(Error::RankMismatch {
            left: alpha.rank(),
            right: v.rank,
        });
    }
    let mut out = v.clone();
    out.generators = v.generators.iter().map(|g| g.extend(1)).collect();
    let n = v.nvars();
    let s = Polynomial::var(n + 1, n);
    out.generators.push(&s - &engine.reduce(alpha).extend(1));
    out.coordinates.push(SLOPE.to_string());
    if alpha.is_empty() {
        out.warnings
            .push("slope word is the identity; its trace is constantly 2, so it is never a slope".into());
    }
    out.slope_word = Some(alpha.clone());
    Ok(out)
}
