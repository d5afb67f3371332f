//! Trace functions of words as polynomials in the canonical coordinates.
//!
//! For a free group of rank `n` the coordinates are the trace functions of
//! the ascending products `g_i`, `g_i g_j`, `g_i g_j g_k` (`i < j < k`). The
//! reduction uses the SL(2) trace identities
//!
//! ```text
//! tr A      = tr A^-1
//! tr AB     = tr A tr B - tr AB^-1
//! tr ACB    = tr A tr BC + tr B tr AC + tr C tr AB - tr A tr B tr C - tr ABC
//! 2 tr ABCD = tr A tr BCD + tr B tr ACD + tr C tr ABD - tr D tr ACB
//!           + tr BC tr AD + tr AB tr CD - tr AC tr BD + tr B tr D tr AC
//!           - tr A tr B tr CD - tr B tr C tr AD
//! ```
//!
//! in three stages: remove inverse letters and repeated adjacent letters
//! with the second identity, cut words of length four or more with the
//! fourth (always splitting off the three leftmost letters), and finally
//! sort the letters of length-three words with the third.
//!
//! For rank 3 the coordinates satisfy one relation, monic and quadratic in
//! `v = I_abc`. Different rewriting paths can disagree by multiples of it,
//! so every result is reduced to degree at most one in `v`. That form is
//! unique and its coefficients are integers.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{rat, Polynomial};
use crate::presentation::{default_names, Letter, Word};

/// One canonical coordinate: the trace of an ascending product of 1 to 3
/// generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TraceCoordinate {
    /// Zero-based generator indices, strictly increasing.
    pub indices: Vec<usize>,
    /// Slot among all coordinates of the rank.
    pub position: usize,
}

impl TraceCoordinate {
    pub fn word(&self, rank: usize) -> Word {
        Word::from_letters(rank, self.indices.iter().map(|&g| Letter::new(g, false))).expect("in range")
    }
}

/// Number of canonical coordinates for rank `n`: `n (n^2 + 5) / 6`.
pub fn coordinate_count(n: usize) -> usize {
    n * (n * n + 5) / 6
}

/// All coordinates for rank `n`, ordered by length and then
/// lexicographically, so that rank 3 gives `a, b, c, ab, ac, bc, abc`.
pub fn basis_coordinates(n: usize) -> Vec<TraceCoordinate> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    out.extend((0..n).map(|i| vec![i]));
    for i in 0..n {
        for j in i + 1..n {
            out.push(vec![i, j]);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push(vec![i, j, k]);
            }
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(position, indices)| TraceCoordinate { indices, position })
        .collect()
}

/// Display names. Up to rank 3 these are `x y z w t u v` for
/// `a b c ab ac bc abc`; beyond that `I_a`, `I_ab`, ...
pub fn coordinate_names(n: usize) -> Vec<String> {
    const SHORT: [(&[usize], &str); 7] = [
        (&[0], "x"),
        (&[1], "y"),
        (&[2], "z"),
        (&[0, 1], "w"),
        (&[0, 2], "t"),
        (&[1, 2], "u"),
        (&[0, 1, 2], "v"),
    ];
    let letters = default_names(n);
    basis_coordinates(n)
        .into_iter()
        .map(|c| {
            if n <= 3 {
                SHORT.iter().find(|(idx, _)| *idx == c.indices.as_slice()).unwrap().1.to_string()
            } else {
                format!("I_{}", c.indices.iter().map(|&i| letters[i]).collect::<String>())
            }
        })
        .collect()
}

/// Memoizing rewriter from words to trace polynomials.
///
/// Results are keyed by the cyclic normal form of the word, and every
/// computation starts from that representative, so conjugate or inverse
/// words give identical polynomials.
#[derive(Debug)]
pub struct ReductionEngine {
    rank: usize,
    ncoords: usize,
    positions: HashMap<Vec<usize>, usize>,
    memo: HashMap<Word, Polynomial>,
    /// `(P, Q)` with `v^2 = P v - Q`, rank 3 only.
    fricke: Option<(Polynomial, Polynomial)>,
}

impl ReductionEngine {
    pub fn new(rank: usize) -> Self {
        let mut engine = Self::unreduced(rank);
        if rank == 3 {
            engine.fricke = Some(engine.fricke_relation());
            engine.memo.clear();
        }
        engine
    }

    /// Engine that never reduces modulo the rank-3 relation. Its results are
    /// still correct trace functions, but not in a unique form.
    pub fn unreduced(rank: usize) -> Self {
        assert!(rank >= 1, "rank must be positive");
        let coords = basis_coordinates(rank);
        ReductionEngine {
            rank,
            ncoords: coords.len(),
            positions: coords.into_iter().map(|c| (c.indices, c.position)).collect(),
            memo: HashMap::new(),
            fricke: None,
        }
    }

    /// With `v' = tr acb`: `v + v'` and `v v' = tr(abc acb) + tr(abc (acb)^-1)`
    /// give `v^2 - P v + Q = 0`. Returns `(P, Q)`.
    fn fricke_relation(&mut self) -> (Polynomial, Polynomial) {
        let w = |s: &str| Word::parse(s, 3).expect("fixed word");
        let (abc, acb) = (w("abc"), w("acb"));
        let sum = &self.reduce(&abc) + &self.reduce(&acb);
        let prod = &self.reduce(&abc.concat(&acb).unwrap()) + &self.reduce(&abc.concat(&acb.invert()).unwrap());
        let vi = self.ncoords - 1;
        let v = Polynomial::var(self.ncoords, vi);
        let rel = &(&(&v * &v) - &(&sum * &v)) + &prod;
        // The unreduced product may itself contain v; collect by powers of v.
        let parts = split_by_power(&rel, vi);
        assert_eq!(parts.len(), 3, "relation must be quadratic in v");
        let lead = parts[2].terms().next().map(|(_, c)| c.clone()).unwrap();
        assert!(parts[2].len() == 1 && parts[2].total_degree() == Some(0), "relation must be monic in v");
        let inv = lead.recip();
        (-&parts[1].scale(&inv), parts[0].scale(&inv))
    }

    /// Rewrites `v^2` as `P v - Q` until the degree in `v` is at most one.
    fn canonical(&self, mut f: Polynomial) -> Polynomial {
        let Some((p, q)) = &self.fricke else {
            return f;
        };
        let vi = self.ncoords - 1;
        while f.degree_in(vi).unwrap_or(0) >= 2 {
            let parts = split_by_power(&f, vi);
            let d = parts.len() - 1;
            let top = parts[d].mul_monomial(&crate::poly::Monomial::var(self.ncoords, vi, (d - 2) as u16));
            let vvar = Polynomial::var(self.ncoords, vi);
            let repl = &(p * &vvar) - q;
            f = &(&f - &(&top * &(&vvar * &vvar))) + &(&top * &repl);
        }
        f
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of ring variables of the produced polynomials.
    pub fn ncoords(&self) -> usize {
        self.ncoords
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn names(&self) -> Vec<String> {
        coordinate_names(self.rank)
    }

    /// The trace function of `w` as a polynomial in the coordinates.
    ///
    /// # Panics
    /// If `w` has a different rank than the engine.
    pub fn reduce(&mut self, w: &Word) -> Polynomial {
        assert_eq!(w.rank(), self.rank, "word rank differs from engine rank");
        self.trace_of(w.letters())
    }

    fn constant(&self, c: i64) -> Polynomial {
        Polynomial::from_int(self.ncoords, c)
    }

    fn coord(&self, indices: &[usize]) -> Polynomial {
        Polynomial::var(self.ncoords, self.positions[indices])
    }

    fn trace_of(&mut self, letters: &[Letter]) -> Polynomial {
        let key = Word::from_letters(self.rank, letters.iter().copied())
            .expect("letters in range")
            .cyclic_normal_form();
        if key.is_empty() {
            return self.constant(2);
        }
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let p = self.expand(key.letters().to_vec());
        let p = self.canonical(p);
        self.memo.insert(key, p.clone());
        p
    }

    fn expand(&mut self, mut w: Vec<Letter>) -> Polynomial {
        let n = w.len();
        let inverses = w.iter().filter(|l| l.inverse).count();
        if 2 * inverses > n {
            w = w.iter().rev().map(|l| l.inv()).collect();
        }

        // tr(U x^-1) = tr U tr x - tr(U x), rotating the first inverse letter to the end.
        if let Some(p) = w.iter().position(|l| l.inverse) {
            let x = w[p].gen;
            let u: Vec<Letter> = w[p + 1..].iter().chain(&w[..p]).copied().collect();
            let mut ux = u.clone();
            ux.push(Letter::new(x, false));
            let tu = self.trace_of(&u);
            let tux = self.trace_of(&ux);
            return &(&tu * &self.coord(&[x])) - &tux;
        }

        // tr(V x x) = tr(V x) tr x - tr V for a cyclically adjacent repeat.
        if n >= 2 {
            if let Some(i) = (0..n).find(|&i| w[i] == w[(i + 1) % n]) {
                let x = w[i].gen;
                let rotated: Vec<Letter> = w[(i + 2) % n..].iter().chain(&w[..(i + 2) % n]).copied().collect();
                let v = &rotated[..n - 2];
                let mut vx = v.to_vec();
                vx.push(Letter::new(x, false));
                let tvx = self.trace_of(&vx);
                let tv = self.trace_of(v);
                return &(&tvx * &self.coord(&[x])) - &tv;
            }
        }

        let g: Vec<usize> = w.iter().map(|l| l.gen).collect();
        match n {
            1 => self.coord(&[g[0]]),
            2 => {
                let (a, b) = (g[0].min(g[1]), g[0].max(g[1]));
                self.coord(&[a, b])
            }
            3 => {
                let r = (0..3).min_by_key(|&k| g[k]).unwrap();
                let (a, c, b) = (g[r], g[(r + 1) % 3], g[(r + 2) % 3]);
                if c < b {
                    return self.coord(&[a, c, b]);
                }
                // word is A C B with A < B < C
                let ta = self.coord(&[a]);
                let tb = self.coord(&[b]);
                let tc = self.coord(&[c]);
                let mut p = &ta * &self.coord(&[b, c]);
                p = &p + &(&tb * &self.coord(&[a, c]));
                p = &p + &(&tc * &self.coord(&[a, b]));
                p = &p - &(&(&ta * &tb) * &tc);
                &p - &self.coord(&[a, b, c])
            }
            _ => self.split_four(&w),
        }
    }

    /// Fourth identity with A, B, C the three leftmost letters and D the rest.
    fn split_four(&mut self, w: &[Letter]) -> Polynomial {
        let (a, b, c) = (w[0], w[1], w[2]);
        let d = &w[3..];
        let cat = |parts: &[&[Letter]]| -> Vec<Letter> { parts.concat() };
        let (sa, sb, sc) = ([a], [b], [c]);
        let (sa, sb, sc): (&[Letter], &[Letter], &[Letter]) = (&sa, &sb, &sc);

        let t_a = self.trace_of(sa);
        let t_b = self.trace_of(sb);
        let t_c = self.trace_of(sc);
        let t_d = self.trace_of(d);
        let t_bcd = self.trace_of(&cat(&[sb, sc, d]));
        let t_acd = self.trace_of(&cat(&[sa, sc, d]));
        let t_abd = self.trace_of(&cat(&[sa, sb, d]));
        let t_acb = self.trace_of(&cat(&[sa, sc, sb]));
        let t_bc = self.trace_of(&cat(&[sb, sc]));
        let t_ad = self.trace_of(&cat(&[sa, d]));
        let t_ab = self.trace_of(&cat(&[sa, sb]));
        let t_cd = self.trace_of(&cat(&[sc, d]));
        let t_ac = self.trace_of(&cat(&[sa, sc]));
        let t_bd = self.trace_of(&cat(&[sb, d]));

        let mut s = &t_a * &t_bcd;
        s = &s + &(&t_b * &t_acd);
        s = &s + &(&t_c * &t_abd);
        s = &s - &(&t_d * &t_acb);
        s = &s + &(&t_bc * &t_ad);
        s = &s + &(&t_ab * &t_cd);
        s = &s - &(&t_ac * &t_bd);
        s = &s + &(&(&t_b * &t_d) * &t_ac);
        s = &s - &(&(&t_a * &t_b) * &t_cd);
        s = &s - &(&(&t_b * &t_c) * &t_ad);
        s.scale(&BigRational::new(1.into(), 2.into()))
    }
}

/// Coefficients of `f` as a polynomial in variable `var`: entry `k` holds
/// the part multiplying `var^k`, with `var` removed.
fn split_by_power(f: &Polynomial, var: usize) -> Vec<Polynomial> {
    let d = f.degree_in(var).unwrap_or(0) as usize;
    let mut parts = vec![Polynomial::zero(f.nvars()); d + 1];
    for (m, c) in f.terms() {
        let mut e = m.exps().to_vec();
        let k = e[var] as usize;
        e[var] = 0;
        parts[k].add_term(crate::poly::Monomial::from_exps(&e), c.clone());
    }
    parts
}

/// Exact 2x2 rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2(pub [[BigRational; 2]; 2]);

impl Mat2 {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(rat(a), rat(b), rat(c), rat(d))
    }

    pub fn identity() -> Self {
        Mat2::from_ints(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigRational {
        let m = &self.0;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    pub fn trace(&self) -> BigRational {
        &self.0[0][0] + &self.0[1][1]
    }

    /// Adjugate; the inverse when the determinant is 1.
    pub fn adjugate(&self) -> Mat2 {
        let m = &self.0;
        Mat2::new(m[1][1].clone(), -m[0][1].clone(), -m[1][0].clone(), m[0][0].clone())
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(f, "[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

fn check_sl2(mats: &[Mat2]) -> Result<()> {
    for m in mats {
        let d = m.det();
        if !d.is_one() {
            return Err(Error::Determinant(d.to_string()));
        }
    }
    Ok(())
}

fn product(w: &Word, mats: &[Mat2]) -> Mat2 {
    let mut acc = Mat2::identity();
    for l in w.letters() {
        let m = if l.inverse { mats[l.gen].adjugate() } else { mats[l.gen].clone() };
        acc = acc.mul(&m);
    }
    acc
}

/// Trace of the literal matrix product along `w`, with inverses taken as
/// adjugates. Every matrix must have determinant exactly 1.
pub fn numeric_trace(w: &Word, mats: &[Mat2]) -> Result<BigRational> {
    if mats.len() != w.rank() {
        return Err(Error::RankMismatch {
            left: w.rank(),
            right: mats.len(),
        });
    }
    check_sl2(mats)?;
    Ok(product(w, mats).trace())
}

/// Values of all canonical coordinates at a tuple of SL(2) matrices.
pub fn coordinate_values(mats: &[Mat2]) -> Result<Vec<BigRational>> {
    check_sl2(mats)?;
    let n = mats.len();
    Ok(basis_coordinates(n)
        .iter()
        .map(|c| product(&c.word(n), mats).trace())
        .collect())
}
