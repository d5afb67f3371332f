use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{Number, Value};

use super::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms live in a map keyed by exponent vector; no stored coefficient is
/// zero. Iteration order of the map is plain lexicographic on exponents;
/// order-dependent views go through [`Polynomial::sorted_terms`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, rat(c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i, 1), BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut p = Polynomial::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::RingMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::from_int(self.nvars, 1);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.keys().map(|m| m.exps()[var]).max()
    }

    /// Terms in decreasing order under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|t| t.0)
    }

    /// Evaluates at a point with exact arithmetic.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars, "evaluation point arity");
        let mut sum = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            sum += t;
        }
        sum
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Integer primitive representative with positive leading coefficient
    /// under `order`: denominators cleared and content divided out.
    pub fn primitive(&self, order: &MonomialOrder) -> Polynomial {
        let Some((_, lc)) = self.leading_term(order) else {
            return self.clone();
        };
        let den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums: Vec<BigInt> = self.terms.values().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut content = nums.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if lc.is_negative() {
            content = -content;
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .keys()
                .cloned()
                .zip(nums)
                .map(|(m, n)| (m, BigRational::from_integer(n / &content)))
                .collect(),
        }
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            Some((_, lc)) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    /// Embeds into a ring with `extra` new variables appended.
    pub fn extend(&self, extra: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars + extra,
            terms: self.terms.iter().map(|(m, c)| (m.extend(extra), c.clone())).collect(),
        }
    }

    /// Renders terms in decreasing `order`, e.g. `x^2 - 2` or `1/2*x*y + 3`.
    pub fn to_string_with(&self, names: &[String], order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if m.is_one() {
                write!(s, "{a}").unwrap();
            } else if a.is_one() {
                write!(s, "{}", m.display_with(names)).unwrap();
            } else {
                write!(s, "{a}*{}", m.display_with(names)).unwrap();
            }
        }
        s
    }

    /// Parses text like `x^2 + 1/2*x*y - 3` over the given variable names.
    pub fn parse(text: &str, names: &[&str]) -> Result<Polynomial> {
        Parser::new(text, names).parse()
    }

    /// `[[num, den, [exps...]], ...]` in decreasing `order`, with integers
    /// written as unbounded JSON numbers.
    pub fn to_json(&self, order: &MonomialOrder) -> Value {
        Value::Array(
            self.sorted_terms(order)
                .into_iter()
                .map(|(m, c)| {
                    Value::Array(vec![
                        big_to_json(c.numer()),
                        big_to_json(c.denom()),
                        Value::Array(m.exps().iter().map(|&e| Value::from(e)).collect()),
                    ])
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value, nvars: usize) -> Result<Polynomial> {
        let bad = |what: &str| Error::Parse(format!("polynomial json: {what}"));
        let terms = v.as_array().ok_or_else(|| bad("expected term array"))?;
        let mut p = Polynomial::zero(nvars);
        for t in terms {
            let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("term must be [num, den, exps]"))?;
            let num = big_from_json(&t[0])?;
            let den = big_from_json(&t[1])?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            let exps = t[2]
                .as_array()
                .ok_or_else(|| bad("exponents must be an array"))?
                .iter()
                .map(|e| e.as_u64().and_then(|e| u16::try_from(e).ok()).ok_or_else(|| bad("bad exponent")))
                .collect::<Result<Vec<u16>>>()?;
            if exps.len() != nvars {
                return Err(bad("exponent vector length"));
            }
            p.add_term(Monomial::from_exps(&exps), BigRational::new(num, den));
        }
        Ok(p)
    }
}

fn big_to_json(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integer literal"))
}

fn big_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {n}"))),
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("not an integer: {s}"))),
        _ => Err(Error::Parse("expected integer".into())),
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&rat(-1))
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn new(text: &str, names: &'a [&'a str]) -> Self {
        Parser {
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            names,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("polynomial at offset {}: {msg}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn number(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect::<String>().parse().unwrap())
    }

    fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn parse(mut self) -> Result<Polynomial> {
        let n = self.names.len();
        let mut p = Polynomial::zero(n);
        if self.chars.is_empty() {
            return Err(self.err("empty input"));
        }
        let mut first = true;
        while self.pos < self.chars.len() {
            let mut sign = rat(1);
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    sign = rat(-1);
                    self.pos += 1
                }
                _ if first => {}
                _ => return Err(self.err("expected '+' or '-'")),
            }
            first = false;
            let mut coeff = sign;
            let mut mono = vec![0u16; n];
            let mut factors = 0;
            loop {
                if let Some(num) = self.number() {
                    let mut c = BigRational::from_integer(num);
                    if self.peek() == Some('/') {
                        self.pos += 1;
                        let den = self.number().ok_or_else(|| self.err("expected denominator"))?;
                        if den.is_zero() {
                            return Err(self.err("zero denominator"));
                        }
                        c /= BigRational::from_integer(den);
                    }
                    coeff *= c;
                } else if let Some(id) = self.ident() {
                    let i = self
                        .names
                        .iter()
                        .position(|&v| v == id)
                        .ok_or_else(|| self.err(&format!("unknown variable '{id}'")))?;
                    let mut e = 1u16;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        let k = self.number().ok_or_else(|| self.err("expected exponent"))?;
                        e = u16::try_from(k).map_err(|_| self.err("exponent too large"))?;
                    }
                    mono[i] += e;
                } else {
                    return Err(self.err("expected factor"));
                }
                factors += 1;
                if self.peek() == Some('*') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            debug_assert!(factors > 0);
            p.add_term(Monomial::from_exps(&mono), coeff);
        }
        Ok(p)
    }
}
