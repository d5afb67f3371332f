//! Words in free groups and finite group presentations.
//!
//! Letters follow the usual convention for knot group presentations: a
//! lowercase letter is a generator and its uppercase form is the inverse.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// One signed letter. `gen` is zero based.
///
/// The derived ordering compares the generator index first and then the
/// sign with the positive letter first, which is the order used for cyclic
/// normal forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A freely reduced word in the free group of rank `rank`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

/// Default generator letters `a, b, c, ...`.
pub fn default_names(rank: usize) -> Vec<char> {
    (0..rank).map(|i| (b'a' + i as u8) as char).collect()
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    match out.last() {
        Some(&last) if last.cancels(l) => {
            out.pop();
        }
        _ => out.push(l),
    }
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    /// Builds the free reduction of `letters`.
    pub fn from_letters(rank: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let mut out = Vec::new();
        for l in letters {
            if l.gen >= rank {
                return Err(Error::UnknownLetter {
                    letter: letter_char(&default_names(l.gen + 1), l),
                    rank,
                });
            }
            push_reduced(&mut out, l);
        }
        Ok(Word { rank, letters: out })
    }

    /// Single generator `gen` (zero based).
    pub fn generator(rank: usize, gen: usize) -> Self {
        assert!(gen < rank, "generator {gen} out of range for rank {rank}");
        Word {
            rank,
            letters: vec![Letter::new(gen, false)],
        }
    }

    /// Parses a word over the default alphabet `a, b, c, ...`.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        Self::parse_with(text, &default_names(rank))
    }

    /// Parses a word over the given generator names; uppercase forms are inverses.
    pub fn parse_with(text: &str, names: &[char]) -> Result<Self> {
        let rank = names.len();
        let mut out = Vec::with_capacity(text.len());
        for c in text.chars() {
            let lower = c.to_ascii_lowercase();
            let gen = names
                .iter()
                .position(|&n| n == lower)
                .filter(|_| c.is_ascii_alphabetic())
                .ok_or(Error::UnknownLetter { letter: c, rank })?;
            push_reduced(&mut out, Letter::new(gen, c.is_ascii_uppercase()));
        }
        Ok(Word { rank, letters: out })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn invert(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Ok(Word {
            rank: self.rank,
            letters: out,
        })
    }

    /// `self^k`; negative exponents use the inverse.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base).expect("same rank");
        }
        out
    }

    /// Removes letters that cancel around the end of the word.
    pub fn cyclically_reduced(&self) -> Word {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j >= i + 2 && l[i].cancels(l[j - 1]) {
            i += 1;
            j -= 1;
        }
        Word {
            rank: self.rank,
            letters: l[i..j].to_vec(),
        }
    }

    /// Canonical representative of the conjugacy class of `self` and its
    /// inverse: the smallest cyclic rotation of the cyclic reduction of either
    /// word, compared lexicographically letter by letter.
    pub fn cyclic_normal_form(&self) -> Word {
        let reduced = self.cyclically_reduced();
        let inverse = reduced.invert();
        let n = reduced.len();
        let mut best: Option<Vec<Letter>> = None;
        for src in [&reduced.letters, &inverse.letters] {
            for r in 0..n.max(1) {
                let cand: Vec<Letter> = src[r.min(n)..].iter().chain(&src[..r.min(n)]).copied().collect();
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        Word {
            rank: self.rank,
            letters: best.unwrap_or_default(),
        }
    }

    /// Renders with the given generator names.
    pub fn to_string_with(&self, names: &[char]) -> String {
        self.letters.iter().map(|&l| letter_char(names, l)).collect()
    }
}

fn letter_char(names: &[char], l: Letter) -> char {
    let c = names.get(l.gen).copied().unwrap_or('?');
    if l.inverse {
        c.to_ascii_uppercase()
    } else {
        c
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_names(self.rank)))
    }
}

/// A finite presentation together with named peripheral words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    names: Vec<char>,
    relators: Vec<Word>,
    peripherals: BTreeMap<String, Word>,
}

impl GroupPresentation {
    pub fn new(
        names: Vec<char>,
        relators: Vec<Word>,
        peripherals: BTreeMap<String, Word>,
    ) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Parse("presentation needs at least one generator".into()));
        }
        for (i, &c) in names.iter().enumerate() {
            if !c.is_ascii_lowercase() {
                return Err(Error::Parse(format!("generator name '{c}' is not a lowercase letter")));
            }
            if names[..i].contains(&c) {
                return Err(Error::Parse(format!("duplicate generator name '{c}'")));
            }
        }
        let rank = names.len();
        for w in relators.iter().chain(peripherals.values()) {
            if w.rank() != rank {
                return Err(Error::RankMismatch {
                    left: w.rank(),
                    right: rank,
                });
            }
        }
        if let Some((name, _)) = peripherals.iter().find(|(_, w)| w.is_empty()) {
            return Err(Error::Parse(format!("peripheral '{name}' is the identity")));
        }
        Ok(GroupPresentation {
            names,
            relators,
            peripherals,
        })
    }

    /// Free group on the default letters.
    pub fn free(rank: usize) -> Self {
        GroupPresentation {
            names: default_names(rank),
            relators: Vec::new(),
            peripherals: BTreeMap::new(),
        }
    }

    /// Parses the line-oriented presentation format:
    ///
    /// ```text
    /// generators: a b c
    /// relators: abAbCaabAbcB abCBcAc
    /// peripheral meridian: BAABa
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Option<Vec<char>> = None;
        let mut relator_text = Vec::new();
        let mut peripheral_text: Vec<(String, String)> = Vec::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("line {}: missing ':'", lineno + 1)))?;
            let key = key.trim();
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            if key == "generators" {
                if names.is_some() {
                    return Err(Error::Parse(format!("line {}: generators declared twice", lineno + 1)));
                }
                let mut gens = Vec::new();
                for t in tokens {
                    let mut chars = t.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) => gens.push(c),
                        _ => {
                            return Err(Error::Parse(format!(
                                "line {}: generator '{t}' is not a single letter",
                                lineno + 1
                            )))
                        }
                    }
                }
                names = Some(gens);
            } else if key == "relators" {
                relator_text.extend(tokens.into_iter().map(str::to_owned));
            } else if let Some(name) = key.strip_prefix("peripheral") {
                let name = name.trim();
                if name.is_empty() || tokens.len() != 1 {
                    return Err(Error::Parse(format!(
                        "line {}: expected 'peripheral <name>: <word>'",
                        lineno + 1
                    )));
                }
                if peripheral_text.iter().any(|(n, _)| n == name) {
                    return Err(Error::Parse(format!("line {}: duplicate peripheral '{name}'", lineno + 1)));
                }
                peripheral_text.push((name.to_owned(), tokens[0].to_owned()));
            } else {
                return Err(Error::Parse(format!("line {}: unknown section '{key}'", lineno + 1)));
            }
        }

        let names = names.ok_or_else(|| Error::Parse("missing 'generators:' line".into()))?;
        // Validate the alphabet before parsing words against it.
        let probe = GroupPresentation::new(names.clone(), Vec::new(), BTreeMap::new())?;
        let relators = relator_text
            .iter()
            .map(|t| Word::parse_with(t, &probe.names))
            .collect::<Result<Vec<_>>>()?;
        let peripherals = peripheral_text
            .iter()
            .map(|(n, t)| Ok((n.clone(), Word::parse_with(t, &probe.names)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        GroupPresentation::new(names, relators, peripherals)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn peripherals(&self) -> &BTreeMap<String, Word> {
        &self.peripherals
    }

    pub fn peripheral(&self, name: &str) -> Option<&Word> {
        self.peripherals.get(name)
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        Word::parse_with(text, &self.names)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.to_string_with(&self.names)
    }

    /// Compiles a slope selector such as `meridian^-1 * longitude` to a word.
    ///
    /// Factors are separated by `*`; each factor is a peripheral name or a
    /// literal word, optionally followed by `^k` for an integer `k`.
    pub fn slope_word(&self, selector: &str) -> Result<Word> {
        let mut out = Word::identity(self.rank());
        for factor in selector.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in slope '{selector}'")));
            }
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => {
                    let e: i64 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in slope factor '{factor}'")))?;
                    (b.trim(), e)
                }
                None => (factor, 1),
            };
            let w = match self.peripherals.get(base) {
                Some(w) => w.clone(),
                None => self.word(base)?,
            };
            out = out.concat(&w.pow(exp))?;
        }
        Ok(out)
    }
}
