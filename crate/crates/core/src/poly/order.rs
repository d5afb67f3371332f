//! Monomial orders.
//!
//! The block order is the one the finiteness test relies on: the leading
//! block of variables is compared first and the tail block only breaks ties.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubOrder {
    Lex,
    Grevlex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    /// Variables `0..split` form the dominant block, the rest the tail.
    Block {
        split: usize,
        head: SubOrder,
        tail: SubOrder,
    },
}

fn cmp_lex(a: &[u16], b: &[u16], r: Range<usize>) -> Ordering {
    a[r.clone()].cmp(&b[r])
}

fn cmp_grevlex(a: &[u16], b: &[u16], r: Range<usize>) -> Ordering {
    let da: u32 = a[r.clone()].iter().map(|&e| e as u32).sum();
    let db: u32 = b[r.clone()].iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for i in r.rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

fn cmp_sub(o: SubOrder, a: &[u16], b: &[u16], r: Range<usize>) -> Ordering {
    match o {
        SubOrder::Lex => cmp_lex(a, b, r),
        SubOrder::Grevlex => cmp_grevlex(a, b, r),
    }
}

impl MonomialOrder {
    /// Block order with `x`-variables `0..split` grevlex and the tail after them.
    pub fn elimination(split: usize) -> Self {
        MonomialOrder::Block {
            split,
            head: SubOrder::Grevlex,
            tail: SubOrder::Grevlex,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exps(), b.exps());
        debug_assert_eq!(a.len(), b.len());
        let n = a.len();
        match *self {
            MonomialOrder::Lex => cmp_lex(a, b, 0..n),
            MonomialOrder::Grevlex => cmp_grevlex(a, b, 0..n),
            MonomialOrder::Block { split, head, tail } => {
                let split = split.min(n);
                cmp_sub(head, a, b, 0..split).then_with(|| cmp_sub(tail, a, b, split..n))
            }
        }
    }

    /// The coarsest data the order compares first: total degree for grevlex,
    /// the whole exponent vector for lex, and the concatenation of both
    /// blocks' grades for a block order. If `grade(a) < grade(b)` then
    /// `a < b`, so equal grades form consecutive runs of the order.
    pub fn grade(&self, m: &Monomial) -> SmallVec<[u32; 4]> {
        fn sub(o: SubOrder, e: &[u16], out: &mut SmallVec<[u32; 4]>) {
            match o {
                SubOrder::Lex => out.extend(e.iter().map(|&x| x as u32)),
                SubOrder::Grevlex => out.push(e.iter().map(|&x| x as u32).sum()),
            }
        }
        let e = m.exps();
        let mut out = SmallVec::new();
        match *self {
            MonomialOrder::Lex => sub(SubOrder::Lex, e, &mut out),
            MonomialOrder::Grevlex => sub(SubOrder::Grevlex, e, &mut out),
            MonomialOrder::Block { split, head, tail } => {
                let split = split.min(e.len());
                sub(head, &e[..split], &mut out);
                sub(tail, &e[split..], &mut out);
            }
        }
        out
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Block { .. } => "block",
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Block { split, head, tail } => {
                write!(f, "block(0..{split}: {head:?}, {split}..: {tail:?})")
            }
            o => f.write_str(o.name()),
        }
    }
}
