#![allow(dead_code)]

use charvar::presentation::Letter;
use charvar::trace::Mat2;
use charvar::Word;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

pub fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    let num: i64 = rng.gen_range(-9..=9);
    let den: i64 = rng.gen_range(1..=5);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Random [[a, b], [c, d]] with a != 0 and d = (1 + bc) / a.
pub fn random_sl2<R: Rng>(rng: &mut R) -> Mat2 {
    let mut a = small_rational(rng);
    while a.is_zero() {
        a = small_rational(rng);
    }
    let b = small_rational(rng);
    let c = small_rational(rng);
    let d = (BigRational::from_integer(1.into()) + &b * &c) / &a;
    Mat2::new(a, b, c, d)
}

pub fn random_tuple<R: Rng>(rng: &mut R, n: usize) -> Vec<Mat2> {
    (0..n).map(|_| random_sl2(rng)).collect()
}

/// Random freely reduced word of length at most `max_len`.
pub fn random_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let mut letters: Vec<Letter> = Vec::new();
    while letters.len() < len {
        let l = Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5));
        if letters.last().is_some_and(|p| p.inv() == l) {
            continue;
        }
        letters.push(l);
    }
    Word::from_letters(rank, letters).unwrap()
}

pub mod suite;
