//! Exact combinatorial helpers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::expr::Rational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `C(n, k)` for non-negative integers; zero when `k > n`.
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// `C(n, k)` with integer `n` of either sign, via the falling factorial.
pub fn binom_int(n: i64, k: u64) -> BigInt {
    if n >= 0 {
        return binom(n as u64, k);
    }
    let r = gbinom(&rat(n), k);
    r.to_integer()
}

/// Generalized binomial `q(q−1)…(q−i+1)/i!`.
pub fn gbinom(q: &Rational, i: u64) -> Rational {
    let mut acc = Rational::one();
    for j in 0..i {
        acc *= q - rat(j as i64);
        acc /= rat(j as i64 + 1);
    }
    acc
}

/// `H_k = 1 + 1/2 + … + 1/k`, with `H_0 = 0`.
pub fn harmonic(k: u64) -> Rational {
    (1..=k).fold(Rational::zero(), |acc, j| acc + ratio(1, j as i64))
}

/// Exact value of `"3"`, `"-0.8"`, `"7/2"` or `"1.5e-3"`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n.trim().parse().ok()?, d));
    }
    let (mant, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, body) = match mant.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !(int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()))
    {
        return None;
    }
    let digits: BigInt = format!("0{int}{frac}").parse().ok()?;
    let scale = exp - frac.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    let v = Rational::from_integer(digits) * ten.pow(scale);
    Some(if neg { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gbinom_negative_arguments() {
        assert_eq!(gbinom(&rat(-1), 2), rat(1));
        assert_eq!(gbinom(&rat(-1), 4), rat(1));
        assert_eq!(gbinom(&rat(-2), 3), rat(-4));
        assert_eq!(gbinom(&rat(5), 0), rat(1));
        assert_eq!(gbinom(&ratio(1, 2), 2), ratio(-1, 8));
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(2, 5), BigInt::zero());
        assert_eq!(binom_int(-2, 3), BigInt::from(-4));
        assert_eq!(factorial(6), BigInt::from(720));
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-0.8"), Some(ratio(-4, 5)));
        assert_eq!(parse_rational("7/2"), Some(ratio(7, 2)));
        assert_eq!(parse_rational("1.5e-3"), Some(ratio(3, 2000)));
        assert_eq!(parse_rational("12"), Some(rat(12)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic(0), rat(0));
        assert_eq!(harmonic(3), ratio(11, 6));
    }
}
