//! Exact symbolic kernel.
//!
//! Every expression is a finite sum of terms
//! `c · u^r · ln^q(u) · e^{k·u} · trig(m·u)` with `u = x − c₀`, exact rational
//! coefficient `c`, and at most one transcendental family per term. The family
//! is closed under addition, the products the method needs, differentiation and
//! the canonical antiderivative (zero integration constant).

mod calculus;
mod eval;
mod format;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use calculus::dn;
pub use eval::{working_bits, HpFloat, DEFAULT_DIGITS};
pub use format::Style;
pub use parse::{parse, parse_at};

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

/// Small rational used for exponents and frequencies.
pub type Q = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trig {
    None,
    /// `sin(m·u)`, `m > 0`.
    Sin(Q),
    /// `cos(m·u)`, `m > 0`.
    Cos(Q),
}

impl Trig {
    pub fn is_none(&self) -> bool {
        matches!(self, Trig::None)
    }
}

/// The non-coefficient part of a term. Field order fixes the canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sig {
    pub trig: Trig,
    pub exp_k: Q,
    pub log_q: u32,
    pub pow_r: Q,
}

impl Sig {
    pub const ONE: Sig = Sig {
        trig: Trig::None,
        exp_k: Q::new_raw(0, 1),
        log_q: 0,
        pow_r: Q::new_raw(0, 1),
    };

    pub fn pow(r: Q) -> Sig {
        Sig {
            pow_r: r,
            ..Sig::ONE
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Sig::ONE
    }

    /// Checks the family rules: one transcendental family, and a non-negative
    /// integer power next to `exp` or `trig`.
    pub fn validate(&self) -> Result<()> {
        let families =
            (self.log_q > 0) as u8 + (!self.exp_k.is_zero()) as u8 + (!self.trig.is_none()) as u8;
        if families > 1 {
            let names: Vec<&str> = [
                (self.log_q > 0, "ln"),
                (!self.exp_k.is_zero(), "exp"),
                (!self.trig.is_none(), "sin/cos"),
            ]
            .into_iter()
            .filter_map(|(on, n)| on.then_some(n))
            .collect();
            return Err(Error::unsupported(format!(
                "product of {} in one term",
                names.join(" and ")
            )));
        }
        if (!self.exp_k.is_zero() || !self.trig.is_none())
            && !(self.pow_r.is_integer() && self.pow_r >= Q::zero())
        {
            return Err(Error::unsupported(format!(
                "power {} next to exp/trig must be a non-negative integer",
                self.pow_r
            )));
        }
        if let Trig::Sin(m) | Trig::Cos(m) = self.trig {
            if m <= Q::zero() {
                return Err(Error::unsupported("trig frequency must be positive"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub sig: Sig,
}

impl Term {
    pub fn new(coeff: Rational, sig: Sig) -> Result<Term> {
        sig.validate()?;
        Ok(Term { coeff, sig })
    }
}

/// Canonical sum of terms sharing the center `c₀`.
///
/// Expressions without any `u`-dependence (constants, including zero) are
/// center-free: they combine with expressions of any center.
#[derive(Debug, Clone)]
pub struct Expr {
    center: Rational,
    terms: BTreeMap<Sig, Rational>,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (self.center == other.center || self.is_constant())
    }
}

impl Eq for Expr {}

pub(crate) fn to_big(q: Q) -> Rational {
    Rational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

pub(crate) fn from_big(r: &Rational) -> Result<Q> {
    use num_traits::ToPrimitive;
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => Ok(Q::new(n, d)),
        _ => Err(Error::unsupported(format!("exponent {r} out of range"))),
    }
}

/// Product of two trig factors as a sum, each entry `(factor, trig)`.
fn trig_product(a: Trig, b: Trig) -> Vec<(Rational, Trig)> {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    match (a, b) {
        (Trig::None, t) | (t, Trig::None) => vec![(Rational::one(), t)],
        (Trig::Sin(p), Trig::Sin(q)) => {
            let mut v = cos_of(p - q, half.clone());
            v.extend(cos_of(p + q, -half));
            v
        }
        (Trig::Cos(p), Trig::Cos(q)) => {
            let mut v = cos_of(p - q, half.clone());
            v.extend(cos_of(p + q, half));
            v
        }
        (Trig::Sin(p), Trig::Cos(q)) | (Trig::Cos(q), Trig::Sin(p)) => {
            let mut v = sin_of(p + q, half.clone());
            v.extend(sin_of(p - q, half));
            v
        }
    }
}

fn sin_of(m: Q, c: Rational) -> Vec<(Rational, Trig)> {
    if m.is_zero() {
        vec![]
    } else if m < Q::zero() {
        vec![(-c, Trig::Sin(-m))]
    } else {
        vec![(c, Trig::Sin(m))]
    }
}

fn cos_of(m: Q, c: Rational) -> Vec<(Rational, Trig)> {
    if m.is_zero() {
        vec![(c, Trig::None)]
    } else {
        vec![(c, Trig::Cos(m.abs()))]
    }
}

/// Products of two signatures; trig pairs expand by product-to-sum.
pub(crate) fn sig_product(a: &Sig, b: &Sig) -> Result<Vec<(Rational, Sig)>> {
    let mut out = Vec::with_capacity(2);
    for (f, trig) in trig_product(a.trig, b.trig) {
        let s = Sig {
            trig,
            exp_k: a.exp_k + b.exp_k,
            log_q: a.log_q + b.log_q,
            pow_r: a.pow_r + b.pow_r,
        };
        s.validate()?;
        out.push((f, s));
    }
    Ok(out)
}

impl Expr {
    pub fn zero() -> Expr {
        Expr {
            center: Rational::zero(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Expr {
        let mut e = Expr::zero();
        e.push(Sig::ONE, c);
        e
    }

    pub fn int(n: i64) -> Expr {
        Expr::constant(Rational::from_integer(BigInt::from(n)))
    }

    /// `u = x − c₀` at the given center.
    pub fn u(center: Rational) -> Expr {
        Expr::monomial(center, Rational::one(), Q::one())
    }

    /// The independent variable `x = u + c₀`.
    pub fn x(center: Rational) -> Expr {
        let mut e = Expr::u(center.clone());
        e.push(Sig::ONE, center);
        e
    }

    /// `c · u^r`.
    pub fn monomial(center: Rational, c: Rational, r: Q) -> Expr {
        let mut e = Expr {
            center,
            terms: BTreeMap::new(),
        };
        e.push(Sig::pow(r), c);
        e
    }

    pub fn from_term(center: Rational, t: Term) -> Result<Expr> {
        t.sig.validate()?;
        let mut e = Expr {
            center,
            terms: BTreeMap::new(),
        };
        e.push(t.sig, t.coeff);
        Ok(e)
    }

    pub fn from_terms(center: Rational, terms: impl IntoIterator<Item = Term>) -> Result<Expr> {
        let mut e = Expr {
            center,
            terms: BTreeMap::new(),
        };
        for t in terms {
            t.sig.validate()?;
            e.push(t.sig, t.coeff);
        }
        Ok(e)
    }

    pub(crate) fn empty_at(center: &Rational) -> Expr {
        Expr {
            center: center.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Adds `c·sig`, merging like terms and dropping zeros.
    pub(crate) fn push(&mut self, sig: Sig, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(sig) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn center(&self) -> &Rational {
        &self.center
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// No dependence on `x` at all.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Sig::is_one)
    }

    /// The rational value of a constant expression.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(
                self.terms
                    .get(&Sig::ONE)
                    .cloned()
                    .unwrap_or_else(Rational::zero),
            )
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending signature) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = Term> + '_ {
        self.terms.iter().map(|(s, c)| Term {
            coeff: c.clone(),
            sig: *s,
        })
    }

    pub fn coeff_of(&self, sig: &Sig) -> Rational {
        self.terms.get(sig).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn single_term(&self) -> Option<Term> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// Re-inserts every term; the representation is already canonical, so this
    /// is the identity and exists to state idempotence explicitly.
    pub fn normalize(&self) -> Expr {
        let mut e = Expr::empty_at(&self.center);
        for (s, c) in &self.terms {
            e.push(*s, c.clone());
        }
        e
    }

    /// Same expression relabelled to `center`; only legal for constants.
    fn recenter(&self, center: &Rational) -> Expr {
        Expr {
            center: center.clone(),
            terms: self.terms.clone(),
        }
    }

    fn joint_center(&self, other: &Expr) -> Result<Rational> {
        if self.center == other.center || other.is_constant() {
            Ok(self.center.clone())
        } else if self.is_constant() {
            Ok(other.center.clone())
        } else {
            Err(Error::CenterMismatch(
                self.center.to_string(),
                other.center.to_string(),
            ))
        }
    }

    pub fn try_add(&self, other: &Expr) -> Result<Expr> {
        let c = self.joint_center(other)?;
        let mut e = self.recenter(&c);
        for (s, v) in &other.terms {
            e.push(*s, v.clone());
        }
        Ok(e)
    }

    pub fn try_sub(&self, other: &Expr) -> Result<Expr> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Expr {
        Expr {
            center: self.center.clone(),
            terms: self.terms.iter().map(|(s, c)| (*s, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Expr {
        if c.is_zero() {
            return Expr::empty_at(&self.center);
        }
        Expr {
            center: self.center.clone(),
            terms: self.terms.iter().map(|(s, v)| (*s, v * c)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Expr {
        self.scale(&Rational::from_integer(BigInt::from(n)))
    }

    /// Distributed product.
    ///
    /// # Errors
    /// `UnsupportedCombination` when a product leaves the term family
    /// (`ln × exp`, `ln × trig`, `exp × trig`, fractional power next to exp/trig).
    pub fn mul(&self, other: &Expr) -> Result<Expr> {
        let c = self.joint_center(other)?;
        let mut e = Expr::empty_at(&c);
        for (s1, c1) in &self.terms {
            for (s2, c2) in &other.terms {
                for (f, s) in sig_product(s1, s2)? {
                    e.push(s, c1 * c2 * f);
                }
            }
        }
        Ok(e)
    }

    pub fn pow_int(&self, n: i64) -> Result<Expr> {
        if n < 0 {
            return self.inverse()?.pow_int(-n);
        }
        let mut acc = Expr::int(1).recenter(&self.center);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Reciprocal of a single invertible term.
    pub fn inverse(&self) -> Result<Expr> {
        let t = self.single_term().ok_or_else(|| {
            Error::unsupported(format!("cannot invert multi-term expression {self}"))
        })?;
        if t.sig.log_q > 0 || !t.sig.trig.is_none() {
            return Err(Error::unsupported(format!("cannot invert {self}")));
        }
        let sig = Sig {
            pow_r: -t.sig.pow_r,
            exp_k: -t.sig.exp_k,
            ..t.sig
        };
        sig.validate()?;
        let mut e = Expr::empty_at(&self.center);
        e.push(sig, t.coeff.recip());
        Ok(e)
    }

    /// Quotient by a single invertible term.
    pub fn div(&self, other: &Expr) -> Result<Expr> {
        self.mul(&other.inverse()?)
    }

    /// Raises a single term to a rational power, keeping the coefficient exact.
    pub fn pow_rational(&self, p: &Rational) -> Result<Expr> {
        if p.is_integer() {
            let n: i64 = from_big(p)?.to_integer();
            return self.pow_int(n);
        }
        let t = self.single_term().ok_or_else(|| {
            Error::unsupported(format!("fractional power of multi-term expression {self}"))
        })?;
        if t.sig.log_q > 0 || !t.sig.trig.is_none() || !t.sig.exp_k.is_zero() {
            return Err(Error::unsupported(format!("fractional power of {self}")));
        }
        let pq = from_big(p)?;
        let coeff = rational_root(&t.coeff, pq).ok_or_else(|| {
            Error::unsupported(format!("coefficient {} has no exact power {p}", t.coeff))
        })?;
        let sig = Sig::pow(t.sig.pow_r * pq);
        let mut e = Expr::empty_at(&self.center);
        e.push(sig, coeff);
        Ok(e)
    }

    /// Exponent pattern helper: `true` if every term is a plain power with a
    /// non-negative integer exponent.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|s| {
            s.log_q == 0
                && s.exp_k.is_zero()
                && s.trig.is_none()
                && s.pow_r.is_integer()
                && s.pow_r >= Q::zero()
        })
    }
}

/// `c^p` when it is rational.
fn rational_root(c: &Rational, p: Q) -> Option<Rational> {
    let (a, b) = (*p.numer(), *p.denom());
    if c.is_negative() && b % 2 == 0 {
        return None;
    }
    let root = |n: &BigInt| -> Option<BigInt> {
        let mag = n.abs();
        let r = mag.nth_root(b as u32);
        if num_traits::pow(r.clone(), b as usize) == mag {
            Some(if n.is_negative() { -r } else { r })
        } else {
            None
        }
    };
    let base = Rational::new(root(c.numer())?, root(c.denom())?);
    let mut out = Rational::one();
    for _ in 0..a.unsigned_abs() {
        out *= &base;
    }
    Some(if a < 0 { out.recip() } else { out })
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&Expr> for &Expr {
            type Output = Expr;
            /// # Panics
            /// On mismatched centers; use the `try_` form to recover.
            fn $m(self, rhs: &Expr) -> Expr {
                self.$f(rhs).expect("center mismatch")
            }
        }
        impl std::ops::$tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                (&self).$f(&rhs).expect("center mismatch")
            }
        }
        impl std::ops::$tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                (&self).$f(rhs).expect("center mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(&self)
    }
}

impl std::ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}

impl std::ops::AddAssign<&Expr> for Expr {
    fn add_assign(&mut self, rhs: &Expr) {
        *self = self.try_add(rhs).expect("center mismatch");
    }
}

impl std::ops::SubAssign<&Expr> for Expr {
    fn sub_assign(&mut self, rhs: &Expr) {
        *self = self.try_sub(rhs).expect("center mismatch");
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(Style::Plain))
    }
}
