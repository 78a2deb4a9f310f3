//! Weighted Leibniz sums `L[f] = Σ_{i=0}^{n} f(i)·C(n,i)·u^{(i)}·v^{(n−i)}` and
//! their closed forms.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expr::{Expr, Rational};
use crate::numbers::{binom, factorial, gbinom, rat};

/// Default bound on the weight degree `k`.
pub const MAX_WEIGHT_DEGREE: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSpec {
    /// `f(i) = 1`.
    One,
    /// `f(i) = i^k`.
    Power(u32),
    /// `f(i) = C(i − z, k)`.
    Binom { z: i64, k: u32 },
}

impl WeightSpec {
    pub fn at(&self, i: u64) -> Rational {
        match *self {
            WeightSpec::One => Rational::one(),
            WeightSpec::Power(k) => rat(i as i64).pow(k as i32),
            WeightSpec::Binom { z, k } => gbinom(&rat(i as i64 - z), k as u64),
        }
    }

    fn degree(&self) -> u32 {
        match *self {
            WeightSpec::One => 0,
            WeightSpec::Power(k) | WeightSpec::Binom { k, .. } => k,
        }
    }
}

fn check(w: &WeightSpec) -> Result<()> {
    if w.degree() > MAX_WEIGHT_DEGREE {
        return Err(Error::invalid(format!(
            "weight degree {} exceeds {MAX_WEIGHT_DEGREE}",
            w.degree()
        )));
    }
    Ok(())
}

/// Direct definition of the weighted Leibniz sum.
pub fn leibniz_sum(w: WeightSpec, u: &Expr, v: &Expr, n: u32) -> Result<Expr> {
    check(&w)?;
    leibniz_sum_unbounded(w, u, v, n)
}

/// `S(k, i) = Σ_{s≤i} s^k (−1)^{s+i} / ((i−s)! s!)`.
fn inner(k: u32, i: u32) -> Rational {
    (0..=i)
        .map(|s| {
            let sign = if (s + i).is_multiple_of(2) { 1 } else { -1 };
            let num = BigInt::from(s).pow(k) * sign;
            Rational::new(num, factorial((i - s) as u64) * factorial(s as u64))
        })
        .sum()
}

/// Closed form of `L[i^k]`: `Σ_{i≤k} S(k,i)·C(n,i)·i!·D^{n−i}(u^{(i)} v)`.
pub fn l_power_closed(k: u32, u: &Expr, v: &Expr, n: u32) -> Result<Expr> {
    let mut acc = Expr::zero();
    for i in 0..=k.min(n) {
        let c =
            inner(k, i) * Rational::from_integer(binom(n as u64, i as u64) * factorial(i as u64));
        if c.is_zero() {
            continue;
        }
        let inner_prod = u.differentiate(i).mul(v)?;
        acc = acc.try_add(&inner_prod.differentiate(n - i).scale(&c))?;
    }
    Ok(acc)
}

/// Coefficients `r_1..r_{k+1}` with `Σ_s r_s·t^{k+1−s} = t(t−1)…(t−k+1)`,
/// i.e. signed elementary symmetric functions of the roots `0, 1, …, k−1`.
pub fn vieta_coeffs(k: u32) -> Vec<Rational> {
    // e[j] = e_j(0..k−1), built one root at a time
    let mut e: Vec<BigInt> = vec![BigInt::one()];
    for root in 0..k {
        let mut next = e.clone();
        next.push(BigInt::zero());
        for j in 1..next.len() {
            next[j] += &e[j - 1] * BigInt::from(root);
        }
        e = next;
    }
    e.into_iter()
        .enumerate()
        .map(|(j, v)| Rational::from_integer(if j % 2 == 0 { v } else { -v }))
        .collect()
}

/// Closed form of `L[C(i−z, k)]` through the falling-factorial expansion
/// `C(i−z,k) = (1/k!) Σ_s r_s(k) Σ_l C(k+1−s, l) (−z)^{k+1−s−l} i^l`.
pub fn l_binom_closed(z: i64, k: u32, u: &Expr, v: &Expr, n: u32) -> Result<Expr> {
    let r = vieta_coeffs(k);
    let kf = Rational::from_integer(factorial(k as u64));
    // coefficient of i^l in the expansion
    let mut by_power = vec![Rational::zero(); k as usize + 1];
    for (idx, rs) in r.iter().enumerate() {
        let p = k as usize - idx; // exponent k+1−s with s = idx+1
        for (l, slot) in by_power.iter_mut().enumerate().take(p + 1) {
            let c = Rational::from_integer(binom(p as u64, l as u64)) * rat(-z).pow((p - l) as i32);
            *slot += rs * c;
        }
    }
    let mut acc = Expr::zero();
    for (l, c) in by_power.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = acc.try_add(&l_power_closed(l as u32, u, v, n)?.scale(&(c / &kf)))?;
    }
    Ok(acc)
}

/// Both sides of the nested identity for `b = (b_0, …, b_m)`:
///
/// `Σ_{i₀<m} L[C(i−k₀, i₀)]` with `u = [b_{i₀}]_{i₀+k₀}`, `v = b_{k₀}`, against
/// `Σ_{i₁} Σ_{i₀ ≤ m−1−i₁} (−1)^{i₀} C(k₀−1+i₀, k₀−1) C(n,i₁) D^{n−i₁}([b_{i₁+i₀}]_{i₀+k₀} b_{k₀})`.
pub fn nested_identity(b: &[Expr], k0: u32, n: u32, m: u32) -> Result<(Expr, Expr)> {
    if k0 == 0 {
        return Err(Error::invalid("k0 must be positive"));
    }
    let need = (m as usize).max(k0 as usize + 1);
    if b.len() < need {
        return Err(Error::invalid(format!(
            "need b_0..b_{} , got {} entries",
            need - 1,
            b.len()
        )));
    }
    let vk = &b[k0 as usize];
    let mut lhs = Expr::zero();
    for i0 in 0..m {
        let u = b[i0 as usize].integrate(i0 + k0)?;
        let w = WeightSpec::Binom {
            z: k0 as i64,
            k: i0,
        };
        lhs = lhs.try_add(&leibniz_sum_unbounded(w, &u, vk, n)?)?;
    }
    let mut rhs = Expr::zero();
    for i1 in 0..m.min(n + 1) {
        for i0 in 0..(m - i1) {
            let sign = if i0 % 2 == 0 { 1 } else { -1 };
            let c = Rational::from_integer(
                binom((k0 - 1 + i0) as u64, (k0 - 1) as u64) * binom(n as u64, i1 as u64) * sign,
            );
            let inner_prod = b[(i1 + i0) as usize].integrate(i0 + k0)?.mul(vk)?;
            rhs = rhs.try_add(&inner_prod.differentiate(n - i1).scale(&c))?;
        }
    }
    Ok((lhs, rhs))
}

/// `leibniz_sum` without the degree guard; the nested identity uses degrees up to `m−1`.
fn leibniz_sum_unbounded(w: WeightSpec, u: &Expr, v: &Expr, n: u32) -> Result<Expr> {
    let mut acc = Expr::zero();
    let mut du = u.clone();
    for i in 0..=n {
        let f = w.at(i as u64);
        if !f.is_zero() {
            let c = f * Rational::from_integer(binom(n as u64, i as u64));
            acc = acc.try_add(&du.mul(&v.differentiate(n - i))?.scale(&c))?;
        }
        du = du.derivative();
    }
    Ok(acc)
}
