//! Point evaluation: exact where the value is rational, otherwise a binary
//! floating value carried at a stated working precision.

use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{to_big, Expr, Rational, Sig, Trig};
use crate::error::{Error, Result};

/// Decimal digits used unless the caller asks for more; never below 60.
pub const DEFAULT_DIGITS: u32 = 60;

const RM: RoundingMode = RoundingMode::ToEven;

/// Mantissa bits for `digits` decimal digits plus guard bits.
pub fn working_bits(digits: u32) -> usize {
    let d = digits.max(DEFAULT_DIGITS) as f64;
    ((d * std::f64::consts::LOG2_10).ceil() as usize + 64).div_ceil(64) * 64
}

/// High-precision real value.
#[derive(Clone, Debug)]
pub struct HpFloat {
    v: BigFloat,
    p: usize,
}

fn consts() -> Consts {
    Consts::new().expect("constant cache")
}

impl HpFloat {
    pub fn from_rational(r: &Rational, p: usize) -> HpFloat {
        let n = big_int(r.numer(), p);
        let d = big_int(r.denom(), p);
        HpFloat {
            v: n.div(&d, p, RM),
            p,
        }
    }

    pub fn precision_bits(&self) -> usize {
        self.p
    }

    pub fn zero(p: usize) -> HpFloat {
        HpFloat {
            v: BigFloat::from_i64(0, p),
            p,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn add(&self, o: &HpFloat) -> HpFloat {
        HpFloat {
            v: self.v.add(&o.v, self.p, RM),
            p: self.p,
        }
    }

    pub fn sub(&self, o: &HpFloat) -> HpFloat {
        HpFloat {
            v: self.v.sub(&o.v, self.p, RM),
            p: self.p,
        }
    }

    pub fn mul(&self, o: &HpFloat) -> HpFloat {
        HpFloat {
            v: self.v.mul(&o.v, self.p, RM),
            p: self.p,
        }
    }

    pub fn div(&self, o: &HpFloat) -> HpFloat {
        HpFloat {
            v: self.v.div(&o.v, self.p, RM),
            p: self.p,
        }
    }

    pub fn abs(&self) -> HpFloat {
        HpFloat {
            v: self.v.abs(),
            p: self.p,
        }
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    /// Scientific notation with `digits` significant digits.
    pub fn to_sci(&self, digits: usize) -> String {
        let mut cc = consts();
        let s = self
            .v
            .format(Radix::Dec, RM, &mut cc)
            .unwrap_or_else(|_| "NaN".into());
        shorten(&s, digits)
    }

    pub fn to_f64(&self) -> f64 {
        let mut cc = consts();
        match self.v.format(Radix::Dec, RM, &mut cc) {
            Ok(s) => s.parse::<f64>().unwrap_or(f64::NAN),
            Err(_) => f64::NAN,
        }
    }
}

impl fmt::Display for HpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci(20))
    }
}

/// `1.2345678e-5` style truncation of the decimal rendering.
fn shorten(s: &str, digits: usize) -> String {
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, Some(e)),
        None => (s, None),
    };
    let (sign, body) = mant
        .strip_prefix('-')
        .map(|b| ("-", b))
        .unwrap_or(("", mant));
    let keep = match body.find('.') {
        Some(dot) => (dot + 1 + digits.saturating_sub(1)).min(body.len()),
        None => body.len(),
    };
    match exp {
        Some(e) => format!("{sign}{}e{}", &body[..keep], e.trim_start_matches('+')),
        None => format!("{sign}{}", &body[..keep]),
    }
}

fn big_int(n: &BigInt, p: usize) -> BigFloat {
    if let Some(v) = n.to_i64() {
        return BigFloat::from_i64(v, p);
    }
    let mut cc = consts();
    BigFloat::parse(
        &n.to_string(),
        Radix::Dec,
        p.max(n.bits() as usize + 64),
        RM,
        &mut cc,
    )
}

impl Expr {
    /// Exact value when every term is rational at `x0`.
    ///
    /// # Errors
    /// `Domain` for logs or fractional powers at or left of the center and for
    /// negative powers at the center; `Inexact` when a transcendental factor or
    /// an irrational power is needed.
    pub fn eval_exact(&self, x0: &Rational) -> Result<Rational> {
        let u = x0 - &self.center;
        let mut acc = Rational::zero();
        for (sig, c) in &self.terms {
            check_domain(sig, &u)?;
            if sig.log_q > 0 || !sig.exp_k.is_zero() || !sig.trig.is_none() {
                if u.is_zero() && sig.pow_r > super::Q::zero() {
                    continue;
                }
                return Err(Error::Inexact(format!("transcendental factor at x = {x0}")));
            }
            if !sig.pow_r.is_integer() {
                if u.is_zero() {
                    continue;
                }
                return Err(Error::Inexact(format!("fractional power at x = {x0}")));
            }
            acc += c * pow_int(&u, sig.pow_r.to_integer());
        }
        Ok(acc)
    }

    /// Value at `x0` with `digits` (≥ 60) decimal digits of working precision.
    pub fn eval_hp(&self, x0: &Rational, digits: u32) -> Result<HpFloat> {
        let p = working_bits(digits);
        let mut cc = consts();
        let u = x0 - &self.center;
        let uf = HpFloat::from_rational(&u, p).v;
        let mut lnu: Option<BigFloat> = None;
        let mut acc = BigFloat::from_i64(0, p);
        for (sig, c) in &self.terms {
            check_domain(sig, &u)?;
            let mut t = HpFloat::from_rational(c, p).v;
            if !sig.pow_r.is_zero() {
                let f = if sig.pow_r.is_integer() {
                    HpFloat::from_rational(&pow_int(&u, sig.pow_r.to_integer()), p).v
                } else if u.is_zero() {
                    BigFloat::from_i64(0, p)
                } else {
                    let l = lnu.get_or_insert_with(|| uf.ln(p, RM, &mut cc)).clone();
                    let r = HpFloat::from_rational(&to_big(sig.pow_r), p).v;
                    r.mul(&l, p, RM).exp(p, RM, &mut cc)
                };
                t = t.mul(&f, p, RM);
            }
            if sig.log_q > 0 {
                let l = lnu.get_or_insert_with(|| uf.ln(p, RM, &mut cc)).clone();
                t = t.mul(&l.powi(sig.log_q as usize, p, RM), p, RM);
            }
            if !sig.exp_k.is_zero() {
                let k = HpFloat::from_rational(&to_big(sig.exp_k), p).v;
                t = t.mul(&k.mul(&uf, p, RM).exp(p, RM, &mut cc), p, RM);
            }
            match sig.trig {
                Trig::None => {}
                Trig::Sin(m) | Trig::Cos(m) => {
                    let a = HpFloat::from_rational(&to_big(m), p).v.mul(&uf, p, RM);
                    let f = if matches!(sig.trig, Trig::Sin(_)) {
                        a.sin(p, RM, &mut cc)
                    } else {
                        a.cos(p, RM, &mut cc)
                    };
                    t = t.mul(&f, p, RM);
                }
            }
            acc = acc.add(&t, p, RM);
        }
        Ok(HpFloat { v: acc, p })
    }

    /// Plain double-precision evaluation for numeric quadrature; `NaN` outside
    /// the domain.
    pub fn eval_float(&self, x0: f64) -> f64 {
        let c0 = num_traits::ToPrimitive::to_f64(&self.center).unwrap_or(f64::NAN);
        let u = x0 - c0;
        let mut acc = 0.0;
        for (sig, c) in &self.terms {
            let mut t = num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN);
            if !sig.pow_r.is_zero() {
                t *= if sig.pow_r.is_integer() {
                    u.powi(sig.pow_r.to_integer() as i32)
                } else if u < 0.0 {
                    f64::NAN
                } else {
                    u.powf(*sig.pow_r.numer() as f64 / *sig.pow_r.denom() as f64)
                };
            }
            if sig.log_q > 0 {
                t *= if u > 0.0 {
                    u.ln().powi(sig.log_q as i32)
                } else {
                    f64::NAN
                };
            }
            if !sig.exp_k.is_zero() {
                t *= (*sig.exp_k.numer() as f64 / *sig.exp_k.denom() as f64 * u).exp();
            }
            match sig.trig {
                Trig::None => {}
                Trig::Sin(m) => t *= (*m.numer() as f64 / *m.denom() as f64 * u).sin(),
                Trig::Cos(m) => t *= (*m.numer() as f64 / *m.denom() as f64 * u).cos(),
            }
            acc += t;
        }
        acc
    }

    /// Convenience: `f64` point, default precision, rounded result.
    pub fn eval_f64(&self, x0: f64) -> Result<f64> {
        let r = Rational::from_float(x0).ok_or(Error::NonFiniteValue(x0))?;
        Ok(self.eval_hp(&r, DEFAULT_DIGITS)?.to_f64())
    }
}

fn check_domain(sig: &Sig, u: &Rational) -> Result<()> {
    let needs_positive = sig.log_q > 0 || !sig.pow_r.is_integer();
    if needs_positive
        && (u.is_negative() || (u.is_zero() && (sig.log_q > 0 || sig.pow_r < super::Q::zero())))
    {
        return Err(Error::Domain(format!(
            "log or fractional power at x - c0 = {u}"
        )));
    }
    if u.is_zero() && sig.pow_r < super::Q::zero() {
        return Err(Error::Domain("negative power at the center".into()));
    }
    Ok(())
}

fn pow_int(u: &Rational, n: i64) -> Rational {
    let mut acc = num_traits::pow(u.clone(), n.unsigned_abs() as usize);
    if n < 0 {
        acc = acc.recip();
    }
    acc
}
