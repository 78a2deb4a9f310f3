//! Differentiation and canonical antiderivatives.
//!
//! Antiderivatives never add a constant: `∫e^{ku} = e^{ku}/k`, `∫sin = −cos`,
//! `∫ln u = u ln u − u`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{to_big, Expr, Rational, Sig, Trig, Q};
use crate::error::Result;

fn term_derivative(sig: &Sig, c: &Rational, out: &mut Expr) {
    let r = to_big(sig.pow_r);
    match sig.trig {
        Trig::None => {
            if !sig.pow_r.is_zero() {
                out.push(
                    Sig {
                        pow_r: sig.pow_r - 1,
                        ..*sig
                    },
                    c * &r,
                );
            }
            if sig.log_q > 0 {
                let q = Rational::from_integer(BigInt::from(sig.log_q));
                out.push(
                    Sig {
                        pow_r: sig.pow_r - 1,
                        log_q: sig.log_q - 1,
                        ..*sig
                    },
                    c * q,
                );
            }
            if !sig.exp_k.is_zero() {
                out.push(*sig, c * to_big(sig.exp_k));
            }
        }
        Trig::Sin(m) | Trig::Cos(m) => {
            if !sig.pow_r.is_zero() {
                out.push(
                    Sig {
                        pow_r: sig.pow_r - 1,
                        ..*sig
                    },
                    c * &r,
                );
            }
            let (t, s) = match sig.trig {
                Trig::Sin(_) => (Trig::Cos(m), Rational::one()),
                _ => (Trig::Sin(m), -Rational::one()),
            };
            out.push(Sig { trig: t, ..*sig }, c * to_big(m) * s);
        }
    }
}

/// `∫ u^r ln^q u du`.
fn int_pow_log(r: Q, q: u32, c: &Rational, out: &mut Expr) {
    if r == Q::from_integer(-1) {
        let sig = Sig {
            log_q: q + 1,
            pow_r: Q::zero(),
            ..Sig::ONE
        };
        out.push(sig, c / Rational::from_integer(BigInt::from(q + 1)));
        return;
    }
    let r1 = to_big(r + 1);
    let mut coef = c / &r1;
    for j in 0..=q {
        out.push(
            Sig {
                log_q: q - j,
                pow_r: r + 1,
                ..Sig::ONE
            },
            coef.clone(),
        );
        coef = -coef * Rational::from_integer(BigInt::from(q - j)) / &r1;
    }
}

/// `∫ u^n e^{ku} du = e^{ku} Σ_j (−1)^j n!/(n−j)! u^{n−j} / k^{j+1}`.
fn int_pow_exp(n: i64, k: Q, c: &Rational, out: &mut Expr) {
    let kb = to_big(k);
    let mut coef = c / &kb;
    for j in 0..=n {
        out.push(
            Sig {
                exp_k: k,
                pow_r: Q::from_integer(n - j),
                ..Sig::ONE
            },
            coef.clone(),
        );
        coef = -coef * Rational::from_integer(BigInt::from(n - j)) / &kb;
    }
}

/// `∫ u^n trig(mu) du` via the by-parts recursion.
fn int_pow_trig(n: i64, trig: Trig, c: &Rational, out: &mut Expr) {
    let (m, mut is_sin) = match trig {
        Trig::Sin(m) => (m, true),
        Trig::Cos(m) => (m, false),
        Trig::None => unreachable!(),
    };
    let mb = to_big(m);
    // ∫u^j sin = −u^j cos/m + (j/m)∫u^{j−1} cos ; ∫u^j cos = u^j sin/m − (j/m)∫u^{j−1} sin
    let mut coef = c.clone();
    let mut j = n;
    loop {
        let pow = Sig {
            pow_r: Q::from_integer(j),
            ..Sig::ONE
        };
        if is_sin {
            out.push(
                Sig {
                    trig: Trig::Cos(m),
                    ..pow
                },
                -&coef / &mb,
            );
            coef = &coef * Rational::from_integer(BigInt::from(j)) / &mb;
        } else {
            out.push(
                Sig {
                    trig: Trig::Sin(m),
                    ..pow
                },
                &coef / &mb,
            );
            coef = -&coef * Rational::from_integer(BigInt::from(j)) / &mb;
        }
        if j == 0 || coef.is_zero() {
            break;
        }
        is_sin = !is_sin;
        j -= 1;
    }
}

impl Expr {
    pub fn derivative(&self) -> Expr {
        let mut out = Expr::empty_at(&self.center);
        for (s, c) in &self.terms {
            term_derivative(s, c, &mut out);
        }
        out
    }

    /// Derivative applied `times` times.
    pub fn differentiate(&self, times: u32) -> Expr {
        let mut e = self.clone();
        for _ in 0..times {
            if e.is_zero() {
                break;
            }
            e = e.derivative();
        }
        e
    }

    /// Canonical antiderivative, zero constant, term family by term family.
    pub fn antiderivative(&self) -> Result<Expr> {
        let mut out = Expr::empty_at(&self.center);
        for (s, c) in &self.terms {
            s.validate()?;
            if !s.trig.is_none() {
                int_pow_trig(s.pow_r.to_integer(), s.trig, c, &mut out);
            } else if !s.exp_k.is_zero() {
                int_pow_exp(s.pow_r.to_integer(), s.exp_k, c, &mut out);
            } else {
                int_pow_log(s.pow_r, s.log_q, c, &mut out);
            }
        }
        Ok(out)
    }

    /// `[f]_k`: the antiderivative applied `k` times.
    pub fn integrate(&self, k: u32) -> Result<Expr> {
        let mut e = self.clone();
        for _ in 0..k {
            if e.is_zero() {
                break;
            }
            e = e.antiderivative()?;
        }
        Ok(e)
    }

    /// `n ≥ 0` differentiates, `n < 0` integrates `|n|` times.
    pub fn dn(&self, n: i64) -> Result<Expr> {
        if n >= 0 {
            Ok(self.differentiate(n as u32))
        } else {
            self.integrate(n.unsigned_abs() as u32)
        }
    }
}

/// Free-function form of [`Expr::dn`].
pub fn dn(n: i64, e: &Expr) -> Result<Expr> {
    e.dn(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x*ln(x) - x").derivative(), p("ln(x)"));
        assert_eq!(p("x^3/6").differentiate(2), p("x"));
        assert_eq!(p("(5+x)*exp(-x)").derivative(), p("-(4+x)*exp(-x)"));
        assert_eq!(
            p("x^2*sin(3*x)").derivative(),
            p("2*x*sin(3*x) + 3*x^2*cos(3*x)")
        );
        assert_eq!(p("ln(x)^2").derivative(), p("2*ln(x)*x^(-1)"));
    }

    #[test]
    fn antiderivatives() {
        assert_eq!(p("sin(x)").antiderivative().unwrap(), p("-cos(x)"));
        assert_eq!(p("sin(x)").integrate(3).unwrap(), p("cos(x)"));
        assert_eq!(p("ln(x)").antiderivative().unwrap(), p("x*ln(x) - x"));
        assert_eq!(p("x^(-1)").antiderivative().unwrap(), p("ln(x)"));
        assert_eq!(p("exp(4*x)").integrate(13).unwrap(), p("exp(4*x)/67108864"));
        assert_eq!(p("x^(1/2)").antiderivative().unwrap(), p("2*x^(3/2)/3"));
    }

    #[test]
    fn dn_both_directions() {
        assert_eq!(p("x").dn(-3).unwrap(), p("x^4/24"));
        assert_eq!(p("-x*exp(-x)").dn(-5).unwrap(), p("(5+x)*exp(-x)"));
        let e = p("x^2*cos(2*x) + ln(x)^3 + x^(-3/2)");
        assert_eq!(e.dn(-2).unwrap().dn(2).unwrap(), e);
    }

    #[test]
    fn by_parts_families_round_trip() {
        for s in [
            "x^3*exp(-2*x)",
            "x^4*cos(1/2*x)",
            "x^(-2)*ln(x)^2",
            "x^(2/3)*ln(x)",
            "x^(-1)*ln(x)^4",
            "x^5*sin(x)",
        ] {
            let e = p(s);
            assert_eq!(e.antiderivative().unwrap().derivative(), e, "{s}");
        }
    }
}
