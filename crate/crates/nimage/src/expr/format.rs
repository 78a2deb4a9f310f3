//! Text rendering. `Plain` output re-parses with [`super::parse_at`] at the same center.

use num_traits::{One, Signed, Zero};

use super::{Expr, Rational, Sig, Trig, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Plain,
    Latex,
}

fn shift(center: &Rational) -> String {
    if center.is_zero() {
        "x".to_string()
    } else if center.is_negative() {
        format!("x+{}", -center)
    } else {
        format!("x-{center}")
    }
}

fn q_str(q: Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `k·u` as a function argument.
fn linear_arg(k: Q, center: &Rational, style: Style) -> String {
    let s = shift(center);
    let grouped = if center.is_zero() {
        s.clone()
    } else {
        format!("({s})")
    };
    match style {
        Style::Plain => {
            if k == Q::one() {
                s
            } else if k == -Q::one() {
                format!("-{grouped}")
            } else {
                format!("{}*{grouped}", q_str(k))
            }
        }
        Style::Latex => {
            if k == Q::one() {
                s
            } else if k == -Q::one() {
                format!("-{grouped}")
            } else if k.is_integer() {
                format!("{}{grouped}", k.numer())
            } else {
                let sign = if k < Q::zero() { "-" } else { "" };
                format!(
                    "{sign}\\frac{{{}}}{{{}}}{grouped}",
                    k.numer().abs(),
                    k.denom()
                )
            }
        }
    }
}

fn factors(sig: &Sig, center: &Rational, style: Style) -> Vec<String> {
    let mut out = Vec::new();
    let base = if center.is_zero() {
        "x".to_string()
    } else {
        format!("({})", shift(center))
    };
    if !sig.pow_r.is_zero() {
        let r = sig.pow_r;
        out.push(match style {
            Style::Plain if r == Q::one() => base.clone(),
            Style::Plain if r.is_integer() && r > Q::zero() => format!("{base}^{}", r.numer()),
            Style::Plain => format!("{base}^({})", q_str(r)),
            Style::Latex if r == Q::one() => base.clone(),
            Style::Latex if r.is_integer() => format!("{base}^{{{}}}", r.numer()),
            Style::Latex => format!("{base}^{{{}}}", q_str(r)),
        });
    }
    if sig.log_q > 0 {
        let s = shift(center);
        out.push(match (style, sig.log_q) {
            (Style::Plain, 1) => format!("ln({s})"),
            (Style::Plain, q) => format!("ln({s})^{q}"),
            (Style::Latex, 1) => format!("\\ln({s})"),
            (Style::Latex, q) => format!("\\ln^{{{q}}}({s})"),
        });
    }
    if !sig.exp_k.is_zero() {
        let a = linear_arg(sig.exp_k, center, style);
        out.push(match style {
            Style::Plain => format!("exp({a})"),
            Style::Latex => format!("e^{{{a}}}"),
        });
    }
    match sig.trig {
        Trig::None => {}
        Trig::Sin(m) | Trig::Cos(m) => {
            let name = if matches!(sig.trig, Trig::Sin(_)) {
                "sin"
            } else {
                "cos"
            };
            let a = linear_arg(m, center, style);
            out.push(match style {
                Style::Plain => format!("{name}({a})"),
                Style::Latex => format!("\\{name}({a})"),
            });
        }
    }
    out
}

/// Magnitude of one term (sign handled by the caller).
fn term_body(coeff: &Rational, sig: &Sig, center: &Rational, style: Style) -> String {
    let num = coeff.numer().abs();
    let den = coeff.denom().clone();
    let fs = factors(sig, center, style);
    match style {
        Style::Plain => {
            if fs.is_empty() {
                return if den.is_one() {
                    num.to_string()
                } else {
                    format!("{num}/{den}")
                };
            }
            let mut s = String::new();
            if !num.is_one() {
                s.push_str(&format!("{num}*"));
            }
            s.push_str(&fs.join("*"));
            if !den.is_one() {
                s.push_str(&format!("/{den}"));
            }
            s
        }
        Style::Latex => {
            let body = fs.join(" ");
            if den.is_one() {
                if fs.is_empty() {
                    num.to_string()
                } else if num.is_one() {
                    body
                } else {
                    format!("{num} {body}")
                }
            } else if fs.is_empty() {
                format!("\\frac{{{num}}}{{{den}}}")
            } else {
                format!("\\frac{{{num}}}{{{den}}} {body}")
            }
        }
    }
}

impl Expr {
    /// Terms in descending canonical order: highest power first, constant last.
    pub fn format(&self, style: Style) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (sig, c)) in self.terms.iter().rev().enumerate() {
            let body = term_body(c, sig, &self.center, style);
            match (i, c.is_negative()) {
                (0, true) => s.push_str(&format!("-{body}")),
                (0, false) => s.push_str(&body),
                (_, true) => s.push_str(&format!(" - {body}")),
                (_, false) => s.push_str(&format!(" + {body}")),
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, parse_at};
    use crate::numbers::rat;

    #[test]
    fn plain_rendering() {
        assert_eq!(parse("-x^6/180").unwrap().to_string(), "-x^6/180");
        assert_eq!(parse("-1 - x^3/6").unwrap().to_string(), "-x^3/6 - 1");
        assert_eq!(
            parse("(x-2)*sqrt(x)").unwrap().to_string(),
            "x^(3/2) - 2*x^(1/2)"
        );
        assert_eq!(
            parse("-23*x^13/51891840").unwrap().to_string(),
            "-23*x^13/51891840"
        );
        assert_eq!(
            parse("exp(-x)*(5+x)").unwrap().to_string(),
            "x*exp(-x) + 5*exp(-x)"
        );
        assert_eq!(
            parse_at("1/(x+1)^2", &rat(-1)).unwrap().to_string(),
            "(x+1)^(-2)"
        );
        assert_eq!(
            parse_at("ln(x+1)^2/2", &rat(-1)).unwrap().to_string(),
            "ln(x+1)^2/2"
        );
    }

    #[test]
    fn latex_rendering() {
        let e = parse("-x^6/180 + 3*exp(2*x) + x^(5/2)*ln(x)").unwrap();
        assert_eq!(
            e.format(Style::Latex),
            "3 e^{2x} + x^{5/2} \\ln(x) - \\frac{1}{180} x^{6}"
        );
    }

    #[test]
    fn round_trip_samples() {
        for (s, c) in [
            ("x^25/161000868188160000 + x^7/504 + x", 0),
            ("sin(1/2*x)*x^3 - 7*cos(2*x)/3", 0),
            ("ln(x+1)^3/6 + (x+1)^(5/2) - exp(-3*(x+1))", -1),
            ("exp(x-2)*(x-2)^2 + 3", 2),
        ] {
            let e = parse_at(s, &rat(c)).unwrap();
            assert_eq!(parse_at(&e.to_string(), &rat(c)).unwrap(), e, "{s}");
        }
    }
}
