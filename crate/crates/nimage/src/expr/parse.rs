//! Expression grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | power
//! power  := base ('^' exponent)?
//! exponent := ['-'] integer | '(' constant expr ')'
//! base   := integer | 'x' | '(' expr ')' | fn '(' expr ')' | 'e' '^' exponent-like
//! fn     := 'ln' | 'exp' | 'sin' | 'cos' | 'sqrt'
//! ```
//!
//! Division is only by a single invertible term. `ln` takes exactly `x − c₀`;
//! `exp`, `sin`, `cos` take `k·(x − c₀)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{from_big, Expr, Rational, Sig, Trig, Q};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|p| p.1).collect();
            out.push((pos, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|p| p.1).collect();
            out.push((pos, Tok::Ident(s)));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Syntax {
                pos,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    len: usize,
    center: &'a Rational,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|t| t.0).unwrap_or(self.len)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?)?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if d.is_zero() {
                    return self.err("division by zero");
                }
                acc = acc.div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.eat('^') {
            let p = self.exponent()?;
            return base.pow_rational(&p);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<Rational> {
        let neg = self.eat('-');
        let v = match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Rational::from_integer(n)
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let e = self.expr()?;
                self.expect(')')?;
                match e.as_constant() {
                    Some(c) => c,
                    None => return self.err("exponent must be a rational constant"),
                }
            }
            _ => return self.err("expected exponent"),
        };
        Ok(if neg { -v } else { v })
    }

    fn paren_arg(&mut self) -> Result<Expr> {
        self.expect('(')?;
        let e = self.expr()?;
        self.expect(')')?;
        Ok(e)
    }

    fn base(&mut self) -> Result<Expr> {
        let start = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(Expr::constant(Rational::from_integer(n)))
            }
            Some(Tok::Sym('(')) => self.paren_arg(),
            Some(Tok::Ident(name)) => {
                self.i += 1;
                match name.as_str() {
                    "x" => Ok(Expr::x(self.center.clone())),
                    "ln" | "log" => {
                        let a = self.paren_arg()?;
                        if a != Expr::u(self.center.clone()) {
                            return Err(Error::unsupported(format!(
                                "ln argument must be the shift x - center, got {a}"
                            )));
                        }
                        let mut e = Expr::empty_at(self.center);
                        e.push(
                            Sig {
                                log_q: 1,
                                ..Sig::ONE
                            },
                            Rational::one(),
                        );
                        Ok(e)
                    }
                    "exp" => {
                        let a = self.paren_arg()?;
                        self.exp_of(&a)
                    }
                    "e" => {
                        self.expect('^')?;
                        let a = if self.peek() == Some(&Tok::Sym('(')) {
                            self.paren_arg()?
                        } else {
                            self.unary()?
                        };
                        self.exp_of(&a)
                    }
                    "sin" | "cos" => {
                        let a = self.paren_arg()?;
                        let m = self.linear_coeff(&a)?;
                        let mut e = Expr::empty_at(self.center);
                        if m.is_zero() {
                            if name == "cos" {
                                e.push(Sig::ONE, Rational::one());
                            }
                            return Ok(e);
                        }
                        let (trig, sign) = match (name.as_str(), m > Q::zero()) {
                            ("sin", true) => (Trig::Sin(m), 1),
                            ("sin", false) => (Trig::Sin(-m), -1),
                            (_, _) => (Trig::Cos(m.abs()), 1),
                        };
                        e.push(
                            Sig { trig, ..Sig::ONE },
                            Rational::from_integer(BigInt::from(sign)),
                        );
                        Ok(e)
                    }
                    "sqrt" => {
                        let a = self.paren_arg()?;
                        a.pow_rational(&Rational::new(BigInt::one(), BigInt::from(2)))
                    }
                    _ => Err(Error::Syntax {
                        pos: start,
                        msg: format!("unknown identifier '{name}'"),
                    }),
                }
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }

    /// `k` such that `a = k·(x − c₀)`.
    fn linear_coeff(&self, a: &Expr) -> Result<Q> {
        if a.is_zero() {
            return Ok(Q::zero());
        }
        let k = a.coeff_of(&Sig::pow(Q::one()));
        let lin = Expr::u(self.center.clone()).scale(&k);
        if *a != lin {
            return Err(Error::unsupported(format!(
                "argument must be a multiple of the shift x - center, got {a}"
            )));
        }
        from_big(&k)
    }

    fn exp_of(&self, a: &Expr) -> Result<Expr> {
        let k = self.linear_coeff(a)?;
        let mut e = Expr::empty_at(self.center);
        e.push(
            Sig {
                exp_k: k,
                ..Sig::ONE
            },
            Rational::one(),
        );
        Ok(e)
    }
}

/// Parses with center `0`.
pub fn parse(text: &str) -> Result<Expr> {
    parse_at(text, &Rational::zero())
}

/// Parses with expansion center `c₀`; `x` denotes `(x − c₀) + c₀`.
pub fn parse_at(text: &str, center: &Rational) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        i: 0,
        len: text.len(),
        center,
    };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return p.err("trailing input");
    }
    // constants keep the requested center so results print consistently
    Ok(if e.is_constant() {
        Expr {
            center: center.clone(),
            ..e
        }
    } else {
        e
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{rat, ratio};

    #[test]
    fn paper_coefficients() {
        let e = parse("x^3 - 1").unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(
            parse("(x-2)*sqrt(x)").unwrap(),
            parse("x^(3/2) - 2*x^(1/2)").unwrap()
        );
        let f = parse_at("1/(x+1)^2", &rat(-1)).unwrap();
        assert_eq!(f, Expr::monomial(rat(-1), rat(1), Q::from_integer(-2)));
        assert_eq!(parse("sqrt(x^3)").unwrap(), parse("x^(3/2)").unwrap());
        assert_eq!(parse("e^(4*x)").unwrap(), parse("exp(4*x)").unwrap());
    }

    #[test]
    fn shifted_center() {
        let e = parse_at("x", &rat(-1)).unwrap();
        assert_eq!(e.to_string(), "(x+1) - 1");
        assert!(parse_at("ln(x)", &rat(-1)).is_err());
        assert!(parse_at("exp(2*x+2)", &rat(-1)).is_ok());
        assert!(parse("exp(x+1)").is_err());
        assert_eq!(
            parse_at("x^2", &ratio(1, 2)).unwrap().to_string(),
            "(x-1/2)^2 + (x-1/2) + 1/4"
        );
    }

    #[test]
    fn syntax_errors_report_position() {
        match parse("x + * 2") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("x $ 1"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("foo(x)"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse("1/(x+1)"),
            Err(Error::UnsupportedCombination(_))
        ));
        assert!(matches!(
            parse("ln(x)*exp(x)"),
            Err(Error::UnsupportedCombination(_))
        ));
    }

    #[test]
    fn negative_trig_arguments() {
        assert_eq!(parse("sin(-2*x)").unwrap(), parse("-sin(2*x)").unwrap());
        assert_eq!(parse("cos(-x)").unwrap(), parse("cos(x)").unwrap());
        assert_eq!(parse("cos(0*x)").unwrap(), Expr::int(1));
    }
}
