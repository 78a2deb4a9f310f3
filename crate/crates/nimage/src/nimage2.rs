//! Second-order engine for `y″ = a·y` and its general form `y″ = a₁y′ + a₂y`.
//!
//! The n-image of the equation is `y^{(n+2)} = α(n)·y′ + β(n)·y`. Splitting
//! `α(p) = Σ_k ξ_k(p)` and evaluating at `p = −1, −2` through iterated
//! antiderivatives yields the two partial solutions
//! `y₁ = −1 + Σ ξ_k(−1)` and `y₂ = Σ ξ_k(−2) − x·Σ ξ_k(−1) + x`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::expr::{Expr, Rational};
use crate::numbers::{binom, ratio};

/// `y″ = a1·y′ + a2·y`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralOde2 {
    pub a1: Expr,
    pub a2: Expr,
}

/// `y″ = a·y`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedOde2 {
    pub a: Expr,
}

/// The factor `w = e^{(1/2)∫a1}` with `y = w·z`.
#[derive(Debug, Clone, PartialEq)]
pub enum Multiplier {
    /// `w` itself lies in the kernel (constant `a1`).
    Kernel(Expr),
    /// `w = exp(E)` with `E = (1/2)∫a1` outside the kernel's exponential family.
    ExpOfIntegral(Expr),
}

impl Multiplier {
    pub fn describe(&self) -> String {
        match self {
            Multiplier::Kernel(e) => e.to_string(),
            Multiplier::ExpOfIntegral(e) => format!("exp({e})"),
        }
    }
}

/// Removes the first-derivative term: `z″ = (a2 + a1²/4 − a1′/2)·z`, `y = w·z`.
pub fn reduce_to_normal(ode: &GeneralOde2) -> Result<(ReducedOde2, Multiplier)> {
    let a1 = &ode.a1;
    let a = ode
        .a2
        .try_add(&a1.mul(a1)?.scale(&ratio(1, 4)))?
        .try_sub(&a1.derivative().scale(&ratio(1, 2)))?;
    let half_int = a1.antiderivative()?.scale(&ratio(1, 2));
    let mult = match a1.as_constant() {
        Some(c) if c.is_zero() => Multiplier::Kernel(Expr::int(1)),
        Some(c) => {
            let text = format!(
                "exp({}*(x-({})))",
                c / Rational::from_integer(BigInt::from(2)),
                a1.center()
            );
            Multiplier::Kernel(crate::expr::parse_at(&text, a1.center())?)
        }
        None => Multiplier::ExpOfIntegral(half_int),
    };
    Ok((ReducedOde2 { a }, mult))
}

/// Formal adjoint: `b1 = −a1`, `b2 = a2 − a1′`.
pub fn adjoint2(ode: &GeneralOde2) -> GeneralOde2 {
    GeneralOde2 {
        a1: ode.a1.neg(),
        a2: &ode.a2 - &ode.a1.derivative(),
    }
}

/// `y^{(n+2)} = alpha·y′ + beta·y`.
#[derive(Debug, Clone, PartialEq)]
pub struct NImageCoeffs {
    pub n: u32,
    pub alpha: Expr,
    pub beta: Expr,
}

/// Iterates `α(n+1) = α′ + α·a1 + β`, `β(n+1) = α·a2 + β′` from `(a1, a2)`.
pub fn nimage_forward(ode: &GeneralOde2, n: u32) -> Result<NImageCoeffs> {
    let (mut alpha, mut beta) = (ode.a1.clone(), ode.a2.clone());
    for _ in 0..n {
        let na = alpha
            .derivative()
            .try_add(&alpha.mul(&ode.a1)?)?
            .try_add(&beta)?;
        let nb = alpha.mul(&ode.a2)?.try_add(&beta.derivative())?;
        alpha = na;
        beta = nb;
    }
    Ok(NImageCoeffs { n, alpha, beta })
}

/// n-image coefficients recovered from two independent solutions.
///
/// # Errors
/// `NonInvertibleWronskian` unless `y1·y2′ − y2·y1′` is a single invertible term.
pub fn coeffs_from_solutions(y1: &Expr, y2: &Expr, n: u32) -> Result<NImageCoeffs> {
    let w = y1
        .mul(&y2.derivative())?
        .try_sub(&y2.mul(&y1.derivative())?)?;
    let winv = w
        .inverse()
        .map_err(|_| Error::NonInvertibleWronskian(w.to_string()))?;
    let (h1, h2) = (y1.differentiate(n + 2), y2.differentiate(n + 2));
    let alpha = h2.mul(y1)?.try_sub(&y2.mul(&h1)?)?.mul(&winv)?;
    let beta = y2
        .derivative()
        .mul(&h1)?
        .try_sub(&y1.derivative().mul(&h2)?)?
        .mul(&winv)?;
    Ok(NImageCoeffs { n, alpha, beta })
}

/// `G(a, k, f)`: `k`-fold composition of `f ↦ a·[f]₂`.
pub fn g_op(a: &Expr, k: u32, f: &Expr) -> Result<Expr> {
    let mut g = f.clone();
    for _ in 0..k {
        g = a.mul(&g.integrate(2)?)?;
    }
    Ok(g)
}

/// `P(a, k) = Σ_{i<k} G(a, k−i, [G(a, i, a)]₁)`.
pub fn p_op(a: &Expr, k: u32) -> Result<Expr> {
    let mut acc = Expr::zero();
    for i in 0..k {
        let gi = g_op(a, i, a)?;
        acc = acc.try_add(&g_op(a, k - i, &gi.integrate(1)?)?)?;
    }
    Ok(acc)
}

/// Memoized `G_k`, `P_k` and the antiderivatives the recurrences consume.
#[derive(Debug, Clone)]
struct GpRow {
    g: Expr,
    p: Expr,
    g1: Expr,
    g2: Expr,
    g3: Expr,
    p1: Expr,
    p2: Expr,
}

/// Table of `ξ_k(−1)`, `ξ_k(−2)` for one coefficient `a`, filled in order of `k`.
#[derive(Debug, Clone)]
pub struct XiTable2 {
    a: Expr,
    rows: Vec<GpRow>,
    entries: Vec<(Expr, Expr)>,
}

impl XiTable2 {
    pub fn new(a: Expr) -> XiTable2 {
        XiTable2 {
            a,
            rows: Vec::new(),
            entries: Vec::new(),
        }
    }

    pub fn a(&self) -> &Expr {
        &self.a
    }

    /// Number of completed `ξ` rows.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn ensure_gp(&mut self, k: usize) -> Result<()> {
        while self.rows.len() <= k {
            let (g, p) = match self.rows.last() {
                None => (self.a.clone(), Expr::zero()),
                // P_k = a·[P_{k−1} + [G_{k−1}]₁]₂, the same sum regrouped
                Some(prev) => (
                    self.a.mul(&prev.g2)?,
                    self.a.mul(&prev.p.try_add(&prev.g1)?.integrate(2)?)?,
                ),
            };
            let g1 = g.antiderivative()?;
            let g2 = g1.antiderivative()?;
            let g3 = g2.antiderivative()?;
            let p1 = p.antiderivative()?;
            let p2 = p1.antiderivative()?;
            self.rows.push(GpRow {
                g,
                p,
                g1,
                g2,
                g3,
                p1,
                p2,
            });
        }
        Ok(())
    }

    /// `G_k = G(a, k, a)`.
    pub fn g(&mut self, k: usize) -> Result<Expr> {
        self.ensure_gp(k)?;
        Ok(self.rows[k].g.clone())
    }

    /// `P_k = P(a, k)`.
    pub fn p(&mut self, k: usize) -> Result<Expr> {
        self.ensure_gp(k)?;
        Ok(self.rows[k].p.clone())
    }

    /// `(ξ_k(−1), ξ_k(−2))`, computing any missing earlier rows first.
    pub fn xi_neg(&mut self, k: usize) -> Result<(Expr, Expr)> {
        while self.entries.len() <= k {
            let j = self.entries.len();
            self.ensure_gp(j)?;
            let r = &self.rows[j];
            let two = Rational::from_integer(BigInt::from(2));
            let mut m1 = r.g2.neg().try_sub(&r.p1.scale(&two))?;
            let mut m2 = r.g3.try_add(&r.p2)?.scale(&-&two);
            for s in 0..j {
                let (e1, e2) = &self.entries[j - s - 1];
                let rs = &self.rows[s];
                m1 = m1.try_add(&e1.mul(&rs.g2.try_add(&rs.p1.scale(&two))?)?)?;
                m1 = m1.try_sub(&e2.mul(&rs.g1)?)?;
                m2 = m2.try_add(&e1.mul(&rs.g3.try_add(&rs.p2)?)?.scale(&two))?;
                m2 = m2.try_sub(&e2.mul(&rs.g2)?)?;
            }
            self.entries.push((m1, m2));
        }
        Ok(self.entries[k].clone())
    }

    /// `ξ_k(p)` at any integer `p`:
    /// `dn(p, p·[G_k]₁ − 2P_k) − Σ_s ξ_{k−s−1}(−2)·dn(p, G_s) − Σ_s ξ_{k−s−1}(−1)·dn(p, p·[G_s]₁ − 2P_s)`.
    pub fn xi_general(&mut self, k: usize, p: i64) -> Result<Expr> {
        if k > 0 {
            self.xi_neg(k - 1)?;
        }
        self.ensure_gp(k)?;
        let kernel =
            |row: &GpRow| -> Result<Expr> { row.g1.scale_int(p).try_sub(&row.p.scale_int(2)) };
        let mut acc = kernel(&self.rows[k])?.dn(p)?;
        for s in 0..k {
            let (e1, e2) = &self.entries[k - s - 1];
            let rs = &self.rows[s];
            acc = acc.try_sub(&e2.mul(&rs.g.dn(p)?)?)?;
            acc = acc.try_sub(&e1.mul(&kernel(rs)?.dn(p)?)?)?;
        }
        Ok(acc)
    }
}

/// Independent oracle at positive arguments:
/// `ξ_k(p₂) = Σ_{i=0}^{p₂−2k} ξ_{k−1}(i+2k−2)·C(p₂, i+2k)·D^{p₂−2k−i}a`, with
/// `ξ_0(p) = p·D^{p−1}a` and `ξ_k(p₂) = 0` for `p₂ < 2k`.
pub fn xi_bruteforce(a: &Expr, k: u32, p2: u32) -> Result<Expr> {
    fn go(a: &Expr, k: u32, p2: u32, memo: &mut HashMap<(u32, u32), Expr>) -> Result<Expr> {
        if let Some(e) = memo.get(&(k, p2)) {
            return Ok(e.clone());
        }
        let v = if k == 0 {
            if p2 == 0 {
                Expr::zero()
            } else {
                a.differentiate(p2 - 1).scale_int(p2 as i64)
            }
        } else if p2 < 2 * k {
            Expr::zero()
        } else {
            let mut acc = Expr::zero();
            for i in 0..=(p2 - 2 * k) {
                let prev = go(a, k - 1, i + 2 * k - 2, memo)?;
                if prev.is_zero() {
                    continue;
                }
                let c = Rational::from_integer(binom(p2 as u64, (i + 2 * k) as u64));
                acc = acc.try_add(&prev.mul(&a.differentiate(p2 - 2 * k - i))?.scale(&c))?;
            }
            acc
        };
        memo.insert((k, p2), v.clone());
        Ok(v)
    }
    go(a, k, p2, &mut HashMap::new())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// `ξ_p(2p) = 0`.
    Top,
    /// `ξ_p(2p+1) = a^{p+1}`.
    TopOdd,
    /// `ξ_{p−1}(2p) = a^{p−1}·p(p+1)·a′`.
    Sub1,
    /// `ξ_{p−2}(2p)`, the three-term expression in `a′`, `a″`, `a‴`.
    Sub2,
}

/// Closed forms of the differential representation.
pub fn xi_closed_diff(a: &Expr, p: u32, which: ClosedForm) -> Result<Expr> {
    let pi = p as i64;
    let apow = |n: i64| a.pow_int(n);
    match which {
        ClosedForm::Top => Ok(Expr::zero()),
        ClosedForm::TopOdd => apow(pi + 1),
        ClosedForm::Sub1 => {
            if p < 1 {
                return Err(Error::invalid("Sub1 needs p >= 1"));
            }
            Ok(apow(pi - 1)?.mul(&a.derivative())?.scale_int(pi * (pi + 1)))
        }
        ClosedForm::Sub2 => {
            if p < 2 {
                return Err(Error::invalid("Sub2 needs p >= 2"));
            }
            let (d1, d2, d3) = (a.derivative(), a.differentiate(2), a.differentiate(3));
            let base = Rational::from_integer(BigInt::from(pi * pi * (pi - 1) * (pi + 1)));
            let mut acc = apow(pi - 2)?
                .mul(&d3)?
                .scale(&(&base / Rational::from_integer(3.into())));
            if p >= 3 {
                let c = &base * Rational::from_integer(BigInt::from(2 * (pi - 2)))
                    / Rational::from_integer(3.into());
                acc = acc.try_add(&apow(pi - 3)?.mul(&d1)?.mul(&d2)?.scale(&c))?;
            }
            if p >= 4 {
                let c = &base * Rational::from_integer(BigInt::from((pi - 2) * (pi - 3)))
                    / Rational::from_integer(6.into());
                acc = acc.try_add(&apow(pi - 4)?.mul(&d1.pow_int(3)?)?.scale(&c))?;
            }
            Ok(acc)
        }
    }
}

/// Partial solutions of `y″ = a·y` truncated after `ξ_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution2 {
    pub a: Expr,
    pub n: u32,
    pub y1: Expr,
    pub y2: Expr,
}

pub fn assemble2(a: &Expr, n: u32) -> Result<Solution2> {
    let mut table = XiTable2::new(a.clone());
    assemble_from(&mut table, n)
}

/// As [`assemble2`], reusing (and extending) an existing table.
pub fn assemble_from(table: &mut XiTable2, n: u32) -> Result<Solution2> {
    table.xi_neg(n as usize)?;
    let (s1, s2) = table.entries[..=n as usize]
        .iter()
        .fold((Expr::zero(), Expr::zero()), |(a, b), (e1, e2)| {
            (a + e1, b + e2)
        });
    let x = Expr::x(table.a.center().clone());
    let y1 = s1.try_sub(&Expr::int(1))?;
    let y2 = s2.try_sub(&x.mul(&s1)?)?.try_add(&x)?;
    Ok(Solution2 {
        a: table.a.clone(),
        n,
        y1,
        y2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn reduction() {
        let (r, m) = reduce_to_normal(&GeneralOde2 {
            a1: p("1"),
            a2: p("x*exp(x)"),
        })
        .unwrap();
        assert_eq!(r.a, p("1/4 + x*exp(x)"));
        assert_eq!(m, Multiplier::Kernel(p("exp(1/2*x)")));
        let (r, m) = reduce_to_normal(&GeneralOde2 {
            a1: Expr::zero(),
            a2: p("x^3"),
        })
        .unwrap();
        assert_eq!((r.a, m), (p("x^3"), Multiplier::Kernel(Expr::int(1))));
        let (r, m) = reduce_to_normal(&GeneralOde2 {
            a1: p("x"),
            a2: p("x^2"),
        })
        .unwrap();
        assert_eq!(r.a, p("5*x^2/4 - 1/2"));
        assert_eq!(m, Multiplier::ExpOfIntegral(p("x^2/4")));
    }

    #[test]
    fn adjoint() {
        let ode = GeneralOde2 {
            a1: p("x"),
            a2: p("sqrt(x)"),
        };
        let b = adjoint2(&ode);
        assert_eq!((b.a1.clone(), b.a2.clone()), (p("-x"), p("-1 + sqrt(x)")));
        assert_eq!(adjoint2(&b), ode);
        let r = GeneralOde2 {
            a1: Expr::zero(),
            a2: p("exp(x)"),
        };
        assert_eq!(adjoint2(&r), r);
    }

    #[test]
    fn forward_images() {
        let ode = GeneralOde2 {
            a1: p("x^2"),
            a2: p("x + 1"),
        };
        let (a1, a2) = (&ode.a1, &ode.a2);
        let one = nimage_forward(&ode, 1).unwrap();
        assert_eq!(
            one.alpha,
            a1.derivative() + a1.mul(a1).unwrap() + a2.clone()
        );
        assert_eq!(one.beta, a1.mul(a2).unwrap() + a2.derivative());
        let two = nimage_forward(&ode, 2).unwrap();
        let want = a1.differentiate(2)
            + a1.mul(&a1.derivative()).unwrap().scale_int(3)
            + a2.derivative().scale_int(2)
            + a1.pow_int(3).unwrap()
            + a1.mul(a2).unwrap().scale_int(2);
        assert_eq!(two.alpha, want);
        let unit = GeneralOde2 {
            a1: Expr::zero(),
            a2: Expr::int(1),
        };
        for n in 0..6 {
            let c = nimage_forward(&unit, n).unwrap();
            assert_eq!(c.alpha, Expr::int((n % 2) as i64));
            assert_eq!(c.beta, Expr::int(((n + 1) % 2) as i64));
        }
    }

    #[test]
    fn from_solutions() {
        let c = coeffs_from_solutions(&p("exp(x)"), &p("exp(-x)"), 2).unwrap();
        assert_eq!((c.alpha, c.beta), (Expr::zero(), Expr::int(1)));
        let c = coeffs_from_solutions(&p("exp(x)"), &p("exp(-x)"), 3).unwrap();
        assert_eq!((c.alpha, c.beta), (Expr::int(1), Expr::zero()));
        let c = coeffs_from_solutions(&p("exp(2*x)"), &p("exp(-2*x)"), 0).unwrap();
        assert_eq!((c.alpha, c.beta), (Expr::zero(), Expr::int(4)));
        assert!(matches!(
            coeffs_from_solutions(&p("x^2 + 1"), &p("x^3"), 0),
            Err(Error::NonInvertibleWronskian(_))
        ));
    }

    #[test]
    fn g_and_p() {
        assert_eq!(g_op(&p("x"), 1, &p("x")).unwrap(), p("x^4/6"));
        assert_eq!(p_op(&p("x"), 1).unwrap(), p("x^5/24"));
        assert_eq!(g_op(&p("exp(x)"), 1, &p("exp(x)")).unwrap(), p("exp(2*x)"));
        let mut t = XiTable2::new(p("x^2 + 1"));
        for k in 0..4 {
            assert_eq!(t.p(k).unwrap(), p_op(&p("x^2 + 1"), k as u32).unwrap());
            assert_eq!(
                t.g(k).unwrap(),
                g_op(&p("x^2 + 1"), k as u32, &p("x^2 + 1")).unwrap()
            );
        }
    }

    #[test]
    fn first_rows() {
        let mut t = XiTable2::new(p("x"));
        assert_eq!(t.xi_neg(1).unwrap(), (p("-x^6/180"), p("-x^7/280")));
        let mut t = XiTable2::new(p("exp(x)"));
        assert_eq!(
            t.xi_neg(2).unwrap(),
            (p("-exp(3*x)/36"), p("-11*exp(3*x)/108"))
        );
        let mut t = XiTable2::new(p("sin(x)"));
        assert_eq!(t.xi_neg(0).unwrap(), (p("sin(x)"), p("-2*cos(x)")));
    }

    #[test]
    fn general_argument() {
        let mut t = XiTable2::new(p("x"));
        assert_eq!(t.xi_general(0, -1).unwrap(), p("-x^3/6"));
        assert_eq!(t.xi_general(1, 2).unwrap(), Expr::zero());
        assert_eq!(t.xi_general(1, 4).unwrap(), p("6*x"));
        for k in 0..3 {
            let (m1, m2) = t.xi_neg(k).unwrap();
            assert_eq!(t.xi_general(k, -1).unwrap(), m1);
            assert_eq!(t.xi_general(k, -2).unwrap(), m2);
        }
    }

    #[test]
    fn bruteforce_and_closed_forms() {
        assert_eq!(xi_bruteforce(&p("x"), 1, 4).unwrap(), p("6*x"));
        assert!(xi_bruteforce(&p("x^2+1"), 3, 6).unwrap().is_zero());
        let mut t = XiTable2::new(p("x^2 + 1"));
        assert_eq!(
            xi_bruteforce(&p("x^2 + 1"), 1, 6).unwrap(),
            t.xi_general(1, 6).unwrap()
        );
        assert_eq!(
            xi_closed_diff(&p("x"), 2, ClosedForm::Sub1).unwrap(),
            p("6*x")
        );
        assert_eq!(
            xi_closed_diff(&p("x"), 1, ClosedForm::TopOdd).unwrap(),
            p("x^2")
        );
        assert!(xi_closed_diff(&p("x"), 3, ClosedForm::Top)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn trivial_assembly() {
        let s = assemble2(&Expr::zero(), 4).unwrap();
        assert_eq!((s.y1, s.y2), (Expr::int(-1), p("x")));
    }
}
