//! Residual reports and independent coefficient oracles.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::expr::{parse_at, Expr, HpFloat, Rational};
use crate::morder::{adjoint_m, OdeM, XiMatrix};
use crate::nimage2::{ReducedOde2, XiTable2};
use crate::numbers::{factorial, harmonic, parse_rational, rat};

/// One grid point. `delta` is `None` where `a_m·Y` vanishes or `x` lies
/// outside the domain of the expressions; `note` says which.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub x: Rational,
    pub delta: Option<f64>,
    pub note: Option<String>,
}

impl Sample {
    pub fn x_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.x).unwrap_or(f64::NAN)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub problem: String,
    pub samples: Vec<Sample>,
    /// Largest defined `delta`; `None` when every sample is undefined.
    pub max_delta: Option<f64>,
    pub truncation: Option<u32>,
}

impl From<&ReducedOde2> for OdeM {
    fn from(r: &ReducedOde2) -> OdeM {
        OdeM {
            a: vec![Expr::zero(), r.a.clone()],
        }
    }
}

/// `lo + i·(hi − lo)/(count − 1)`, `i = 0..count`.
pub fn uniform_grid(lo: &Rational, hi: &Rational, count: usize) -> Result<Vec<Rational>> {
    if count < 2 || lo >= hi {
        return Err(Error::invalid("grid needs lo < hi and at least 2 points"));
    }
    let step = (hi - lo) / rat(count as i64 - 1);
    Ok((0..count).map(|i| lo + &step * rat(i as i64)).collect())
}

/// `"lo:hi:count"`.
pub fn parse_grid(spec: &str) -> Result<Vec<Rational>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::invalid(format!("grid must be lo:hi:count, got '{spec}'"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo = parse_rational(parts[0]).ok_or_else(bad)?;
    let hi = parse_rational(parts[1]).ok_or_else(bad)?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    uniform_grid(&lo, &hi, count)
}

/// `δ(x) = |(Y^{(m)} − Σ a_p Y^{(m−p)}) / (a_m·Y)|`: exact residual, then
/// evaluation with `digits` decimal digits.
pub fn residual_report(
    ode: &OdeM,
    y: &Expr,
    grid: &[Rational],
    digits: u32,
    truncation: Option<u32>,
) -> Result<ResidualReport> {
    let r = crate::morder::residual_expr(ode, y)?;
    let den = ode.a.last().expect("order >= 2").mul(y)?;
    let mut grid = grid.to_vec();
    grid.sort();
    let mut samples = Vec::with_capacity(grid.len());
    for x in grid {
        let s = match (r.eval_hp(&x, digits), den.eval_hp(&x, digits)) {
            (Ok(num), Ok(d)) => {
                if d.is_zero() {
                    Sample {
                        x,
                        delta: None,
                        note: Some("a_m*Y vanishes".into()),
                    }
                } else {
                    let v = num.div(&d).abs();
                    Sample {
                        x,
                        delta: Some(v.to_f64()),
                        note: None,
                    }
                }
            }
            (Err(e), _) | (_, Err(e)) => Sample {
                x,
                delta: None,
                note: Some(e.to_string()),
            },
        };
        samples.push(s);
    }
    let max_delta = samples
        .iter()
        .filter_map(|s| s.delta)
        .fold(None, |m: Option<f64>, d| Some(m.map_or(d, |m| m.max(d))));
    let problem = describe(ode);
    Ok(ResidualReport {
        problem,
        samples,
        max_delta,
        truncation,
    })
}

/// `δ` at one point, high precision.
pub fn delta_at(ode: &OdeM, y: &Expr, x: &Rational, digits: u32) -> Result<HpFloat> {
    let r = crate::morder::residual_expr(ode, y)?;
    let den = ode.a.last().expect("order >= 2").mul(y)?;
    let d = den.eval_hp(x, digits)?;
    if d.is_zero() {
        return Err(Error::Domain(format!("a_m*Y vanishes at x = {x}")));
    }
    Ok(r.eval_hp(x, digits)?.div(&d).abs())
}

fn describe(ode: &OdeM) -> String {
    let m = ode.order();
    let rhs: Vec<String> = ode
        .a
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(p, a)| format!("({a})*y^({})", m - p - 1))
        .collect();
    format!(
        "y^({m}) = {}",
        if rhs.is_empty() {
            "0".into()
        } else {
            rhs.join(" + ")
        }
    )
}

/// `B(k+1) = (9(k+1)² − 3(k+1))·B(k)`, `H(k+1) = (9(k+1)² + 3(k+1))·H(k)`, from 1.
pub fn airy_oracle(k: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut b = vec![BigInt::one()];
    let mut h = vec![BigInt::one()];
    for j in 1..=k as i64 {
        let nb = b.last().unwrap() * BigInt::from(9 * j * j - 3 * j);
        let nh = h.last().unwrap() * BigInt::from(9 * j * j + 3 * j);
        b.push(nb);
        h.push(nh);
    }
    (b, h)
}

/// `B(k) = (k!)²` and `F(k) = 2H_k/(k!)²`.
pub fn exp_oracle(k: usize) -> (Vec<BigInt>, Vec<Rational>) {
    let b: Vec<BigInt> = (0..=k as u64).map(|j| factorial(j).pow(2)).collect();
    let f = b
        .iter()
        .enumerate()
        .map(|(j, bj)| harmonic(j as u64) * rat(2) / Rational::from_integer(bj.clone()))
        .collect();
    (b, f)
}

/// `Σ_{i≤N} b_i ln(x+1)^i` with `i(i−1)b_i = (i−1)b_{i−1} + b_{i−2}`, `b₀ = 871`, `b₁ = 481`.
pub fn euler_coeffs(n: usize) -> Vec<Rational> {
    let mut b = vec![rat(871), rat(481)];
    for i in 2..=n.max(1) as i64 {
        let v = (rat(i - 1) * &b[i as usize - 1] + &b[i as usize - 2]) / rat(i * (i - 1));
        b.push(v);
    }
    b.truncate(n + 1);
    b
}

pub fn euler_series(n: usize) -> Result<Expr> {
    let c = rat(-1);
    let l = parse_at("ln(x+1)", &c)?;
    let mut acc = Expr::zero();
    let mut pow = Expr::int(1);
    for bi in euler_coeffs(n) {
        acc = acc.try_add(&pow.scale(&bi))?;
        pow = pow.mul(&l)?;
    }
    Ok(acc)
}

/// `y″ = y/(x+1)²`.
pub fn euler_ode() -> Result<OdeM> {
    OdeM::new(vec![Expr::zero(), parse_at("(x+1)^(-2)", &rat(-1))?])
}

/// m-order pipeline at `m = 2` against the second-order tables, rows `0..=n`.
pub fn crosscheck_m2(a: &Expr, n: usize) -> Result<bool> {
    let ode = OdeM::new(vec![Expr::zero(), a.clone()])?;
    let mut mx = XiMatrix::new(&adjoint_m(&ode));
    let mut t = XiTable2::new(a.clone());
    for s in 0..=n {
        let (e1, e2) = t.xi_neg(s)?;
        let row = mx.row(s)?;
        if row[0] != e1 || row[1] != e2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether a report's defined deltas all lie at or below `tol`.
pub fn within(report: &ResidualReport, tol: f64) -> bool {
    report
        .samples
        .iter()
        .all(|s| s.delta.is_none_or(|d| d <= tol))
        && report.max_delta.is_some()
}

/// One named identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            ok,
            detail: detail.into(),
        }
    }
}

const SUITE_POLYS: [(&str, &str); 4] = [
    ("x^5 - 3*x^2 + 1", "2*x^4 + x"),
    ("x^3 + 7", "x^5 - x^4 + 2*x^3"),
    ("4*x^5", "x^2 - 5*x + 6"),
    ("x^4 - x", "3*x^5 + x^3 - 2"),
];

/// Direct weighted sums against closed forms for `n ≤ 6`, `k ≤ 4`,
/// `z ∈ −2..2`, polynomial `u`, `v` of degree ≤ 5; the falling-factorial
/// expansion over `i ∈ [−5, k+5]`; the nested identity for small orders.
pub fn suite_leibniz() -> Result<Vec<Check>> {
    use crate::leibniz::{
        l_binom_closed, l_power_closed, leibniz_sum, nested_identity, vieta_coeffs, WeightSpec,
    };
    let mut out = Vec::new();
    let (mut ok_pow, mut ok_bin, mut bad) = (true, true, String::new());
    for (su, sv) in SUITE_POLYS {
        let (u, v) = (crate::expr::parse(su)?, crate::expr::parse(sv)?);
        for n in 0..=6 {
            for k in 0..=4 {
                if leibniz_sum(WeightSpec::Power(k), &u, &v, n)? != l_power_closed(k, &u, &v, n)? {
                    ok_pow = false;
                    bad = format!("i^{k}, n={n}, u={su}");
                }
                for z in -2..=2 {
                    if leibniz_sum(WeightSpec::Binom { z, k }, &u, &v, n)?
                        != l_binom_closed(z, k, &u, &v, n)?
                    {
                        ok_bin = false;
                        bad = format!("C(i-{z},{k}), n={n}, u={su}");
                    }
                }
            }
        }
    }
    out.push(Check::new("leibniz power weights", ok_pow, bad.clone()));
    out.push(Check::new("leibniz binomial weights", ok_bin, bad));
    let mut ok_ff = true;
    for k in 0..=4u32 {
        let r = vieta_coeffs(k);
        for i in -5..=(k as i64 + 5) {
            let t = rat(i);
            let lhs =
                crate::numbers::gbinom(&t, k as u64) * Rational::from_integer(factorial(k as u64));
            let rhs: Rational = r
                .iter()
                .enumerate()
                .map(|(j, c)| c * t.pow((k as usize - j) as i32))
                .sum();
            ok_ff &= lhs == rhs;
        }
    }
    out.push(Check::new("falling factorial expansion", ok_ff, ""));
    let b: Vec<Expr> = ["x^2 + 1", "x^3", "2*x - 5", "x^4", "x + 3"]
        .iter()
        .map(|s| crate::expr::parse(s))
        .collect::<Result<_>>()?;
    let mut ok_nest = true;
    for k0 in 1..=3 {
        for n in 0..=4 {
            for m in 0..=4 {
                let (l, r) = nested_identity(&b, k0, n, m)?;
                ok_nest &= l == r;
            }
        }
    }
    out.push(Check::new("nested identity", ok_nest, ""));
    Ok(out)
}

/// `ξ_p(2p) = 0`, `ξ_p(2p+1) = a^{p+1}`, `ξ_{p−1}(2p) = a^{p−1}p(p+1)a′` and the
/// `ξ_{p−2}(2p)` form for `p ≤ 4`, through both the general formula and the
/// brute-force sum.
pub fn suite_closed_forms() -> Result<Vec<Check>> {
    use crate::nimage2::{xi_bruteforce, xi_closed_diff, ClosedForm};
    let mut out = Vec::new();
    for sa in ["x", "x^2 + 1"] {
        let a = crate::expr::parse(sa)?;
        let mut t = XiTable2::new(a.clone());
        for (which, label) in [
            (ClosedForm::Top, "xi_p(2p)"),
            (ClosedForm::TopOdd, "xi_p(2p+1)"),
            (ClosedForm::Sub1, "xi_{p-1}(2p)"),
            (ClosedForm::Sub2, "xi_{p-2}(2p)"),
        ] {
            let mut ok = true;
            let mut detail = String::new();
            for p in 1..=4u32 {
                let (k, arg) = match which {
                    ClosedForm::Top => (p, 2 * p),
                    ClosedForm::TopOdd => (p, 2 * p + 1),
                    ClosedForm::Sub1 => (p - 1, 2 * p),
                    ClosedForm::Sub2 => {
                        if p < 2 {
                            continue;
                        }
                        (p - 2, 2 * p)
                    }
                };
                let want = xi_closed_diff(&a, p, which)?;
                let general = t.xi_general(k as usize, arg as i64)?;
                let brute = xi_bruteforce(&a, k, arg)?;
                if general != want || brute != want {
                    ok = false;
                    detail =
                        format!("p={p}: closed {want}, general {general}, brute force {brute}");
                }
            }
            out.push(Check::new(format!("{label}, a = {sa}"), ok, detail));
        }
    }
    Ok(out)
}

/// m-order pipeline at `m = 2` against the second-order tables for `s ≤ 4`.
pub fn suite_crosscheck() -> Result<Vec<Check>> {
    ["x", "exp(x)", "x^3 - 1"]
        .iter()
        .map(|sa| {
            Ok(Check::new(
                format!("m=2 cross-check, a = {sa}"),
                crosscheck_m2(&crate::expr::parse(sa)?, 4)?,
                "",
            ))
        })
        .collect()
}
