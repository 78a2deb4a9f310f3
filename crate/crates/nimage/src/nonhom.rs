//! Particular solutions of `y^{(m)} + Σ b_p y^{(m−p)} = F` from `m − 1`
//! homogeneous solutions `y_1..y_{m−1}`.
//!
//! With `W = y_{m−1}`, `q_j = (y_j/y_{j+1})′` and `E = ∫b_1`:
//!
//! ```text
//! Y = W ∫ q_{m−2} ∫ … ∫ q_1 ∫ e^{−E} / (W^m ∏ q_j^{j+1}) ∫ e^{E} W^{m−1} ∏ q_j^{j} F
//! ```
//!
//! The result is symbolic when every quotient and `e^{±E}` stays a single
//! kernel term; otherwise it is sampled on a grid by nested quadrature.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::expr::{Expr, Rational, Sig};

/// LHS convention: `coeff[p−1] = b_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonHomProblem {
    pub coeff: Vec<Expr>,
    pub rhs: Expr,
    pub homog: Vec<Expr>,
}

impl NonHomProblem {
    /// Checks `m ≥ 2`, `m − 1` homogeneous solutions, and that each solves the
    /// homogeneous equation exactly.
    pub fn new(coeff: Vec<Expr>, rhs: Expr, homog: Vec<Expr>) -> Result<NonHomProblem> {
        let p = NonHomProblem::new_unchecked(coeff, rhs, homog)?;
        for (i, y) in p.homog.iter().enumerate() {
            let r = p.lhs(y)?;
            if !r.is_zero() {
                return Err(Error::invalid(format!(
                    "y_{} does not solve the homogeneous equation: residual {r}",
                    i + 1
                )));
            }
        }
        Ok(p)
    }

    /// Shape checks only; for truncated series solutions.
    pub fn new_unchecked(coeff: Vec<Expr>, rhs: Expr, homog: Vec<Expr>) -> Result<NonHomProblem> {
        let m = coeff.len();
        if m < 2 {
            return Err(Error::invalid("order must be at least 2"));
        }
        if homog.len() != m - 1 {
            return Err(Error::invalid(format!(
                "order {m} needs {} homogeneous solutions, got {}",
                m - 1,
                homog.len()
            )));
        }
        Ok(NonHomProblem { coeff, rhs, homog })
    }

    pub fn order(&self) -> usize {
        self.coeff.len()
    }

    /// `y^{(m)} + Σ b_p y^{(m−p)}`.
    pub fn lhs(&self, y: &Expr) -> Result<Expr> {
        let m = self.order();
        let mut acc = y.differentiate(m as u32);
        for (p, b) in self.coeff.iter().enumerate() {
            if !b.is_zero() {
                acc = acc.try_add(&b.mul(&y.differentiate((m - p - 1) as u32))?)?;
            }
        }
        Ok(acc)
    }

    /// `LHS(Y) − F`, exactly.
    pub fn residual(&self, y: &Expr) -> Result<Expr> {
        self.lhs(y)?.try_sub(&self.rhs)
    }
}

/// Samples on a strictly increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Local order of the cumulative rule.
    pub order: u32,
    /// Number of Richardson refinements applied.
    pub refinement: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Particular {
    Symbolic(Expr),
    /// `reason` names the step that left the kernel.
    Numeric {
        values: GridFunction,
        reason: String,
    },
}

impl Particular {
    pub fn symbolic(&self) -> Option<&Expr> {
        match self {
            Particular::Symbolic(e) => Some(e),
            Particular::Numeric { .. } => None,
        }
    }

    pub fn numeric(&self) -> Option<&GridFunction> {
        match self {
            Particular::Symbolic(_) => None,
            Particular::Numeric { values, .. } => Some(values),
        }
    }
}

/// Where to sample when the symbolic path is infeasible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn points(&self) -> Result<Vec<f64>> {
        if self.count < 5
            || self.lo.partial_cmp(&self.hi) != Some(Ordering::Less)
            || !self.lo.is_finite()
            || !self.hi.is_finite()
        {
            return Err(Error::invalid(
                "numeric grid needs lo < hi and at least 5 points",
            ));
        }
        let h = (self.hi - self.lo) / (self.count - 1) as f64;
        Ok((0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.hi
                } else {
                    self.lo + h * i as f64
                }
            })
            .collect())
    }
}

/// `e^{s·E}` for `E = ∫b_1` when it is a single kernel term.
fn exp_of(e: &Expr, sign: i64) -> Result<Expr> {
    let center = e.center().clone();
    // a constant part of E only rescales, and cancels between e^{E} and e^{−E}
    let mut var = e.clone();
    let c0 = e.coeff_of(&Sig::ONE);
    if !c0.is_zero() {
        var = var.try_sub(&Expr::constant(c0))?;
    }
    if var.is_zero() {
        return Ok(Expr::int(1));
    }
    let t = var
        .single_term()
        .ok_or_else(|| Error::unsupported(format!("exp({var}) is not a single kernel term")))?;
    let c = crate::expr::from_big(&(&t.coeff * Rational::from_integer(sign.into())))?;
    let sig = if t.sig == Sig::pow(1.into()) {
        Sig {
            exp_k: c,
            ..Sig::ONE
        }
    } else if t.sig
        == (Sig {
            log_q: 1,
            ..Sig::ONE
        })
    {
        Sig::pow(c)
    } else {
        return Err(Error::unsupported(format!(
            "exp({var}) is not a single kernel term"
        )));
    };
    Expr::from_term(
        center,
        crate::expr::Term::new(Rational::from_integer(1.into()), sig)?,
    )
}

/// Symbolic particular solution.
///
/// # Errors
/// `UnsupportedCombination` when a quotient, a reciprocal or `e^{±∫b_1}`
/// leaves the single-term family, or an antiderivative leaves the kernel.
pub fn particular_symbolic(p: &NonHomProblem) -> Result<Expr> {
    if p.rhs.is_zero() {
        return Ok(Expr::zero());
    }
    let m = p.order();
    let w = &p.homog[m - 2];
    let e = p.coeff[0].antiderivative()?;
    let (ep, en) = (exp_of(&e, 1)?, exp_of(&e, -1)?);
    let mut q = Vec::with_capacity(m - 2);
    for j in 0..m - 2 {
        let ratio = p.homog[j].div(&p.homog[j + 1])?;
        q.push(ratio.derivative());
    }
    let mut inner = ep.mul(&w.pow_int(m as i64 - 1)?)?.mul(&p.rhs)?;
    let mut denom = w.pow_int(m as i64)?;
    for (j, qj) in q.iter().enumerate() {
        let jj = j as i64 + 1;
        inner = inner.mul(&qj.pow_int(jj)?)?;
        denom = denom.mul(&qj.pow_int(jj + 1)?)?;
    }
    let mut y = en
        .mul(&denom.inverse()?)?
        .mul(&inner.antiderivative()?)?
        .antiderivative()?;
    for qj in q.iter().rev() {
        y = qj.mul(&y)?.antiderivative()?;
    }
    w.mul(&y)
}

/// Nested quadrature of the same formula on `grid`.
pub fn particular_numeric(p: &NonHomProblem, spec: &GridSpec) -> Result<GridFunction> {
    let grid = spec.points()?;
    let m = p.order();
    let w = p.homog[m - 2].clone();
    let e = p.coeff[0].antiderivative()?;
    let ys: Vec<(Expr, Expr)> = p
        .homog
        .iter()
        .map(|y| (y.clone(), y.derivative()))
        .collect();
    let f = p.rhs.clone();
    let q_at = move |j: usize, x: f64| -> f64 {
        let (a, da) = (&ys[j].0, &ys[j].1);
        let (b, db) = (&ys[j + 1].0, &ys[j + 1].1);
        let bv = b.eval_float(x);
        (da.eval_float(x) * bv - a.eval_float(x) * db.eval_float(x)) / (bv * bv)
    };
    let q_at = std::rc::Rc::new(q_at);
    let mut levels: Vec<Box<dyn Fn(f64) -> f64>> = Vec::with_capacity(m + 1);
    {
        let (w, e, q_at) = (w.clone(), e.clone(), q_at.clone());
        levels.push(Box::new(move |x| {
            let mut v =
                e.eval_float(x).exp() * w.eval_float(x).powi(m as i32 - 1) * f.eval_float(x);
            for j in 0..m - 2 {
                v *= q_at(j, x).powi(j as i32 + 1);
            }
            v
        }));
    }
    {
        let (w, e, q_at) = (w.clone(), e.clone(), q_at.clone());
        levels.push(Box::new(move |x| {
            let mut d = w.eval_float(x).powi(m as i32);
            for j in 0..m - 2 {
                d *= q_at(j, x).powi(j as i32 + 2);
            }
            (-e.eval_float(x)).exp() / d
        }));
    }
    for j in 0..m - 2 {
        let q_at = q_at.clone();
        levels.push(Box::new(move |x| q_at(j, x)));
    }
    levels.push(Box::new(move |x| w.eval_float(x)));
    // the homogeneous solutions and quotients must not vanish on the grid
    for &x in &grid {
        if p.homog[m - 2].eval_float(x) == 0.0 || (0..m - 2).any(|j| q_at(j, x) == 0.0) {
            return Err(Error::SingularHomogeneousSolution(format!(
                "zero at x = {x}"
            )));
        }
    }
    let refs: Vec<&dyn Fn(f64) -> f64> = levels.iter().map(|b| b.as_ref()).collect();
    nested_quadrature(&refs, &grid)
}

/// Symbolic when feasible, otherwise sampled on `fallback`.
pub fn particular_m(p: &NonHomProblem, fallback: &GridSpec) -> Result<Particular> {
    match particular_symbolic(p) {
        Ok(e) => Ok(Particular::Symbolic(e)),
        Err(Error::UnsupportedCombination(why)) | Err(Error::NonElementary(why)) => {
            Ok(Particular::Numeric {
                values: particular_numeric(p, fallback)?,
                reason: why,
            })
        }
        Err(e) => Err(e),
    }
}

pub fn particular2(p: &NonHomProblem, fallback: &GridSpec) -> Result<Particular> {
    if p.order() != 2 {
        return Err(Error::invalid("particular2 needs a second-order problem"));
    }
    particular_m(p, fallback)
}

pub fn particular3(p: &NonHomProblem, fallback: &GridSpec) -> Result<Particular> {
    if p.order() != 3 {
        return Err(Error::invalid("particular3 needs a third-order problem"));
    }
    particular_m(p, fallback)
}

/// `M_k·∫ M_{k−1}·∫ … ∫ M_0` sampled on `grid`, every integral anchored at
/// `grid[0]`.
///
/// Each interval is split at its midpoint: Simpson's rule gives the right
/// endpoint and the three-point rule `h/24·(5f₀ + 8f_½ − f₁)` the midpoint, so
/// nested levels stay on the same points. One Richardson step against the
/// grid refined once more follows.
pub fn nested_quadrature(levels: &[&dyn Fn(f64) -> f64], grid: &[f64]) -> Result<GridFunction> {
    if grid.len() < 5 {
        return Err(Error::invalid("grid needs at least 5 points"));
    }
    if grid
        .windows(2)
        .any(|w| w[0].partial_cmp(&w[1]) != Some(Ordering::Less))
    {
        return Err(Error::invalid("grid must be strictly increasing"));
    }
    if levels.is_empty() {
        return Err(Error::invalid("no levels"));
    }
    let coarse = nested_on(levels, &refine(grid))?;
    let fine = nested_on(levels, &refine(&refine(grid)))?;
    let values: Vec<f64> = (0..grid.len())
        .map(|i| (16.0 * fine[4 * i] - coarse[2 * i]) / 15.0)
        .collect();
    Ok(GridFunction {
        grid: grid.to_vec(),
        values,
        order: 4,
        refinement: 1,
    })
}

/// Inserts the midpoint of every interval.
fn refine(g: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * g.len() - 1);
    for w in g.windows(2) {
        out.push(w[0]);
        out.push(0.5 * (w[0] + w[1]));
    }
    out.push(*g.last().expect("non-empty"));
    out
}

/// Nested levels on a grid of odd length whose odd points are midpoints.
fn nested_on(levels: &[&dyn Fn(f64) -> f64], g: &[f64]) -> Result<Vec<f64>> {
    let sample = |f: &dyn Fn(f64) -> f64| -> Result<Vec<f64>> {
        g.iter()
            .map(|&x| {
                let v = f(x);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::NonFiniteValue(x))
                }
            })
            .collect()
    };
    let mut cur = sample(levels[0])?;
    for lvl in &levels[1..] {
        let mul = sample(*lvl)?;
        let int = cumulative(&cur, g);
        cur = int.iter().zip(&mul).map(|(a, b)| a * b).collect();
    }
    Ok(cur)
}

fn cumulative(f: &[f64], g: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; f.len()];
    let mut i = 0;
    while i + 2 < f.len() {
        let h = g[i + 2] - g[i];
        out[i + 1] = out[i] + h / 24.0 * (5.0 * f[i] + 8.0 * f[i + 1] - f[i + 2]);
        out[i + 2] = out[i] + h / 6.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
        i += 2;
    }
    out
}

/// Finite-difference weights for derivatives `0..=order` at `x0` (Fornberg).
pub fn fd_weights(x0: f64, xs: &[f64], order: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    let mut c = vec![vec![0.0; n]; order + 1];
    c[0][0] = 1.0;
    let (mut c1, mut c4) = (1.0, xs[0] - x0);
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// `|LHS(Y) − F|` at interior points of a uniform grid by centered differences
/// over `2⌈m/2⌉ + 3` points, step equal to the grid spacing.
pub fn fd_residual(p: &NonHomProblem, y: &GridFunction) -> Result<Vec<(f64, f64)>> {
    let m = p.order();
    let r = m.div_ceil(2) + 1;
    let n = y.grid.len();
    if n < 2 * r + 1 {
        return Err(Error::invalid("grid too short for the difference stencil"));
    }
    let h = (y.grid[n - 1] - y.grid[0]) / (n - 1) as f64;
    let offsets: Vec<f64> = (-(r as i64)..=r as i64).map(|k| k as f64).collect();
    let w = fd_weights(0.0, &offsets, m);
    let mut out = Vec::with_capacity(n - 2 * r);
    for i in r..n - r {
        let x = y.grid[i];
        let d = |k: usize| -> f64 {
            w[k].iter()
                .enumerate()
                .map(|(j, c)| c * y.values[i + j - r])
                .sum::<f64>()
                / h.powi(k as i32)
        };
        let mut lhs = d(m);
        for (pi, b) in p.coeff.iter().enumerate() {
            if !b.is_zero() {
                lhs += b.eval_float(x) * d(m - pi - 1);
            }
        }
        out.push((x, (lhs - p.rhs.eval_float(x)).abs()));
    }
    Ok(out)
}

/// Largest value of an `(x, |r|)` list.
pub fn max_abs(r: &[(f64, f64)]) -> f64 {
    r.iter().map(|p| p.1).fold(0.0, f64::max)
}

impl GridFunction {
    /// Value at a grid point, if `x` is one.
    pub fn at(&self, x: f64) -> Option<f64> {
        self.grid
            .iter()
            .position(|g| (g - x).abs() <= 1e-12 * g.abs().max(1.0))
            .map(|i| self.values[i])
    }
}
