//! m-th order engine for `y^{(m)} = Σ_{p=1}^{m} a_p·y^{(m−p)}`.
//!
//! The adjoint coefficients `b_k` feed the matrix `ξ_{m,s}(−n)`, `n = 1..m`;
//! its column sums `α(−k)` give the `m` partial solutions.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::expr::{Expr, Rational};
use crate::numbers::{binom, factorial, gbinom, rat};

/// `y^{(m)} = Σ a_p·y^{(m−p)}`, with `a[p−1] = a_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeM {
    pub a: Vec<Expr>,
}

impl OdeM {
    pub fn new(a: Vec<Expr>) -> Result<OdeM> {
        if a.len() < 2 {
            return Err(Error::invalid("order must be at least 2"));
        }
        let center = a
            .iter()
            .find(|e| !e.is_constant())
            .map(|e| e.center().clone());
        if let Some(c) = center {
            if let Some(bad) = a.iter().find(|e| !e.is_constant() && *e.center() != c) {
                return Err(Error::CenterMismatch(
                    c.to_string(),
                    bad.center().to_string(),
                ));
            }
        }
        Ok(OdeM { a })
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }

    pub fn center(&self) -> Rational {
        self.a
            .iter()
            .find(|e| !e.is_constant())
            .unwrap_or(&self.a[0])
            .center()
            .clone()
    }
}

/// `b[k−1] = b_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjointCoeffs {
    pub b: Vec<Expr>,
}

impl AdjointCoeffs {
    pub fn order(&self) -> usize {
        self.b.len()
    }
}

/// `b_k = Σ_{i=1}^{k} (−1)^i C(m−i, m−k) D^{k−i} a_i`.
pub fn adjoint_m(ode: &OdeM) -> AdjointCoeffs {
    let m = ode.order();
    let b = (1..=m)
        .map(|k| {
            let mut acc = Expr::zero();
            for i in 1..=k {
                let c = binom((m - i) as u64, (m - k) as u64) * if i % 2 == 0 { 1 } else { -1 };
                acc += &ode.a[i - 1]
                    .differentiate((k - i) as u32)
                    .scale(&Rational::from_integer(c));
            }
            acc
        })
        .collect();
    AdjointCoeffs { b }
}

/// n-image coefficients of `y^{(m)} = Σ c_p y^{(m−p)}`:
/// `y^{(m+n)} = Σ α_p(n) y^{(m−p)}`, from `α_p(0) = c_p`.
pub fn nimage_forward_m(c: &[Expr], n: u32) -> Result<Vec<Expr>> {
    let m = c.len();
    let mut alpha = c.to_vec();
    for _ in 0..n {
        let mut next = Vec::with_capacity(m);
        for p in 0..m {
            let mut v = alpha[p].derivative().try_add(&alpha[0].mul(&c[p])?)?;
            if p + 1 < m {
                v = v.try_add(&alpha[p + 1])?;
            }
            next.push(v);
        }
        alpha = next;
    }
    Ok(alpha)
}

/// One block of nested brackets, indexed by `n = 1..m`:
///
/// `Σ (−1)^{i₀+…+i_{d−1}} C(−n, i_d) ∏ C(k_l−1+i_l, k_l−1) [[…[b_{j+Σi}]_{i₀+k₀} b_{k₀}…]_{i_{d−1}+k_{d−1}} b_{k_{d−1}}]_{n+i_d}`
/// over `Σi ≤ m−j`, `k_l = 1..m`.
fn nested_block(b: &[Expr], depth: usize, shift: usize) -> Result<Vec<Expr>> {
    let m = b.len();
    // grouped by the last index i_d before the outer integration
    let mut by_last: Vec<Expr> = vec![Expr::zero(); m + 1];
    for total in 0..=(m - shift) {
        let f0 = &b[shift + total - 1];
        if f0.is_zero() {
            continue;
        }
        descend(
            b,
            depth,
            0,
            total,
            f0.clone(),
            Rational::from_integer(1.into()),
            &mut by_last,
        )?;
    }
    let mut row = vec![Expr::zero(); m];
    for (last, s) in by_last.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        let mut f = s.integrate(last as u32)?;
        for n in 1..=m {
            f = f.antiderivative()?;
            let c = gbinom(&rat(-(n as i64)), last as u64);
            row[n - 1] += &f.scale(&c);
        }
    }
    Ok(row)
}

fn descend(
    b: &[Expr],
    depth: usize,
    level: usize,
    rem: usize,
    f: Expr,
    w: Rational,
    out: &mut [Expr],
) -> Result<()> {
    if level == depth {
        out[rem] += &f.scale(&w);
        return Ok(());
    }
    let m = b.len();
    for i in 0..=rem {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for k in 1..=m {
            let bk = &b[k - 1];
            if bk.is_zero() {
                continue;
            }
            let next = f.integrate((i + k) as u32)?.mul(bk)?;
            if next.is_zero() {
                continue;
            }
            let c = Rational::from_integer(binom((k - 1 + i) as u64, (k - 1) as u64) * sign);
            descend(b, depth, level + 1, rem - i, next, &w * c, out)?;
        }
    }
    Ok(())
}

/// `ξ_{m,s}(−n)` for `n = 1..m`, filled row by row in `s`.
#[derive(Debug, Clone)]
pub struct XiMatrix {
    b: Vec<Expr>,
    /// `principal[s]`: the depth-`s` block with `b` index shift 1.
    principal: Vec<Vec<Expr>>,
    /// `corr[d][j−1]`: the depth-`d` block with shift `j`, paired with `ξ_{s−d−1}(−j)`.
    corr: Vec<Vec<Vec<Expr>>>,
    rows: Vec<Vec<Expr>>,
}

impl XiMatrix {
    pub fn new(b: &AdjointCoeffs) -> XiMatrix {
        XiMatrix {
            b: b.b.clone(),
            principal: Vec::new(),
            corr: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.b.len()
    }

    pub fn b(&self) -> &[Expr] {
        &self.b
    }

    /// Number of completed rows.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Row `s`: `ξ_{m,s}(−1), …, ξ_{m,s}(−m)`.
    pub fn row(&mut self, s: usize) -> Result<&[Expr]> {
        while self.rows.len() <= s {
            let s0 = self.rows.len();
            let r = self.compute_row(s0)?;
            self.rows.push(r);
        }
        Ok(&self.rows[s])
    }

    /// `ξ_{m,s}(−n)`, `1 ≤ n ≤ m`.
    pub fn xi(&mut self, s: usize, n: usize) -> Result<Expr> {
        let m = self.order();
        if n == 0 || n > m {
            return Err(Error::invalid(format!("n must lie in 1..{m}, got {n}")));
        }
        Ok(self.row(s)?[n - 1].clone())
    }

    fn compute_row(&mut self, s: usize) -> Result<Vec<Expr>> {
        let m = self.order();
        while self.principal.len() <= s {
            let d = self.principal.len();
            self.principal.push(nested_block(&self.b, d, 1)?);
        }
        let mut row = self.principal[s].clone();
        for z in 1..=s {
            let d = z - 1;
            while self.corr.len() <= d {
                let dd = self.corr.len();
                let blocks = (1..=m)
                    .map(|j| nested_block(&self.b, dd, j))
                    .collect::<Result<Vec<_>>>()?;
                self.corr.push(blocks);
            }
            let prev = &self.rows[s - z];
            for j in 1..=m {
                let xi = &prev[j - 1];
                if xi.is_zero() {
                    continue;
                }
                for (n, slot) in row.iter_mut().enumerate() {
                    let blk = &self.corr[d][j - 1][n];
                    if !blk.is_zero() {
                        *slot = slot.try_sub(&blk.mul(xi)?)?;
                    }
                }
            }
        }
        Ok(row)
    }
}

/// Free-function accessor over a matrix.
pub fn xi_m(matrix: &mut XiMatrix, s: usize, n: usize) -> Result<Expr> {
    matrix.xi(s, n)
}

/// `α(−k) = Σ_{s≤N} ξ_{m,s}(−k)`, `alpha[k−1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaVector {
    pub alpha: Vec<Expr>,
    pub n: u32,
}

pub fn alpha_m(matrix: &mut XiMatrix, n: u32) -> Result<AlphaVector> {
    let m = matrix.order();
    let mut alpha = vec![Expr::zero(); m];
    for s in 0..=n as usize {
        for (a, e) in alpha.iter_mut().zip(matrix.row(s)?) {
            *a = a.try_add(e)?;
        }
    }
    Ok(AlphaVector { alpha, n })
}

/// `Y_1..Y_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    pub y: Vec<Expr>,
    pub n: u32,
}

/// `Y_i = (−1)^i (1 − α(−1)) x^{i−1}/(i−1)! + Σ_{k=2}^{i} (−1)^{k+i} α(−k) x^{i−k}/(i−k)!`.
pub fn assemble_m(alpha: &AlphaVector, center: &Rational) -> Result<SolutionSet> {
    let m = alpha.alpha.len();
    let x = Expr::x(center.clone());
    let xpow = |p: usize| -> Result<Expr> {
        let inv = Rational::new(BigInt::from(1), factorial(p as u64));
        Ok(x.pow_int(p as i64)?.scale(&inv))
    };
    let one_minus = Expr::int(1).try_sub(&alpha.alpha[0])?;
    let mut y = Vec::with_capacity(m);
    for i in 1..=m {
        let sgn = |e: usize| if e.is_multiple_of(2) { 1 } else { -1 };
        let mut acc = one_minus.mul(&xpow(i - 1)?)?.scale_int(sgn(i));
        for k in 2..=i {
            acc = acc.try_add(&alpha.alpha[k - 1].mul(&xpow(i - k)?)?.scale_int(sgn(k + i)))?;
        }
        y.push(acc);
    }
    Ok(SolutionSet { y, n: alpha.n })
}

/// Whole pipeline: adjoint, `N+1` rows, `α`, partial solutions.
pub fn solve_m(ode: &OdeM, n: u32) -> Result<(XiMatrix, AlphaVector, SolutionSet)> {
    let b = adjoint_m(ode);
    let mut mat = XiMatrix::new(&b);
    let alpha = alpha_m(&mut mat, n)?;
    let sol = assemble_m(&alpha, &ode.center())?;
    Ok((mat, alpha, sol))
}

/// `Y^{(m)} − Σ a_p Y^{(m−p)}`, exactly.
pub fn residual_expr(ode: &OdeM, y: &Expr) -> Result<Expr> {
    let m = ode.order();
    let mut r = y.differentiate(m as u32);
    for (p, a) in ode.a.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        r = r.try_sub(&a.mul(&y.differentiate((m - p - 1) as u32))?)?;
    }
    Ok(r)
}

impl AlphaVector {
    pub fn is_trivial(&self) -> bool {
        self.alpha.iter().all(Expr::is_zero)
    }
}
