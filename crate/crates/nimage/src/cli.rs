//! Command-line front end. [`run`] parses arguments, runs one engine and writes
//! a report; the binary is a thin wrapper around it.
//!
//! Exit codes: 0 success, 1 other failure, 2 bad input, 3 expression outside
//! the kernel, 4 failed self-test.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::expr::{parse_at, Expr, Rational, Style, DEFAULT_DIGITS};
use crate::morder::{solve_m, OdeM};
use crate::nimage2::{
    assemble_from, reduce_to_normal, GeneralOde2, Multiplier, ReducedOde2, XiTable2,
};
use crate::nonhom::{fd_residual, particular_m, GridSpec, NonHomProblem, Particular};
use crate::numbers::parse_rational;
use crate::verify::{
    parse_grid, residual_report, suite_closed_forms, suite_crosscheck, suite_leibniz, Check,
    ResidualReport,
};

#[derive(Debug, Parser)]
#[command(
    name = "nimage",
    version,
    about = "Series solutions of linear ODEs with variable coefficients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// y'' = a*y
    Solve2 {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[command(flatten)]
        common: Common,
        /// Which partial solution the residual is computed for (1 or 2).
        #[arg(long, default_value_t = 1)]
        solution: usize,
    },
    /// y'' = a1*y' + a2*y, reduced to normal form first
    Solve2g {
        #[arg(long, allow_hyphen_values = true)]
        a1: String,
        #[arg(long, allow_hyphen_values = true)]
        a2: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        solution: usize,
    },
    /// y^(m) = a1*y^(m-1) + ... + am*y
    Solvem {
        #[arg(long)]
        order: usize,
        /// `ap=<expr>`, repeatable; missing coefficients are zero.
        #[arg(long = "coeff", allow_hyphen_values = true)]
        coeff: Vec<String>,
        /// Coefficients are given for y^(m) + a1*y^(m-1) + ... + am*y = 0.
        #[arg(long)]
        lhs: bool,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        solution: usize,
    },
    /// One coefficient xi_k(p) of y'' = a*y
    Xi {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        k: usize,
        #[arg(long = "arg", allow_hyphen_values = true)]
        arg: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        center: String,
    },
    /// y^(m) + b1*y^(m-1) + ... + bm*y = F from m-1 homogeneous solutions
    Particular {
        #[arg(long)]
        order: usize,
        /// `bp=<expr>`, repeatable; missing coefficients are zero.
        #[arg(long = "coeff", allow_hyphen_values = true)]
        coeff: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        /// Comma-separated y_1,...,y_{m-1}.
        #[arg(long, allow_hyphen_values = true)]
        homog: String,
        /// Skip the exact check that each y_j solves the homogeneous equation.
        #[arg(long)]
        unchecked: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Identity suites
    Selftest {
        #[arg(value_enum)]
        suite: Suite,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Truncation index N.
    #[arg(long, default_value_t = 7)]
    terms: u32,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    center: String,
    /// lo:hi:count
    #[arg(long, default_value = "1:5:5", allow_hyphen_values = true)]
    grid: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Decimal digits for residual evaluation (at least 30).
    #[arg(long, default_value_t = DEFAULT_DIGITS)]
    digits: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Leibniz,
    Closedforms,
    Crosscheck,
}

/// Everything a subcommand produces, rendered by [`Report::render`].
#[derive(Debug, Default)]
struct Report {
    problem: Vec<(String, Value)>,
    xi: Vec<(usize, i64, Expr)>,
    alpha: Vec<(usize, Expr)>,
    solutions: Vec<(usize, Expr)>,
    /// Samples of a numeric solution.
    values: Vec<(f64, f64)>,
    residual: Vec<(f64, Option<f64>)>,
    notes: Vec<String>,
    /// Printed alone in text format.
    bare: Option<Expr>,
}

impl Report {
    fn field(&mut self, key: &str, v: impl Into<Value>) {
        self.problem.push((key.into(), v.into()));
    }

    fn add_residual(&mut self, r: &ResidualReport) {
        self.residual = r
            .samples
            .iter()
            .map(|s| (s.x_f64(), s.delta.filter(|d| d.is_finite())))
            .collect();
        if let Some(m) = r.max_delta {
            self.field("max_delta", m);
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::from("x,delta\n");
                for (x, d) in &self.residual {
                    match d {
                        Some(d) => s.push_str(&format!("{x},{d:e}\n")),
                        None => s.push_str(&format!("{x},undefined\n")),
                    }
                }
                s
            }
            Format::Text => match &self.bare {
                Some(e) => format!("{e}\n"),
                None => self.to_text(Style::Plain),
            },
            Format::Latex => self.to_text(Style::Latex),
        }
    }

    fn to_json(&self) -> Value {
        let problem: Map<String, Value> = self.problem.iter().cloned().collect();
        let mut root = Map::new();
        root.insert("problem".into(), Value::Object(problem));
        root.insert(
            "xi".into(),
            self.xi
                .iter()
                .map(|(s, n, e)| json!({"s": s, "n": n, "expr": e.to_string()}))
                .collect(),
        );
        root.insert(
            "alpha".into(),
            self.alpha
                .iter()
                .map(|(k, e)| json!({"k": k, "expr": e.to_string()}))
                .collect(),
        );
        root.insert(
            "solutions".into(),
            self.solutions
                .iter()
                .map(|(i, e)| json!({"i": i, "expr": e.to_string()}))
                .collect(),
        );
        if !self.values.is_empty() {
            root.insert(
                "values".into(),
                self.values
                    .iter()
                    .map(|(x, y)| json!({"x": x, "y": y}))
                    .collect(),
            );
        }
        root.insert(
            "residual".into(),
            self.residual
                .iter()
                .map(|(x, d)| match d {
                    Some(d) => json!({"x": x, "delta": d}),
                    None => json!({"x": x, "delta": "undefined"}),
                })
                .collect(),
        );
        Value::Object(root)
    }

    fn to_text(&self, style: Style) -> String {
        let latex = style == Style::Latex;
        // LaTeX: metadata and samples as comments around one align* block
        let c = if latex { "% " } else { "" };
        let mut s = String::new();
        for (k, v) in &self.problem {
            let v = match v {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("{c}{k}: {v}\n"));
        }
        let mut eqs: Vec<(String, &Expr)> = Vec::new();
        for (k, n, e) in &self.xi {
            eqs.push((
                if latex {
                    format!("\\xi_{{{k}}}({})", -n)
                } else {
                    format!("xi_{k}({})", -n)
                },
                e,
            ));
        }
        for (k, e) in &self.alpha {
            eqs.push((
                if latex {
                    format!("\\alpha(-{k})")
                } else {
                    format!("alpha(-{k})")
                },
                e,
            ));
        }
        for (i, e) in &self.solutions {
            eqs.push((
                if latex {
                    format!("y_{{{i}}}")
                } else {
                    format!("y{i}")
                },
                e,
            ));
        }
        if latex && !eqs.is_empty() {
            s.push_str("\\begin{align*}\n");
            let last = eqs.len() - 1;
            for (j, (lhs, e)) in eqs.iter().enumerate() {
                let end = if j == last { "" } else { " \\\\" };
                s.push_str(&format!("{lhs} &= {}{end}\n", e.format(Style::Latex)));
            }
            s.push_str("\\end{align*}\n");
        } else {
            for (lhs, e) in &eqs {
                s.push_str(&format!("{lhs} = {e}\n"));
            }
        }
        if !self.values.is_empty() {
            s.push_str(&format!("{c}values:\n"));
            for (x, y) in &self.values {
                s.push_str(&format!("{c}  x = {x}  y = {y:e}\n"));
            }
        }
        if !self.residual.is_empty() {
            s.push_str(&format!("{c}residual:\n"));
            for (x, d) in &self.residual {
                match d {
                    Some(d) => s.push_str(&format!("{c}  x = {x}  delta = {d:e}\n")),
                    None => s.push_str(&format!("{c}  x = {x}  delta = undefined\n")),
                }
            }
        }
        for n in &self.notes {
            s.push_str(&format!("{c}note: {n}\n"));
        }
        s
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } | Error::Invalid(_) | Error::CenterMismatch(..) => 2,
        Error::UnsupportedCombination(_) | Error::NonElementary(_) => 3,
        _ => 1,
    }
}

/// Parses `args` (program name first), runs the subcommand and writes the
/// report to `out`, diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    if let Command::Selftest { suite } = cli.command {
        return selftest(suite, out, err);
    }
    match execute(cli.command) {
        Ok((report, format)) => match out.write_all(report.render(format).as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn selftest(suite: Suite, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let checks: Result<Vec<Check>> = match suite {
        Suite::Leibniz => suite_leibniz(),
        Suite::Closedforms => suite_closed_forms(),
        Suite::Crosscheck => suite_crosscheck(),
    };
    let checks = match checks {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 4;
        }
    };
    let mut failed = false;
    for c in &checks {
        if c.ok {
            let _ = writeln!(out, "PASS {}", c.name);
        } else {
            failed = true;
            let _ = writeln!(out, "FAIL {}: {}", c.name, c.detail);
        }
    }
    if failed {
        4
    } else {
        0
    }
}

fn center_of(text: &str) -> Result<Rational> {
    parse_rational(text)
        .ok_or_else(|| Error::invalid(format!("center must be a rational number, got '{text}'")))
}

fn check_common(c: &Common) -> Result<(Rational, Vec<Rational>)> {
    if c.digits < 30 {
        return Err(Error::invalid("--digits must be at least 30"));
    }
    Ok((center_of(&c.center)?, parse_grid(&c.grid)?))
}

/// `key<p>=<expr>` pairs into a dense coefficient vector of length `order`.
fn coefficients(pairs: &[String], key: char, order: usize, center: &Rational) -> Result<Vec<Expr>> {
    if order < 2 {
        return Err(Error::invalid("order must be at least 2"));
    }
    let mut out = vec![Expr::empty_at(center); order];
    let mut seen = vec![false; order];
    for pair in pairs {
        let (name, text) = pair.split_once('=').ok_or_else(|| {
            Error::invalid(format!("coefficient must be {key}<p>=<expr>, got '{pair}'"))
        })?;
        let p: usize = name
            .trim()
            .strip_prefix(key)
            .and_then(|d| d.parse().ok())
            .filter(|p| (1..=order).contains(p))
            .ok_or_else(|| {
                Error::invalid(format!(
                    "coefficient name must be {key}1..{key}{order}, got '{name}'"
                ))
            })?;
        if seen[p - 1] {
            return Err(Error::invalid(format!("coefficient {key}{p} given twice")));
        }
        seen[p - 1] = true;
        out[p - 1] = parse_at(text, center)?;
    }
    Ok(out)
}

fn pick(solutions: &[Expr], i: usize) -> Result<&Expr> {
    i.checked_sub(1)
        .and_then(|j| solutions.get(j))
        .ok_or_else(|| Error::invalid(format!("--solution must be in 1..={}", solutions.len())))
}

fn execute(cmd: Command) -> Result<(Report, Format)> {
    match cmd {
        Command::Solve2 {
            a,
            common,
            solution,
        } => {
            let (center, grid) = check_common(&common)?;
            let a = parse_at(&a, &center)?;
            let mut r = Report::default();
            r.field("kind", "solve2");
            r.field("equation", format!("y'' = ({a})*y"));
            r.field("a", a.to_string());
            second_order(&mut r, a, &center, &grid, &common, solution)?;
            Ok((r, common.format))
        }
        Command::Solve2g {
            a1,
            a2,
            common,
            solution,
        } => {
            let (center, grid) = check_common(&common)?;
            let ode = GeneralOde2 {
                a1: parse_at(&a1, &center)?,
                a2: parse_at(&a2, &center)?,
            };
            let (reduced, mult) = reduce_to_normal(&ode)?;
            let mut r = Report::default();
            r.field("kind", "solve2g");
            r.field(
                "equation",
                format!("y'' = ({})*y' + ({})*y", ode.a1, ode.a2),
            );
            r.field("a1", ode.a1.to_string());
            r.field("a2", ode.a2.to_string());
            r.field("reduced", reduced.a.to_string());
            r.field("multiplier", mult.describe());
            match &mult {
                Multiplier::Kernel(_) => r.notes.push("solutions z of z'' = reduced*z; y = multiplier*z".into()),
                Multiplier::ExpOfIntegral(_) => r.notes.push("solutions z of z'' = reduced*z; y = multiplier*z with the multiplier outside the kernel".into()),
            }
            second_order(&mut r, reduced.a, &center, &grid, &common, solution)?;
            Ok((r, common.format))
        }
        Command::Solvem {
            order,
            coeff,
            lhs,
            common,
            solution,
        } => {
            let (center, grid) = check_common(&common)?;
            let mut a = coefficients(&coeff, 'a', order, &center)?;
            if lhs {
                a = a.iter().map(Expr::neg).collect();
            }
            let ode = OdeM::new(a)?;
            let (mut mat, alpha, sols) = solve_m(&ode, common.terms)?;
            let mut r = Report::default();
            r.field("kind", "solvem");
            r.field("order", order);
            for (p, c) in ode.a.iter().enumerate() {
                r.field(&format!("a{}", p + 1), c.to_string());
            }
            r.field("terms", common.terms);
            r.field("center", center.to_string());
            r.field("solution", solution);
            for s in 0..=common.terms as usize {
                for (n, e) in mat.row(s)?.iter().enumerate() {
                    r.xi.push((s, n as i64 + 1, e.clone()));
                }
            }
            r.alpha = alpha
                .alpha
                .iter()
                .cloned()
                .enumerate()
                .map(|(k, e)| (k + 1, e))
                .collect();
            r.solutions = sols
                .y
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, e)| (i + 1, e))
                .collect();
            let y = pick(&sols.y, solution)?;
            r.add_residual(&residual_report(
                &ode,
                y,
                &grid,
                common.digits,
                Some(common.terms),
            )?);
            Ok((r, common.format))
        }
        Command::Xi {
            a,
            k,
            arg,
            format,
            center,
        } => {
            let center = center_of(&center)?;
            let a = parse_at(&a, &center)?;
            let mut t = XiTable2::new(a.clone());
            let e = t.xi_general(k, arg)?;
            if format == Format::Text {
                return Ok((
                    Report {
                        bare: Some(e),
                        ..Report::default()
                    },
                    format,
                ));
            }
            let mut r = Report::default();
            r.field("kind", "xi");
            r.field("a", a.to_string());
            r.field("k", k);
            r.field("arg", arg);
            r.xi.push((k, -arg, e));
            Ok((r, format))
        }
        Command::Particular {
            order,
            coeff,
            rhs,
            homog,
            unchecked,
            common,
        } => {
            let (center, grid) = check_common(&common)?;
            let b = coefficients(&coeff, 'b', order, &center)?;
            let rhs = parse_at(&rhs, &center)?;
            let homog: Vec<Expr> = homog
                .split(',')
                .map(|t| parse_at(t, &center))
                .collect::<Result<_>>()?;
            let p = if unchecked {
                NonHomProblem::new_unchecked(b, rhs, homog)?
            } else {
                NonHomProblem::new(b, rhs, homog)?
            };
            let lo = grid.first().expect("grid");
            let hi = grid.last().expect("grid");
            let spec = GridSpec {
                lo: to_f64(lo),
                hi: to_f64(hi),
                count: grid.len().max(5),
            };
            let mut r = Report::default();
            r.field("kind", "particular");
            r.field("order", order);
            for (j, c) in p.coeff.iter().enumerate() {
                r.field(&format!("b{}", j + 1), c.to_string());
            }
            r.field("rhs", p.rhs.to_string());
            r.field(
                "homogeneous",
                p.homog
                    .iter()
                    .map(|h| h.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
            match particular_m(&p, &spec)? {
                Particular::Symbolic(y) => {
                    r.field("method", "symbolic");
                    let res = p.residual(&y)?;
                    r.residual = grid
                        .iter()
                        .map(|x| (to_f64(x), res.eval_exact(x).ok().map(|v| to_f64(&v).abs())))
                        .collect();
                    r.solutions.push((1, y));
                }
                Particular::Numeric { values, reason } => {
                    r.field("method", "numeric");
                    r.field("reason", reason);
                    r.field("quadrature_order", values.order);
                    r.values = values
                        .grid
                        .iter()
                        .copied()
                        .zip(values.values.iter().copied())
                        .collect();
                    r.residual = fd_residual(&p, &values)?
                        .into_iter()
                        .map(|(x, d)| (x, Some(d).filter(|d| d.is_finite())))
                        .collect();
                }
            }
            Ok((r, common.format))
        }
        Command::Selftest { .. } => unreachable!("handled by run"),
    }
}

fn to_f64(q: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

fn second_order(
    r: &mut Report,
    a: Expr,
    center: &Rational,
    grid: &[Rational],
    common: &Common,
    solution: usize,
) -> Result<()> {
    r.field("terms", common.terms);
    r.field("center", center.to_string());
    r.field("solution", solution);
    let mut t = XiTable2::new(a.clone());
    let sol = assemble_from(&mut t, common.terms)?;
    for k in 0..=common.terms as usize {
        let (x1, x2) = t.xi_neg(k)?;
        r.xi.push((k, 1, x1));
        r.xi.push((k, 2, x2));
    }
    let ode = OdeM::from(&ReducedOde2 { a });
    r.solutions = vec![(1, sol.y1.clone()), (2, sol.y2.clone())];
    let y = pick(&[sol.y1, sol.y2], solution)?.clone();
    r.add_residual(&residual_report(
        &ode,
        &y,
        grid,
        common.digits,
        Some(common.terms),
    )?);
    Ok(())
}
