// Particular solutions of y^(m) + b1 y^(m-1) + ... + bm y = F.
use nimage::expr::parse;
use nimage::nimage2::assemble2;
use nimage::nonhom::{fd_residual, max_abs, particular_m, GridSpec, NonHomProblem, Particular};

fn show(p: &NonHomProblem, grid: &GridSpec) -> nimage::Result<()> {
    match particular_m(p, grid)? {
        Particular::Symbolic(y) => println!("Y = {y}, LHS(Y) - F = {}", p.residual(&y)?),
        Particular::Numeric { values, reason } => {
            println!("numeric ({reason})");
            println!(
                "  Y(1) = {:e}",
                values.values.last().copied().unwrap_or(f64::NAN)
            );
            println!(
                "  max |LHS(Y) - F| = {:e}",
                max_abs(&fd_residual(p, &values)?)
            );
        }
    }
    Ok(())
}

fn main() -> nimage::Result<()> {
    let grid = GridSpec {
        lo: 0.0,
        hi: 1.0,
        count: 1001,
    };
    let p = |s: &str| parse(s);

    // y'' - y = F with y = e^x.
    for f in ["1", "exp(2*x)"] {
        show(
            &NonHomProblem::new(vec![p("0")?, p("-1")?], p(f)?, vec![p("exp(x)")?])?,
            &grid,
        )?;
    }
    // Characteristic roots 1, 2, 3, 4.
    show(
        &NonHomProblem::new(
            vec![p("-10")?, p("35")?, p("-50")?, p("24")?],
            p("exp(5*x)")?,
            vec![p("exp(x)")?, p("exp(2*x)")?, p("exp(3*x)")?],
        )?,
        &grid,
    )?;

    // y'' - x*y = 1 with a truncated series for the homogeneous solution.
    let y1 = assemble2(&p("x")?, 7)?.y1;
    show(
        &NonHomProblem::new_unchecked(vec![p("0")?, p("-x")?], p("1")?, vec![y1])?,
        &grid,
    )?;
    Ok(())
}
