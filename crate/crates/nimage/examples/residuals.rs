// Residual reports: Euler equation y'' = y/(x+1)^2 about x = -1.
use nimage::expr::parse_at;
use nimage::nimage2::XiTable2;
use nimage::numbers::{rat, ratio};
use nimage::verify::{
    delta_at, euler_coeffs, euler_ode, euler_series, residual_report, uniform_grid,
};

fn main() -> nimage::Result<()> {
    let c = ratio(-1, 1);
    let a = parse_at("(x+1)^(-2)", &c)?;
    let mut t = XiTable2::new(a);
    for k in 0..=2 {
        println!("Xi_{k}(-1) = {}", t.xi_neg(k)?.0);
    }

    let b = euler_coeffs(5);
    println!(
        "b = {:?}",
        b.iter().map(|q| q.to_string()).collect::<Vec<_>>()
    );
    let ode = euler_ode()?;
    for n in [6, 12, 26] {
        let y = euler_series(n)?;
        println!(
            "N = {n:2}: delta(1) = {}",
            delta_at(&ode, &y, &rat(1), 60)?.to_sci(4)
        );
    }
    let report = residual_report(
        &ode,
        &euler_series(26)?,
        &uniform_grid(&rat(0), &rat(2), 5)?,
        60,
        Some(26),
    )?;
    for s in report.samples {
        match s.delta {
            Some(d) => println!("x = {}: {d:e}", s.x),
            None => println!("x = {}: undefined ({})", s.x, s.note.unwrap_or_default()),
        }
    }
    Ok(())
}
