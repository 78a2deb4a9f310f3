// y'' = x*y: coefficient table, partial solutions and residuals.
//
// $ cargo run --example airy
use nimage::expr::parse;
use nimage::morder::OdeM;
use nimage::nimage2::{assemble_from, ReducedOde2, XiTable2};
use nimage::numbers::rat;
use nimage::verify::{airy_oracle, residual_report, uniform_grid};

fn main() -> nimage::Result<()> {
    let a = parse("x")?;
    let mut table = XiTable2::new(a.clone());
    let sol = assemble_from(&mut table, 7)?;
    for k in 0..=7 {
        let (m1, m2) = table.xi_neg(k)?;
        println!("xi_{k}(-1) = {:<28} xi_{k}(-2) = {m2}", m1.to_string());
    }
    println!("y1 = {}", sol.y1);
    println!("y2 = {}", sol.y2);

    // Denominators of y1 follow B(k+1) = (9(k+1)^2 - 3(k+1)) B(k).
    let (b, _) = airy_oracle(8);
    println!(
        "B    = {:?}",
        b.iter().map(|v| v.to_string()).collect::<Vec<_>>()
    );

    let ode = OdeM::from(&ReducedOde2 { a });
    let grid = uniform_grid(&rat(1), &rat(5), 5)?;
    let report = residual_report(&ode, &sol.y1, &grid, 60, Some(7))?;
    for s in &report.samples {
        println!("delta({}) = {:e}", s.x, s.delta.unwrap_or(f64::NAN));
    }
    Ok(())
}
