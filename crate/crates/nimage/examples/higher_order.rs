// y''' = ln(x)*y: xi matrix, alpha vector and the three partial solutions.
use nimage::expr::parse;
use nimage::morder::{adjoint_m, solve_m, OdeM};
use nimage::numbers::ratio;
use nimage::verify::delta_at;

fn main() -> nimage::Result<()> {
    let ode = OdeM::new(vec![parse("0")?, parse("0")?, parse("ln(x)")?])?;
    println!(
        "adjoint b = {:?}",
        adjoint_m(&ode)
            .b
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
    );
    let (mut xi, alpha, sol) = solve_m(&ode, 3)?;
    for s in 0..=3 {
        for (n, e) in xi.row(s)?.iter().enumerate() {
            println!("xi_{s}(-{}) = {e}", n + 1);
        }
    }
    for (k, a) in alpha.alpha.iter().enumerate() {
        println!("alpha(-{}) = {a}", k + 1);
    }
    for (i, y) in sol.y.iter().enumerate() {
        println!("Y{} = {y}", i + 1);
        println!(
            "  delta(0.8) = {}",
            delta_at(&ode, y, &ratio(4, 5), 60)?.to_sci(6)
        );
    }
    Ok(())
}
