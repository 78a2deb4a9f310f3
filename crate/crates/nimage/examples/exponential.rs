// y'' = e^x*y against the closed-form coefficients (k!)^2 and 2H_k/(k!)^2.
use nimage::expr::parse;
use nimage::nimage2::{assemble2, XiTable2};
use nimage::verify::exp_oracle;

fn main() -> nimage::Result<()> {
    let a = parse("exp(x)")?;
    let mut table = XiTable2::new(a.clone());
    for k in 0..=7 {
        println!("xi_{k}(-1) = {}", table.xi_neg(k)?.0);
    }
    let sol = assemble2(&a, 7)?;
    println!("y1 = {}", sol.y1);
    println!("y2 = {}", sol.y2);
    let (b, f) = exp_oracle(8);
    for (k, (bk, fk)) in b.iter().zip(&f).enumerate() {
        println!("k = {k}: e^(kx) carries 1/{bk} in y1, x/{bk} - {fk} in y2");
    }
    Ok(())
}
