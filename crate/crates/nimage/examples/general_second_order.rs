// y'' = a1*y' + a2*y: adjoint, normal form and multiplier.
use nimage::expr::parse;
use nimage::nimage2::{adjoint2, assemble2, nimage_forward, reduce_to_normal, GeneralOde2};

fn main() -> nimage::Result<()> {
    let ode = GeneralOde2 {
        a1: parse("2")?,
        a2: parse("x - 1")?,
    };
    let adj = adjoint2(&ode);
    println!("adjoint: y'' = ({})*y' + ({})*y", adj.a1, adj.a2);

    let img = nimage_forward(&ode, 3)?;
    println!("y^(5) = ({})*y' + ({})*y", img.alpha, img.beta);

    let (reduced, w) = reduce_to_normal(&ode)?;
    println!("z'' = ({})*z, y = {}*z", reduced.a, w.describe());
    let sol = assemble2(&reduced.a, 3)?;
    println!("z1 = {}", sol.y1);
    println!("z2 = {}", sol.y2);

    // Non-constant a1 leaves the multiplier as exp of an antiderivative.
    let (_, w) = reduce_to_normal(&GeneralOde2 {
        a1: parse("x")?,
        a2: parse("0")?,
    })?;
    println!("w = {}", w.describe());
    Ok(())
}
