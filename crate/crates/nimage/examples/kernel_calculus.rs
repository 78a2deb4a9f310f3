// Exact calculus on the expression kernel.
use nimage::expr::{parse, parse_at, Style};
use nimage::numbers::ratio;

fn main() -> nimage::Result<()> {
    let f = parse("x^2*ln(x) - 3*sqrt(x)")?;
    println!("f      = {f}");
    println!("f'     = {}", f.derivative());
    println!("∫f     = {}", f.antiderivative()?);
    println!("∫∫f    = {}", f.integrate(2)?);

    let g = parse("x^3*exp(2*x) + sin(3*x)")?;
    println!("g''    = {}", g.differentiate(2));
    println!("∫g     = {}", g.antiderivative()?);
    println!("latex  = {}", g.format(Style::Latex));

    // Expressions centered at -1 are polynomials in (x+1).
    let h = parse_at("ln(x+1)/(x+1)^2", &ratio(-1, 1))?;
    println!("∫h     = {}", h.antiderivative()?);

    let x = ratio(4, 5);
    println!("f(4/5) = {}", f.eval_hp(&x, 40)?.to_sci(30));

    // Outside the kernel: one transcendental family per term.
    match parse("ln(x)*exp(x)") {
        Err(e) => println!("error  = {e}"),
        Ok(e) => println!("parsed {e}"),
    }
    Ok(())
}
