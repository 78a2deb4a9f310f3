// Entries of the xi table near the diagonal in closed form, checked against
// the general formula and the brute-force sum.
use nimage::expr::parse;
use nimage::nimage2::{xi_bruteforce, xi_closed_diff, ClosedForm, XiTable2};

fn main() -> nimage::Result<()> {
    let a = parse("x^2 + 1")?;
    let mut t = XiTable2::new(a.clone());
    let cases = [
        (ClosedForm::TopOdd, 0, 1),
        (ClosedForm::Top, 0, 0),
        (ClosedForm::Sub1, 1, 0),
        (ClosedForm::Sub2, 2, 0),
    ];
    for p in 1..=4u32 {
        for (form, drop, odd) in cases {
            if drop > p {
                continue;
            }
            let (k, arg) = (p - drop, 2 * p + odd);
            let closed = xi_closed_diff(&a, p, form)?;
            let general = t.xi_general(k as usize, arg as i64)?;
            let brute = xi_bruteforce(&a, k, arg)?;
            println!(
                "xi_{k}({arg}) = {closed}   [general {}, brute force {}]",
                general == closed,
                brute == closed
            );
        }
    }
    Ok(())
}
