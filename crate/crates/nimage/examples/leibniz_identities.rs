// Weighted Leibniz sums against their closed forms.
use nimage::expr::parse;
use nimage::leibniz::{
    l_binom_closed, l_power_closed, leibniz_sum, nested_identity, vieta_coeffs, WeightSpec,
};
use nimage::verify::suite_leibniz;

fn main() -> nimage::Result<()> {
    let (u, v) = (parse("x^3 + 1")?, parse("x^4 - 2*x")?);
    let direct = leibniz_sum(WeightSpec::Power(2), &u, &v, 3)?;
    println!("sum i^2 C(3,i) u^(i) v^(3-i) = {direct}");
    println!(
        "closed form                   = {}",
        l_power_closed(2, &u, &v, 3)?
    );
    println!(
        "binomial weight C(i+1, 2)     = {}",
        l_binom_closed(-1, 2, &u, &v, 4)?
    );
    println!(
        "falling factorial k=3         = {:?}",
        vieta_coeffs(3)
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
    );

    let b = [parse("x")?, parse("x^2")?, parse("1")?];
    let (lhs, rhs) = nested_identity(&b, 2, 2, 1)?;
    println!("nested: {lhs} == {rhs}: {}", lhs == rhs);

    for c in suite_leibniz()? {
        println!("{} {}", if c.ok { "PASS" } else { "FAIL" }, c.name);
    }
    Ok(())
}
