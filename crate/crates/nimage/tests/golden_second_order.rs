//! Second-order coefficient tables against published values.

use nimage::expr::{parse, parse_at};
use nimage::nimage2::{assemble2, XiTable2};
use nimage::numbers::ratio;
use nimage::Expr;

fn p(s: &str) -> Expr {
    parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn table(a: &str) -> XiTable2 {
    XiTable2::new(p(a))
}

#[track_caller]
fn check(t: &mut XiTable2, k: usize, n: usize, want: &Expr) {
    let (m1, m2) = t.xi_neg(k).unwrap();
    let got = if n == 1 { m1 } else { m2 };
    assert_eq!(&got, want, "xi_{k}(-{n}): got {got}, want {want}");
}

#[test]
fn airy_rows() {
    let mut t = table("x");
    let rows = [
        ("-x^3/6", "-x^4/12"),
        ("-x^6/180", "-x^7/280"),
        ("-x^9/12960", "-x^10/18144"),
        ("-x^12/1710720", "-23*x^13/51891840"),
    ];
    for (k, (a, b)) in rows.iter().enumerate() {
        check(&mut t, k, 1, &p(a));
        check(&mut t, k, 2, &p(b));
    }
}

#[test]
fn airy_partial_solutions() {
    let s = assemble2(&p("x"), 7).unwrap();
    let y1 = p("-1 - x^3/6 - x^6/180 - x^9/12960 - x^12/1710720 - x^15/359251200 - x^18/109930867200 - x^21/46170964224000 - x^24/25486372251648000");
    let y2 = p("x + x^4/12 + x^7/504 + x^10/45360 + x^13/7076160 + x^16/1698278400 + x^19/580811212800 + x^22/268334780313600 + x^25/161000868188160000");
    assert_eq!(s.y1, y1);
    assert_eq!(s.y2, y2);
}

#[test]
fn exponential_rows() {
    let mut t = table("exp(x)");
    let denoms = [1u64, 4, 36, 576, 14400, 518400, 25401600, 1625702400];
    for (k, d) in denoms.iter().enumerate() {
        check(&mut t, k, 1, &p(&format!("-exp({}*x)/{d}", k + 1)));
    }
}

#[test]
fn sine_rows() {
    let mut t = table("sin(x)");
    check(&mut t, 0, 1, &p("sin(x)"));
    check(&mut t, 0, 2, &p("-2*cos(x)"));
}

// The published sine rows integrate unexpanded trig products (∫sin·cos = sin²/2),
// which carries constants the canonical antiderivative drops.
#[test]
fn sine_rows_offsets() {
    let mut t = table("sin(x)");
    let (m1, m2) = t.xi_neg(1).unwrap();
    let pub1 = p("-9*sin(x)^2/4 + x^2/4 - 2*cos(x)^2");
    let pub2 = p("3*sin(x)*cos(x)/4 - 3*x/4 + x^3/6");
    assert_eq!(m1.try_sub(&pub1).unwrap(), p("5/8"));
    assert_eq!(m2.try_sub(&pub2).unwrap(), p("3*x/4"));
    assert_eq!(m1, p("x^2/4 + cos(2*x)/8 - 3/2"));
}

#[test]
fn log_rows() {
    let mut t = table("ln(x)");
    check(&mut t, 0, 1, &p("-x^2*ln(x)/2 + 3*x^2/4"));
    check(&mut t, 0, 2, &p("-x^3*ln(x)/3 + 11*x^3/18"));
    check(
        &mut t,
        1,
        1,
        &p("-x^4*ln(x)^2/24 + x^4*ln(x)/9 - 25*x^4/432"),
    );
    check(
        &mut t,
        1,
        2,
        &p("-x^5*ln(x)^2/30 + 29*x^5*ln(x)/300 - 2819*x^5/54000"),
    );
    check(
        &mut t,
        2,
        1,
        &p("-x^6*ln(x)^3/720 + 113*x^6*ln(x)^2/21600 - 889*x^6*ln(x)/162000 + 2021*x^6/1215000"),
    );
    check(&mut t, 2, 2, &p("-x^7*ln(x)^3/840 + 2489*x^7*ln(x)^2/529200 - 7489*x^7*ln(x)/1481760 + 12091561*x^7/7779240000"));
    check(&mut t, 3, 1, &p("-x^8*ln(x)^4/40320 + 127*x^8*ln(x)^3/1058400 - 84061*x^8*ln(x)^2/444528000 + 22059049*x^8*ln(x)/186701760000 - 17351633*x^8/697019904000"));
}

#[test]
fn polynomial_rows() {
    let mut t = table("x^7 - 1");
    check(&mut t, 0, 1, &p("-x^9/72 + x^2/2"));
    check(&mut t, 1, 1, &p("-x^18/22032 + 37*x^11/7920 - x^4/24"));
    check(
        &mut t,
        2,
        1,
        &p("-x^27/15466464 + 1429*x^20/115117200 - 367*x^13/1235520 + x^6/720"),
    );
    check(&mut t, 0, 2, &p("-x^10/360 + x^3/3"));
    check(&mut t, 1, 2, &p("-x^19/77520 + 79*x^12/23760 - x^5/30"));
    check(
        &mut t,
        2,
        2,
        &p("-223*x^28/10285198560 + 2207*x^21/241746120 - 703*x^14/2882880 + x^7/840"),
    );
}

#[test]
fn half_integer_rows() {
    let mut t = table("(x - 2)*sqrt(x)");
    check(&mut t, 0, 1, &p("-4*x^(5/2)*(-14 + 3*x)/105"));
    check(&mut t, 1, 1, &p("-2*x^7/735 + 8*x^6/315 - 4*x^5/75"));
    check(
        &mut t,
        2,
        1,
        &p("16*x^(19/2)/41895 - 8*x^(21/2)/293265 - 656*x^(17/2)/401625 + 32*x^(15/2)/14625"),
    );
    check(&mut t, 0, 2, &p("-16*x^(7/2)*(-6 + x)/315"));
    check(&mut t, 1, 2, &p("-x^8/630 + 16*x^7/945 - 4*x^6/105"));
}

#[test]
fn shifted_log_rows() {
    let c = ratio(-1, 1);
    let q = |s: &str| parse_at(s, &c).unwrap();
    let mut t = XiTable2::new(q("(x+1)^(-2)"));
    let rows1 = [
        "ln(x+1)",
        "-ln(x+1)^2/2 - ln(x+1) - 2",
        "ln(x+1)^3/6 + ln(x+1)^2 + 4*ln(x+1) + 6",
        "-ln(x+1)^3/2 - 7*ln(x+1)^2/2 - 13*ln(x+1) - 22 - ln(x+1)^4/24",
        "46*ln(x+1) + ln(x+1)^5/120 + 12*ln(x+1)^2 + 11*ln(x+1)^3/6 + 80 + ln(x+1)^4/6",
    ];
    for (k, r) in rows1.iter().enumerate() {
        check(&mut t, k, 1, &q(r));
    }
    check(&mut t, 0, 2, &q("2*ln(x+1)*(x+1) - 2*x - 2"));
    check(&mut t, 1, 2, &q("-4*ln(x+1)*x - 4*ln(x+1) + 4*x + 4"));
}
