//! m-order coefficient rows against published values. The adjoint
//! coefficients are fed in directly.

use nimage::expr::parse;
use nimage::morder::{AdjointCoeffs, XiMatrix};
use nimage::Expr;

fn p(s: &str) -> Expr {
    parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// `b_m = last`, all lower coefficients zero unless given.
fn matrix(b: &[&str]) -> XiMatrix {
    XiMatrix::new(&AdjointCoeffs {
        b: b.iter().map(|s| p(s)).collect(),
    })
}

fn sparse(m: usize, last: &str) -> XiMatrix {
    let mut b = vec!["0"; m];
    b[m - 1] = last;
    matrix(&b)
}

#[track_caller]
fn check(mat: &mut XiMatrix, s: usize, n: usize, want: &str) {
    let got = mat.xi(s, n).unwrap();
    assert_eq!(got, p(want), "xi_{s}(-{n}): got {got}, want {want}");
}

#[test]
fn second_order_sqrt() {
    let mut m = matrix(&["-x", "-1 + sqrt(x)"]);
    check(&mut m, 0, 1, "-4*x^(5/2)/15");
    check(&mut m, 0, 2, "x^3/6 - 16*x^(7/2)/105");
    check(&mut m, 1, 1, "-8*x^(9/2)/189 - x^5/75");
    check(&mut m, 1, 2, "x^5/40 - 202*x^(11/2)/10395 - x^6/105");
    check(
        &mut m,
        2,
        1,
        "-16*x^(13/2)/3003 - 103*x^7/39690 - 4*x^(15/2)/14625",
    );
    check(
        &mut m,
        3,
        1,
        "-32*x^(17/2)/58905 - 2*x^10/658125 - 23974*x^(19/2)/416645775 - 19049*x^9/58378320",
    );
    check(
        &mut m,
        6,
        1,
        "-16*x^(35/2)/45893112890625 - 484620533*x^17/21046963402339875000 - 12765560791*x^(33/2)/21400023011543426250 \
         - 2190648114461*x^16/284018738586382800000 - 4641299551073*x^(31/2)/89085534027349860000 \
         - 7334349511*x^15/42501868849440000 - 256*x^(29/2)/1185622515",
    );
}

#[test]
fn third_order_log() {
    let mut m = sparse(3, "-ln(x)");
    check(&mut m, 0, 1, "-x^3*ln(x)/6 + 11*x^3/36");
    check(&mut m, 0, 2, "-x^4*ln(x)/8 + 25*x^4/96");
    check(&mut m, 0, 3, "-x^5*ln(x)/20 + 137*x^5/1200");
    check(
        &mut m,
        1,
        1,
        "-x^6*ln(x)^2/720 + 23*x^6*ln(x)/5400 - 1477*x^6/648000",
    );
    check(
        &mut m,
        1,
        2,
        "-x^7*ln(x)^2/840 + 2711*x^7*ln(x)/705600 - 311287*x^7/148176000",
    );
    check(
        &mut m,
        1,
        3,
        "-x^8*ln(x)^2/1920 + 101*x^8*ln(x)/57600 - 1349*x^8/1382400",
    );
    check(&mut m, 2, 1, "-x^9*ln(x)^3/362880 + 1177*x^9*ln(x)^2/101606400 - 534073*x^9*ln(x)/42674688000 + 78985223*x^9/21508042752000");
    check(&mut m, 2, 2, "-x^10*ln(x)^3/403200 + 173*x^10*ln(x)^2/16128000 - 1671821*x^10*ln(x)/142248960000 + 1246810127*x^10/358467379200000");
    check(
        &mut m,
        2,
        3,
        "-x^11*ln(x)^3/887040 + 11381*x^11*ln(x)^2/2276736000 - 262430569*x^11*ln(x)/47333341440000 + 4337898706921*x^11/2624160449433600000",
    );
    check(
        &mut m,
        3,
        1,
        "-x^12*ln(x)^4/479001600 + 48977*x^12*ln(x)^3/4425974784000 - 3400217*x^12*ln(x)^2/189333365760000 \
         + 2080291347473*x^12*ln(x)/188939552359219200000 - 270831271860293*x^12/124700104557084672000000",
    );
    check(
        &mut m,
        3,
        2,
        "-x^13*ln(x)^4/518918400 + 1297129*x^13*ln(x)^3/124664956416000 - 42571146511*x^13*ln(x)^2/2495792427448320000 \
         + 631077790360889*x^13*ln(x)/59958917277018439680000 - 2682230364401164069*x^13/1286118775592045531136000000",
    );
    check(
        &mut m,
        3,
        3,
        "-x^14*ln(x)^4/1117670400 + 20291*x^14*ln(x)^3/4130909798400 - 129227873*x^14*ln(x)^2/15904002723840000 \
         + 1482179880221*x^14*ln(x)/293905970336563200000 - 11259303206003*x^14/11221864321941504000000",
    );
}

#[test]
fn fifth_order_exponential() {
    let mut m = sparse(5, "-x*exp(-x)");
    let row0 = [
        "(5 + x)*exp(-x)",
        "-5*(6 + x)*exp(-x)",
        "15*(7 + x)*exp(-x)",
        "-35*(8 + x)*exp(-x)",
        "70*(9 + x)*exp(-x)",
    ];
    for (n, w) in row0.iter().enumerate() {
        check(&mut m, 0, n + 1, w);
    }
    let row1 = [
        "-exp(-2*x)*(20 + 10*x + x^2)/32",
        "15*exp(-2*x)*(47 + 22*x + 2*x^2)/128",
        "-5*exp(-2*x)*(1359 + 600*x + 50*x^2)/256",
        "15*exp(-2*x)*(1582 + 663*x + 51*x^2)/256",
        "-15*exp(-2*x)*(35 + 14*x + x^2)/2",
    ];
    for (n, w) in row1.iter().enumerate() {
        check(&mut m, 1, n + 1, w);
    }
    check(
        &mut m,
        2,
        1,
        "exp(-3*x)*(670 + 570*x + 135*x^2 + 9*x^3)/69984",
    );
    check(
        &mut m,
        3,
        1,
        "-exp(-4*x)*(77065 + 95120*x + 37680*x^2 + 5760*x^3 + 288*x^4)/2293235712",
    );
}

#[test]
fn eleventh_order_power() {
    let mut m = sparse(11, "-x^(3/2)");
    let row0 = [
        "2048/2635284526875",
        "4096/6468425656875",
        "16384/62528114683125",
        "32768/447316512733125",
        "32768/2108777845741875",
        "65536/24602408200321875",
        "1048576/2730867310235728125",
        "2097152/43854516217314928125",
        "1048576/199781684989990228125",
        "2097152/4069237478480327278125",
        "8388608/183115686531614727515625",
    ];
    for (n, c) in row0.iter().enumerate() {
        check(&mut m, 0, n + 1, &format!("-{c}*x^(3/2)*x^{}", 11 + n));
    }
    check(&mut m, 1, 1, "-x^25/228946962777586569140625");
    check(&mut m, 1, 2, "-x^26/256332963109833766406250");
    check(&mut m, 1, 3, "-3338*x^27/1906732746092498471412890625");
}

#[test]
fn thirteenth_order_exponential() {
    let mut m = sparse(13, "exp(4*x)");
    let row0 = [
        "1/67108864",
        "13/268435456",
        "91/1073741824",
        "455/4294967296",
        "455/4294967296",
        "1547/17179869184",
        "4641/68719476736",
        "12597/274877906944",
        "62985/2199023255552",
        "146965/8796093022208",
        "323323/35184372088832",
        "676039/140737488355328",
        "676039/281474976710656",
    ];
    for (n, c) in row0.iter().enumerate() {
        check(&mut m, 0, n + 1, &format!("{c}*exp(4*x)"));
    }
    // Published with the opposite sign; ξ₁ is quadratic in b while ξ₀ is linear,
    // so both rows cannot carry the same sign of b₁₃.
    let row1 = [
        "1/36893488147419103232",
        "39/295147905179352825856",
        "793/2361183241434822606848",
        "11193/18889465931478580854784",
        "61607/75557863725914323419136",
        "35217/37778931862957161709568",
        "2227589/2417851639229258349412352",
        "15643563/19342813113834066795298816",
        "199012021/309485009821345068724781056",
        "1163645223/2475880078570760549798248448",
    ];
    for (n, c) in row1.iter().enumerate() {
        check(&mut m, 1, n + 1, &format!("-{c}*exp(8*x)"));
    }
}
