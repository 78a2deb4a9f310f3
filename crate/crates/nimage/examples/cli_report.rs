// The command-line front end driven in-process.
//
// $ cargo run --bin nimage -- solvem --order 3 --coeff a3=ln(x) --terms 2 --format json
fn main() {
    let runs: [&[&str]; 4] = [
        &["nimage", "xi", "--a", "x", "--k", "1", "--arg", "-1"],
        &[
            "nimage", "solve2", "--a", "x", "--terms", "3", "--grid", "0.5:1:2", "--format", "csv",
        ],
        &[
            "nimage", "solvem", "--order", "3", "--coeff", "a3=ln(x)", "--terms", "1", "--grid",
            "0.5:1:2", "--format", "json",
        ],
        &["nimage", "selftest", "crosscheck"],
    ];
    for args in runs {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = nimage::cli::run(args.iter(), &mut out, &mut err);
        println!("$ {}  -> exit {code}", args[1..].join(" "));
        print!(
            "{}{}",
            String::from_utf8_lossy(&out),
            String::from_utf8_lossy(&err)
        );
    }
}
