use char3_isogeny_cli::*;

fn iso3(args: &[&str]) -> Outcome {
    run(std::iter::once("iso3").chain(args.iter().copied()))
}

const EX4: [&str; 10] = ["--field", "3^2", "--modulus", "t^2+1", "--A", "1", "--B", "2", "--c", "1"];

#[test]
fn construct_example4() {
    let mut args = vec!["construct"];
    args.extend(EX4);
    args.extend(["--seed-beta", "x^2/(x^9+x^3-1)", "--prec", "128"]);
    let out = iso3(&args);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("solutions: 3\n"));
    assert!(out.stdout.contains("solution 1: gamma0 = 2\n"));
    assert!(out.stdout.contains("rational: (x^4+x^2+2*x+1)/(x^3+x+2) (certified to precision 128)"));
}

#[test]
fn construct_example2() {
    let out = iso3(&["construct", "--A", "-1", "--B", "0", "--seed-alpha", "x"]);
    assert_eq!(out.code, EXIT_OK);
    for r in ["rational: x ", "rational: x+1 ", "rational: x+2 "] {
        assert!(out.stdout.contains(r), "missing {r}");
    }
}

#[test]
fn construct_error_codes() {
    assert_eq!(iso3(&["construct", "--A", "0", "--B", "1", "--seed-alpha", "x"]).code, EXIT_INVALID);
    assert_eq!(iso3(&["construct", "--A", "1", "--B", "1", "--c", "0", "--seed-alpha", "x"]).code, EXIT_INVALID);
    assert_eq!(iso3(&["construct", "--A", "1", "--B", "1", "--seed-alpha", "x^2"]).code, EXIT_INVALID);
    assert_eq!(iso3(&["construct", "--A", "1", "--B", "1", "--seed-alpha", "x", "--prec", "15"]).code, EXIT_INVALID);
    assert_eq!(iso3(&["construct", "--A", "1", "--B", "1", "--seed-alpha", "x", "--prec", "8193"]).code, EXIT_INVALID);
    assert_eq!(iso3(&["construct", "--A", "1", "--B", "1"]).code, EXIT_INVALID);
    assert_eq!(iso3(&["construct", "--A", "1+", "--B", "1", "--seed-alpha", "x"]).code, EXIT_PARSE);
    assert_eq!(iso3(&["construct", "--A", "t", "--B", "1", "--seed-alpha", "x"]).code, EXIT_PARSE);
    assert_eq!(iso3(&["construct", "--A", "1", "--B", "1", "--seed-alpha", "2x"]).code, EXIT_PARSE);
    assert_eq!(iso3(&["construct", "--field", "3^2", "--modulus", "t^2+2", "--A", "1", "--B", "1", "--seed-alpha", "x"]).code, EXIT_INVALID);
    assert_eq!(iso3(&["construct", "--field", "3^3", "--modulus", "t^2+1", "--A", "1", "--B", "1", "--seed-alpha", "x"]).code, EXIT_INVALID);
    assert_eq!(iso3(&["construct", "--field", "4", "--A", "1", "--B", "1", "--seed-alpha", "x"]).code, EXIT_INVALID);

    let mut args = vec!["construct"];
    args.extend(EX4);
    args.extend(["--seed-beta", "1/x"]);
    let out = iso3(&args);
    assert_eq!(out.code, EXIT_INCOMPATIBLE);
    assert!(out.stderr.contains("incompatible seed"));
}

#[test]
fn coefficient_seed() {
    let out = iso3(&["construct", "--A", "-1", "--B", "0", "--seed-coeffs", "-1:2", "--format", "records"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("seed_kind=beta\n"));
    assert!(out.stdout.contains("solutions=3\n"));
    let bad = iso3(&["construct", "--A", "-1", "--B", "0", "--seed-coeffs", "0:1"]);
    assert_eq!(bad.code, EXIT_INVALID);
    let unparsable = iso3(&["construct", "--A", "-1", "--B", "0", "--seed-coeffs", "1:"]);
    assert_eq!(unparsable.code, EXIT_PARSE);
}

#[test]
fn verify_codes() {
    assert_eq!(iso3(&["verify", "--A", "1", "--B", "1", "--eta", "x"]).code, EXIT_OK);
    let out = iso3(&["verify", "--A", "1", "--B", "1", "--eta", "x+1"]);
    assert_eq!(out.code, EXIT_VERIFY_FAILED);
    assert!(out.stdout.contains("residual coefficient at X^0 is 1"));
    assert_eq!(iso3(&["verify", "--A", "-1", "--B", "0", "--eta", "(-1)/x"]).code, EXIT_OK);
    assert_eq!(iso3(&["verify", "--A", "-1", "--B", "0", "--eta", "0:1,1:1"]).code, EXIT_OK);
    assert_eq!(iso3(&["verify", "--A", "-1", "--B", "0", "--eta", "1/(x-x)"]).code, EXIT_PARSE);
    let mut args = vec!["verify"];
    args.extend(EX4);
    args.extend(["--eta", "(x^4+x^2+2*x+1)/(x^3+x+2)", "--prec", "256"]);
    assert_eq!(iso3(&args).code, EXIT_OK);
}

#[test]
fn identify_labels() {
    let mut args = vec!["identify"];
    args.extend(EX4);
    args.extend(["--eta", "(x^4+x^2+2*x+1)/(x^3+x+2)", "--max-scalar", "10"]);
    let out = iso3(&args);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.ends_with("scalar: 2\n"));

    let out = iso3(&["identify", "--A", "-1", "--B", "0", "--fx", "x", "--fy", "1"]);
    assert!(out.stdout.ends_with("scalar: 1\n"));
    let out = iso3(&["identify", "--A", "-1", "--B", "0", "--fx", "x+1", "--fy", "1"]);
    assert!(out.stdout.ends_with("scalar: none (translation component present)\n"));
    // E(F3) for y^2 = x^3 + x + 1 is cyclic of order 4, so negation is [3]
    let out = iso3(&["identify", "--A", "1", "--B", "1", "--fx", "x", "--fy", "-1"]);
    assert!(out.stdout.ends_with("scalar: 3\n"), "{}", out.stdout);
    let out = iso3(&["identify", "--A", "-1", "--B", "0", "--fx", "-1/x", "--fy", "1/x^2"]);
    assert!(out.stdout.contains("not a group homomorphism; translation by (0, 0)"));
    let out = iso3(&["identify", "--A", "1", "--B", "1", "--fx", "x+1", "--fy", "1"]);
    assert!(out.stdout.ends_with("scalar: none (map leaves the curve)\n"));
    assert_eq!(iso3(&["identify", "--A", "1", "--B", "1", "--fx", "x+", "--fy", "1"]).code, EXIT_PARSE);
    assert_eq!(iso3(&["identify", "--field", "3^11", "--A", "1", "--B", "1", "--eta", "x"]).code, EXIT_INVALID);
}

#[test]
fn help_is_success() {
    let out = iso3(&["--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("construct"));
}
