use powerdec::cli::{run, EXIT_DECODE_FAILURE, EXIT_OK, EXIT_USAGE};

const CODE: [&str; 6] = ["--field", "17", "--n", "16", "--k", "4"];

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("powerdec").chain(args.iter().copied());
    let status = run(argv, &mut out, &mut err);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn with_code<'a>(cmd: &'a str, rest: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd];
    v.extend(CODE);
    v.extend(rest);
    v
}

fn corrupted(errors: &str, seed: &str) -> String {
    let (s, codeword, _) = call(&with_code("encode", &["--message", "1,2,3,4"]));
    assert_eq!(s, EXIT_OK);
    let (s, word, _) = call(&with_code("corrupt", &["--word", codeword.trim(), "--errors", errors, "--seed", seed]));
    assert_eq!(s, EXIT_OK);
    word.trim().to_string()
}

#[test]
fn round_trip_with_both_decoders() {
    let word = corrupted("6", "3");
    for variant in ["gao", "syndrome"] {
        let (s, out, _) = call(&with_code("decode", &["--word", &word, "--ell", "2", "--variant", variant]));
        assert_eq!(s, EXIT_OK);
        assert!(out.contains("status: success"));
        assert!(out.contains("message: [1,2,3,4]"));
        assert!(out.contains("errors: 6"));
    }
}

#[test]
fn corrupt_is_reproducible_and_needs_a_seed() {
    assert_eq!(corrupted("5", "11"), corrupted("5", "11"));
    let (s, _, _) = call(&with_code("corrupt", &["--word", "[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]", "--errors", "2"]));
    assert_eq!(s, EXIT_USAGE);
}

#[test]
fn too_many_errors_exit_one() {
    let word = corrupted("10", "1");
    let (s, out, _) = call(&with_code("decode", &["--word", &word, "--ell", "2"]));
    assert_eq!(s, EXIT_DECODE_FAILURE);
    assert!(out.starts_with("status: failure"));
}

#[test]
fn usage_errors_exit_two() {
    let (s, _, err) = call(&with_code("encode", &["--message", "1,2,3,4,5"]));
    assert_eq!(s, EXIT_USAGE);
    assert!(!err.is_empty());
    let (s, _, _) = call(&["encode", "--field", "16", "--n", "4", "--k", "2", "--message", "1"]);
    assert_eq!(s, EXIT_USAGE);
    let (s, _, _) = call(&["frobnicate"]);
    assert_eq!(s, EXIT_USAGE);
    // syndrome decoding needs nonzero evaluation points
    let (s, _, _) = call(&[
        "decode", "--field", "5", "--n", "5", "--k", "2", "--alphas", "0,1,2,3,4", "--word", "0,0,0,0,0",
        "--variant", "syndrome",
    ]);
    assert_eq!(s, EXIT_USAGE);
}

#[test]
fn simulate_requires_a_seed() {
    let (s, _, _) = call(&with_code("simulate", &["--ell", "2", "--eps-min", "5", "--eps-max", "6", "--trials", "10"]));
    assert_eq!(s, EXIT_USAGE);
    let (s, out, _) =
        call(&with_code("simulate", &["--ell", "2", "--eps-min", "5", "--eps-max", "6", "--trials", "10", "--seed", "1"]));
    assert_eq!(s, EXIT_OK);
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn equiv_and_bounds_print_csv() {
    let (s, out, _) = call(&with_code("equiv", &["--ell", "2", "--eps-min", "6", "--eps-max", "7", "--trials", "20", "--seed", "4"]));
    assert_eq!(s, EXIT_OK);
    assert!(out.starts_with("epsilon,trials,gao_failures,syndrome_failures"));
    let (s, out, _) = call(&["bounds", "--n", "250", "--k", "30", "--q", "251", "--eps-min", "140", "--eps-max", "145"]);
    assert_eq!(s, EXIT_OK);
    assert_eq!(out.lines().next(), Some("epsilon,tau1,tau2,tau3,pf_l2,pf_l3,branch"));
    assert_eq!(out.lines().count(), 7);
}

#[test]
fn selftest_passes() {
    let (s, out, _) = call(&["selftest"]);
    assert_eq!(s, EXIT_OK, "{out}");
}
