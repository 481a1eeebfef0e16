use char3_isogeny_cli::{cmd_example, Format, EXIT_OK};

fn check(n: u8, format: Format, file: &str) {
    let want = std::fs::read_to_string(format!("{}/tests/golden/{file}", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let out = cmd_example(n, format);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(out.stdout, want, "transcript for example {n} changed");
}

#[test]
fn example1_text() {
    check(1, Format::Text, "example1.txt");
}

#[test]
fn example2_text() {
    check(2, Format::Text, "example2.txt");
}

#[test]
fn example3_text() {
    check(3, Format::Text, "example3.txt");
}

#[test]
fn example4_text() {
    check(4, Format::Text, "example4.txt");
}

#[test]
fn example_records() {
    for n in 1..=4 {
        check(n, Format::Records, &format!("example{n}.records"));
    }
}

#[test]
fn example1_notes_the_rejected_candidates() {
    let out = cmd_example(1, Format::Text).stdout;
    assert!(out.contains("solutions: 1\n"));
    assert!(out.contains("eta = x+1 is rejected (residual 1 at X^0)"));
    assert!(out.contains("note: the reference listing gives three solutions"));
}
