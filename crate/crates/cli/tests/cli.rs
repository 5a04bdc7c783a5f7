use std::path::Path;
use std::process::{Command, Output};

fn nilweight(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilweight")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn check_golden(args: &[&str], file: &str, code: i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "machine"]);
    let o = nilweight(&full);
    assert_eq!(o.status.code(), Some(code), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), golden(file), "{args:?}");
}

#[test]
fn golden_outputs() {
    check_golden(&["verify-a", "--group", "S4", "--pi", "2"], "verify_a_s4_2.txt", 0);
    check_golden(&["verify-a", "--group", "A5", "--pi", "2,3,5"], "verify_a_a5_235.txt", 1);
    check_golden(&["verify-b", "--group", "S4", "--pi", "3"], "verify_b_s4_3.txt", 0);
    check_golden(&["chartab", "--group", "S4"], "chartab_s4.txt", 0);
    check_golden(&["carter", "--group", "S4"], "carter_s4.txt", 0);
    check_golden(&["weights", "--group", "S4", "--pi", "2"], "weights_s4_2.txt", 0);
    check_golden(&["bijection", "--group", "A4", "--pi", "2"], "bijection_a4_2.txt", 0);
}

#[test]
fn warm_cache_gives_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    for group in ["S4", "A5", "C3:C4"] {
        let args = ["chartab", "--group", group, "--format", "machine", "--cache-dir", d];
        let cold = nilweight(&args);
        assert!(std::fs::read_dir(d).unwrap().count() > 0);
        let warm = nilweight(&args);
        let plain = nilweight(&args[..5]);
        assert_eq!(cold.status.code(), Some(0));
        assert_eq!(stdout(&cold), stdout(&warm));
        assert_eq!(stdout(&cold), stdout(&plain));
    }
}

#[test]
fn group_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("d10.grp");
    std::fs::write(&good, "# dihedral of order 10\nname: D10\ndegree: 5\ngen: (1,2,3,4,5)\ngen: (2,5)(3,4)\norder: 10\n").unwrap();
    let o = nilweight(&["classes", "--group", good.to_str().unwrap(), "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("order\t10\n"));

    let bad = dir.path().join("bad.grp");
    std::fs::write(&bad, "name: X\ndegree: 3\ngen: (1,2,2)\n").unwrap();
    let o = nilweight(&["classes", "--group", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3, column 6"), "{err}");
}

#[test]
fn errors_exit_with_two() {
    for args in [
        &["no-such-command"][..],
        &["classes", "--group", "NoSuchGroup"],
        &["verify-a", "--group", "S4", "--pi", "4"],
        &["verify-a", "--group", "S4"],
    ] {
        let o = nilweight(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn human_headline() {
    let o = nilweight(&["verify-a", "--group", "A5", "--pi", "2,3,5"]);
    assert_eq!(o.status.code(), Some(1));
    let first = stdout(&o).lines().next().unwrap().to_string();
    assert_eq!(first, "theorem A on A5 sigma={2,3,5}: lhs 1 rhs 0 fails (hypothesis: solvable Hall subgroup unmet)");
}
