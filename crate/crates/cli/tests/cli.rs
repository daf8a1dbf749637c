use std::io::Write;
use std::process::{Command, Output, Stdio};

fn rnashapes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rnashapes")).args(args).output().expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rnashapes"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn poly_prints_polynomial_and_table() {
    let o = rnashapes(&["poly", "--genus", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "z^2 + 2*z^3 + z^4\ngenus,arcs,count\n1,2,1\n1,3,2\n1,4,1\n# total=4\n");
    let o = rnashapes(&["poly", "--genus", "2", "--pg"]);
    assert!(stdout(&o).starts_with("126 - 84*z\n"));
}

#[test]
fn counts_and_kappa() {
    assert_eq!(stdout(&rnashapes(&["count", "--genus", "3"])), "15214144\n");
    assert_eq!(stdout(&rnashapes(&["count", "--genus", "1", "--arcs", "3"])), "2\n");
    assert_eq!(stdout(&rnashapes(&["count", "--genus", "2", "--arcs", "11"])), "0\n");
    let k = stdout(&rnashapes(&["kappa", "--genus", "4"]));
    for v in ["225225", "4660227", "29099070", "56581525"] {
        assert!(k.contains(v), "{k}");
    }
}

#[test]
fn enumerate_small_classes() {
    let o = rnashapes(&["enumerate", "--genus", "1", "--arcs", "2"]);
    assert_eq!(stdout(&o), "ABAB\ngenus,n,count\n1,2,1\n");
    let o = rnashapes(&["enumerate", "--genus", "2", "--arcs", "4", "--jobs", "2"]);
    let text = stdout(&o);
    assert!(text.ends_with("genus,n,count\n2,4,21\n"));
    assert_eq!(text.lines().count(), 23);
}

#[test]
fn oracle_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_rnashapes"))
        .args(["enumerate", "--genus", "1", "--arcs", "3"])
        .env("RNASHAPES_ORACLE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn project_formats() {
    let o = with_stdin(&["project", "--input", "-"], "((..[[..))..]]\n(((...)))\n");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 ABAB 2\n0 EMPTY 0\n");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.txt");
    std::fs::write(&path, "# c\n4: 1,3 2,4\n").unwrap();
    let o = rnashapes(&["project", "--input", path.to_str().unwrap(), "--per-line"]);
    assert_eq!(stdout(&o), "2\t1 ABAB 2\n");
}

#[test]
fn bad_input_is_a_data_error() {
    let o = with_stdin(&["project", "--input", "-"], "ABAB\n((.\n");
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), "1 ABAB 2\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = rnashapes(&["corpus", "--input", "/nonexistent/structures"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(rnashapes(&["count", "--genus", "0"]).status.code(), Some(1));
    assert_eq!(rnashapes(&["bogus"]).status.code(), Some(1));
    assert_eq!(rnashapes(&["sample", "--genus", "1", "--count", "3", "--seed", "1", "--arcs", "9"]).status.code(), Some(1));
    assert_eq!(rnashapes(&["--help"]).status.code(), Some(0));
}

#[test]
fn sampling_is_reproducible() {
    let args = ["sample", "--genus", "2", "--count", "200", "--seed", "7"];
    let a = stdout(&rnashapes(&args));
    let b = stdout(&rnashapes(&[&args[..], &["--jobs", "2"]].concat()));
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 200);
    let c = stdout(&rnashapes(&["sample", "--genus", "2", "--count", "200", "--seed", "8"]));
    assert_ne!(a, c);
}

#[test]
fn sample_then_corpus() {
    let words = stdout(&rnashapes(&["sample", "--genus", "1", "--count", "50", "--seed", "3", "--format", "arcs"]));
    let o = with_stdin(&["corpus", "--input", "-"], &words);
    assert!(o.status.success());
    let report = stdout(&o);
    assert!(report.contains("# totals\ngenus,count\n1,50\n"), "{report}");
    let stats = stdout(&rnashapes(&["sample", "--genus", "1", "--count", "2000", "--seed", "3", "--stats"]));
    assert!(stats.lines().any(|l| l.starts_with("# uniform")), "{stats}");
}

#[test]
fn selftest_reports_failure() {
    let o = rnashapes(&["selftest", "--inject-fault", "kappa"]);
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().nth(1).unwrap().contains("FAIL"));
}
