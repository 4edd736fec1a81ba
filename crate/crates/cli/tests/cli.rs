use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn coincide(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coincide")).args(args).output().expect("binary runs")
}

fn run(name: &str, extra: &[&str]) -> (i32, String) {
    let path = scenario(name);
    let mut args = vec!["run", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = coincide(&args);
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).unwrap())
}

fn header<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report
        .lines()
        .take_while(|l| *l != "---")
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
}

#[test]
fn piecewise_pair_iterate_reports_coincidence_near_zero() {
    let (code, out) = run("piecewise-iterate.scn", &[]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(header(&out, "outcome"), Some("CoincidenceFound"));
    let z: f64 = header(&out, "z").unwrap().parse().unwrap();
    assert!(z.abs() < 1e-8);
    let gap: f64 = header(&out, "d(f(z), g(z))").unwrap().parse().unwrap();
    assert!(gap <= 1e-9);
}

#[test]
fn missing_psi_block_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(scenario("piecewise-iterate.scn")).unwrap();
    let path = dir.path().join("no-psi.scn");
    std::fs::write(&path, text.replace("[psi]\nlinear = 4/5\n", "")).unwrap();
    let out = coincide(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[psi]"));
}

#[test]
fn unreadable_file_is_an_input_error() {
    let out = coincide(&["run", "/nonexistent/scenario.scn"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn falsify_seed_42_finds_no_contradiction() {
    let (code, out) = run("falsify.scn", &["--seed", "42"]);
    assert_eq!(code, 0);
    assert_eq!(header(&out, "contradictions"), Some("0"));
    assert_eq!(header(&out, "trials"), Some("1000"));
}

#[test]
fn seed_override_changes_falsify_report() {
    let (_, a) = run("falsify.scn", &["--seed", "1"]);
    let (_, b) = run("falsify.scn", &["--seed", "2"]);
    assert_ne!(a, b);
    assert_eq!(header(&a, "seed"), Some("1"));
}

#[test]
fn same_seed_gives_byte_identical_report_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    for p in [&a, &b] {
        let (code, out) = run("piecewise-check.scn", &["--quiet", "--report", p.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.is_empty());
    }
    let (ra, rb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!ra.is_empty());
    assert_eq!(ra, rb);
}

#[test]
fn report_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    let (_, out) = run("diamond.scn", &["--report", path.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), out);
}

#[test]
fn scenario_corpus_exit_codes() {
    let expected = [
        ("banach4.scn", 0),
        ("cyclic.scn", 0),
        ("cyclic-check.scn", 0),
        ("diamond.scn", 0),
        ("diamond-check.scn", 0),
        ("reciprocal-expdecay.scn", 1),
        ("exp-square.scn", 0),
        ("log-sqrt.scn", 1),
        ("piecewise-check.scn", 0),
        ("kannan.scn", 0),
        ("permutation.scn", 1),
    ];
    for (name, code) in expected {
        let (got, out) = run(name, &[]);
        assert_eq!(got, code, "{name}\n{out}");
        assert_eq!(header(&out, "exit"), Some(code.to_string().as_str()), "{name}");
    }
}

#[test]
fn reciprocal_names_the_admissibility_witness() {
    let (_, out) = run("reciprocal-expdecay.scn", &[]);
    let row = out.lines().find(|l| l.starts_with("admissible,")).unwrap();
    assert!(row.contains(",fail,") && row.contains("witness"), "{row}");
    assert!(out.lines().any(|l| l.starts_with("admissible-wrt-g,pass,")));
}

#[test]
fn iterate_trace_rows_are_machine_readable() {
    let (_, out) = run("cyclic.scn", &[]);
    let table: Vec<&str> = out.lines().skip_while(|l| *l != "---").skip(1).collect();
    assert_eq!(table[0], "n,x,gx,fx,step,alpha,bound");
    let steps: usize = header(&out, "steps").unwrap().parse().unwrap();
    assert_eq!(table.len(), steps + 2);
    for (i, row) in table[1..].iter().enumerate() {
        assert_eq!(row.split(',').count(), 7);
        assert_eq!(row.split(',').next().unwrap(), i.to_string());
    }
}

#[test]
fn help_lists_flags() {
    let out = coincide(&["run", "--help"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for flag in ["--report", "--seed", "--quiet"] {
        assert!(text.contains(flag), "{flag}");
    }
}
