use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn cyclo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclo")).args(args).output().expect("binary runs")
}

fn cyclo_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cyclo"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn emit(dir: &Path, name: &str) -> String {
    let o = cyclo(&["catalog", "emit", name]);
    assert_eq!(o.status.code(), Some(0), "emit {name}");
    let p = dir.join(format!("{name}.json"));
    std::fs::write(&p, &o.stdout).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn catalog_round_trip_through_check() {
    let list = stdout(&cyclo(&["catalog", "list"]));
    let mut seen = 0;
    let mut entries: Vec<(String, String)> = Vec::new();
    for line in list.lines() {
        let (name, kind) = line.split_once('\t').unwrap();
        // parameterised names are listed as templates
        let concrete: &[&str] = match name {
            "P_l_r" => &["P_0_3", "P_1_2", "P_2_2"],
            "Pp_l_r" => &["Pp_0_3", "Pp_1_2"],
            "P_n" => &["P_6", "P_7", "P_9"],
            "Pp_n" => &["Pp_6", "Pp_7"],
            "O_n_s" => &["O_5_-1", "O_4_i"],
            _ => &[name],
        };
        entries.extend(concrete.iter().map(|n| (n.to_string(), kind.to_string())));
    }
    for (name, kind) in &entries {
        let (name, kind) = (name.as_str(), kind.as_str());
        let g = cyclo(&["catalog", "emit", name]);
        assert_eq!(g.status.code(), Some(0), "emit {name}");
        let c = cyclo_stdin(&["check", "-"], &g.stdout);
        let out = stdout(&c);
        let want = if kind == "excluded_type1" { "cyclotomic: no" } else { "cyclotomic: yes" };
        // XC_7 and XE_9 are labelled type I but are cyclotomic
        if !(name == "XC_7" || name == "XE_9") {
            assert!(out.starts_with(want), "{name}: {out}");
        }
        let expected_code = if out.starts_with("cyclotomic: yes") { 0 } else { 1 };
        assert_eq!(c.status.code(), Some(expected_code), "{name}");
        if kind.starts_with("maximal") {
            assert!(out.contains("maximal: yes, A^2=4I: yes"), "{name}: {out}");
        }
        seen += 1;
    }
    assert!(seen > 100);
}

#[test]
fn sporadic_check_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = emit(dir.path(), "S_14");
    let o = cyclo(&["check", &f]);
    assert_eq!(stdout(&o).trim(), "cyclotomic: yes, maximal: yes, A^2=4I: yes");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn strong_equivalence_rejects_negation() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    std::fs::write(&a, r#"{"ring":"Z","n":2,"charges":[1,0],"edges":[[0,1,[1,0]]]}"#).unwrap();
    std::fs::write(&b, r#"{"ring":"Z","n":2,"charges":[-1,0],"edges":[[0,1,[-1,0]]]}"#).unwrap();
    let (a, b) = (a.to_str().unwrap(), b.to_str().unwrap());
    assert_eq!(cyclo(&["equiv", a, b, "--strong"]).status.code(), Some(1));
    assert_eq!(cyclo(&["equiv", a, b]).status.code(), Some(0));
}

#[test]
fn lehmer_measure() {
    let o = cyclo(&["mahler", "--poly", "z^10+z^9-z^7-z^6-z^5-z^4-z^3+z+1", "--tol", "1e-9"]);
    assert_eq!(o.status.code(), Some(0));
    let m: f64 = stdout(&o).trim().parse().unwrap();
    assert!((m - 1.176280818).abs() <= 1e-9, "{m}");
}

#[test]
fn cyclotomic_graph_has_measure_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = emit(dir.path(), "S_7");
    let o = cyclo(&["mahler", &f]);
    assert_eq!(stdout(&o).trim().parse::<f64>().unwrap(), 1.0);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["frobnicate"],
        vec!["check"],
        vec!["mahler"],
        vec!["catalog", "emit", "no_such_graph"],
        vec!["check", "/nonexistent/graph.json"],
        vec!["mahler", "--poly", "z^2+", "--tol", "1e-9"],
        vec!["grow", "--ring", "Zq", "--weights", "units", "--max-n", "3", "--out", "/tmp/x"],
    ] {
        assert_eq!(cyclo(&args).status.code(), Some(2), "{args:?}");
    }
    let bad = cyclo_stdin(&["check", "-"], b"{not json");
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn contains_reports_embedding() {
    let dir = tempfile::tempdir().unwrap();
    let g = emit(dir.path(), "S_16");
    let h = emit(dir.path(), "YA_1");
    let o = cyclo(&["contains", &g, &h]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("contains: yes"));
    let small = emit(dir.path(), "S_1");
    assert_eq!(cyclo(&["contains", &small, &g]).status.code(), Some(1));
}

#[test]
fn canon_is_stable_under_scrambling() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    std::fs::write(&a, r#"{"ring":"Zi","n":3,"charges":[0,1,0],"edges":[[0,1,[0,1]],[1,2,[1,0]]]}"#).unwrap();
    std::fs::write(&b, r#"{"ring":"Zi","n":3,"charges":[0,0,1],"edges":[[0,2,[1,0]],[1,2,[-1,0]]]}"#).unwrap();
    let ka = stdout(&cyclo(&["canon", a.to_str().unwrap()]));
    let kb = stdout(&cyclo(&["canon", b.to_str().unwrap()]));
    assert_eq!(ka.lines().next(), kb.lines().next());
}

#[test]
fn grow_writes_reports_and_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let out = out.to_str().unwrap();
    let args = [
        "grow",
        "--ring",
        "Zi",
        "--weights",
        "units",
        "--charges",
        "0",
        "--exclusions",
        "L1",
        "--max-n",
        "6",
        "--out",
        out,
    ];
    let first = cyclo(&args);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let report = std::fs::read_to_string(dir.path().join("run/report.txt")).unwrap();
    assert!(report.contains("6 14"), "{report}");
    let mut again: Vec<&str> = args.to_vec();
    again.extend(["--resume", "--jobs", "2"]);
    let second = cyclo(&again);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(dir.path().join("run/report.txt")).unwrap(), report);
}

#[test]
fn verify_type2_outcomes() {
    let held = cyclo(&["verify", "type2", "--excluded", "YA_7", "--table", "tab3"]);
    assert_eq!(held.status.code(), Some(0), "{}", stdout(&held));
    let dropped = cyclo(&["verify", "type2", "--excluded", "YA_1", "--table", "tab3", "--maximals", "S_8"]);
    assert_eq!(dropped.status.code(), Some(1));
    assert!(stdout(&dropped).contains("counterexample"));
}

#[test]
fn export_dot() {
    let dir = tempfile::tempdir().unwrap();
    let f = emit(dir.path(), "S_4t");
    let o = cyclo(&["export", &f, "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("graph") || stdout(&o).starts_with("digraph"));
}
