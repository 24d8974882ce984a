use std::process::{Command, Output};

use gadget_forge::export::parse_fold;

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gadget-forge"))
        .args(args)
        .env_remove("GADGET_FORGE_PRECISION")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const CUBE: [&str; 6] = ["--alpha", "90", "--beta-l", "90", "--beta-r", "90"];

fn with_cube<'a>(head: &[&'a str], tail: &[&'a str]) -> Vec<&'a str> {
    head.iter().chain(CUBE.iter()).chain(tail.iter()).copied().collect()
}

#[test]
fn build_writes_fold_to_stdout() {
    let o = forge(&with_cube(&["build", "--construction", "third"], &[]));
    assert_eq!(o.status.code(), Some(0));
    let doc = parse_fold(&stdout(&o)).unwrap();
    assert!(doc.edges_assignment.iter().any(|a| a == "M"));
    assert_eq!(doc.report.construction, "third");
}

#[test]
fn invalid_spec_exits_two() {
    let o = forge(&["validate", "--alpha", "90", "--beta-l", "45", "--beta-r", "45"]);
    assert_eq!(o.status.code(), Some(2));
    let o = forge(&["build", "--construction", "third", "--alpha", "200", "--beta-l", "90", "--beta-r", "90"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn valid_spec_reports_gamma() {
    let o = forge(&with_cube(&["validate"], &[]));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("γ = 90.000000000°"));
}

#[test]
fn unsupported_construction_exits_three() {
    // The one-pleat construction needs zero turns.
    let o = forge(&with_cube(&["build", "--construction", "onepleat"], &["--delta-l", "5"]));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(forge(&["build", "--construction", "bogus"]).status.code(), Some(1));
    assert_eq!(forge(&["build", "--construction", "third", "--alpha", "90"]).status.code(), Some(1));
    assert_eq!(forge(&with_cube(&["build", "--construction", "third"], &["--format", "both"])).status.code(), Some(1));
    assert_eq!(forge(&with_cube(&["build", "--construction", "third"], &["--precision", "3"])).status.code(), Some(1));
}

#[test]
fn precision_flag_beats_environment_beats_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("forge.cfg");
    std::fs::write(&cfg, "alpha=90 beta-l=90 beta-r=90\nprecision=6\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_gadget-forge"));
        c.args(["--config", cfg, "frame"]).args(extra).env_remove("GADGET_FORGE_PRECISION");
        if let Some(v) = env {
            c.env("GADGET_FORGE_PRECISION", v);
        }
        stdout(&c.output().unwrap())
    };
    let r_line = |s: String| s.lines().find(|l| l.starts_with("r ")).unwrap().to_string();
    assert_eq!(r_line(run(None, &[])), "r 1.414214");
    assert_eq!(r_line(run(Some("12"), &[])), "r 1.414213562373");

    let build = |env: Option<&str>, flag: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_gadget-forge"));
        c.args(["--config", cfg, "build", "--construction", "third"]).args(flag).env_remove("GADGET_FORGE_PRECISION");
        if let Some(v) = env {
            c.env("GADGET_FORGE_PRECISION", v);
        }
        stdout(&c.output().unwrap())
    };
    assert!(build(None, &[]).contains("1.207107"));
    assert!(build(Some("10"), &[]).contains("1.2071067812"));
    assert!(build(Some("10"), &["--precision", "7"]).contains("1.2071068"));
}

#[test]
fn config_supplies_the_spec_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("forge.cfg");
    std::fs::write(&cfg, "# cube\nalpha=90\nbeta_l=90 beta-r=90\n").unwrap();
    let o = forge(&["--config", cfg.to_str().unwrap(), "validate"]);
    assert_eq!(o.status.code(), Some(0));
    let o = forge(&["--config", cfg.to_str().unwrap(), "validate", "--beta-l", "200"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::write(&cfg, "alhpa=90\n").unwrap();
    assert_eq!(forge(&["--config", cfg.to_str().unwrap(), "validate"]).status.code(), Some(1));
}

#[test]
fn out_both_writes_two_files() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("cube");
    let b = base.to_str().unwrap();
    let o = forge(&with_cube(&["build", "--construction", "second"], &["--format", "both", "--out", b]));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("wrote") && text.starts_with("second:"));
    let fold = std::fs::read_to_string(base.with_extension("fold")).unwrap();
    let svg = std::fs::read_to_string(base.with_extension("svg")).unwrap();
    assert_eq!(svg.matches("<path ").count(), parse_fold(&fold).unwrap().edges_vertices.len());
}

#[test]
fn batch_builds_each_line() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("specs.txt");
    std::fs::write(&list, "alpha=90 beta-l=90 beta-r=90\n\n# skipped\nalpha=100 beta-l=80 beta-r=85 delta-l=3\nalpha=90 beta-l=45 beta-r=45\n")
        .unwrap();
    let out = dir.path().join("out");
    let o = forge(&[
        "build",
        "--construction",
        "third",
        "--batch",
        list.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    // The last line is invalid.
    assert_eq!(o.status.code(), Some(2));
    assert!(out.join("line1.fold").exists() && out.join("line4.fold").exists());
    assert!(!out.join("line5.fold").exists());
    assert!(stdout(&o).contains("line 5: error"));
}

#[test]
fn divide_rejects_wide_gamma() {
    let o = forge(&["divide", "--alpha", "90", "--beta-l", "60", "--beta-r", "60", "--d", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("141.06"));
    let o = forge(&with_cube(&["divide", "--d", "3"], &[]));
    assert_eq!(o.status.code(), Some(0));
    assert!(parse_fold(&stdout(&o)).is_ok());
}

#[test]
fn interfere_prints_the_verdict() {
    let o = forge(&["interfere", "--left", "90,90,90", "--right", "90,90,90", "--shared-len", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert!(t.contains("minimum 0.585786438") && t.contains("verdict COLLIDE"));
    let o = forge(&["interfere", "--left", "90,90,90", "--right", "90,90,90", "--shared-len", "0.6"]);
    assert!(stdout(&o).contains("verdict OK"));
}

#[test]
fn flip_swaps_the_assignment() {
    let a = parse_fold(&stdout(&forge(&with_cube(&["build", "--construction", "third"], &[])))).unwrap();
    let b = parse_fold(&stdout(&forge(&with_cube(&["build", "--construction", "third"], &["--flip"])))).unwrap();
    let count = |d: &gadget_forge::export::FoldDoc, c: &str| d.edges_assignment.iter().filter(|x| x.as_str() == c).count();
    assert_eq!(count(&a, "M"), count(&b, "V"));
    assert_eq!(count(&a, "V"), count(&b, "M"));
}
