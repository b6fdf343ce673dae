use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alphacontent"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn single_coefficient() {
    let o = run(&["coeff", "nbi", "--n", "5", "--p", "2", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "45");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--identity", "nope"][..],
        &["coeff", "nbi", "--n", "3", "--p", "9", "--k", "1"],
        &["growth", "dist", "--lambda", "2,3", "--alpha", "1"],
        &["growth", "dist", "--lambda", "2,1", "--alpha", "-1"],
        &["growth", "dist", "--lambda", "0", "--alpha", "1", "--direction", "down"],
        &["verify", "--identity", "jz", "--config", "/nonexistent/params.cfg"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"), "{args:?}");
    }
}

#[test]
fn verify_json_reports() {
    let o = run(&[
        "verify",
        "--identity",
        "jz",
        "--identity",
        "thm4.1",
        "--n-max",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["id"], "jz");
    assert_eq!(reports[1]["status"], "verified");
    assert_eq!(reports[1]["params"]["n_max"], "4");
    assert!(reports[1]["coefficients"].as_u64().unwrap() > 0);
}

#[test]
fn kernel_json_shape() {
    let o = run(&["growth", "dist", "--lambda", "2,1", "--alpha", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["base"], "2,1");
    assert_eq!(v["alpha"], "1");
    let atoms: Vec<(u64, String)> = v["atoms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| (a["row"].as_u64().unwrap(), a["p"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(atoms, [(1, "3/8".into()), (2, "1/4".into()), (3, "3/8".into())]);

    let o = run(&[
        "growth",
        "dist",
        "--lambda",
        "2,1",
        "--alpha",
        "1",
        "--direction",
        "down",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ps: Vec<&str> = v["atoms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["p"].as_str().unwrap())
        .collect();
    assert_eq!(ps, ["1/2", "1/2"]);
}

#[test]
fn csv_headers() {
    let nbi = stdout(&run(&[
        "coeff", "table", "--family", "nbi", "--max", "2", "--format", "csv",
    ]));
    assert_eq!(nbi.lines().next(), Some("n,p,k,value"));
    assert_eq!(nbi.lines().count(), 9);
    let pbi = stdout(&run(&[
        "coeff", "table", "--family", "pbi", "--max", "3", "--format", "csv",
    ]));
    assert!(pbi.starts_with("lambda,"));
    let s = stdout(&run(&[
        "moments", "s", "--lambda", "2,1", "--alpha", "1", "--r-max", "2", "--method", "all", "--format", "csv",
    ]));
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("r,value,method"));
    assert!(lines.all(|l| !l.starts_with("2,") || l.starts_with("2,3,")));
}

#[test]
fn path_dump() {
    let args = [
        "growth", "sample", "--alpha", "1", "--steps", "4", "--paths", "5", "--seed", "9", "--emit", "paths",
    ];
    let a = stdout(&run(&args));
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines.len(), 5);
    for l in lines {
        let steps: Vec<&str> = l.split('|').collect();
        assert_eq!(steps.len(), 5);
        assert_eq!(steps[0], "0");
        assert_eq!(steps[1], "1");
    }
    assert_eq!(a, stdout(&run(&args)));
}

#[test]
fn sampling_is_deterministic() {
    let args = [
        "growth", "next", "--lambda", "4,2,1", "--alpha", "1", "--paths", "2000", "--seed", "5", "--r-max", "3",
    ];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, run(&args).stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["samples"], 2000);
    assert_eq!(v["moments"].as_array().unwrap().len(), 4);
}

#[test]
fn config_file_sets_defaults() {
    let dir = std::env::temp_dir().join(format!("alphacontent-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("params.cfg");
    std::fs::write(&path, "# small run\nn_max = 3\nalpha-set = 1,2\n").unwrap();
    let p = path.to_str().unwrap();
    let o = run(&["verify", "--identity", "thm4.1", "--config", p, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["params"]["n_max"], "3");
    // command line wins over the file
    let o = run(&[
        "verify",
        "--identity",
        "thm4.1",
        "--config",
        p,
        "--n-max",
        "2",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["params"]["n_max"], "2");

    std::fs::write(&path, "colour = red\n").unwrap();
    assert_eq!(
        run(&["verify", "--identity", "thm4.1", "--config", p]).status.code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_report() {
    let o = run(&["verify", "--identity", "lem11.1", "--order", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("lem11.1"));
    assert!(s.to_lowercase().contains("verified"));
    assert!(!s.contains('\u{1b}'));
}
