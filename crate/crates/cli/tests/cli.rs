use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qlag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlag"))
        .args(args)
        .env_remove("QLAG_PRECISION_BITS")
        .output()
        .expect("spawn qlag")
}

fn code(args: &[&str]) -> i32 {
    qlag(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let out = qlag(&[args, &["--format", "json"]].concat());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(qlag(args).stdout).unwrap()
}

#[test]
fn table_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.csv"), dir.path().join("b.csv")];
    for p in &paths {
        let s = p.to_str().unwrap();
        assert_eq!(
            code(&["table1", "--compare", "--format", "csv", "--out", s]),
            0
        );
    }
    let read = |p: &Path| std::fs::read(p).unwrap();
    assert_eq!(read(&paths[0]), read(&paths[1]));

    let text = String::from_utf8(read(&paths[0])).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 13);
    assert!(lines[0].starts_with("q,n,delta,B_n,z_1n,A_n,"));
    assert!(lines[1].starts_with("0.23,2,-1.1,-0.110320175,-0.1102942663,-0.1068100493,"));
    assert!(lines.iter().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn table_rows_keep_printed_digits() {
    let rows = json(&["table1", "--compare"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 12);
    let last = &rows[11];
    assert_eq!(last["q"], "0.89");
    assert_eq!(last["delta"], "-1.81");
    assert_eq!(last["n"], 12);
    let z1: f64 = last["z1"].as_str().unwrap().parse().unwrap();
    assert!(((z1 + 0.00661085) / 0.00661085).abs() <= 1e-4);
    assert_eq!(last["chain_holds"], true);
}

#[test]
fn exit_codes_follow_the_verdict() {
    let grid = ["--q", "0.89", "--delta", "-1.5", "--n", "7"];
    assert_eq!(
        code(&[&["check", "--theorem", "shift1-same-degree"], &grid[..]].concat()),
        0
    );
    assert_eq!(
        code(
            &[
                &["check", "--theorem", "shift1-same-degree", "--perturb", "2"],
                &grid[..]
            ]
            .concat()
        ),
        3
    );
    assert_eq!(
        code(&[
            "check",
            "--theorem",
            "stieltjes-failure",
            "--q",
            "0.997",
            "--delta",
            "-1.121695",
            "--n",
            "26"
        ]),
        4
    );
    // worst verdict across a mixed grid
    assert_eq!(
        code(&[
            "check",
            "--theorem",
            "stieltjes-failure,shift1-same-degree",
            "--q",
            "0.997",
            "--delta",
            "-1.121695",
            "--n",
            "26"
        ]),
        4
    );
}

#[test]
fn bad_parameters_exit_two() {
    assert_eq!(
        code(&[
            "check",
            "--theorem",
            "nope",
            "--q",
            "0.5",
            "--delta",
            "-1.5",
            "--n",
            "3"
        ]),
        2
    );
    assert_eq!(
        code(&["bounds", "--q", "0.5", "--delta", "-0.5", "--n", "3"]),
        2
    );
    assert_eq!(
        code(&["zeros", "--q", "1.5", "--delta", "-1.5", "--n", "3"]),
        2
    );
    assert_eq!(
        code(&["zeros", "--q", "0.5", "--delta", "abc", "--n", "3"]),
        2
    );
    assert_eq!(
        code(&[
            "zeros",
            "--q",
            "0.5",
            "--delta",
            "-1.5",
            "--n",
            "3",
            "--precision-bits",
            "16"
        ]),
        2
    );
    assert_eq!(
        code(&[
            "check",
            "--theorem",
            "point-b",
            "--q",
            "0.5",
            "--delta",
            "-1.5",
            "--n",
            "2"
        ]),
        2
    );
    assert_eq!(
        code(&[
            "moments", "--q", "0.5", "--delta", "-1.5", "--n", "3", "--j-min", "-1", "--j-max", "3"
        ]),
        2
    );
}

#[test]
fn zeros_json_shape() {
    let v = json(&["zeros", "--q", "0.23", "--delta", "-1.1", "--n", "1,2"]);
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 2);
    for rec in list {
        let mut keys: Vec<&str> = rec
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        keys.sort_unstable();
        assert_eq!(keys, ["certified_tol", "neg_count", "spec", "zeros"]);
        assert_eq!(rec["neg_count"], 1);
        assert_eq!(rec["spec"]["precision_bits"], 256);
    }
    let z: f64 = list[1]["zeros"][0].as_str().unwrap().parse().unwrap();
    assert!((z + 0.110294).abs() <= 1e-6);
}

#[test]
fn degree_one_zero_is_the_explicit_root() {
    // q^(delta+1) = 0.25^(-1/2) = 2, so the root is (1 - 2) / 2.
    let v = json(&["zeros", "--q", "0.25", "--delta", "-1.5", "--n", "1"]);
    assert_eq!(v[0]["zeros"][0], "-0.5");
    let e = json(&[
        "eval", "--q", "0.25", "--delta", "-1.5", "--n", "0,1", "--z", "-0.5",
    ]);
    assert_eq!(e[0]["recurrence"], "1");
    assert_eq!(e[1]["recurrence"], "0");
}

#[test]
fn both_evaluation_paths_agree() {
    let v = json(&[
        "eval",
        "--q",
        "0.23,0.997",
        "--delta",
        "-1.9",
        "--n",
        "9",
        "--shift",
        "0..4",
        "--z",
        "-3,0.5,40",
    ]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2 * 5 * 3);
    for r in rows {
        let d: f64 = r["rel_diff"].as_str().unwrap().parse().unwrap();
        assert!(d <= 1e-60, "{r}");
    }
}

#[test]
fn precision_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qlag"))
        .args([
            "zeros", "--q", "0.5", "--delta", "-1.5", "--n", "2", "--format", "json",
        ])
        .env("QLAG_PRECISION_BITS", "512")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["spec"]["precision_bits"], 512);
}

#[test]
fn moments_csv_for_degree_three() {
    let text = stdout(&[
        "moments",
        "--q",
        "0.89",
        "--delta",
        "-1.5",
        "--n",
        "3",
        "--max-order",
        "3",
        "--format",
        "csv",
    ]);
    let verdicts: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(verdicts, ["vanishes", "vanishes", "nonzero", "nonzero"]);
}

#[test]
fn common_zero_search_reports_delta_and_point() {
    let v = json(&[
        "find-common-zero",
        "--kind",
        "c",
        "--q",
        "0.94",
        "--n",
        "26",
        "--lo",
        "-1.99",
        "--hi",
        "-1.85",
    ]);
    let r = &v[0];
    let delta: f64 = r["delta"].as_str().unwrap().parse().unwrap();
    let point: f64 = r["point"].as_str().unwrap().parse().unwrap();
    assert!((delta + 1.92598).abs() <= 1e-5);
    assert!((point - 0.278236).abs() <= 5e-6);
    assert_eq!(r["report"]["verdict"], "holds");
    assert_eq!(r["report"]["is_common"], true);

    assert_eq!(
        code(&[
            "find-common-zero",
            "--kind",
            "c",
            "--q",
            "0.94",
            "--n",
            "26",
            "--lo",
            "-1.5",
            "--hi",
            "-1.49"
        ]),
        2
    );
}

#[test]
fn grid_output_is_sorted_by_parameters() {
    let text = stdout(&[
        "bounds",
        "--q",
        "0.89,0.23",
        "--delta",
        "-1.1,-1.81",
        "--n",
        "7,2",
        "--format",
        "csv",
    ]);
    let keys: Vec<String> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').take(3).collect::<Vec<_>>().join(","))
        .collect();
    assert_eq!(
        keys,
        [
            "0.23,-1.81,2",
            "0.23,-1.81,7",
            "0.23,-1.1,2",
            "0.23,-1.1,7",
            "0.89,-1.81,2",
            "0.89,-1.81,7",
            "0.89,-1.1,2",
            "0.89,-1.1,7",
        ]
    );
}
