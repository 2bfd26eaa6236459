//! End-to-end tests driving the compiled binary.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

use gtlattice::{build_basis, Int, SuitableBinomial, Triple, WMonomial, Wd};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtlattice"))
        .args(args)
        .output()
        .expect("binary should launch")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gtlattice"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary should launch");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary should finish")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn monomials_text_lists_the_system() {
    let out = stdout(&run(&["monomials", "--d", "4"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 11);
    assert_eq!(lines[10], "mu = 10");
    assert!(out.contains("w(2,1,2) = y z^2 t"));
}

#[test]
fn rejects_d_below_four() {
    let out = run(&["monomials", "--d", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("d must be >= 4"));
}

#[test]
fn monomials_json_has_26_entries_for_d9() {
    let out = stdout(&run(&["monomials", "--d", "9", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mu"], 26);
    assert_eq!(v["monomials"].as_array().unwrap().len(), 26);
}

#[test]
fn generator_counts_match_for_small_degrees() {
    let out = stdout(&run(&["generators", "--d", "4"]));
    assert_eq!(out.lines().last().unwrap(), "12 quadrics, 0 cubics");
    for (d, quadrics, cubics) in [("5", 20, 8), ("6", 57, 0)] {
        let out = stdout(&run(&["generators", "--d", d, "--format", "json"]));
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["quadrics"].as_array().unwrap().len(), quadrics);
        assert_eq!(v["cubics"].as_array().unwrap().len(), cubics);
    }
}

#[test]
fn basis_text_reports_shape_and_trivial_snf() {
    let out = stdout(&run(&["basis", "--d", "7"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "14 x 18");
    assert_eq!(
        *lines.last().unwrap(),
        format!("SNF: {}", vec!["1"; 14].join(" "))
    );
}

#[test]
fn basis_override_replaces_one_row() {
    let default_out = stdout(&run(&["basis", "--d", "4"]));
    // Header, anchor line, then rows in anchor order; anchor (1,0,0) is row 1.
    assert_eq!(default_out.lines().nth(3).unwrap(), "0 1 0 0 0 0 0 -2 0 1");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("overrides.json");
    std::fs::write(
        &path,
        r#"{"1,0,0": {"plus": [[1,0,0],[1,0,2]], "minus": [[1,0,1],[1,0,1]]}}"#,
    )
    .unwrap();
    let out = stdout(&run(&[
        "basis",
        "--d",
        "4",
        "--overrides",
        path.to_str().unwrap(),
    ]));
    assert_eq!(out.lines().nth(3).unwrap(), "0 1 -2 1 0 0 0 0 0 0");
    // Only that row changes.
    for i in [2, 4, 5, 6, 7] {
        assert_eq!(out.lines().nth(i).unwrap(), default_out.lines().nth(i).unwrap());
    }
}

#[test]
fn override_for_unknown_anchor_names_it() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("overrides.json");
    std::fs::write(
        &path,
        r#"{"9,9,9": {"plus": [[0,0,0],[2,2,0]], "minus": [[1,1,0],[1,1,0]]}}"#,
    )
    .unwrap();
    let out = run(&["basis", "--d", "4", "--overrides", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("(9,9,9)"));
}

#[test]
fn override_with_mismatched_sides_names_the_anchor() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("overrides.json");
    std::fs::write(
        &path,
        r#"{"1,0,0": {"plus": [[1,0,0]], "minus": [[1,0,1]]}}"#,
    )
    .unwrap();
    let out = run(&["basis", "--d", "4", "--overrides", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("1,0,0"));
}

#[test]
fn verify_passes_for_even_d() {
    let out = stdout(&run(&["verify", "--d", "4", "--max-degree", "4"]));
    assert!(out.contains("PASS: all fibers connected (quadrics)"));
}

#[test]
fn verify_reports_degree_three_obstructions_for_d5() {
    let out = stdout(&run(&["verify", "--d", "5"]));
    assert!(out.contains("degree 3: 164 fibers, 8 disconnected, 8 new generators"));
    assert!(out.contains("degree 4: 355 fibers, 0 disconnected, 0 new generators"));
    assert!(out.contains("computed only: w(0,0,0) w(1,0,0) w(2,3,0), w(1,1,1) w(2,0,5) w(3,5,0)"));
    assert!(out.contains("listed only: (none)"));
    assert!(out.contains("PASS: obstructions confined to degree 3"));
}

#[test]
fn export_mat_emits_the_exponent_matrix() {
    let out = stdout(&run(&["export", "--d", "4", "--format", "mat"]));
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "4 10");
    let rows: Vec<Vec<i64>> = lines
        .map(|l| l.split(' ').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 4);
    for j in 0..10 {
        let col: Vec<i64> = rows.iter().map(|r| r[j]).collect();
        assert_eq!(col.iter().sum::<i64>(), 4, "column {j} is not degree 4");
        assert_eq!(
            (col[1] + 2 * col[2] + 3 * col[3]).rem_euclid(4),
            0,
            "column {j} violates the weight congruence"
        );
    }
}

#[test]
fn export_m2_script_declares_ring_ideal_and_resolution() {
    let out = stdout(&run(&["export", "--d", "4", "--format", "m2"]));
    assert!(out.contains("R = QQ[w_0..w_9];"));
    assert!(out.contains("-- w_0 = w(0,0,0) = x^4"));
    assert!(out.trim_end().ends_with("betti res I"));
    let ideal = out
        .split("I = ideal(")
        .nth(1)
        .unwrap()
        .split(");")
        .next()
        .unwrap();
    assert_eq!(ideal.trim().lines().count(), 12);
}

#[test]
fn export_json_round_trips_the_generators() {
    let out = stdout(&run(&["export", "--d", "5", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["d"], 5);
    assert_eq!(v["mu"], 12);
    assert_eq!(v["triples"].as_array().unwrap().len(), 12);
    assert_eq!(v["basis"]["matrix"].as_array().unwrap().len(), 8);

    // Re-import every generator; constructing a SuitableBinomial re-checks
    // suitability, and the lattice vectors must match a fresh computation.
    let wd = Wd::new(5).unwrap();
    let reimport = |list: &serde_json::Value| -> Vec<Vec<Int>> {
        list.as_array()
            .unwrap()
            .iter()
            .map(|g| {
                let side = |key: &str| {
                    WMonomial::new(
                        g[key]
                            .as_array()
                            .unwrap()
                            .iter()
                            .map(|t| {
                                Triple::new(
                                    t[0].as_i64().unwrap(),
                                    t[1].as_i64().unwrap(),
                                    t[2].as_i64().unwrap(),
                                )
                            })
                            .collect(),
                    )
                };
                SuitableBinomial::new(side("plus"), side("minus"))
                    .expect("exported generator must re-verify as suitable")
                    .lattice_vector(&wd)
                    .unwrap()
            })
            .collect()
    };
    let quadrics = reimport(&v["quadrics"]);
    let expected: Vec<Vec<Int>> = gtlattice::quadric_generators(&wd)
        .iter()
        .map(|b| b.lattice_vector(&wd).unwrap())
        .collect();
    assert_eq!(quadrics, expected);
    assert_eq!(reimport(&v["cubics"]).len(), 8);
}

#[test]
fn identical_runs_are_byte_identical() {
    for args in [
        vec!["export", "--d", "5", "--format", "json"],
        vec!["generators", "--d", "6"],
        vec!["basis", "--d", "8"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {args:?}");
    }
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exponents.mat");
    let direct = stdout(&run(&["export", "--d", "6", "--format", "mat"]));
    let out = run(&[
        "export",
        "--d",
        "6",
        "--format",
        "mat",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
}

#[test]
fn unwritable_out_path_is_an_io_error() {
    let out = run(&[
        "export",
        "--d",
        "4",
        "--format",
        "mat",
        "--out",
        "/nonexistent-dir/out.mat",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("/nonexistent-dir/out.mat"));
}

#[test]
fn reduce_expresses_a_lattice_vector_in_the_basis() {
    // Vector of the quadric w(0,0,0)w(2,0,4) - w(1,0,2)^2 in W_4 order.
    let out = run_with_stdin(&["reduce", "--d", "4"], "1 0 0 -2 0 1 0 0 0 0\n");
    let text = stdout(&out);
    let coeffs: Vec<Int> = text
        .split_whitespace()
        .map(|x| x.parse().unwrap())
        .collect();
    let wd = Wd::new(4).unwrap();
    let sys = build_basis(&wd).unwrap();
    assert_eq!(coeffs.len(), 6);
    let recombined = gtlattice::IntMatrix::row_vec_mul(&coeffs, sys.matrix());
    let target: Vec<Int> = [1, 0, 0, -2, 0, 1, 0, 0, 0, 0]
        .iter()
        .map(|&x| Int::from(x))
        .collect();
    assert_eq!(recombined, target);
}

#[test]
fn reduce_rejects_vectors_outside_the_lattice() {
    let out = run_with_stdin(&["reduce", "--d", "4"], "1 0 0 0 0 0 0 0 0 0\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not in the lattice"));
}

#[test]
fn resource_cap_stops_oversized_runs() {
    let out = run(&["generators", "--d", "13"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("resource limit exceeded"));
}
