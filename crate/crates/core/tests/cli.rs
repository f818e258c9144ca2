use std::process::Command;

fn biramsey(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_biramsey"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn verify_witness_exit_codes() {
    let (code, out, _) = biramsey(&["verify-witness", "paper-5x25"]);
    assert_eq!(code, 0);
    assert!(out.contains("good_coloring = true"));
    let (code, out, _) = biramsey(&["verify-witness", "paper-8x15"]);
    assert_eq!(code, 1);
    assert!(out.contains("paper-discrepancy"));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "2 2\n1 9\n\n").unwrap();
    let (code, _, err) = biramsey(&["verify-witness", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("out of range"));
    let (code, _, _) = biramsey(&["verify-witness", "no-such-witness"]);
    assert_eq!(code, 2);
}

#[test]
fn witness_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    let (code, text, _) = biramsey(&["dump-witness", "paper-7x21"]);
    assert_eq!(code, 0);
    std::fs::write(&path, text).unwrap();
    let (code, out, _) = biramsey(&["verify-witness", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("claim E2") && out.contains("confirmed"));
    // matrix format
    let matrix = dir.path().join("m.txt");
    std::fs::write(&matrix, "2 3\n100\n010\n").unwrap();
    let (code, out, _) = biramsey(&["verify-witness", matrix.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn zmax_exit_codes() {
    let (code, out, _) = biramsey(&["zmax", "2", "2", "2", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("z((2,2),K_{2,2}) = 3 exact"));
    let (code, out, _) = biramsey(&["zmax", "1", "9", "2", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("= 9 exact"));
    let (code, out, _) = biramsey(&["zmax", "8", "16", "4", "4", "--budget", "1000"]);
    assert_eq!(code, 3);
    assert!(out.contains("bounded"));
}

#[test]
fn arrow_exit_codes_and_cnf() {
    let (code, out, _) = biramsey(&["arrow", "10", "14", "2", "2", "4", "4"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# polarity"));
    assert!(out.contains(
        "ARROWS 10 14 | K_{2,2} K_{4,4} | certificate=counting host=10x14 edges=140 z1=42 z2=97"
    ));
    let (code, out, _) = biramsey(&["arrow", "7", "21", "2", "2", "4", "4"]);
    assert_eq!(code, 1);
    assert!(out.contains("NOT-ARROWS 7 21"));

    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("f.cnf");
    let (code, out, _) = biramsey(&[
        "arrow",
        "5",
        "26",
        "2",
        "2",
        "4",
        "4",
        "--budget",
        "10",
        "--emit-cnf",
        cnf.to_str().unwrap(),
    ]);
    assert_eq!(code, 3);
    assert!(out.contains("UNKNOWN 5 26"));
    let text = std::fs::read_to_string(&cnf).unwrap();
    assert!(text.contains("\np cnf 130 78000\n"));

    let answer = dir.path().join("answer.txt");
    std::fs::write(&answer, "s UNSATISFIABLE\n").unwrap();
    let (code, out, _) = biramsey(&[
        "import-sat",
        cnf.to_str().unwrap(),
        answer.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("certificate=external-sat verdict=UNSAT digest=sha256:"));
    let all_true = format!(
        "s SATISFIABLE\nv {} 0\n",
        (1..=130)
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    std::fs::write(&answer, all_true).unwrap();
    let (code, _, err) = biramsey(&[
        "import-sat",
        cnf.to_str().unwrap(),
        answer.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("rejected"));
}

#[test]
fn brm_and_determinism() {
    let (code, out, _) = biramsey(&["brm", "3", "--nmax", "12"]);
    assert_eq!(code, 1);
    assert!(out.contains("none up to n = 12"));
    assert!(out.contains("good_coloring = true"));
    let (code, out, _) = biramsey(&["brm", "10", "--nmax", "20", "--workers", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("BR_10(K_{2,2}, K_{4,4}) = 14"));
    let (_, again, _) = biramsey(&["brm", "10", "--nmax", "20", "--workers", "3"]);
    assert_eq!(out, again);
}
