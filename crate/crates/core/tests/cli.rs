use std::path::PathBuf;

use fqrank::cli::run;
use fqrank::matfq::write_matrices;
use fqrank::{FieldSpec, MatFq};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<String> = std::iter::once("fqrank").chain(args.iter().copied()).map(String::from).collect();
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fqrank-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn unit_matrices(n: usize, f: &FieldSpec) -> Vec<MatFq> {
    (0..n * n)
        .map(|i| {
            let mut m = MatFq::zeros(n, n, f);
            m.set(i / n, i % n, 1);
            m
        })
        .collect()
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("sweep"));
    let (code, out, _) = call(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn bad_arguments_exit_one() {
    assert_eq!(call(&["thresholds", "--n", "10"]).0, 1);
    assert_eq!(call(&["thresholds", "--n", "10", "--gamma", "1.5"]).0, 1);
    assert_eq!(call(&["no-such-command"]).0, 1);
    assert_eq!(call(&["sweep", "--n", "3", "--q", "6", "--r", "1", "--k", "5", "--trials", "2"]).0, 1);
}

#[test]
fn thresholds_rows() {
    let (code, out, _) = call(&["thresholds", "--n", "100", "--gamma", "0.1", "--p", "0.02"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("kind,value,params"));
    for kind in ["converse", "achievable", "strong", "noisy_converse_alpha", "noisy_achievable_alpha"] {
        assert!(out.lines().any(|l| l.starts_with(&format!("{kind},"))), "{kind} missing");
    }
}

#[test]
fn decode_full_observation() {
    let f = FieldSpec::with_order(3).unwrap();
    let hs = unit_matrices(3, &f);
    // X = e_1 (1, 2, 0) has rank 1
    let x = MatFq::from_rows(&[vec![1, 2, 0], vec![0, 0, 0], vec![0, 0, 0]], &f).unwrap();
    let y = MatFq::from_rows(&[x.as_slice().to_vec()], &f).unwrap();
    let h_path = scratch("h.txt");
    let y_path = scratch("y.txt");
    let out_path = scratch("x.txt");
    std::fs::write(&h_path, write_matrices(&hs)).unwrap();
    std::fs::write(&y_path, y.to_text()).unwrap();

    let (code, out, err) = call(&[
        "decode",
        "--H",
        h_path.to_str().unwrap(),
        "--y",
        y_path.to_str().unwrap(),
        "--q",
        "3",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let row = out.lines().nth(1).unwrap();
    assert!(row.starts_with("unique,1,"), "{row}");
    let got = fqrank::matfq::parse_matrices(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(got, vec![x]);

    let (code, oracle, _) =
        call(&["decode", "--H", h_path.to_str().unwrap(), "--y", y_path.to_str().unwrap(), "--q", "3", "--oracle"]);
    assert_eq!(code, 0);
    assert!(oracle.lines().nth(1).unwrap().starts_with("unique,1,"));
}

#[test]
fn oracle_cap_exits_two() {
    let f = FieldSpec::with_order(2).unwrap();
    let hs = unit_matrices(5, &f)[..3].to_vec();
    let h_path = scratch("h5.txt");
    let y_path = scratch("y5.txt");
    std::fs::write(&h_path, write_matrices(&hs)).unwrap();
    std::fs::write(&y_path, "1 3 2\n0 1 0\n").unwrap();
    let (code, _, err) =
        call(&["decode", "--H", h_path.to_str().unwrap(), "--y", y_path.to_str().unwrap(), "--q", "2", "--oracle"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn config_file_supplies_flags_and_command_line_wins() {
    let cfg = scratch("sweep.toml");
    std::fs::write(&cfg, "n = 3\nq = 2\nr = 1\nk = \"4,9\"\ntrials = 5\nseed = 3\n").unwrap();
    let (code, from_file, err) = call(&["--config", cfg.to_str().unwrap(), "sweep"]);
    assert_eq!(code, 0, "{err}");
    let (_, explicit, _) = call(&["sweep", "--n", "3", "--q", "2", "--r", "1", "--k", "4,9", "--trials", "5", "--seed", "3"]);
    assert_eq!(from_file, explicit);

    let (code, overridden, _) = call(&["--config", cfg.to_str().unwrap(), "sweep", "--trials", "7"]);
    assert_eq!(code, 0);
    assert!(overridden.lines().skip(1).all(|l| l.split(',').nth(9) == Some("7")), "{overridden}");
}

#[test]
fn theta_check_passes() {
    let (code, out, _) = call(&["theta-check", "--q", "3", "--delta", "0.3", "--dmax", "8", "--k", "4"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("d,theta,oracle,abs_dev"));
    // header plus d = 0..=8
    assert_eq!(out.lines().count(), 10);
}

#[test]
fn selftest_passes() {
    let (code, out, _) = call(&["selftest"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().skip(1).all(|l| l.split(',').nth(1) == Some("true")), "{out}");
}

#[test]
fn distance_single_code() {
    let f = FieldSpec::with_order(2).unwrap();
    let h_path = scratch("code.txt");
    std::fs::write(&h_path, write_matrices(&unit_matrices(2, &f)[..2])).unwrap();
    let (code, out, err) = call(&["distance", "--n", "2", "--q", "2", "--k", "2", "--H", h_path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("r,count,"));
    // the code is the matrices supported on the second row: 0, two of rank 1 plus their sum of rank 1
    assert!(out.lines().any(|l| l.starts_with("1,3,")), "{out}");
}
