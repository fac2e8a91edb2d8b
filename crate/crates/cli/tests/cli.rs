use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qfft(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfft"))
        .args(args)
        .current_dir(dir)
        .env_remove("QFFT_OUT_DIR")
        .output()
        .expect("failed to spawn qfft")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

#[test]
fn fft_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let run = qfft(dir.path(), &["fft", "--backend", "pfa", "--factors", "3,5", "--seed", "7", "--out", "f.csv"]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    let back = qfft(dir.path(), &["fft", "--backend", "direct", "--factors", "3,5", "--in", "f.csv", "--inverse"]);
    assert_eq!(code(&back), 0);
    let text = String::from_utf8(back.stdout).unwrap();
    assert!(text.starts_with("index,real,imag\n-7,"));
    assert_eq!(text.lines().count(), 16);
}

#[test]
fn outputs_are_deterministic_for_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = qfft(dir.path(), &["weyl", "--factors", "3,5", "--seed", "3"]);
    let b = qfft(dir.path(), &["weyl", "--factors", "3,5", "--seed", "3"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.starts_with(b"A,B,real,imag\n-7,-7,"));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["wigner", "--backend", "radix", "--factors", "3,5"][..],
        &["fft", "--backend", "pfa", "--factors", "3,9"],
        &["fft", "--backend", "radix", "--d", "4", "--n", "2"],
        &["fft", "--backend", "radix", "--factors", "3,5"],
        &["weyl"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&qfft(dir.path(), args)), 2, "{args:?}");
    }
}

#[test]
fn file_errors_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let missing = qfft(dir.path(), &["fft", "--factors", "3,5", "--in", "absent.csv"]);
    assert_eq!(code(&missing), 3);
    assert!(String::from_utf8_lossy(&missing.stderr).contains("absent.csv"));

    fs::write(dir.path().join("bad.csv"), "index,real,imag\n-1,0,0\n0,NaN,0\n1,0,0\n").unwrap();
    assert_eq!(code(&qfft(dir.path(), &["fft", "--backend", "direct", "--d", "3", "--in", "bad.csv"])), 3);

    fs::write(dir.path().join("short.csv"), "index,real,imag\n-1,0,0\n0,1,0\n1,0,0\n").unwrap();
    assert_eq!(code(&qfft(dir.path(), &["fft", "--factors", "3,5", "--in", "short.csv"])), 2);
}

#[test]
fn quick_wigner_checks_and_exports_real_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = qfft(dir.path(), &["wigner", "--quick", "--real", "--out", "w.csv"]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(dir.path().join("w.csv")).unwrap();
    assert!(text.starts_with("A,B,value\n"));
    assert_eq!(text.lines().count(), 1 + 105 * 105);
}

#[test]
fn bench_writes_csv_and_plots_under_env_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qfft"))
        .args(["bench", "--suite", "pfa", "--quick", "--reps", "3", "--plot"])
        .current_dir(dir.path())
        .env("QFFT_OUT_DIR", "from_env")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("from_env/bench_pfa.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("D,backend,time_seconds,mult_count,ratio_t_over_d2,ratio_tf_over_dlogd"));
    let first: Vec<_> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "195");
    assert_eq!(first[1], "direct");
    assert_eq!(first[3], "38025");
    assert!(dir.path().join("from_env/bench_pfa_times.svg").exists());
    assert_eq!(code(&qfft(dir.path(), &["bench", "--suite", "radix", "--reps", "2"])), 2);
}

#[test]
fn verify_passes_with_small_budget() {
    let dir = tempfile::tempdir().unwrap();
    let out = qfft(dir.path(), &["verify", "--budget", "45"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS]") && !text.contains("[FAIL]"));
}
