//! End-to-end checks of the binary: file formats round-trip byte-exactly,
//! exit codes match the documented classes, and runs are deterministic.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sinlets::transform::BasisKind;
use sinlets::{CoefficientVector64, PhaseKind, SampledSignal64, SinletBasis64};
use sinlets_cli::formats::{
    read_coefficients, read_pgm, read_signal, write_coefficients, write_pgm, write_signal,
};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sinlets"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmpdir() -> tempfile::TempDir {
    tempfile::tempdir().expect("temp dir")
}

fn write_test_signal(path: &Path) {
    let signal = SampledSignal64::from_fn(-10.0, 10.0, 2001, |t: f64| {
        (-t * t / 6.0).exp() * (3.1 * t).sin()
    })
    .unwrap();
    write_signal(path, &signal).unwrap();
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn signal_file_rewrite_is_byte_identical() {
    let dir = tmpdir();
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    write_test_signal(&first);
    let parsed = read_signal(&first).unwrap();
    write_signal(&second, &parsed).unwrap();
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
}

#[test]
fn coefficient_file_rewrite_is_byte_identical() {
    let dir = tmpdir();
    let basis = SinletBasis64::from_params(PhaseKind::Erf, 0.125, 2.75).unwrap();
    let coeffs = CoefficientVector64::new(
        BasisKind::Cos,
        basis,
        vec![1.0 / 3.0, -2.0e-17, 5.5555555555555558e8, 0.0],
    )
    .unwrap();
    let first = dir.path().join("c1.txt");
    let second = dir.path().join("c2.txt");
    write_coefficients(&first, &coeffs).unwrap();
    let parsed = read_coefficients(&first).unwrap();
    assert_eq!(parsed.kind(), BasisKind::Cos);
    assert_eq!(parsed.coeffs(), coeffs.coeffs());
    assert_eq!(parsed.basis().center(), 0.125);
    write_coefficients(&second, &parsed).unwrap();
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
}

#[test]
fn coefficient_file_rejects_unknown_version() {
    let dir = tmpdir();
    let path = dir.path().join("c.txt");
    fs::write(&path, "sinlet-coefficients v9\nfamily erf\n").unwrap();
    let err = read_coefficients(&path).unwrap_err();
    let msg = format!("{err}");
    assert!(msg.contains("unknown format"), "{msg}");
}

#[test]
fn signal_parse_errors_carry_line_numbers() {
    let dir = tmpdir();
    let path = dir.path().join("bad.csv");
    fs::write(&path, "# header\n0.0,1.0\n0.5,oops\n").unwrap();
    let err = read_signal(&path).unwrap_err();
    assert!(format!("{err}").contains(":3:"), "{err}");

    fs::write(&path, "0.0,1.0\n0.0,2.0\n").unwrap();
    let err = read_signal(&path).unwrap_err();
    assert!(format!("{err}").contains("strictly increasing"), "{err}");
}

#[test]
fn pgm_round_trip() {
    let dir = tmpdir();
    let path = dir.path().join("img.pgm");
    let pixels: Vec<f64> = (0..12).map(|i| i as f64 / 11.0).collect();
    write_pgm(&path, 4, 3, &pixels).unwrap();
    let img = read_pgm(&path).unwrap();
    assert_eq!(img.width(), 4);
    assert_eq!(img.height(), 3);
    for (a, b) in img.pixels().iter().zip(&pixels) {
        assert!((a - b).abs() <= 0.5 / 255.0 + 1e-12);
    }

    // comments and multi-token headers parse too
    fs::write(&path, b"P5\n# a comment\n2 2\n255\n\x00\x40\x80\xff").unwrap();
    let img = read_pgm(&path).unwrap();
    assert_eq!(img.pixels()[3], 1.0);

    // 16-bit images are rejected
    fs::write(&path, b"P5\n2 2\n65535\n\x00\x00\x00\x00\x00\x00\x00\x00").unwrap();
    assert!(read_pgm(&path).is_err());
}

#[test]
fn usage_errors_exit_2() {
    let dir = tmpdir();
    let sig = dir.path().join("sig.csv");
    write_test_signal(&sig);

    // malformed grid spec
    let out = run(&[
        "reconstruct",
        sig.to_str().unwrap(),
        "--grid",
        "nonsense",
        "--out",
        dir.path().join("o.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));

    // empty member list is rejected by the parser
    let out = run(&["basis", "--n", "", "--grid", "0:1:10", "--out", "x"]);
    assert_eq!(out.status.code(), Some(2));

    // clap-level: missing required argument
    let out = run(&["decompose"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_3() {
    let dir = tmpdir();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "not,numbers\n").unwrap();
    let out = run(&[
        "decompose",
        bad.to_str().unwrap(),
        "--count",
        "4",
        "--out",
        dir.path().join("c.txt").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));

    // missing file is an io problem, same class
    let out = run(&[
        "decompose",
        dir.path().join("absent.csv").to_str().unwrap(),
        "--count",
        "4",
        "--out",
        dir.path().join("c.txt").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn numerical_domain_errors_exit_4() {
    let dir = tmpdir();
    let sig = dir.path().join("sig.csv");
    write_test_signal(&sig);
    let coeffs = dir.path().join("c.txt");
    let out = run(&[
        "decompose",
        sig.to_str().unwrap(),
        "--count",
        "8",
        "--out",
        coeffs.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    // faster-than-propagation target
    let out = run(&[
        "doppler",
        coeffs.to_str().unwrap(),
        "--speed",
        "1500",
        "--velocity",
        "2000",
        "--distance",
        "10",
        "--grid",
        "0:1:10",
        "--out",
        dir.path().join("echo.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));

    // differentiation refuses coslet coefficients
    let out = run(&[
        "decompose",
        sig.to_str().unwrap(),
        "--count",
        "8",
        "--kind",
        "cos",
        "--out",
        coeffs.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "differentiate",
        coeffs.to_str().unwrap(),
        "--grid",
        "-5:5:100",
        "--out",
        dir.path().join("d.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn aliasing_and_rank_errors_exit_5() {
    let dir = tmpdir();

    // sparse grid cannot host 64 members
    let sparse = dir.path().join("sparse.csv");
    let signal = SampledSignal64::from_fn(-10.0, 10.0, 41, |t: f64| (-t * t).exp()).unwrap();
    write_signal(&sparse, &signal).unwrap();
    let out = run(&[
        "decompose",
        sparse.to_str().unwrap(),
        "--family",
        "logistic",
        "--t0",
        "0",
        "--sigma",
        "1",
        "--count",
        "64",
        "--out",
        dir.path().join("c.txt").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(5), "{}", String::from_utf8_lossy(&out.stderr));

    // samples far outside the basis window leave the fit rank-deficient
    let tail = dir.path().join("tail.csv");
    let signal = SampledSignal64::from_fn(50.0, 60.0, 30, |_| 0.0).unwrap();
    write_signal(&tail, &signal).unwrap();
    let out = run(&[
        "resample",
        tail.to_str().unwrap(),
        "--family",
        "logistic",
        "--t0",
        "0",
        "--sigma",
        "0.05",
        "--count",
        "6",
        "--grid",
        "0:1:10",
        "--out",
        dir.path().join("r.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(5), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn runs_are_deterministic() {
    let dir = tmpdir();
    let sig = dir.path().join("sig.csv");
    write_test_signal(&sig);

    let mut outputs: Vec<(String, Vec<u8>)> = Vec::new();
    for name in ["c1.txt", "c2.txt"] {
        let path = dir.path().join(name);
        let out = run(&[
            "decompose",
            sig.to_str().unwrap(),
            "--count",
            "12",
            "--noise-sigma",
            "0.1",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        outputs.push((stdout(&out), fs::read(&path).unwrap()));
    }
    assert_eq!(outputs[0].0, outputs[1].0, "summaries differ");
    assert_eq!(outputs[0].1, outputs[1].1, "coefficient files differ");
}

#[test]
fn basis_traces_match_library_values() {
    let dir = tmpdir();
    let prefix = dir.path().join("fig");
    let out = run(&[
        "basis",
        "--family",
        "erf",
        "--t0",
        "0",
        "--sigma",
        "2",
        "--n",
        "0..7",
        "--grid",
        "-10:10:101",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary = stdout(&out);
    assert!(summary.contains("op=basis"), "{summary}");
    assert!(summary.contains("members=8"));

    let basis = SinletBasis64::from_params(PhaseKind::Erf, 0.0, 2.0).unwrap();
    for quantity in ["sinlet", "coslet", "nu", "omega2", "psi-abs"] {
        let path: PathBuf = dir.path().join(format!("fig.{quantity}.csv"));
        let text = fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(lines.len(), 101);
        // spot-check one row against the library
        let fields: Vec<f64> = lines[50]
            .split(',')
            .map(|f| f.parse().unwrap())
            .collect();
        assert_eq!(fields.len(), 9);
        let t = fields[0];
        let expected = match quantity {
            "sinlet" => basis.sinlet(3, t),
            "coslet" => basis.coslet(3, t),
            "nu" => basis.inst_frequency(3, t),
            "omega2" => basis.omega_squared(3, t).unwrap(),
            "psi-abs" => basis.psi(3, t).norm(),
            _ => unreachable!(),
        };
        assert_eq!(fields[4], expected, "{quantity} at t={t}");
    }
}

#[test]
fn logistic_frequency_peaks_follow_member_index() {
    // the frequency traces peak at (n+1)/(8 sigma) at the center
    let dir = tmpdir();
    let prefix = dir.path().join("nu");
    let out = run(&[
        "basis",
        "--family",
        "logistic",
        "--t0",
        "0",
        "--sigma",
        "2",
        "--n",
        "0..3",
        "--grid",
        "-10:10:201",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("nu.nu.csv")).unwrap();
    let center_row = text
        .lines()
        .find(|l| l.starts_with("0.0000000000000000e0"))
        .expect("center row");
    let fields: Vec<f64> = center_row.split(',').map(|f| f.parse().unwrap()).collect();
    for (idx, &nu) in fields[1..].iter().enumerate() {
        let expected = (idx as f64 + 1.0) / 16.0;
        assert!((nu - expected).abs() < 1e-12, "n={idx}: {nu}");
    }
}
