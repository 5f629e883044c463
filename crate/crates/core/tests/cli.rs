use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn thzq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thzq")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn golden(name: &str, args: &[&str], expected_code: i32) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join(name);
    let mut full = args.to_vec();
    full.extend(["--out", out.to_str().unwrap()]);
    let run = thzq(&full);
    assert_eq!(run.status.code(), Some(expected_code), "{}", String::from_utf8_lossy(&run.stderr));
    let got = std::fs::read_to_string(&out).unwrap();
    let want = std::fs::read_to_string(fixture(name)).unwrap();
    assert_eq!(got, want, "{name} differs from its fixture");
}

#[test]
fn entanglement_gen_matches_fixture() {
    golden(
        "entanglement_gen.csv",
        &["entanglement-gen", "--temp", "30:296", "--points", "4", "--squeeze-db", "0,10"],
        0,
    );
}

#[test]
fn entanglement_dist_matches_fixture() {
    golden("entanglement_dist.csv", &["entanglement-dist", "--points", "5"], 0);
}

#[test]
fn keyrate_matches_fixture() {
    golden("keyrate.csv", &["keyrate", "--freq", "2e13,5e13", "--temp", "30", "--points", "4"], 0);
}

#[test]
fn accessible_freq_matches_fixture() {
    golden("accessible_freq.csv", &["accessible-freq", "--points", "3"], 0);
}

#[test]
fn min_aperture_flags_unreachable_rows() {
    golden(
        "min_aperture.csv",
        &["min-aperture", "--freq", "1e11,1e13,3e13", "--eta", "0.1,1"],
        1,
    );
    let text = std::fs::read_to_string(fixture("min_aperture.csv")).unwrap();
    assert_eq!(text.matches("no_root").count(), 2);
}

#[test]
fn radar_matches_fixture() {
    golden("radar.csv", &["radar", "--nb", "0.246,5.681", "--kappa", "0.01", "--ns", "0.01"], 0);
}

#[test]
fn headers_are_stable() {
    let expected = [
        ("entanglement_gen.csv", "freq_hz,temp_k,squeeze_db,nbar,e_ln"),
        ("entanglement_dist.csv", "freq_hz,squeeze_db,transmissivity,e_ln_out"),
        ("keyrate.csv", "freq_hz,temp_k,dist_m,transmissivity,rate_bits_per_use,plob_bits_per_use"),
        ("accessible_freq.csv", "transmissivity,temp_k,eta,f_access_hz,eq13_bound_hz,status"),
        ("min_aperture.csv", "freq_hz,temp_k,eta,ra_min_m,ra_min_plob_m,status"),
        ("radar.csv", "freq_hz,temp_k,nb,kappa,ns,exponent_q,exponent_c,advantage_db,status"),
    ];
    for (file, header) in expected {
        let text = std::fs::read_to_string(fixture(file)).unwrap();
        assert_eq!(text.lines().next(), Some(header));
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["keyrate", "--points", "25"];
    let (a, b) = (thzq(&args), thzq(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8_lossy(&a.stdout).lines().count(), 1 + 4 * 2 * 25);
}

#[test]
fn sidecar_reproduces_output() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.csv");
    let second = dir.path().join("second.csv");
    let run = thzq(&[
        "accessible-freq",
        "--temp",
        "77",
        "--eta",
        "0.3",
        "--points",
        "7",
        "--log",
        "--out",
        first.to_str().unwrap(),
    ]);
    assert!(run.status.success());
    let meta = dir.path().join("first.csv.meta");
    let sidecar = std::fs::read_to_string(&meta).unwrap();
    assert!(sidecar.starts_with("command = accessible-freq\n"));
    assert!(sidecar.contains("log = true"));
    let again = thzq(&["accessible-freq", "--config", meta.to_str().unwrap(), "--out", second.to_str().unwrap()]);
    assert!(again.status.success());
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());
}

#[test]
fn argument_errors_exit_with_two() {
    for args in [
        &["keyrate", "--kappa", "0.1"][..],
        &["keyrate", "--eta", "0.1,0.2"],
        &["keyrate", "--points", "1"],
        &["keyrate", "--freq", "abc"],
        &["accessible-freq", "--eta", "2"],
        &["radar", "--log", "--linear"],
        &["teleport"],
    ] {
        let out = thzq(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "freq 1e13\n").unwrap();
    assert_eq!(thzq(&["keyrate", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
    let wrong = dir.path().join("wrong.conf");
    std::fs::write(&wrong, "command = radar\n").unwrap();
    assert_eq!(thzq(&["keyrate", "--config", wrong.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("missing.conf");
    assert_eq!(thzq(&["keyrate", "--config", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn flags_beat_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("k.conf");
    std::fs::write(&conf, "# two frequencies\nfreq = 1e13,2e13\ntemp = 30\ndist = 1e4\n").unwrap();
    let out = thzq(&["keyrate", "--config", conf.to_str().unwrap(), "--freq", "5e13"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("5.00000000e13,3.00000000e1,1.00000000e4,"));
}
