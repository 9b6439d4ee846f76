use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_comb-rotor"))
        .args(args)
        .arg("--output-dir")
        .arg(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn aggregate_checks_shape_and_odometer() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["aggregate", "--m", "2", "--check-shape"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let cluster = fs::read_to_string(dir.path().join("cluster.csv")).unwrap();
    assert_eq!(cluster.lines().count(), 16);

    let out = run(dir.path(), &["aggregate", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_to_string(dir.path().join("cluster.csv")).unwrap(), "x,y\n0,0\n");

    let out = run(dir.path(), &["aggregate", "--m", "10", "--check-shape", "--check-odometer"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("odometer equals u_10: ok"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["aggregate", "--n", "3", "--check-shape"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["aggregate"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["aggregate", "--n", "1000", "--budget", "10"]).status.code(), Some(3));
    assert_eq!(run(dir.path(), &["harmonic", "--cap", "0", "--method", "rotor"]).status.code(), Some(2));
}

#[test]
fn artifacts_are_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["aggregate", "--m", "4", "--svg", "--labels", "--snapshot", "--format", "json"];
    let names = ["cluster.json", "odometer.json", "cluster.svg", "snapshot.json", "run.json"];
    assert_eq!(run(a.path(), &args).status.code(), Some(0));
    let first: Vec<Vec<u8>> = names.iter().map(|n| fs::read(a.path().join(n)).unwrap()).collect();
    assert_eq!(run(a.path(), &args).status.code(), Some(0));
    for (name, bytes) in names.iter().zip(&first) {
        assert_eq!(&fs::read(a.path().join(name)).unwrap(), bytes, "{name}");
    }

    let snap = a.path().join("snapshot.json");
    let out = run(b.path(), &["render", "--snapshot", snap.to_str().unwrap(), "--labels"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read(b.path().join("render.svg")).unwrap(), first[2]);
}

#[test]
fn halfline_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["halfline", "--n", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("halfline.csv")).unwrap();
    assert_eq!(csv, "y,simulated,formula\n0,0,0\n1,7,7\n2,2,2\n3,0,0\n");
}

#[test]
fn verify_range_and_mutation() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["verify", "--m-min", "2", "--m-max", "12", "--diff"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("m=2: outside the range of the closed form, skipped"));
    assert!(text.contains("m=12 n=993: (a) true (b) true (c) true (d) true"));
    assert!(dir.path().join("diff_m7.csv").exists());

    let out = run(dir.path(), &["aggregate", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let odometer = fs::read_to_string(dir.path().join("odometer.csv")).unwrap();
    let mutated = odometer.replacen("0,0,", "0,0,1", 1);
    let path = dir.path().join("mutated.csv");
    fs::write(&path, mutated).unwrap();
    let out = run(dir.path(), &["verify", "--odometer", path.to_str().unwrap(), "--n", "33"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("violated (a)"), "{}", stdout(&out));
}

#[test]
fn harmonic_measures() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["harmonic", "--profile", "square", "--m", "4", "--method", "recursion"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("harmonic.csv")).unwrap();
    let e: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(e.len(), 16);
    assert!(e.iter().all(|&x| x == e[0]));

    let table = dir.path().join("h.txt");
    fs::write(&table, "0 1 4 9").unwrap();
    let profile = format!("file:{}", table.display());
    let out = run(dir.path(), &["harmonic", "--profile", &profile, "--m", "3", "--compare", "recursion,rotor"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let out = run(dir.path(), &["harmonic", "--m", "3", "--emit", "json", "--method", "rotor"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(fs::read_to_string(dir.path().join("harmonic.json")).unwrap().contains("\"nu_den\""));
}

#[test]
fn cluster_recursion_against_monte_carlo() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["harmonic", "--profile", "cluster", "--m", "5", "--compare", "recursion,montecarlo", "--samples", "1000000"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn constant_bracket() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["harmonic", "--estimate-c", "--max-x", "3000"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("0 < lower <= upper < 1/2: ok"));
}
