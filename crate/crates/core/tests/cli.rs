use std::path::PathBuf;
use std::process::{Command, Output};

fn starshape(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starshape"))
        .args(args)
        .env_remove("STARSHAPE_CACHE")
        .output()
        .expect("binary runs")
}

fn conic_path() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/conic.json").display().to_string()
}

#[test]
fn star_prints_generators() {
    let out = starshape(&["star", "--n", "2", "--s", "3", "--m", "2", "--no-cache"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("x1^3"), "{text}");
}

#[test]
fn json_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<PathBuf> = (0..2).map(|k| dir.path().join(format!("run{k}.json"))).collect();
    for p in &paths {
        let out = starshape(&["star", "--n", "2", "--s", "4", "--m", "3", "--no-cache", "--json", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
}

#[test]
fn verify_passes_for_small_stars() {
    for args in [["--n", "2", "--s", "4", "--m-max", "4"], ["--n", "3", "--s", "4", "--m-max", "3"]] {
        let mut full = vec!["verify", "--no-cache"];
        full.extend(args);
        let out = starshape(&full);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn verify_rejects_too_few_powers() {
    assert_eq!(starshape(&["verify", "--n", "3", "--s", "4", "--m-max", "2", "--no-cache"]).status.code(), Some(2));
}

#[test]
fn custom_target_verdicts() {
    let path = conic_path();
    let good = starshape(&["custom", "--points", &path, "--m-max", "3", "--expect-vertices", "2,3", "--no-cache"]);
    assert_eq!(good.status.code(), Some(0), "{}", String::from_utf8_lossy(&good.stdout));
    let bad = starshape(&["custom", "--points", &path, "--m-max", "3", "--expect-vertices", "2,2", "--no-cache"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn malformed_points_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"dim": 2, "points": [["1","2","1"],["1","x","1"]]}"#).unwrap();
    let out = starshape(&["custom", "--points", path.to_str().unwrap(), "--m-max", "2", "--no-cache"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("points[1]"));
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(starshape(&["star", "--n", "2"]).status.code(), Some(2));
    assert_eq!(starshape(&["star", "--n", "2", "--s", "3", "--m", "1", "--coeff-bound", "1"]).status.code(), Some(2));
}

#[test]
fn cache_round_trip_gives_same_json() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let json = |name: &str| dir.path().join(name).display().to_string();
    let (a, b) = (json("a.json"), json("b.json"));
    for target in [&a, &b] {
        let out = starshape(&["star", "--n", "2", "--s", "3", "--m", "3", "--cache", cache.to_str().unwrap(), "--json", target]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert!(std::fs::read_dir(&cache).unwrap().count() > 0);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn invariants_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("inv.csv");
    let out = starshape(&["invariants", "--points", &conic_path(), "--m-max", "2", "--no-cache", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().count(), 3, "{text}");
}
