//! Runs the quicker examples, which `cargo test` builds alongside this target.

use std::path::PathBuf;
use std::process::Command;

fn example_binary(name: &str) -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|deps| deps.parent()).unwrap();
    let path = profile_dir.join("examples").join(format!("{name}{}", std::env::consts::EXE_SUFFIX));
    if !path.exists() {
        // Filtered runs such as `cargo test --test examples` skip example builds.
        let status = Command::new(env!("CARGO"))
            .args(["build", "--quiet", "--example", name])
            .current_dir(env!("CARGO_MANIFEST_DIR"))
            .status()
            .unwrap();
        assert!(status.success());
    }
    path
}

fn run(name: &str, args: &[&str]) -> String {
    let out = Command::new(example_binary(name)).args(args).output().expect("example was built");
    assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn exact_lp() {
    assert!(run("exact_lp", &[]).contains("infeasible"));
}

#[test]
fn star_gin() {
    let text = run("star_gin", &[]);
    assert!(text.contains("x1^3"), "{text}");
}

#[test]
fn conic_limit() {
    run("conic_limit", &[]);
}

#[test]
fn newton_shape() {
    assert!(run("newton_shape", &[]).contains("predicted simplex"));
}
