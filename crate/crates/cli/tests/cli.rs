//! End-to-end tests of the `gridatlas` binary: output formats, exit codes,
//! determinism, and the cache directory contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const UNKNOT: &str = "n=2\nX=1 0\nO=0 1\n";
const M_TREFOIL: &str = "n=5\nX=2 3 4 0 1\nO=0 1 2 3 4\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gridatlas"))
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

/// Closing the read end of a pipe mid-stream must kill the process the
/// standard Unix way (silent SIGPIPE), not as a printing panic.
#[cfg(unix)]
#[test]
fn broken_pipes_are_quiet() {
    use std::io::Read;
    use std::os::unix::process::ExitStatusExt;
    use std::process::Stdio;

    // enumerate 5 emits ~160 KiB, comfortably past the pipe buffer.
    let mut child = bin()
        .arg("enumerate")
        .arg("5")
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut head = [0u8; 64];
    child.stdout.take().unwrap().read_exact(&mut head).unwrap();
    let status = child.wait().unwrap();
    let mut err = String::new();
    child
        .stderr
        .take()
        .unwrap()
        .read_to_string(&mut err)
        .unwrap();
    assert_eq!(err, "", "a closed pipe must stay silent");
    assert_eq!(
        status.signal(),
        Some(13),
        "expected death by SIGPIPE, got {status:?}"
    );
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn invariants_prints_the_triple() {
    let dir = tempfile::tempdir().unwrap();
    let unknot = write(dir.path(), "u.grid", UNKNOT);
    let trefoil = write(dir.path(), "t.grid", M_TREFOIL);
    let out = run(&["invariants", unknot.to_str().unwrap()]);
    assert_eq!(stdout(&out), "tb=-1 r=0 sl=-1\n");
    let out = run(&["invariants", trefoil.to_str().unwrap()]);
    assert_eq!(stdout(&out), "tb=1 r=0 sl=1\n");
}

#[test]
fn theta_reports_both_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let trefoil = write(dir.path(), "t.grid", M_TREFOIL);
    let out = run(&["theta", trefoil.to_str().unwrap()]);
    assert_eq!(stdout(&out), "OBSTRUCTED (theta nonzero)\n");

    let stabbed = run(&["moves", trefoil.to_str().unwrap(), "STAB X NW col 0"]);
    let stabbed_path = write(dir.path(), "stabbed.grid", &stdout(&stabbed));
    let out = run(&["theta", stabbed_path.to_str().unwrap()]);
    assert_eq!(stdout(&out), "INCONCLUSIVE\n");
}

#[test]
fn ruling_prints_ascending_powers_and_grading_dashes() {
    let dir = tempfile::tempdir().unwrap();
    let trefoil = write(dir.path(), "t.grid", M_TREFOIL);
    assert_eq!(
        stdout(&run(&["ruling", trefoil.to_str().unwrap()])),
        "2+z^2\n"
    );
    assert_eq!(
        stdout(&run(&["ruling", trefoil.to_str().unwrap(), "--graded"])),
        "2+z^2\n"
    );

    // A positive stabilization moves r to 1: graded count is undefined, and
    // the stabilized diagram has no rulings at all.
    let stabbed = run(&["moves", trefoil.to_str().unwrap(), "STAB X NW col 0"]);
    let stabbed_path = write(dir.path(), "s.grid", &stdout(&stabbed));
    assert_eq!(
        stdout(&run(&[
            "ruling",
            stabbed_path.to_str().unwrap(),
            "--graded"
        ])),
        "-\n"
    );
    assert_eq!(
        stdout(&run(&["ruling", stabbed_path.to_str().unwrap()])),
        "\u{2205}\n"
    );
}

#[test]
fn moves_lists_and_applies() {
    let dir = tempfile::tempdir().unwrap();
    let unknot = write(dir.path(), "u.grid", UNKNOT);
    let listing = stdout(&run(&["moves", unknot.to_str().unwrap(), "--mode", "leg"]));
    assert!(listing.contains("TRANSLATE up\n"));
    assert!(listing.contains("STAB X NE col 0\n"));
    assert!(
        !listing.contains("STAB X NW"),
        "NW is not a Legendrian move:\n{listing}"
    );

    let applied = stdout(&run(&[
        "moves",
        unknot.to_str().unwrap(),
        "STAB X SE col 1",
    ]));
    assert_eq!(applied.lines().count(), 3);
    assert!(applied.starts_with("n=3\n"));
}

#[test]
fn connect_prints_a_replayable_path() {
    let dir = tempfile::tempdir().unwrap();
    let unknot = write(dir.path(), "u.grid", UNKNOT);
    let stabbed = stdout(&run(&[
        "moves",
        unknot.to_str().unwrap(),
        "STAB X NW col 0",
    ]));
    let stabbed_path = write(dir.path(), "s.grid", &stabbed);
    let out = stdout(&run(&[
        "connect",
        stabbed_path.to_str().unwrap(),
        unknot.to_str().unwrap(),
        "--mode",
        "top",
        "--max-size",
        "4",
    ]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("CONNECTED"));
    assert!(lines.next().unwrap().starts_with("DESTAB X NW"));
}

#[test]
fn connect_rejects_invariant_mismatch_as_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let unknot = write(dir.path(), "u.grid", UNKNOT);
    let trefoil = write(dir.path(), "t.grid", M_TREFOIL);
    let out = run(&[
        "connect",
        unknot.to_str().unwrap(),
        trefoil.to_str().unwrap(),
        "--mode",
        "leg",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn enumerate_is_sorted_and_deterministic() {
    let first = run(&["enumerate", "3"]);
    let second = run(&["enumerate", "3"]);
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "n=3 X=0 1 2 O=1 2 0");
    let mut sorted = lines.clone();
    sorted.sort();
    assert_eq!(lines, sorted);
}

#[test]
fn classify_census_is_exact_at_tiny_sizes() {
    let out = stdout(&run(&["classify", "3"]));
    assert_eq!(out, "0_1\t2\t1\n0_1\t3\t4\n");
}

#[test]
fn atlas_emits_json_and_respects_the_cache_env() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let run_atlas = || {
        let out = bin()
            .args([
                "atlas",
                "--knot",
                "m(3_1)",
                "--max-enum-size",
                "5",
                "--max-size",
                "7",
            ])
            .env("GRIDATLAS_CACHE", &cache)
            .output()
            .unwrap();
        stdout(&out)
    };
    let first = run_atlas();
    let parsed: serde_json::Value = serde_json::from_str(&first).unwrap();
    let record = &parsed.as_array().unwrap()[0];
    assert_eq!(record["knot"], "m(3_1)");
    assert_eq!(record["arc_index"], 5);
    assert_eq!(record["max_tb"], 1);
    assert_eq!(record["classes"].as_array().unwrap().len(), 1);
    assert_eq!(record["classes"][0]["ruling"], "2+z^2");
    let entries = std::fs::read_dir(&cache).unwrap().count();
    assert!(entries > 0, "no cache files were written");
    assert_eq!(run_atlas(), first, "cached re-run changed the output");
}

#[test]
fn render_produces_txt_and_svg_headers() {
    let txt = stdout(&run(&[
        "render",
        "--knot",
        "m(3_1)",
        "--max-enum-size",
        "5",
        "--max-size",
        "7",
    ]));
    assert!(txt.starts_with("mountain range: m(3_1)\n"), "{txt}");
    assert!(txt.contains("*(1,0)"), "{txt}");
    let svg = stdout(&run(&[
        "render",
        "--knot",
        "m(3_1)",
        "--format",
        "svg",
        "--max-enum-size",
        "5",
        "--max-size",
        "7",
    ]));
    assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\""));
    assert!(svg.contains("<title>mountain range: m(3_1)</title>"));
}

#[test]
fn stuck_scan_is_quiet_at_size_three() {
    let out = run(&["stuck", "3"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("0 stuck diagrams of size 3"));
}

#[test]
fn usage_errors_exit_two_and_name_the_flags() {
    let dir = tempfile::tempdir().unwrap();
    let unknot = write(dir.path(), "u.grid", UNKNOT);
    let missing = run(&["connect", unknot.to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("Usage:"));

    let bad_mode = run(&[
        "connect",
        unknot.to_str().unwrap(),
        unknot.to_str().unwrap(),
        "--mode",
        "x",
    ]);
    assert_eq!(bad_mode.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_mode.stderr).contains("top, leg, trans"));

    let bad_file = run(&["invariants", dir.path().join("nope.grid").to_str().unwrap()]);
    assert_eq!(bad_file.status.code(), Some(1));
}
