//! End-to-end behavior of the binary: exit codes, output formats,
//! byte stability, file output, and config handling.

use std::fs;
use std::process::{Command, Output};

use g2cal::report::{CheckStatus, Report};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2cal"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn every_command_passes_on_the_default_group() {
    for cmd in [
        "verify-all",
        "fixed-sets",
        "slice-census",
        "dual-pair",
        "hodge",
        "mirror-report",
        "planes",
    ] {
        let output = run(&[cmd]);
        assert_eq!(
            output.status.code(),
            Some(0),
            "{cmd} failed:\n{}",
            stdout(&output)
        );
        let text = stdout(&output);
        assert!(text.contains("summary:"), "{cmd} output:\n{text}");
        assert!(!text.contains("[FAIL]"), "{cmd} output:\n{text}");
    }
}

#[test]
fn structured_output_parses_and_is_byte_stable() {
    let first = run(&["mirror-report", "--format", "structured"]);
    let second = run(&["mirror-report", "--format", "structured"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "structured output must be deterministic");
    let report: Report = serde_json::from_str(&stdout(&first)).expect("valid report JSON");
    assert_eq!(report.command, "mirror-report");
    assert_eq!(report.schema_version, 1);
    assert!(report.summary.all_passed);
    assert!(report
        .checks
        .iter()
        .any(|c| c.status == CheckStatus::RecordedAssertion));
}

#[test]
fn output_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("planes.json");
    let output = run(&[
        "planes",
        "--format",
        "structured",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).is_empty());
    let written = fs::read_to_string(&path).unwrap();
    let report: Report = serde_json::from_str(&written).unwrap();
    assert_eq!(report.command, "planes");
    let direct = run(&["planes", "--format", "structured"]);
    assert_eq!(written, stdout(&direct));
}

#[test]
fn usage_and_config_problems_exit_two() {
    assert_eq!(run(&["bogus-command"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(
        run(&["verify-all", "--grid-denominator", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify-all", "--group", "/definitely/missing.toml"])
            .status
            .code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "dimension = \"seven\"").unwrap();
    assert_eq!(
        run(&["verify-all", "--group", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

fn write_config(contents: &str) -> (tempfile::TempDir, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("group.toml");
    fs::write(&path, contents).unwrap();
    let s = path.to_str().unwrap().to_string();
    (dir, s)
}

#[test]
fn non_preserving_generator_fails_verification() {
    let (_dir, path) = write_config(
        "dimension = 7\n\n[[generators]]\nname = \"bad\"\nsigns = [-1, 1, 1, 1, 1, 1, 1]\n",
    );
    let output = run(&["verify-all", "--group", &path]);
    assert_eq!(output.status.code(), Some(1), "{}", stdout(&output));
    assert!(stdout(&output).contains("[FAIL]"));

    let output = run(&["fixed-sets", "--group", &path]);
    assert_eq!(output.status.code(), Some(1));
    let text = stdout(&output);
    assert!(
        text.contains("calibration-invariance/bad") && text.contains("[FAIL]"),
        "{text}"
    );
}

#[test]
fn small_custom_groups_get_generic_censuses_only() {
    let (_dir, path) = write_config(
        "dimension = 2\n\n[[generators]]\nname = \"flip\"\nsigns = [-1, -1]\nshift = [\"0\", \"1/2\"]\n",
    );
    let output = run(&["fixed-sets", "--group", &path]);
    assert_eq!(output.status.code(), Some(0), "{}", stdout(&output));
    assert!(stdout(&output).contains("fixed-locus/flip"));
    // Preset-shaped commands cannot run on a 2-torus group.
    assert_eq!(run(&["slice-census", "--group", &path]).status.code(), Some(2));
    assert_eq!(run(&["hodge", "--group", &path]).status.code(), Some(2));
    assert_eq!(
        run(&["mirror-report", "--group", &path]).status.code(),
        Some(2)
    );
}

#[test]
fn grid_denominator_is_forwarded() {
    // An odd denominator hides the half-integer fixed tori from the
    // scan, but the oracle must still agree with the solved components.
    let output = run(&["slice-census", "--grid-denominator", "3"]);
    assert_eq!(output.status.code(), Some(0), "{}", stdout(&output));
    let text = stdout(&output);
    assert!(text.contains("among 27") || text.contains("among 729"), "{text}");
}

#[test]
fn help_lists_all_commands() {
    let output = run(&["--help"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    for cmd in [
        "verify-all",
        "fixed-sets",
        "slice-census",
        "dual-pair",
        "hodge",
        "mirror-report",
        "planes",
    ] {
        assert!(text.contains(cmd), "help missing {cmd}:\n{text}");
    }
}
