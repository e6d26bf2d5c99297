//! End-to-end checks of the `mihsim` binary: subcommand behavior, exit
//! codes, and output formats.

use std::path::Path;
use std::process::{Command, Output};

fn mihsim(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mihsim"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn mihsim")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn validate_defaults_passes_with_six_lines() {
    let dir = tempfile::tempdir().unwrap();
    let out = mihsim(&["validate"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let pass_lines = text.lines().filter(|l| l.starts_with("PASS:")).count();
    assert_eq!(pass_lines, 6, "{text}");
    assert!(text.contains("all checks passed"));
}

#[test]
fn validate_tampered_catalog_fails_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = mihsim(&["validate", "--override-size", "M_PBU=77"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let text = stderr(&out);
    assert!(text.contains("FAIL"), "{text}");
    assert!(text.contains("tally"), "{text}");
}

#[test]
fn validate_bad_override_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = mihsim(&["validate", "--override-size", "M_99=10"], dir.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn figure_fig14_has_expected_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = mihsim(&["figure", "fig14"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x,standard,fast,proposed");
    let row = text
        .lines()
        .find(|l| l.starts_with("0.5,"))
        .expect("row for p_f = 0.5");
    let proposed: f64 = row.split(',').nth(3).unwrap().parse().unwrap();
    assert!((proposed - 21.62).abs() / 21.62 < 1e-3, "{row}");
}

#[test]
fn figure_fig12_grid_contains_default_point() {
    let dir = tempfile::tempdir().unwrap();
    let out = mihsim(&["figure", "fig12"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("x,x2,standard,fast,proposed\n"));
    let row = text
        .lines()
        .find(|l| l.starts_with("100,10,"))
        .expect("row for (r=100, d=10)");
    let rate: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    assert!((rate - 3.4036e-4).abs() / 3.4036e-4 < 1e-3, "{row}");
}

#[test]
fn figure_fig10_delay_columns_nondecreasing() {
    let dir = tempfile::tempdir().unwrap();
    let out = mihsim(&["figure", "fig10"], dir.path());
    let text = stdout(&out);
    let mut prev = [f64::NEG_INFINITY; 3];
    for line in text.lines().skip(1) {
        let cols: Vec<f64> = line
            .split(',')
            .skip(1)
            .map(|v| v.parse().unwrap())
            .collect();
        for (i, v) in cols.iter().enumerate() {
            assert!(*v >= prev[i], "{line}");
            prev[i] = *v;
        }
    }
    assert_eq!(text.lines().count(), 1 + 7); // header + rho 0..0.3 step 0.05
}

#[test]
fn figure_unknown_id_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = mihsim(&["figure", "fig99"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown figure"));
}

#[test]
fn figure_rejects_foreign_sweep_axis() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("cfg.txt"), "sweep.p_f = 0.1:0.1:0.5\n").unwrap();
    let out = mihsim(&["figure", "fig10", "--config", "cfg.txt"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("does not belong"));
}

#[test]
fn figure_sweep_override_changes_rows() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("cfg.txt"), "sweep.rho_f = 0:0.1:0.2\n").unwrap();
    let out = mihsim(&["figure", "fig10", "--config", "cfg.txt"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1 + 3);
}

#[test]
fn simulate_writes_deterministic_outputs() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("cfg.txt"), "scheme = proposed\nseed = 42\n").unwrap();
    for stem in ["a", "b"] {
        let out = mihsim(
            &["simulate", "--config", "cfg.txt", "--out", stem],
            dir.path(),
        );
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    }
    let csv_a = std::fs::read(dir.path().join("a.metrics.csv")).unwrap();
    let csv_b = std::fs::read(dir.path().join("b.metrics.csv")).unwrap();
    assert_eq!(csv_a, csv_b);
    let tr_a = std::fs::read(dir.path().join("a.transcript.txt")).unwrap();
    let tr_b = std::fs::read(dir.path().join("b.transcript.txt")).unwrap();
    assert_eq!(tr_a, tr_b);

    let transcript = String::from_utf8(tr_a).unwrap();
    assert!(!transcript.lines().any(|l| l.contains("| HI |")));
    assert!(!transcript.lines().any(|l| l.contains("| HACK |")));
    let csv = String::from_utf8(csv_a).unwrap();
    assert!(csv.starts_with("scheme,seed,mode,handover_delay_ms"));
    assert!(csv
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("proposed,42,deterministic,268.3833"));
}

#[test]
fn simulate_sweep_emits_one_row_per_value() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("cfg.txt"),
        "scheme = fast_mih\nsweep.rho_f = 0:0.1:0.3\n",
    )
    .unwrap();
    let out = mihsim(
        &["simulate", "--config", "cfg.txt", "--out", "sweep"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let csv = std::fs::read_to_string(dir.path().join("sweep.metrics.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 4);
}

#[test]
fn missing_config_file_reports_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = mihsim(&["simulate", "--config", "no_such.txt"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no_such.txt"));
}

#[test]
fn unknown_config_key_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("cfg.txt"), "bogus_key = 1\n").unwrap();
    let out = mihsim(&["validate", "--config", "cfg.txt"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("bogus_key"));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = mihsim(&["frobnicate"], dir.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn codec_encode_decode_roundtrip_listing() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("req.txt"),
        "kind = MIH_N2N_HO_Commit_request_ext\ntransaction_id = 7\nmn_id = mn1@example\n\
         lla_iid = iid:00-11-22-33-44-55-66-77\nlmaa = 2001:db8::1\nhnp = 64:2001:db8:1::\n",
    )
    .unwrap();
    let enc = mihsim(
        &["codec", "encode", "req.txt", "--out", "req.hex"],
        dir.path(),
    );
    assert_eq!(enc.status.code(), Some(0), "{}", stderr(&enc));
    let dec1 = mihsim(&["codec", "decode", "req.hex"], dir.path());
    assert_eq!(dec1.status.code(), Some(0));
    let listing = stdout(&dec1);
    assert!(listing.contains("kind: MIH_N2N_HO_Commit_request_ext"));
    assert!(listing.contains("tlv 103 (home network prefixes): [2001:db8:1::/64]"));

    // re-encoding the decoded bytes yields the identical listing
    let hex = std::fs::read_to_string(dir.path().join("req.hex")).unwrap();
    std::fs::write(dir.path().join("req2.hex"), hex).unwrap();
    let dec2 = mihsim(&["codec", "decode", "req2.hex"], dir.path());
    assert_eq!(stdout(&dec2), listing);
}

#[test]
fn codec_decode_prints_status_meaning() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("resp.txt"),
        "kind = MIH_N2N_HO_Commit_response_ext\ntransaction_id = 9\nstatus = 130\n",
    )
    .unwrap();
    let enc = mihsim(
        &["codec", "encode", "resp.txt", "--out", "resp.hex"],
        dir.path(),
    );
    assert_eq!(enc.status.code(), Some(0));
    let dec = mihsim(&["codec", "decode", "resp.hex"], dir.path());
    assert!(stdout(&dec).contains("Insufficient resources"));
}

#[test]
fn codec_decode_truncated_reports_offset() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("trunc.hex"), "10 00 36 09 00 07 00 3f 01\n").unwrap();
    let out = mihsim(&["codec", "decode", "trunc.hex"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("offset"), "{}", stderr(&out));
}
